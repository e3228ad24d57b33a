#include "fairex/model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fairex/transforms.hpp"

namespace fairex {

Graph::Graph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) : adjacency_(n) {
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n)
      throw std::invalid_argument("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") names an unknown agent");
    if (a == b) throw std::invalid_argument("self-loop at agent index " + std::to_string(a));
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& adj = adjacency_[i];
    std::sort(adj.begin(), adj.end());
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
      throw std::invalid_argument("duplicate edge at agent index " + std::to_string(i));
  }
}

Graph Graph::complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  const auto& adj = adjacency_[i];
  return std::binary_search(adj.begin(), adj.end(), j);
}

bool Graph::is_complete() const noexcept {
  const std::size_t n = adjacency_.size();
  return std::all_of(adjacency_.begin(), adjacency_.end(), [n](const auto& a) { return a.size() + 1 == n; });
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < adjacency_.size(); ++i)
    for (std::size_t j : adjacency_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

Instance::Instance(std::vector<AgentSpec> agents, std::optional<std::vector<std::pair<std::size_t, std::size_t>>> edges,
                   Mode mode)
    : agents_(std::move(agents)), mode_(mode) {
  if (agents_.empty()) throw std::invalid_argument("instance needs at least one agent");
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].cost.sign() <= 0)
      throw std::invalid_argument("agent " + std::to_string(agents_[i].id) + " has non-positive cost " +
                                  agents_[i].cost.str());
    for (std::size_t j = 0; j < i; ++j)
      if (agents_[j].id == agents_[i].id)
        throw std::invalid_argument("duplicate agent id " + std::to_string(agents_[i].id));
  }
  if (edges) {
    graph_ = Graph(agents_.size(), *edges);
    has_graph_ = true;
  }
}

std::optional<std::size_t> Instance::index_of(std::int64_t id) const {
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (agents_[i].id == id) return i;
  return std::nullopt;
}

Instance Instance::with_mode(Mode mode) const {
  Instance copy = *this;
  copy.mode_ = mode;
  return copy;
}

Instance Instance::with_graph(std::optional<std::vector<std::pair<std::size_t, std::size_t>>> edges) const {
  return Instance(agents_, std::move(edges), mode_);
}

void validate_profile(const Instance& inst, const CollectionProfile& x) {
  if (x.size() != inst.size())
    throw std::invalid_argument("profile has " + std::to_string(x.size()) + " entries for " +
                                std::to_string(inst.size()) + " agents");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].sign() < 0)
      throw std::invalid_argument("negative collection " + x[i].str() + " for agent " +
                                  std::to_string(inst.agent(i).id));
    if (inst.mode() == Mode::discrete && !x[i].is_integer())
      throw std::invalid_argument("non-integer collection " + x[i].str() + " for agent " +
                                  std::to_string(inst.agent(i).id) + " in discrete mode");
  }
}

Rational eval_benefit(const BenefitFunction& b, const Rational& t) { return b.value(t); }

Rational right_derivative(const BenefitFunction& b, const Rational& t) { return b.right_derivative(t); }

Rational total_data_of(const Instance& inst, const CollectionProfile& x, std::size_t i) {
  Rational t = x[i];
  if (inst.has_graph()) {
    for (std::size_t j : inst.graph().neighbors(i)) t += min(x[i], x[j]);
  } else {
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != i) t += min(x[i], x[j]);
  }
  return t;
}

TotalProfile total_data(const Instance& inst, const CollectionProfile& x) {
  validate_profile(inst, x);
  if (!inst.has_graph()) return phi_forward(x);
  std::vector<Rational> t;
  t.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) t.push_back(total_data_of(inst, x, i));
  return TotalProfile(std::move(t));
}

Rational utility(const Instance& inst, const CollectionProfile& x, std::size_t i) {
  const AgentSpec& a = inst.agent(i);
  return a.benefit.value(total_data_of(inst, x, i)) - a.cost * x[i];
}

std::vector<Rational> utilities(const Instance& inst, const CollectionProfile& x) {
  std::vector<Rational> u;
  u.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u.push_back(utility(inst, x, i));
  return u;
}

RankPair ranks(const Instance& inst, const CollectionProfile& x, std::size_t i) {
  RankPair r{1, 1};
  auto visit = [&](std::size_t j) {
    if (x[j] >= x[i]) ++r.k;
    if (x[j] > x[i]) ++r.k_up;
  };
  if (inst.has_graph()) {
    for (std::size_t j : inst.graph().neighbors(i)) visit(j);
  } else {
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != i) visit(j);
  }
  return r;
}

std::vector<RankPair> all_ranks(const Instance& inst, const CollectionProfile& x) {
  const std::size_t n = x.size();
  std::vector<RankPair> out(n);
  if (inst.has_graph()) {
    for (std::size_t i = 0; i < n; ++i) out[i] = ranks(inst, x, i);
    return out;
  }
  std::vector<Rational> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) {
    const auto lo = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x[i]) - sorted.begin());
    const auto hi = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), x[i]) - sorted.begin());
    out[i] = RankPair{n - lo, 1 + (n - hi)};
  }
  return out;
}

CollectionProfile with_entry(CollectionProfile x, std::size_t i, Rational value) {
  x[i] = std::move(value);
  return x;
}

}  // namespace fairex
