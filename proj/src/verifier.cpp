#include "fairex/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fairex/levels.hpp"

namespace fairex {
namespace {

template <class F>
void for_each_partner(const Instance& inst, std::size_t i, F&& f) {
  if (inst.has_graph()) {
    for (std::size_t j : inst.graph().neighbors(i)) f(j);
  } else {
    for (std::size_t j = 0; j < inst.size(); ++j)
      if (j != i) f(j);
  }
}

Rational total_if(const Instance& inst, const CollectionProfile& x, std::size_t i, const Rational& xi) {
  Rational t = xi;
  for_each_partner(inst, i, [&](std::size_t j) { t += min(xi, x[j]); });
  return t;
}

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Rational> partner_values(const Instance& inst, const CollectionProfile& x, std::size_t i) {
  std::vector<Rational> v;
  for_each_partner(inst, i, [&](std::size_t j) { v.push_back(x[j]); });
  std::sort(v.begin(), v.end());
  return v;
}

// Smallest x_i >= 0 with t_i(x_i) = target, for target >= 0. t_i is strictly
// increasing and piecewise linear with kinks at the partners' values.
Rational total_preimage(const std::vector<Rational>& sorted_partners, const Rational& target) {
  Rational at;     // current kink
  Rational t_at;   // t_i at that kink
  std::size_t above = sorted_partners.size();
  std::size_t q = 0;
  while (q < sorted_partners.size() && sorted_partners[q].sign() <= 0) ++q, --above;
  while (q < sorted_partners.size()) {
    const Rational& p = sorted_partners[q];
    const Rational slope(static_cast<std::int64_t>(1 + above));
    const Rational t_p = t_at + slope * (p - at);
    if (target <= t_p) return at + (target - t_at) / slope;
    at = p;
    t_at = t_p;
    while (q < sorted_partners.size() && sorted_partners[q] == p) ++q, --above;
  }
  return at + (target - t_at);
}

// x_i values where agent i's utility changes slope.
std::vector<Rational> utility_kinks(const Instance& inst, const CollectionProfile& x, std::size_t i) {
  const auto partners = partner_values(inst, x, i);
  std::vector<Rational> k{Rational(0)};
  for (const Rational& v : partners) k.push_back(v);
  for (const Segment& s : inst.agent(i).benefit.segments())
    if (s.start.sign() > 0) k.push_back(total_preimage(partners, s.start));
  sort_unique(k);
  return k;
}

std::size_t grid_count(const Rational& bound, const Rational& step) {
  const double count = std::floor((bound / step).to_double()) + 1.0;
  if (count > kEnumerationLimit)
    throw GuardExceeded("grid of step " + step.str() + " up to " + bound.str() + " needs " +
                            std::to_string(static_cast<long long>(count)) + " points, limit " +
                            std::to_string(static_cast<long long>(kEnumerationLimit)),
                        count, kEnumerationLimit);
  return static_cast<std::size_t>(count);
}

std::vector<Rational> integer_range(const Rational& bound) {
  const std::size_t count = grid_count(bound.ceil(), Rational(1));
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t v = 0; v < count; ++v) out.emplace_back(static_cast<std::int64_t>(v));
  return out;
}

void require_step(const Rational& step) {
  if (step.sign() <= 0) throw std::invalid_argument("grid step must be positive, got " + step.str());
}

}  // namespace

bool LocalReport::strict_form() const {
  return pass() && std::all_of(agents.begin(), agents.end(), [](const AgentSlack& a) { return a.strict_upward; });
}

LocalReport check_local_conditions(const Instance& inst, const CollectionProfile& x) {
  if (inst.mode() != Mode::continuous)
    throw std::invalid_argument("local conditions apply to continuous instances; use the deviation oracle");
  validate_profile(inst, x);
  const TotalProfile t = total_data(inst, x);
  const auto r = all_ranks(inst, x);
  LocalReport rep;
  rep.agents.resize(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const AgentSpec& a = inst.agent(i);
    AgentSlack& s = rep.agents[i];
    s.ranks = r[i];
    s.total = t[i];
    s.lower = min_k_level(a, r[i].k_up);
    s.upper = k_level(a, r[i].k);
    s.upward_slack = t[i] - s.lower;
    s.downward_slack = s.upper - t[i];
    s.strict_upward = t[i] >= k_level(a, r[i].k_up);
    if (!s.ok()) rep.violations.push_back(i);
  }
  return rep;
}

Rational deviation_bound(const Instance& inst, const CollectionProfile& x) {
  Rational top;
  for (std::size_t i = 0; i < inst.size(); ++i) top = max(top, k_level(inst.agent(i), inst.max_rank(i)));
  Rational xmax;
  for (const Rational& v : x) xmax = max(xmax, v);
  return Rational(2) * (top + xmax);
}

Rational deviation_utility(const Instance& inst, const CollectionProfile& x, std::size_t i, const Rational& xi) {
  const AgentSpec& a = inst.agent(i);
  return a.benefit.value(total_if(inst, x, i, xi)) - a.cost * xi;
}

std::vector<Rational> candidate_values(const Instance& inst, const CollectionProfile& x, const Rational& step,
                                       const Rational& bound) {
  require_step(step);
  const std::size_t count = grid_count(bound, step);
  std::vector<Rational> out;
  out.reserve(count + x.size());
  for (std::size_t q = 0; q < count; ++q) out.push_back(step * Rational(static_cast<std::int64_t>(q)));
  out.push_back(bound);
  for (const Rational& v : x) out.push_back(v);
  for (LevelKind kind : {LevelKind::max, LevelKind::min})
    for (const LevelTable& table : level_tables(inst, kind))
      for (const auto& st : table.steps()) out.push_back(st.value);
  sort_unique(out);
  return out;
}

std::optional<DeviationWitness> deviation_oracle(const Instance& inst, const CollectionProfile& x,
                                                 const Rational& step, Execution exec) {
  validate_profile(inst, x);
  const bool discrete = inst.mode() == Mode::discrete;
  if (!discrete) require_step(step);
  const Rational bound = deviation_bound(inst, x);
  const std::vector<Rational> shared = discrete ? integer_range(bound) : candidate_values(inst, x, step, bound);

  auto best_for = [&](std::size_t i) -> std::optional<DeviationWitness> {
    std::vector<Rational> extra;
    if (!discrete) extra = utility_kinks(inst, x, i);
    const Rational base = deviation_utility(inst, x, i, x[i]);
    std::optional<DeviationWitness> best;
    auto consider = [&](const Rational& v) {
      if (v == x[i]) return;
      const Rational gain = deviation_utility(inst, x, i, v) - base;
      if (gain.sign() <= 0) return;
      if (!best || gain > best->gain || (gain == best->gain && v < best->to))
        best = DeviationWitness{i, x[i], v, gain};
    };
    for (const Rational& v : shared) consider(v);
    for (const Rational& v : extra) consider(v);
    return best;
  };
  auto hit = kernels::first_of<DeviationWitness>(inst.size(), best_for, exec);
  if (!hit) return std::nullopt;
  return hit->second;
}

BestResponseSet best_response_set(const Instance& inst, const CollectionProfile& x, std::size_t i) {
  const auto kinks = utility_kinks(inst, x, i);
  std::vector<Rational> u;
  u.reserve(kinks.size());
  for (const Rational& k : kinks) u.push_back(deviation_utility(inst, x, i, k));
  const Rational top = *std::max_element(u.begin(), u.end());
  std::size_t first = 0;
  while (u[first] != top) ++first;
  std::size_t last = first;
  while (last + 1 < u.size() && u[last + 1] == top) ++last;
  BestResponseSet set{kinks[first], kinks[last], top};
  if (inst.mode() != Mode::discrete) return set;

  const Rational lo = set.lo.ceil();
  const Rational hi = set.hi.floor();
  if (lo <= hi) return {lo, hi, top};
  // Maximizer is a single fractional point; integers on either side compete.
  const Rational below = set.lo.floor();
  const Rational above = set.lo.ceil();
  const Rational ub = deviation_utility(inst, x, i, below);
  const Rational ua = deviation_utility(inst, x, i, above);
  if (ub == ua) return {below, above, ub};
  return ub > ua ? BestResponseSet{below, below, ub} : BestResponseSet{above, above, ua};
}

Rational best_response(const Instance& inst, const CollectionProfile& x, std::size_t i) {
  const BestResponseSet set = best_response_set(inst, x, i);
  return min(max(x[i], set.lo), set.hi);
}

Rational oracle_best_response(const Instance& inst, const CollectionProfile& x, std::size_t i, const Rational& step) {
  validate_profile(inst, x);
  const Rational bound = deviation_bound(inst, x);
  std::vector<Rational> cand;
  if (inst.mode() == Mode::discrete) {
    cand = integer_range(bound);
  } else {
    cand = candidate_values(inst, x, step, bound);
    for (const Rational& k : utility_kinks(inst, x, i)) cand.push_back(k);
    sort_unique(cand);
  }
  Rational best_x = cand.front();
  Rational best_u = deviation_utility(inst, x, i, best_x);
  for (const Rational& v : cand) {
    const Rational u = deviation_utility(inst, x, i, v);
    if (u > best_u) {
      best_u = u;
      best_x = v;
    }
  }
  return best_x;
}

ProbeResult extremality_probe(const Instance& inst, std::size_t restarts, std::uint64_t seed, const Rational& step) {
  const std::size_t n = inst.size();
  const bool discrete = inst.mode() == Mode::discrete;
  Rational top;
  for (std::size_t i = 0; i < n; ++i) top = max(top, k_level(inst.agent(i), inst.max_rank(i)));
  const std::int64_t denom = discrete ? 1 : 8;
  const std::int64_t span = *(top.ceil() * Rational(denom)).to_int64();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> draw(0, span);
  ProbeResult res;
  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<Rational> start(n);
    for (auto& v : start) v = Rational(draw(rng), denom);
    CollectionProfile x(std::move(start));

    bool fixed_point = false;
    for (std::size_t sweep = 0; sweep < 10 * n && !fixed_point; ++sweep) {
      fixed_point = true;
      for (std::size_t i = 0; i < n; ++i) {
        Rational br = best_response(inst, x, i);
        if (br != x[i]) {
          x[i] = std::move(br);
          fixed_point = false;
        }
      }
    }
    if (!fixed_point) {
      ++res.non_convergent;
      continue;
    }
    ++res.converged;
    if (deviation_oracle(inst, x, step)) {
      ++res.rejected;
      continue;
    }
    if (std::find(res.equilibria.begin(), res.equilibria.end(), x) == res.equilibria.end())
      res.equilibria.push_back(std::move(x));
  }
  return res;
}

std::optional<DominanceWitness> pareto_scan(const Instance& inst, const CollectionProfile& ref, const Rational& step,
                                            Execution exec) {
  validate_profile(inst, ref);
  const std::size_t n = inst.size();
  const Rational bound = deviation_bound(inst, ref);
  const std::vector<Rational> cand =
      inst.mode() == Mode::discrete ? integer_range(bound) : candidate_values(inst, ref, step, bound);
  const double total = std::pow(static_cast<double>(cand.size()), static_cast<double>(n));
  if (total > kEnumerationLimit)
    throw GuardExceeded("pareto scan needs " + std::to_string(static_cast<long long>(total)) + " profiles (" +
                            std::to_string(cand.size()) + " values per agent), limit " +
                            std::to_string(static_cast<long long>(kEnumerationLimit)),
                        total, kEnumerationLimit);
  const std::vector<Rational> base = utilities(inst, ref);

  // Each task fixes agent 0's value and walks the rest as an odometer.
  auto scan_from = [&](std::size_t first) -> std::optional<DominanceWitness> {
    std::vector<std::size_t> digit(n, 0);
    digit[0] = first;
    CollectionProfile x(std::vector<Rational>(n, cand[0]));
    x[0] = cand[first];
    while (true) {
      bool strict = false;
      bool weak = true;
      for (std::size_t j = 0; j < n && weak; ++j) {
        const auto c = utility(inst, x, j) <=> base[j];
        if (c < 0) weak = false;
        if (c > 0) strict = true;
      }
      if (weak && strict) {
        DominanceWitness w{x, {}};
        const auto u = utilities(inst, x);
        for (std::size_t j = 0; j < n; ++j) w.deltas.push_back(u[j] - base[j]);
        return w;
      }
      std::size_t pos = n;
      while (pos > 1) {
        --pos;
        if (++digit[pos] < cand.size()) {
          x[pos] = cand[digit[pos]];
          break;
        }
        digit[pos] = 0;
        x[pos] = cand[0];
        if (pos == 1) return std::nullopt;
      }
      if (n == 1) return std::nullopt;
    }
  };
  auto hit = kernels::first_of<DominanceWitness>(cand.size(), scan_from, exec);
  if (!hit) return std::nullopt;
  return hit->second;
}

}  // namespace fairex
