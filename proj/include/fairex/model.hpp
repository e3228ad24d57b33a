#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fairex/benefit.hpp"
#include "fairex/rational.hpp"

namespace fairex {

struct AgentSpec {
  std::int64_t id = 0;  // label used in reports; agents are addressed by index internally
  Rational cost;        // per-unit collection cost, > 0
  BenefitFunction benefit;
};

enum class Mode { continuous, discrete };

// Undirected simple graph over agent indices with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  // Throws std::invalid_argument on self-loops, duplicates or out-of-range endpoints.
  Graph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);

  static Graph complete(std::size_t n);

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_[i]; }
  std::size_t degree(std::size_t i) const { return adjacency_[i].size(); }
  bool has_edge(std::size_t i, std::size_t j) const;
  bool is_complete() const noexcept;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Value-typed vector of per-agent data amounts, tagged by meaning.
template <class Tag>
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<Rational> values) : values_(std::move(values)) {}
  Profile(std::initializer_list<Rational> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  Rational& operator[](std::size_t i) { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  std::span<const Rational> values() const noexcept { return values_; }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<Rational> values_;
};

using CollectionProfile = Profile<struct CollectionTag>;  // x_i: privately collected
using TotalProfile = Profile<struct TotalTag>;            // t_i: accessible after exchange

class Instance {
 public:
  // `edges` are agent indices; nullopt means every pair exchanges.
  Instance(std::vector<AgentSpec> agents, std::optional<std::vector<std::pair<std::size_t, std::size_t>>> edges,
           Mode mode);
  Instance(std::vector<AgentSpec> agents, Mode mode = Mode::continuous) : Instance(std::move(agents), std::nullopt, mode) {}

  std::size_t size() const noexcept { return agents_.size(); }
  const AgentSpec& agent(std::size_t i) const { return agents_[i]; }
  std::span<const AgentSpec> agents() const noexcept { return agents_; }
  Mode mode() const noexcept { return mode_; }

  // True when an explicit exchange graph was given (it may still be complete).
  bool has_graph() const noexcept { return has_graph_; }
  const Graph& graph() const noexcept { return graph_; }
  // Complete exchange, either implicit or an explicit complete graph.
  bool exchanges_with_all() const noexcept { return !has_graph_ || graph_.is_complete(); }

  // Largest rank parameter relevant to agent i: n, or deg(i) + 1 on a graph.
  std::size_t max_rank(std::size_t i) const { return has_graph_ ? graph_.degree(i) + 1 : size(); }

  std::optional<std::size_t> index_of(std::int64_t id) const;

  Instance with_mode(Mode mode) const;
  Instance with_graph(std::optional<std::vector<std::pair<std::size_t, std::size_t>>> edges) const;

 private:
  std::vector<AgentSpec> agents_;
  Graph graph_;
  bool has_graph_ = false;
  Mode mode_ = Mode::continuous;
};

// (k, k_up): agents weakly above including self, and strictly above plus self.
// On a graph the counts range over the neighborhood.
struct RankPair {
  std::size_t k = 1;
  std::size_t k_up = 1;

  friend bool operator==(const RankPair&, const RankPair&) = default;
};

// Throws std::invalid_argument on a size mismatch, a negative entry, or a
// non-integer entry in discrete mode.
void validate_profile(const Instance& inst, const CollectionProfile& x);

Rational eval_benefit(const BenefitFunction& b, const Rational& t);
Rational right_derivative(const BenefitFunction& b, const Rational& t);

TotalProfile total_data(const Instance& inst, const CollectionProfile& x);
// t_i alone, O(n) or O(deg).
Rational total_data_of(const Instance& inst, const CollectionProfile& x, std::size_t i);

Rational utility(const Instance& inst, const CollectionProfile& x, std::size_t i);
std::vector<Rational> utilities(const Instance& inst, const CollectionProfile& x);

RankPair ranks(const Instance& inst, const CollectionProfile& x, std::size_t i);
std::vector<RankPair> all_ranks(const Instance& inst, const CollectionProfile& x);

// Profile with agent i's entry replaced.
CollectionProfile with_entry(CollectionProfile x, std::size_t i, Rational value);

}  // namespace fairex
