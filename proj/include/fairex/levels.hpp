#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fairex/model.hpp"
#include "fairex/rational.hpp"

namespace fairex {

enum class LevelKind {
  max,  // s^K: largest total at which a K-fold marginal unit is still worth its cost
  min,  // s~^K: smallest total at which it stops being strictly worth it
};

struct Level {
  Rational value;
  bool by_convention = false;  // K = 0 was requested; value fixed to 0
};

// K-data-level of `agent` at rank parameter K (breakpoint scan, exact).
Level level(const AgentSpec& agent, std::size_t K, LevelKind kind);
Rational k_level(const AgentSpec& agent, std::size_t K);
Rational min_k_level(const AgentSpec& agent, std::size_t K);

// max_{z >= 0} b(t + z) - c z, attained at z = max(0, s^1 - t).
Rational outside_closure(const AgentSpec& agent, const Rational& t);

// Levels of one agent for K = 1..max_rank, stored as a step function of K.
//
// A curve with m segments has at most m distinct levels, so tables for large
// n stay small. Tables can also be built from reported level vectors.
class LevelTable {
 public:
  struct Step {
    std::size_t from_rank;  // first K carrying this value
    Rational value;
  };

  LevelTable() = default;
  static LevelTable from_agent(std::size_t owner, const AgentSpec& agent, LevelKind kind, std::size_t max_rank);
  // values[K - 1] is the level at K. Throws std::invalid_argument if values
  // decrease or go negative.
  static LevelTable from_values(std::size_t owner, std::span<const Rational> values, LevelKind kind = LevelKind::max);

  std::size_t owner() const noexcept { return owner_; }
  LevelKind kind() const noexcept { return kind_; }
  std::size_t max_rank() const noexcept { return max_rank_; }
  std::span<const Step> steps() const noexcept { return steps_; }

  // Level at K; K = 0 gives 0, K past max_rank gives the level at max_rank.
  const Rational& at(std::size_t K) const;
  std::vector<Rational> expanded() const;

 private:
  std::size_t owner_ = 0;
  LevelKind kind_ = LevelKind::max;
  std::size_t max_rank_ = 0;
  std::vector<Step> steps_;
};

// One table per agent, sized by Instance::max_rank.
std::vector<LevelTable> level_tables(const Instance& inst, LevelKind kind);

}  // namespace fairex
