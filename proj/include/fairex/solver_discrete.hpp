#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fairex/model.hpp"
#include "fairex/solver_continuous.hpp"

namespace fairex {

// One round of the integer peeling pass: the remaining agents whose rounded
// target floor ties at the minimum.
struct TieGroup {
  std::size_t rank_parameter = 0;     // K = |remaining|
  std::vector<std::size_t> members;   // S, ascending agent index
  std::vector<Rational> targets;      // fractional target per member
  Rational floor;                     // m
  bool placed_above = false;          // whole group fixed at m + 1
  std::optional<std::size_t> deviator;  // member fixed at m instead
};

struct DiscreteEquilibrium : EquilibriumResult {
  std::vector<TieGroup> rounds;
};

// Integer equilibrium of the complete-graph discrete game. Each round computes
// targets (s_j^K - fixed) / K with K = |remaining|, takes the tie group with
// the smallest floor m, and tests whether any member would drop from m + 1 to
// m when every remaining agent sits at m + 1. If none would, the group is
// fixed at m + 1; otherwise the lowest-index deviator is fixed at m.
DiscreteEquilibrium solve_discrete(const Instance& inst);

}  // namespace fairex
