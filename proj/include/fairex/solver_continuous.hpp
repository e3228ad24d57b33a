#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fairex/kernels.hpp"
#include "fairex/levels.hpp"
#include "fairex/model.hpp"

namespace fairex {

struct AgentDiagnostics {
  RankPair ranks;
  std::size_t rank_parameter = 0;  // K in force when the agent was selected
  Rational active_level;           // s^K (max pass) or s~^K (min pass) at selection
  bool floor_binding = false;      // the running bound from earlier selections decided the value
};

struct EquilibriumResult {
  CollectionProfile x;
  TotalProfile t;
  std::vector<std::size_t> selection_order;   // agent indices
  std::vector<AgentDiagnostics> diagnostics;  // indexed by agent
};

// Greatest equilibrium of the complete-graph continuous game: peel the agent
// with the smallest level at K = |remaining|, assign t = max(level, floor).
EquilibriumResult solve_max(const Instance& inst, Execution exec = Execution::parallel);
// Least equilibrium: peel the agent with the largest min-level at
// K = 1, 2, ..., assign t = min(level, ceiling).
EquilibriumResult solve_min(const Instance& inst, Execution exec = Execution::parallel);

// The peeling passes on arbitrary level tables (one per agent, max_rank >= n).
// Used directly by the mechanism, which runs on reported levels.
EquilibriumResult max_equilibrium(std::span<const LevelTable> levels, Execution exec = Execution::parallel);
EquilibriumResult min_equilibrium(std::span<const LevelTable> levels, Execution exec = Execution::parallel);

}  // namespace fairex
