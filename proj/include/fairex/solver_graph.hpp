#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fairex/kernels.hpp"
#include "fairex/levels.hpp"
#include "fairex/model.hpp"
#include "fairex/solver_continuous.hpp"

namespace fairex {

// State of the neighborhood peeling pass. Residual levels are kept implicitly:
// r_j^K = s_j^K - fixed_inflow[j], the collections of already-fixed neighbors.
struct ResidualState {
  std::vector<bool> live;
  std::vector<std::size_t> live_degree;  // d_j(H)
  std::vector<Rational> fixed_inflow;
  Rational floor;  // prev: the last assigned collection
  std::vector<std::optional<Rational>> fixed;

  Rational residual(const LevelTable& table, std::size_t j, std::size_t K) const {
    return table.at(K) - fixed_inflow[j];
  }
};

// Graph-restricted equilibrium: repeatedly fix the live agent with the
// smallest rho_j = r_j^{d_j(H)+1} / (d_j(H)+1) at max(floor, rho_j), then
// charge that collection to its live neighbors' residual levels. Without an
// explicit graph the instance is treated as complete.
EquilibriumResult solve_graph(const Instance& inst, Execution exec = Execution::parallel);

// Same pass on supplied level tables (table j must cover K up to deg(j) + 1).
EquilibriumResult graph_equilibrium(const Instance& inst, std::span<const LevelTable> levels,
                                    Execution exec = Execution::parallel);

}  // namespace fairex
