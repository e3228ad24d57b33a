#include "fairex/solver_continuous.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "fairex/transforms.hpp"

namespace fairex {
namespace {

void require_complete_continuous(const Instance& inst, const char* who) {
  if (inst.mode() != Mode::continuous)
    throw std::invalid_argument(std::string(who) + " needs a continuous instance; use solve_discrete");
  if (!inst.exchanges_with_all())
    throw std::invalid_argument(std::string(who) + " needs complete exchange; use solve_graph");
}

void require_full_tables(std::span<const LevelTable> levels) {
  for (const LevelTable& t : levels)
    if (t.max_rank() < levels.size())
      throw std::invalid_argument("level table for agent index " + std::to_string(t.owner()) + " covers K up to " +
                                  std::to_string(t.max_rank()) + ", need " + std::to_string(levels.size()));
}

// Complete-graph ranks read off any order-equivalent vector (X or T).
std::vector<RankPair> complete_ranks(std::span<const Rational> v) {
  const std::size_t n = v.size();
  const auto order = ascending_order(v);
  std::vector<RankPair> out(n);
  std::size_t r = 0;
  while (r < n) {
    std::size_t end = r;
    while (end < n && v[order[end]] == v[order[r]]) ++end;
    for (std::size_t q = r; q < end; ++q) out[order[q]] = RankPair{n - r, 1 + (n - end)};
    r = end;
  }
  return out;
}

EquilibriumResult finish(std::vector<Rational> totals, kernels::PeelTrace trace, std::vector<AgentDiagnostics> diag) {
  EquilibriumResult res;
  res.t = TotalProfile(std::move(totals));
  res.x = phi_inverse(res.t);
  const auto r = complete_ranks(res.t.values());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i].ranks = r[i];
  res.selection_order = std::move(trace.order);
  res.diagnostics = std::move(diag);
  return res;
}

}  // namespace

EquilibriumResult max_equilibrium(std::span<const LevelTable> levels, Execution exec) {
  require_full_tables(levels);
  const std::size_t n = levels.size();
  kernels::PeelTrace trace = kernels::peel_smallest_level(levels, exec);
  std::vector<Rational> totals(n);
  std::vector<AgentDiagnostics> diag(n);
  Rational floor;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t agent = trace.order[r];
    const Rational& lvl = trace.selected_level[r];
    AgentDiagnostics& d = diag[agent];
    d.rank_parameter = n - r;
    d.active_level = lvl;
    d.floor_binding = floor > lvl;
    if (!d.floor_binding) floor = lvl;
    totals[agent] = floor;
  }
  return finish(std::move(totals), std::move(trace), std::move(diag));
}

EquilibriumResult min_equilibrium(std::span<const LevelTable> levels, Execution exec) {
  require_full_tables(levels);
  const std::size_t n = levels.size();
  kernels::PeelTrace trace = kernels::peel_largest_level(levels, exec);
  std::vector<Rational> totals(n);
  std::vector<AgentDiagnostics> diag(n);
  std::optional<Rational> ceiling;  // unbounded until the first selection
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t agent = trace.order[r];
    const Rational& lvl = trace.selected_level[r];
    AgentDiagnostics& d = diag[agent];
    d.rank_parameter = r + 1;
    d.active_level = lvl;
    d.floor_binding = ceiling && *ceiling < lvl;
    if (!d.floor_binding) ceiling = lvl;
    totals[agent] = *ceiling;
  }
  return finish(std::move(totals), std::move(trace), std::move(diag));
}

EquilibriumResult solve_max(const Instance& inst, Execution exec) {
  require_complete_continuous(inst, "solve_max");
  const auto tables = level_tables(inst.has_graph() ? inst.with_graph(std::nullopt) : inst, LevelKind::max);
  return max_equilibrium(tables, exec);
}

EquilibriumResult solve_min(const Instance& inst, Execution exec) {
  require_complete_continuous(inst, "solve_min");
  const auto tables = level_tables(inst.has_graph() ? inst.with_graph(std::nullopt) : inst, LevelKind::min);
  return min_equilibrium(tables, exec);
}

}  // namespace fairex
