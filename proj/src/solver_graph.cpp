#include "fairex/solver_graph.hpp"

#include <stdexcept>
#include <string>

namespace fairex {

EquilibriumResult graph_equilibrium(const Instance& inst, std::span<const LevelTable> levels, Execution exec) {
  const Instance g = inst.has_graph() ? inst : inst.with_graph(Graph::complete(inst.size()).edges());
  const Graph& graph = g.graph();
  const std::size_t n = g.size();
  if (levels.size() != n) throw std::invalid_argument("need one level table per agent");
  for (std::size_t j = 0; j < n; ++j)
    if (levels[j].max_rank() < graph.degree(j) + 1)
      throw std::invalid_argument("level table for agent " + std::to_string(g.agent(j).id) + " covers K up to " +
                                  std::to_string(levels[j].max_rank()) + ", need " +
                                  std::to_string(graph.degree(j) + 1));

  ResidualState st;
  st.live.assign(n, true);
  st.fixed.assign(n, std::nullopt);
  st.fixed_inflow.assign(n, Rational(0));
  st.live_degree.resize(n);
  for (std::size_t j = 0; j < n; ++j) st.live_degree[j] = graph.degree(j);

  EquilibriumResult res;
  res.diagnostics.resize(n);
  for (std::size_t step = 0; step < n; ++step) {
    auto rho = [&](std::size_t j) -> std::optional<Rational> {
      if (!st.live[j]) return std::nullopt;
      const std::size_t K = st.live_degree[j] + 1;
      return st.residual(levels[j], j, K) / Rational(static_cast<std::int64_t>(K));
    };
    const auto pick = kernels::best_of<Rational>(
        n, rho, [](const Rational& a, const Rational& b) { return a < b; }, exec);
    const std::size_t i = pick->first;
    const Rational& rho_i = pick->second;

    AgentDiagnostics& d = res.diagnostics[i];
    d.rank_parameter = st.live_degree[i] + 1;
    d.active_level = levels[i].at(d.rank_parameter);
    d.floor_binding = st.floor > rho_i;
    if (!d.floor_binding) st.floor = rho_i;
    st.fixed[i] = st.floor;
    res.selection_order.push_back(i);

    st.live[i] = false;
    for (std::size_t j : graph.neighbors(i)) {
      if (!st.live[j]) continue;
      st.fixed_inflow[j] += st.floor;
      --st.live_degree[j];
    }
  }

  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = *st.fixed[j];
  res.x = CollectionProfile(std::move(x));
  res.t = total_data(g, res.x);
  for (std::size_t j = 0; j < n; ++j) res.diagnostics[j].ranks = ranks(g, res.x, j);
  return res;
}

EquilibriumResult solve_graph(const Instance& inst, Execution exec) {
  if (inst.mode() != Mode::continuous) throw std::invalid_argument("solve_graph needs a continuous instance");
  const auto tables = level_tables(inst, LevelKind::max);
  return graph_equilibrium(inst, tables, exec);
}

}  // namespace fairex
