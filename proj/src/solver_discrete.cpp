#include "fairex/solver_discrete.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairex/levels.hpp"

namespace fairex {

DiscreteEquilibrium solve_discrete(const Instance& inst) {
  if (inst.mode() != Mode::discrete) throw std::invalid_argument("solve_discrete needs a discrete instance");
  if (!inst.exchanges_with_all()) throw std::invalid_argument("solve_discrete needs complete exchange");
  const Instance game = inst.has_graph() ? inst.with_graph(std::nullopt) : inst;
  const std::size_t n = game.size();
  const auto levels = level_tables(game, LevelKind::max);

  std::vector<std::size_t> remaining(n);
  for (std::size_t j = 0; j < n; ++j) remaining[j] = j;
  std::vector<std::optional<Rational>> fixed(n);
  Rational fixed_sum;
  Rational prev;

  DiscreteEquilibrium res;
  res.diagnostics.resize(n);
  while (!remaining.empty()) {
    const std::size_t K = remaining.size();
    const Rational k_rat(static_cast<std::int64_t>(K));

    std::vector<Rational> target(n);
    std::vector<Rational> floor_of(n);
    for (std::size_t j : remaining) {
      target[j] = (levels[j].at(K) - fixed_sum) / k_rat;
      floor_of[j] = max(target[j].floor(), prev);
    }
    Rational m = floor_of[remaining.front()];
    for (std::size_t j : remaining) m = min(m, floor_of[j]);

    TieGroup group;
    group.rank_parameter = K;
    group.floor = m;
    for (std::size_t j : remaining)
      if (floor_of[j] == m) {
        group.members.push_back(j);
        group.targets.push_back(target[j]);
      }

    // Pessimistic completion: every remaining agent at m + 1.
    const Rational up = m + Rational(1);
    std::vector<Rational> trial(n);
    for (std::size_t j = 0; j < n; ++j) trial[j] = fixed[j] ? *fixed[j] : up;
    const CollectionProfile at_up(trial);
    for (std::size_t j : group.members) {
      const Rational stay = utility(game, at_up, j);
      const Rational drop = utility(game, with_entry(at_up, j, m), j);
      if (drop > stay) {
        group.deviator = j;
        break;
      }
    }

    auto fix = [&](std::size_t j, const Rational& value) {
      AgentDiagnostics& d = res.diagnostics[j];
      d.rank_parameter = K;
      d.active_level = levels[j].at(K);
      d.floor_binding = target[j].floor() < prev;
      fixed[j] = value;
      fixed_sum += value;
      res.selection_order.push_back(j);
      remaining.erase(std::find(remaining.begin(), remaining.end(), j));
    };
    if (!group.deviator) {
      group.placed_above = true;
      for (std::size_t j : group.members) fix(j, up);
      prev = up;
    } else {
      fix(*group.deviator, m);
      prev = m;
    }
    res.rounds.push_back(std::move(group));
  }

  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = *fixed[j];
  res.x = CollectionProfile(std::move(x));
  res.t = total_data(game, res.x);
  res.diagnostics.resize(n);
  for (std::size_t j = 0; j < n; ++j) res.diagnostics[j].ranks = ranks(game, res.x, j);
  return res;
}

}  // namespace fairex
