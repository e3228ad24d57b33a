#include <doctest.h>

#include "fairex/levels.hpp"
#include "fairex/solver_continuous.hpp"
#include "fairex/solver_graph.hpp"
#include "fairex/verifier.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fairex;
using R = Rational;
using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

namespace {

AgentSpec capped(std::int64_t id, R slope, R cap, R cost = R(1)) {
  return AgentSpec{id, cost, BenefitFunction::capped_linear(slope, cap)};
}

Edges all_pairs(std::size_t n) {
  Edges e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

}  // namespace

TEST_SUITE("solver_graph") {
  TEST_CASE("path of three") {
    const Instance path({capped(1, R(2), R(10)), capped(2, R(2), R(10)), capped(3, R(2), R(10))},
                        Edges{{0, 1}, {1, 2}}, Mode::continuous);
    const auto r = solve_graph(path);
    CHECK(r.x == CollectionProfile{R(20, 3), R(10, 3), R(20, 3)});
    CHECK(r.t == TotalProfile{10, 10, 10});
    CHECK(r.selection_order.front() == 1);
    CHECK_FALSE(deviation_oracle(path, r.x, R(1, 8)));
  }

  TEST_CASE("edgeless graph: everyone collects to their own first level") {
    testing::Rng rng(21);
    for (int iter = 0; iter < 30; ++iter) {
      const Instance inst = testing::random_instance(rng, testing::InstanceShape{}).with_graph(Edges{});
      const auto r = solve_graph(inst);
      for (std::size_t i = 0; i < inst.size(); ++i) REQUIRE(r.x[i] == k_level(inst.agent(i), 1));
    }
  }

  TEST_CASE("complete graph reduces to the max pass") {
    const Instance pair({capped(1, R(10), R(10)), capped(2, R(5, 2), R(8))}, Edges{{0, 1}}, Mode::continuous);
    CHECK(solve_graph(pair).x == CollectionProfile{6, 4});
    testing::Rng rng(22);
    for (int iter = 0; iter < 100; ++iter) {
      const Instance inst = testing::random_instance(rng, testing::InstanceShape{});
      const auto expected = solve_max(inst);
      REQUIRE(solve_graph(inst.with_graph(all_pairs(inst.size()))).x == expected.x);
      REQUIRE(solve_graph(inst).x == expected.x);
    }
  }

  TEST_CASE("random graphs: certified, nondecreasing assignments") {
    testing::Rng rng(23);
    testing::InstanceShape shape;
    shape.max_agents = 6;
    for (int iter = 0; iter < 60; ++iter) {
      const Instance inst = testing::random_graph_instance(rng, shape, static_cast<int>(testing::uniform(rng, 20, 80)));
      const auto r = solve_graph(inst);
      REQUIRE(total_data(inst, r.x) == r.t);
      REQUIRE(check_local_conditions(inst, r.x).pass());
      REQUIRE_FALSE(deviation_oracle(inst, r.x, R(1, 8)));
      for (std::size_t q = 1; q < r.selection_order.size(); ++q)
        REQUIRE(r.x[r.selection_order[q - 1]] <= r.x[r.selection_order[q]]);
    }
  }

  TEST_CASE("serial and parallel paths agree") {
    testing::Rng rng(24);
    testing::InstanceShape shape;
    shape.max_agents = 40;
    for (int iter = 0; iter < 20; ++iter) {
      const Instance inst = testing::random_graph_instance(rng, shape, 30);
      REQUIRE(solve_graph(inst, Execution::serial).x == solve_graph(inst, Execution::parallel).x);
    }
  }

  TEST_CASE("short level tables are rejected") {
    const Instance path({capped(1, R(2), R(10)), capped(2, R(2), R(10)), capped(3, R(2), R(10))},
                        Edges{{0, 1}, {1, 2}}, Mode::continuous);
    std::vector<LevelTable> tables;
    for (std::size_t i = 0; i < 3; ++i) tables.push_back(LevelTable::from_values(i, std::vector<R>{R(10)}));
    CHECK_THROWS_AS(graph_equilibrium(path, tables), std::invalid_argument);
  }
}
