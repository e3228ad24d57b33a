#include <doctest.h>

#include "fairex/levels.hpp"
#include "fairex/solver_continuous.hpp"
#include "fairex/verifier.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fairex;
using R = Rational;

namespace {

AgentSpec capped(std::int64_t id, R slope, R cap, R cost = R(1)) {
  return AgentSpec{id, cost, BenefitFunction::capped_linear(slope, cap)};
}

Instance surrogate() { return Instance({capped(1, R(10), R(10)), capped(2, R(5, 2), R(8))}); }
Instance cap10_pair() { return Instance({capped(1, R(2), R(10)), capped(2, R(2), R(10))}); }

}  // namespace

TEST_SUITE("verifier") {
  TEST_CASE("local conditions on the surrogate pair") {
    const auto ok = check_local_conditions(surrogate(), CollectionProfile{6, 4});
    CHECK(ok.pass());
    CHECK(ok.agents[0].upward_slack == R(0));
    CHECK(ok.agents[0].downward_slack == R(0));
    CHECK(ok.agents[1].downward_slack == R(0));

    const auto bad = check_local_conditions(surrogate(), CollectionProfile{0, 8});
    CHECK_FALSE(bad.pass());
    CHECK(bad.violations == std::vector<std::size_t>{0});
    CHECK(bad.agents[0].upward_slack.sign() < 0);

    const Instance flat({AgentSpec{1, R(1), BenefitFunction({{R(0), R(1, 2)}, {R(3), R(0)}})},
                         AgentSpec{2, R(2), BenefitFunction::capped_linear(R(1), R(4))}});
    CHECK(check_local_conditions(flat, CollectionProfile{0, 0}).pass());
    CHECK_THROWS_AS(check_local_conditions(surrogate().with_mode(Mode::discrete), CollectionProfile{6, 4}),
                    std::invalid_argument);
  }

  TEST_CASE("deviation oracle examples") {
    CHECK_FALSE(deviation_oracle(cap10_pair(), CollectionProfile{5, 5}, R(1, 4)));
    const Instance nine({capped(1, R(2), R(9)), capped(2, R(2), R(9))}, Mode::discrete);
    const auto w = deviation_oracle(nine, CollectionProfile{4, 4}, R(1));
    REQUIRE(w);
    CHECK(w->agent == 0);
    CHECK(w->from == R(4));
    CHECK(w->to == R(5));
    CHECK(w->gain == R(1));
    const Instance one({capped(1, R(2), R(10))});
    CHECK_FALSE(deviation_oracle(one, CollectionProfile{10}, R(1, 8)));
    CHECK(deviation_oracle(one, CollectionProfile{7}, R(1, 8))->to == R(10));
    CHECK_THROWS_AS(deviation_oracle(one, CollectionProfile{7}, R(0)), std::invalid_argument);
  }

  TEST_CASE("conditions and oracle agree") {
    testing::Rng rng(41);
    testing::InstanceShape shape;
    shape.max_agents = 6;
    std::size_t passing = 0;
    std::size_t failing = 0;
    for (int iter = 0; iter < 300; ++iter) {
      const Instance inst = testing::random_instance(rng, shape);
      // half solver outputs nudged by one grid unit, half arbitrary profiles
      CollectionProfile x = testing::random_profile(rng, inst.size(), R(12), 8);
      if (iter % 2 == 0) {
        x = solve_max(inst).x;
        const auto i = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<std::int64_t>(inst.size()) - 1));
        x[i] = max(R(0), x[i] + R(testing::uniform(rng, -1, 1), 8));
      }
      const bool conditions = check_local_conditions(inst, x).pass();
      const bool oracle = !deviation_oracle(inst, x, R(1, 8));
      REQUIRE(conditions == oracle);
      (conditions ? passing : failing)++;
    }
    CHECK(passing > 20);
    CHECK(failing > 20);
  }

  TEST_CASE("oracle witnesses are real improvements") {
    testing::Rng rng(42);
    testing::InstanceShape shape;
    shape.max_agents = 5;
    for (int iter = 0; iter < 100; ++iter) {
      const Instance inst = testing::random_instance(rng, shape);
      const CollectionProfile x = testing::random_profile(rng, inst.size(), R(12), 4);
      const auto w = deviation_oracle(inst, x, R(1, 8));
      if (!w) continue;
      auto y = oracle::values(x);
      const R base = oracle::utility(inst, y, w->agent);
      y[w->agent] = w->to;
      REQUIRE(oracle::utility(inst, y, w->agent) - base == w->gain);
      REQUIRE(w->gain.sign() > 0);
      for (std::size_t j = 0; j < w->agent; ++j) REQUIRE(best_response_set(inst, x, j).value == oracle::utility(inst, oracle::values(x), j));
      REQUIRE(deviation_oracle(inst, x, R(1, 8), Execution::parallel)->to == w->to);
    }
  }

  TEST_CASE("best response falls as the partner collects more") {
    const Instance inst = cap10_pair();
    CHECK(oracle_best_response(inst, CollectionProfile{0, 5}, 0, R(1, 8)) == R(5));
    CHECK(oracle_best_response(inst, CollectionProfile{0, 0}, 0, R(1, 8)) == R(10));
    CHECK(best_response(inst, CollectionProfile{0, 5}, 0) == R(5));
    CHECK(best_response(inst, CollectionProfile{0, 0}, 0) == R(10));
  }

  TEST_CASE("closed-form best response matches enumeration") {
    testing::Rng rng(43);
    testing::InstanceShape shape;
    shape.max_agents = 5;
    for (int iter = 0; iter < 200; ++iter) {
      const Instance inst = testing::random_instance(rng, shape);
      const CollectionProfile x = testing::random_profile(rng, inst.size(), R(12), 4);
      const auto i = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<std::int64_t>(inst.size()) - 1));
      const auto set = best_response_set(inst, x, i);
      const R br = oracle_best_response(inst, x, i, R(1, 8));
      REQUIRE(set.lo == br);
      REQUIRE(deviation_utility(inst, x, i, set.hi) == set.value);
      REQUIRE(deviation_utility(inst, x, i, br) == set.value);
      const R b = best_response(inst, x, i);
      REQUIRE(set.lo <= b);
      REQUIRE(b <= set.hi);
    }
  }

  TEST_CASE("upward moves hurt under the strict upper form, downward moves never help") {
    testing::Rng rng(44);
    testing::InstanceShape shape;
    shape.max_agents = 6;
    std::size_t up_checked = 0;
    std::size_t down_checked = 0;
    for (int iter = 0; iter < 400; ++iter) {
      const Instance inst = testing::random_instance(rng, shape);
      const CollectionProfile x = testing::random_profile(rng, inst.size(), R(10), 4);
      const auto y = oracle::values(x);
      const auto t = oracle::totals(inst, y);
      for (std::size_t i = 0; i < inst.size(); ++i) {
        const auto [k, k_up] = oracle::ranks(inst, y, i);
        const R base = oracle::utility(inst, y, i);
        auto z = y;
        if (t[i] >= oracle::max_level(inst.agent(i), k_up)) {
          ++up_checked;
          for (int d = 1; d <= 8; ++d) {
            z[i] = y[i] + R(d, 2);
            REQUIRE(oracle::utility(inst, z, i) < base);
          }
        }
        if (t[i] <= oracle::max_level(inst.agent(i), k)) {
          ++down_checked;
          for (R v; v < y[i]; v += R(1, 4)) {
            z[i] = v;
            REQUIRE(oracle::utility(inst, z, i) <= base);
          }
        }
      }
    }
    CHECK(up_checked > 50);
    CHECK(down_checked > 50);
  }

  TEST_CASE("probe on a pair with a unique equilibrium") {
    const auto p = extremality_probe(cap10_pair(), 32, 1);
    REQUIRE(p.equilibria.size() == 1);
    CHECK(p.equilibria[0] == CollectionProfile{5, 5});
    const Instance one({capped(1, R(2), R(10))});
    const auto q = extremality_probe(one, 8, 2);
    REQUIRE(q.equilibria.size() == 1);
    CHECK(q.equilibria[0] == CollectionProfile{10});
  }

  TEST_CASE("probe finds several equilibria between the extremes") {
    const Instance inst({AgentSpec{1, R(1), BenefitFunction({{R(0), R(1)}, {R(5), R(1, 2)}, {R(12), R(0)}})},
                         capped(2, R(8), R(100))});
    const auto lo = solve_min(inst).t;
    const auto hi = solve_max(inst).t;
    const auto p = extremality_probe(inst, 32, 3);
    CHECK(p.equilibria.size() >= 2);
    for (const auto& x : p.equilibria) {
      const auto t = total_data(inst, x);
      for (std::size_t i = 0; i < inst.size(); ++i) {
        CHECK(lo[i] <= t[i]);
        CHECK(t[i] <= hi[i]);
      }
    }
  }

  TEST_CASE("probe is deterministic per seed") {
    testing::Rng rng(45);
    const Instance inst = testing::random_instance(rng, testing::InstanceShape{});
    const auto a = extremality_probe(inst, 8, 99);
    const auto b = extremality_probe(inst, 8, 99);
    CHECK(a.equilibria == b.equilibria);
    CHECK(a.converged == b.converged);
  }

  TEST_CASE("pareto scan") {
    CHECK_FALSE(pareto_scan(surrogate(), CollectionProfile{6, 4}, R(1, 2)));
    const auto w = pareto_scan(surrogate(), CollectionProfile{0, 0}, R(1, 2));
    REQUIRE(w);
    for (const R& d : w->deltas) CHECK(d.sign() >= 0);
    CHECK(total_data(surrogate(), w->profile).size() == 2);
    const Instance one({capped(1, R(2), R(10))});
    CHECK_FALSE(pareto_scan(one, CollectionProfile{10}, R(1, 4)));
    CHECK(pareto_scan(one, CollectionProfile{4}, R(1, 4)));
    CHECK(pareto_scan(surrogate(), CollectionProfile{0, 0}, R(1, 2), Execution::parallel)->profile == w->profile);
  }

  TEST_CASE("pareto scan refuses oversized grids") {
    std::vector<AgentSpec> a;
    for (int i = 0; i < 6; ++i) a.push_back(capped(i + 1, R(2), R(50)));
    try {
      pareto_scan(Instance(std::move(a)), CollectionProfile{1, 1, 1, 1, 1, 1}, R(1, 8));
      FAIL("expected a guard error");
    } catch (const GuardExceeded& e) {
      CHECK(e.required() > e.limit());
    }
    CHECK_THROWS_AS(pareto_scan(surrogate(), CollectionProfile{6, 4}, R(-1)), std::invalid_argument);
  }

  TEST_CASE("candidate values are sorted, distinct and bounded") {
    const auto v = candidate_values(surrogate(), CollectionProfile{R(7, 3), 4}, R(1, 2), R(20));
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
    CHECK(std::find(v.begin(), v.end(), R(7, 3)) != v.end());
    CHECK(v.front() == R(0));
    CHECK(v.back() == R(20));
  }
}
