#include <doctest.h>

#include "fairex/corpus.hpp"
#include "fairex/solver_discrete.hpp"
#include "fairex/verifier.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fairex;
using R = Rational;

namespace {

Instance capped_pair(R cap) {
  return Instance({AgentSpec{1, R(1), BenefitFunction::capped_linear(R(2), cap)},
                   AgentSpec{2, R(1), BenefitFunction::capped_linear(R(2), cap)}},
                  Mode::discrete);
}

testing::InstanceShape discrete_shape() {
  testing::InstanceShape s;
  s.max_agents = 4;
  s.curve.integer_breaks = true;
  s.curve.max_satiation = R(8);
  return s;
}

}  // namespace

TEST_SUITE("solver_discrete") {
  TEST_CASE("capped pairs") {
    const auto nine = solve_discrete(capped_pair(R(9)));
    CHECK(nine.x == CollectionProfile{5, 5});
    REQUIRE(nine.rounds.size() == 1);
    CHECK(nine.rounds[0].floor == R(4));
    CHECK(nine.rounds[0].placed_above);

    const auto eight = solve_discrete(capped_pair(R(8)));
    CHECK(eight.x == CollectionProfile{4, 4});
    REQUIRE(eight.rounds.size() == 2);
    CHECK_FALSE(eight.rounds[0].placed_above);
    CHECK(eight.rounds[0].deviator == std::optional<std::size_t>{0});
    CHECK(eight.rounds[1].targets[0] == R(4));

    CHECK(deviation_oracle(capped_pair(R(9)), CollectionProfile{4, 4}, R(1))->to == R(5));
  }

  TEST_CASE("six agents with helpers") {
    const NamedExample ex = load_example("discrete_incomparable");
    const auto r = solve_discrete(ex.instance);
    CHECK(r.x == CollectionProfile{1, 1, 5, 5, 5, 100});
    CHECK_FALSE(deviation_oracle(ex.instance, r.x, R(1)));
    CHECK(oracle::integer_equilibrium(ex.instance, oracle::values(r.x), 240));
  }

  TEST_CASE("printed helper-free profile is one unit too high for the last agent") {
    const NamedExample ex = load_example("discrete_incomparable");
    const CollectionProfile printed{0, 0, 6, 6, 6, 100};
    const CollectionProfile fixed{0, 0, 6, 6, 6, 99};
    const auto w = deviation_oracle(ex.instance, printed, R(1));
    REQUIRE(w);
    CHECK(w->agent == 5);
    CHECK(w->from == R(100));
    CHECK(w->to == R(99));
    CHECK(w->gain == R(1) - example_epsilon());
    CHECK_FALSE(deviation_oracle(ex.instance, fixed, R(1)));
    CHECK(oracle::integer_equilibrium(ex.instance, oracle::values(fixed), 240));
    CHECK_FALSE(oracle::integer_equilibrium(ex.instance, oracle::values(printed), 240));
  }

  TEST_CASE("random discrete instances: integer outputs certified exhaustively") {
    testing::Rng rng(31);
    for (int iter = 0; iter < 80; ++iter) {
      const Instance inst = testing::random_instance(rng, discrete_shape(), Mode::discrete);
      const auto r = solve_discrete(inst);
      for (const R& v : r.x) REQUIRE(v.floor() == v);
      REQUIRE(oracle::integer_equilibrium(inst, oracle::values(r.x), 20));
      REQUIRE_FALSE(deviation_oracle(inst, r.x, R(1)));
      for (std::size_t q = 1; q < r.rounds.size(); ++q) REQUIRE(r.rounds[q - 1].floor <= r.rounds[q].floor);
    }
  }

  TEST_CASE("continuous or graph instances are rejected") {
    CHECK_THROWS_AS(solve_discrete(capped_pair(R(9)).with_mode(Mode::continuous)), std::invalid_argument);
    CHECK_THROWS_AS(solve_discrete(capped_pair(R(9)).with_graph(std::vector<std::pair<std::size_t, std::size_t>>{})),
                    std::invalid_argument);
  }
}
