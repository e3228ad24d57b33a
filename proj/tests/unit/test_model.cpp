#include <doctest.h>

#include "fairex/model.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fairex;
using R = Rational;

namespace {

AgentSpec capped(std::int64_t id, R slope, R cap, R cost = R(1)) {
  return AgentSpec{id, cost, BenefitFunction::capped_linear(slope, cap)};
}

BenefitFunction two_piece() { return BenefitFunction({{R(0), R(2)}, {R(4), R(3, 5)}, {R(9), R(0)}}); }

}  // namespace

TEST_SUITE("model_core") {
  TEST_CASE("benefit curves validate their shape") {
    CHECK_THROWS_AS(BenefitFunction({{R(1), R(1)}, {R(2), R(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(BenefitFunction({{R(0), R(1)}, {R(2), R(2)}, {R(3), R(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(BenefitFunction({{R(0), R(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(BenefitFunction({{R(0), R(2)}, {R(0), R(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(BenefitFunction({{R(0), R(-1)}, {R(2), R(0)}}), std::invalid_argument);
    // equal neighbours merge
    BenefitFunction merged({{R(0), R(2)}, {R(3), R(2)}, {R(5), R(0)}});
    CHECK(merged.segments().size() == 2);
    CHECK(merged.satiation() == R(5));
  }

  TEST_CASE("eval_benefit") {
    const auto b = BenefitFunction::capped_linear(R(2), R(10));
    CHECK(eval_benefit(b, R(4)) == R(8));
    CHECK(eval_benefit(b, R(15)) == R(20));
    CHECK(eval_benefit(BenefitFunction::capped_linear(R(10), R(10)), R(10)) == R(100));
    CHECK_THROWS_AS(eval_benefit(b, R(-1)), std::domain_error);
    CHECK(eval_benefit(b, R(0)) == R(0));
  }

  TEST_CASE("right_derivative") {
    const auto b = BenefitFunction::capped_linear(R(2), R(10));
    CHECK(right_derivative(b, R(10)) == R(0));
    CHECK(right_derivative(b, R(9)) == R(2));
    CHECK(right_derivative(two_piece(), R(4)) == R(3, 5));
    const R h(1, 1000);
    CHECK((eval_benefit(two_piece(), R(4) + h) - eval_benefit(two_piece(), R(4))) / h == R(3, 5));
    CHECK_THROWS_AS(right_derivative(b, R(-1, 2)), std::domain_error);
  }

  TEST_CASE("total_data") {
    Instance three({capped(1, R(1), R(1)), capped(2, R(1), R(1)), capped(3, R(1), R(1))});
    CHECK(total_data(three, CollectionProfile{1, 2, 3}) == TotalProfile{3, 5, 6});
    Instance two({capped(1, R(10), R(10)), capped(2, R(5, 2), R(8))});
    CHECK(total_data(two, CollectionProfile{6, 4}) == TotalProfile{10, 8});
    Instance path({capped(1, R(2), R(10)), capped(2, R(2), R(10)), capped(3, R(2), R(10))},
                  std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}}, Mode::continuous);
    CHECK(total_data(path, CollectionProfile{R(20, 3), R(10, 3), R(20, 3)}) == TotalProfile{10, 10, 10});
    CHECK_THROWS_AS(total_data(three, CollectionProfile{1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(total_data(three, CollectionProfile{1, -2, 3}), std::invalid_argument);
  }

  TEST_CASE("utility") {
    Instance two({capped(1, R(10), R(10)), capped(2, R(5, 2), R(8))});
    CHECK(utility(two, CollectionProfile{6, 4}, 0) == R(94));
    CHECK(utility(two, CollectionProfile{5, 8}, 0) == R(95));
    CHECK(utility(two, CollectionProfile{0, 0}, 1) == R(0));
  }

  TEST_CASE("ranks") {
    Instance three({capped(1, R(1), R(1)), capped(2, R(1), R(1)), capped(3, R(1), R(1))});
    CHECK(ranks(three, CollectionProfile{3, 1, 3}, 0) == RankPair{2, 1});
    CHECK(ranks(three, CollectionProfile{3, 1, 3}, 1) == RankPair{3, 3});
    for (std::size_t i = 0; i < 3; ++i) CHECK(ranks(three, CollectionProfile{2, 2, 2}, i) == RankPair{3, 1});
  }

  TEST_CASE("instance validation") {
    CHECK_THROWS_AS(Instance(std::vector<AgentSpec>{}), std::invalid_argument);
    CHECK_THROWS_AS(Instance({capped(1, R(1), R(1), R(0))}), std::invalid_argument);
    CHECK_THROWS_AS(Instance({capped(1, R(1), R(1)), capped(1, R(1), R(1))}), std::invalid_argument);
    using E = std::vector<std::pair<std::size_t, std::size_t>>;
    std::vector<AgentSpec> two{capped(1, R(1), R(1)), capped(2, R(1), R(1))};
    CHECK_THROWS_AS(Instance(two, E{{0, 0}}, Mode::continuous), std::invalid_argument);
    CHECK_THROWS_AS(Instance(two, E{{0, 1}, {1, 0}}, Mode::continuous), std::invalid_argument);
    CHECK_THROWS_AS(Instance(two, E{{0, 2}}, Mode::continuous), std::invalid_argument);
    Instance disc(two, Mode::discrete);
    CHECK_THROWS_AS(validate_profile(disc, CollectionProfile{R(1, 2), 1}), std::invalid_argument);
  }

  TEST_CASE("properties on random instances") {
    testing::Rng rng(2024);
    testing::InstanceShape shape;
    for (int iter = 0; iter < 150; ++iter) {
      const bool graph = iter % 3 == 0;
      const Instance inst = graph ? testing::random_graph_instance(rng, shape) : testing::random_instance(rng, shape);
      const std::size_t n = inst.size();
      const CollectionProfile x = testing::random_profile(rng, n, R(20), 4);
      const auto xv = oracle::values(x);
      const TotalProfile t = total_data(inst, x);
      const auto t_ref = oracle::totals(inst, xv);
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(t[i] == t_ref[i]);
        REQUIRE(t[i] >= x[i]);
        REQUIRE(utility(inst, x, i) == oracle::utility(inst, xv, i));
        const auto [k, k_up] = oracle::ranks(inst, xv, i);
        REQUIRE(ranks(inst, x, i) == RankPair{k, k_up});
        REQUIRE(all_ranks(inst, x)[i] == RankPair{k, k_up});
        bool positive_neighbour = false;
        for (std::size_t j = 0; j < n; ++j) positive_neighbour |= oracle::linked(inst, i, j) && x[j].sign() > 0;
        REQUIRE((t[i] == x[i]) == (!positive_neighbour || x[i].sign() == 0));
        if (!graph)
          for (std::size_t j = 0; j < n; ++j) {
            if (x[i] < x[j]) REQUIRE(t[i] < t[j]);
            if (x[i] == x[j]) REQUIRE(t[i] == t[j]);
          }
      }
      // Positive spillovers: raising a partner's collection never hurts.
      if (n >= 2) {
        const std::size_t i = 0, j = n - 1;
        if (oracle::linked(inst, i, j)) {
          const CollectionProfile up = with_entry(x, j, x[j] + R(3, 2));
          REQUIRE(utility(inst, up, i) >= utility(inst, x, i));
        }
      }
      // Concavity of every curve.
      for (const AgentSpec& a : inst.agents()) {
        const R t1 = testing::rational_in(rng, R(0), R(30), 4), t2 = testing::rational_in(rng, R(0), R(30), 4);
        for (R lam : {R(1, 4), R(1, 2), R(3, 4)}) {
          const R mid = lam * t1 + (R(1) - lam) * t2;
          REQUIRE(eval_benefit(a.benefit, mid) >= lam * eval_benefit(a.benefit, t1) +
                                                      (R(1) - lam) * eval_benefit(a.benefit, t2));
          REQUIRE(eval_benefit(a.benefit, mid) == oracle::benefit(a.benefit, mid));
        }
      }
    }
  }
}
