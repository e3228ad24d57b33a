#include <doctest.h>

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "fairex/kernels.hpp"
#include "generators.hpp"

using namespace fairex;
using R = Rational;

TEST_SUITE("kernels") {
  TEST_CASE("best_of and first_of agree across execution modes") {
    testing::Rng rng(3);
    for (int iter = 0; iter < 50; ++iter) {
      const auto n = static_cast<std::size_t>(testing::uniform(rng, 0, 300));
      std::vector<std::int64_t> v(n);
      for (auto& x : v) x = testing::uniform(rng, -5, 5);
      auto fn = [&](std::size_t i) -> std::optional<std::int64_t> {
        if (v[i] == 0) return std::nullopt;
        return v[i];
      };
      auto less = [](std::int64_t a, std::int64_t b) { return a < b; };
      const auto s = kernels::best_of<std::int64_t>(n, fn, less, Execution::serial);
      const auto p = kernels::best_of<std::int64_t>(n, fn, less, Execution::parallel);
      REQUIRE(s == p);
      if (s) {
        const auto first = std::find(v.begin(), v.end(), s->second) - v.begin();
        REQUIRE(static_cast<std::size_t>(first) == s->first);  // lowest index among ties
      }
      auto pos = [&](std::size_t i) -> std::optional<std::int64_t> {
        if (v[i] < 4) return std::nullopt;
        return v[i];
      };
      REQUIRE(kernels::first_of<std::int64_t>(n, pos, Execution::serial) ==
              kernels::first_of<std::int64_t>(n, pos, Execution::parallel));
    }
  }

  TEST_CASE("exceptions inside parallel regions propagate") {
    auto boom = [](std::size_t i) -> std::optional<int> {
      if (i == 37) throw std::runtime_error("boom");
      return static_cast<int>(i);
    };
    CHECK_THROWS_AS(kernels::best_of<int>(100, boom, std::less<int>{}, Execution::parallel), std::runtime_error);
    CHECK_THROWS_AS(kernels::first_of<int>(100, [](std::size_t i) -> std::optional<int> {
                      if (i == 60) throw std::runtime_error("boom");
                      return std::nullopt;
                    }, Execution::parallel),
                    std::runtime_error);
  }

  TEST_CASE("peeling passes: parallel ranked path equals the serial reference") {
    testing::Rng rng(19);
    for (int iter = 0; iter < 200; ++iter) {
      const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 40));
      std::vector<LevelTable> max_tables, min_tables;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<R> levels(n);
        R cur;
        for (auto& l : levels) {
          // coarse values so ties are common
          if (testing::uniform(rng, 0, 2) == 0) cur += R(testing::uniform(rng, 1, 3), 2);
          l = cur;
        }
        max_tables.push_back(LevelTable::from_values(i, levels, LevelKind::max));
        min_tables.push_back(LevelTable::from_values(i, levels, LevelKind::min));
      }
      const auto a = kernels::peel_smallest_level(max_tables, Execution::serial);
      const auto b = kernels::peel_smallest_level(max_tables, Execution::parallel);
      REQUIRE(a.order == b.order);
      REQUIRE(a.selected_level == b.selected_level);
      const auto c = kernels::peel_largest_level(min_tables, Execution::serial);
      const auto d = kernels::peel_largest_level(min_tables, Execution::parallel);
      REQUIRE(c.order == d.order);
      REQUIRE(c.selected_level == d.selected_level);
    }
  }

  TEST_CASE("worker count setting") {
    const int before = parallel_jobs();
    set_parallel_jobs(3);
    CHECK(parallel_jobs() == 3);
    set_parallel_jobs(before);
  }
}
