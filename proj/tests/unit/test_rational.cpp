#include <doctest.h>

#include <cstdint>
#include <limits>
#include <random>

#include <gmpxx.h>

#include "fairex/rational.hpp"

using fairex::Rational;

namespace {

mpq_class q(std::int64_t n, std::int64_t d) {
  mpq_class r(mpz_class(std::to_string(n)), mpz_class(std::to_string(d)));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("canonical form") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(0, -5).str() == "0");
    CHECK(Rational(8, 4).str() == "2");
    CHECK(Rational(6, 4).denominator_str() == "2");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  }

  TEST_CASE("parse") {
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse(" -3/9 ") == Rational(-1, 3));
    CHECK(Rational::parse("1.25") == Rational(5, 4));
    CHECK(Rational::parse("-.5") == Rational(-1, 2));
    CHECK(Rational::parse("0.001") == Rational(1, 1000));
    CHECK(Rational::parse("0.125") == Rational(1, 8));
    CHECK(Rational::parse("010/012") == Rational(5, 6));  // leading zeros stay decimal
    CHECK(Rational::parse("123456789012345678901234567890/3").str() == "41152263004115226300411522630");
    CHECK_THROWS(Rational::parse(""));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK_THROWS(Rational::parse("1e5"));
    CHECK_THROWS(Rational::parse("1/2/3"));
  }

  TEST_CASE("floor and ceil") {
    CHECK(Rational(7, 2).floor() == Rational(3));
    CHECK(Rational(7, 2).ceil() == Rational(4));
    CHECK(Rational(-7, 2).floor() == Rational(-4));
    CHECK(Rational(-7, 2).ceil() == Rational(-3));
    CHECK(Rational(5).floor() == Rational(5));
    CHECK(Rational(-1, 3).abs() == Rational(1, 3));
  }

  TEST_CASE("division by zero") { CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error); }

  TEST_CASE("arithmetic agrees with GMP on random operands, including overflow") {
    std::mt19937_64 rng(11);
    const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 3;
    std::uniform_int_distribution<std::int64_t> wide(-big, big);
    std::uniform_int_distribution<std::int64_t> narrow(-50, 50);
    for (int iter = 0; iter < 4000; ++iter) {
      auto draw = [&](bool w) { return w ? wide(rng) : narrow(rng); };
      const bool w = iter % 2 == 0;
      std::int64_t an = draw(w), ad = draw(w), bn = draw(w), bd = draw(w);
      if (ad == 0) ad = 1;
      if (bd == 0) bd = 7;
      const Rational a(an, ad), b(bn, bd);
      const mpq_class qa = q(an, ad), qb = q(bn, bd);
      REQUIRE((a + b).to_mpq() == qa + qb);
      REQUIRE((a - b).to_mpq() == qa - qb);
      REQUIRE((a * b).to_mpq() == qa * qb);
      if (bn != 0) REQUIRE((a / b).to_mpq() == qa / qb);
      REQUIRE(((a <=> b) < 0) == (qa < qb));
      REQUIRE((a == b) == (qa == qb));
      // Products that came back into range are stored inline again.
      if (bn != 0) {
        const Rational round = (a * b) / b;
        REQUIRE(round == a);
        REQUIRE(round.is_small() == a.is_small());
      }
    }
  }

  TEST_CASE("big values demote when they fit") {
    Rational x(std::numeric_limits<std::int64_t>::max());
    Rational y = x * x;
    CHECK_FALSE(y.is_small());
    Rational z = y / x;
    CHECK(z.is_small());
    CHECK(z == x);
    CHECK(z.to_int64() == std::numeric_limits<std::int64_t>::max());
    CHECK_FALSE(y.to_int64().has_value());
  }

  TEST_CASE("min and max") {
    CHECK(fairex::min(Rational(1, 3), Rational(1, 4)) == Rational(1, 4));
    CHECK(fairex::max(Rational(1, 3), Rational(1, 4)) == Rational(1, 3));
  }
}
