#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fairex/rational.hpp"

namespace fairex {

// One linear piece of a benefit curve, starting at `start` and running to the
// next segment's start (or to infinity for the last one).
struct Segment {
  Rational start;
  Rational slope;

  friend bool operator==(const Segment&, const Segment&) = default;
};

// Concave, nondecreasing, piecewise-linear value-of-data curve with b(0) = 0.
//
// Canonical form: first segment starts at 0, starts strictly increase, slopes
// are nonnegative and strictly decrease, and the final slope is exactly 0.
// Adjacent equal slopes are merged on construction.
class BenefitFunction {
 public:
  // Throws std::invalid_argument when the pieces do not describe a canonical curve.
  explicit BenefitFunction(std::vector<Segment> segments);

  // slope on [0, cap], flat afterwards.
  static BenefitFunction capped_linear(const Rational& slope, const Rational& cap);

  // Throws std::domain_error for t < 0.
  Rational value(const Rational& t) const;
  Rational right_derivative(const Rational& t) const;
  Rational operator()(const Rational& t) const { return value(t); }

  std::span<const Segment> segments() const noexcept { return segments_; }
  // Value of b at the start of each segment.
  std::span<const Rational> start_values() const noexcept { return values_; }
  // Start of the final (flat) segment: past it b is constant.
  const Rational& satiation() const noexcept { return segments_.back().start; }

  friend bool operator==(const BenefitFunction& a, const BenefitFunction& b) {
    return a.segments_ == b.segments_;
  }

 private:
  std::size_t segment_index(const Rational& t) const;

  std::vector<Segment> segments_;
  std::vector<Rational> values_;
};

}  // namespace fairex
