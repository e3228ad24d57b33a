#include "fairex/benefit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fairex {

BenefitFunction::BenefitFunction(std::vector<Segment> segments) {
  if (segments.empty()) throw std::invalid_argument("benefit function needs at least one segment");
  if (segments.front().start != Rational(0))
    throw std::invalid_argument("benefit function must start at t = 0, got " + segments.front().start.str());

  for (std::size_t k = 0; k < segments.size(); ++k) {
    const Segment& s = segments[k];
    if (s.slope.sign() < 0)
      throw std::invalid_argument("negative slope " + s.slope.str() + " in segment " + std::to_string(k));
    if (k == 0) {
      segments_.push_back(s);
      continue;
    }
    if (s.start <= segments[k - 1].start)
      throw std::invalid_argument("segment " + std::to_string(k) + " starts at " + s.start.str() +
                                  ", not after the previous breakpoint " + segments[k - 1].start.str());
    const Rational& prev_slope = segments_.back().slope;
    if (s.slope > prev_slope)
      throw std::invalid_argument("slope increases at t = " + s.start.str() + " (" + prev_slope.str() + " -> " +
                                  s.slope.str() + "); benefit must be concave");
    if (s.slope == prev_slope) continue;  // merge
    segments_.push_back(s);
  }
  if (segments_.back().slope.sign() != 0)
    throw std::invalid_argument("final slope must be 0, got " + segments_.back().slope.str());

  values_.reserve(segments_.size());
  values_.emplace_back(0);
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    const Segment& p = segments_[k - 1];
    values_.push_back(values_.back() + p.slope * (segments_[k].start - p.start));
  }
}

BenefitFunction BenefitFunction::capped_linear(const Rational& slope, const Rational& cap) {
  if (cap.sign() <= 0 || slope.sign() == 0) return BenefitFunction({{Rational(0), Rational(0)}});
  return BenefitFunction({{Rational(0), slope}, {cap, Rational(0)}});
}

std::size_t BenefitFunction::segment_index(const Rational& t) const {
  if (t.sign() < 0) throw std::domain_error("benefit evaluated at negative data amount " + t.str());
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](const Rational& v, const Segment& s) { return v < s.start; });
  return static_cast<std::size_t>(it - segments_.begin()) - 1;
}

Rational BenefitFunction::value(const Rational& t) const {
  const std::size_t k = segment_index(t);
  const Segment& s = segments_[k];
  if (s.slope.sign() == 0) return values_[k];
  return values_[k] + s.slope * (t - s.start);
}

Rational BenefitFunction::right_derivative(const Rational& t) const { return segments_[segment_index(t)].slope; }

}  // namespace fairex
