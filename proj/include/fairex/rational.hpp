#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fairex {

// Exact rational number in canonical form (denominator > 0, gcd 1).
//
// Values whose numerator and denominator fit in int64 are stored inline and
// operated on with 128-bit intermediates; anything larger is promoted to a
// GMP rational. A value is never stored big if it fits small, so the
// representation is unique per value.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(std::int64_t value) noexcept;  // NOLINT(google-explicit-constructor)
  Rational(int value) noexcept : Rational(static_cast<std::int64_t>(value)) {}
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  // Accepts "p", "p/q" and finite decimals such as "-1.25" (converted exactly).
  static Rational parse(std::string_view text);

  bool is_small() const noexcept { return !big_; }
  bool is_integer() const noexcept;
  int sign() const noexcept;

  Rational floor() const;
  Rational ceil() const;
  Rational abs() const;

  // Numerator / denominator as decimal strings (exact for big values).
  std::string numerator_str() const;
  std::string denominator_str() const;
  std::string str() const;
  double to_double() const;
  mpq_class to_mpq() const;
  std::optional<std::int64_t> to_int64() const noexcept;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

 private:
  static Rational from_canonical_mpq(mpq_class value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace fairex
