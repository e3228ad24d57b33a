#include "fairex/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fairex {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t uabs(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

bool fits(i128 v) { return v >= -static_cast<i128>(kMax) && v <= static_cast<i128>(kMax); }

mpz_class mpz_from_i128(i128 v) {
  const bool neg = v < 0;
  u128 mag = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  mpz_class hi(static_cast<unsigned long>(mag >> 64));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

}  // namespace

Rational::Rational(std::int64_t value) noexcept {
  if (value == std::numeric_limits<std::int64_t>::min()) {
    big_ = std::make_unique<mpq_class>(mpz_from_i128(value), 1);
  } else {
    num_ = value;
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::uint64_t g = gcd64(uabs(num), uabs(den));
  n /= g;
  d /= g;
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  } else {
    mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
    *this = from_canonical_mpq(std::move(q));
  }
}

Rational::Rational(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  *this = from_canonical_mpq(std::move(q));
}

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

Rational Rational::from_canonical_mpq(mpq_class value) {
  Rational r;
  const mpz_class& n = value.get_num();
  const mpz_class& d = value.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
    r.num_ = n.get_si();
    r.den_ = d.get_si();
  } else {
    r.big_ = std::make_unique<mpq_class>(std::move(value));
  }
  return r;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

bool Rational::is_integer() const noexcept {
  return big_ ? big_->get_den() == 1 : den_ == 1;
}

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

std::optional<std::int64_t> Rational::to_int64() const noexcept {
  if (big_ || den_ != 1) return std::nullopt;
  return num_;
}

Rational Rational::floor() const {
  if (big_) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return Rational(mpq_class(q));
  }
  std::int64_t q = num_ / den_;
  if ((num_ % den_ != 0) && (num_ < 0)) --q;
  return Rational(q);
}

Rational Rational::ceil() const { return -((-*this).floor()); }

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

std::string Rational::numerator_str() const {
  return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const {
  return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::string Rational::str() const {
  if (is_integer()) return numerator_str();
  return numerator_str() + "/" + denominator_str();
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto bad = [&]() { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  std::string_view s = trim(text);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  mpq_class q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view p = trim(s.substr(0, slash));
    std::string_view d = trim(s.substr(slash + 1));
    if (!digits_only(p) || !digits_only(d)) throw bad();
    mpz_class den{std::string(d), 10};
    if (den == 0) throw std::domain_error("rational with zero denominator: '" + std::string(text) + "'");
    q = mpq_class(mpz_class(std::string(p), 10), den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !digits_only(whole)) ||
        (!frac.empty() && !digits_only(frac)))
      throw bad();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class n{std::string(whole.empty() ? "0" : whole) + std::string(frac), 10};
    q = mpq_class(n, scale);
  } else {
    if (!digits_only(s)) throw bad();
    q = mpq_class(mpz_class(std::string(s), 10));
  }
  q.canonicalize();
  if (neg) q = -q;
  return from_canonical_mpq(std::move(q));
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational::from_canonical_mpq(a.to_mpq() + b.to_mpq());
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t s;
    if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != std::numeric_limits<std::int64_t>::min())
      return Rational(s);
  }
  const std::uint64_t g = gcd64(static_cast<std::uint64_t>(a.den_), static_cast<std::uint64_t>(b.den_));
  const std::int64_t ad = a.den_ / static_cast<std::int64_t>(g);
  const std::int64_t bd = b.den_ / static_cast<std::int64_t>(g);
  i128 t = static_cast<i128>(a.num_) * bd + static_cast<i128>(b.num_) * ad;
  i128 den;
  if (g == 1) {
    den = static_cast<i128>(a.den_) * b.den_;
  } else {
    const u128 tm = t < 0 ? static_cast<u128>(-t) : static_cast<u128>(t);
    const std::uint64_t g2 = gcd64(static_cast<std::uint64_t>(tm % g), g);
    t /= static_cast<i128>(g2);
    den = static_cast<i128>(ad) * (b.den_ / static_cast<std::int64_t>(g2));
  }
  if (fits(t) && fits(den)) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(t);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  return Rational::from_canonical_mpq(mpq_class(mpz_from_i128(t), mpz_from_i128(den)));
}

Rational Rational::operator-() const {
  if (big_) return from_canonical_mpq(-*big_);
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational::from_canonical_mpq(a.to_mpq() * b.to_mpq());
  if (a.num_ == 0 || b.num_ == 0) return Rational();
  const auto g1 = static_cast<std::int64_t>(gcd64(uabs(a.num_), static_cast<std::uint64_t>(b.den_)));
  const auto g2 = static_cast<std::int64_t>(gcd64(uabs(b.num_), static_cast<std::uint64_t>(a.den_)));
  const i128 n = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
  const i128 d = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
  if (fits(n) && fits(d)) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  return Rational::from_canonical_mpq(mpq_class(mpz_from_i128(n), mpz_from_i128(d)));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.sign() == 0) throw std::domain_error("rational division by zero");
  if (a.big_ || b.big_) return Rational::from_canonical_mpq(a.to_mpq() / b.to_mpq());
  Rational inv;
  inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
  inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
  return a * inv;
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (a.big_ || b.big_) {
    if (!a.big_ || !b.big_) return false;  // canonical: big never equals small
    return *a.big_ == *b.big_;
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  if (a.big_ || b.big_) {
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  const i128 l = static_cast<i128>(a.num_) * b.den_;
  const i128 r = static_cast<i128>(b.num_) * a.den_;
  return l < r ? std::strong_ordering::less
               : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace fairex
