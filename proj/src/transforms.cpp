#include "fairex/transforms.hpp"

#include <algorithm>
#include <numeric>

namespace fairex {

std::vector<std::size_t> ascending_order(std::span<const Rational> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

TotalProfile phi_forward(const CollectionProfile& x) {
  const std::size_t n = x.size();
  const auto order = ascending_order(x.values());
  std::vector<Rational> t(n);
  // In ascending order t_(r) = sum_{q<r} x_(q) + (n - r + 1) x_(r); tied
  // entries get the same value because their extra terms cancel.
  Rational prefix;
  std::size_t r = 0;
  while (r < n) {
    std::size_t end = r;
    while (end < n && x[order[end]] == x[order[r]]) ++end;
    const Rational& v = x[order[r]];
    const Rational total = prefix + Rational(static_cast<std::int64_t>(n - r)) * v;
    for (std::size_t q = r; q < end; ++q) t[order[q]] = total;
    prefix += Rational(static_cast<std::int64_t>(end - r)) * v;
    r = end;
  }
  return TotalProfile(std::move(t));
}

TotalProfile phi_forward_reference(const CollectionProfile& x) {
  const std::size_t n = x.size();
  std::vector<Rational> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = x[i];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) t[i] += min(x[i], x[j]);
  }
  return TotalProfile(std::move(t));
}

CollectionProfile phi_inverse(const TotalProfile& t) {
  const std::size_t n = t.size();
  const auto order = ascending_order(t.values());
  std::vector<Rational> x(n);
  Rational prefix;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t agent = order[r];
    Rational xr = (t[agent] - prefix) / Rational(static_cast<std::int64_t>(n - r));
    if (xr.sign() < 0)
      throw InfeasibleTotalProfile(r + 1, agent,
                                   "total profile not in the image of the exchange map: rank " +
                                       std::to_string(r + 1) + " recovers negative collection " + xr.str());
    if (r > 0 && xr < x[order[r - 1]])
      throw InfeasibleTotalProfile(r + 1, agent,
                                   "total profile not in the image of the exchange map: rank " +
                                       std::to_string(r + 1) + " breaks the ascending order");
    prefix += xr;
    x[agent] = std::move(xr);
  }
  return CollectionProfile(std::move(x));
}

}  // namespace fairex
