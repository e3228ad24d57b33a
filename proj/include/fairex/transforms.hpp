#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairex/model.hpp"

namespace fairex {

// Raised by phi_inverse when T has no preimage; `rank` is the 1-based sorted
// position where recovery failed.
class InfeasibleTotalProfile : public std::runtime_error {
 public:
  InfeasibleTotalProfile(std::size_t rank, std::size_t agent, const std::string& what)
      : std::runtime_error(what), rank_(rank), agent_(agent) {}
  std::size_t rank() const noexcept { return rank_; }
  std::size_t agent() const noexcept { return agent_; }

 private:
  std::size_t rank_;
  std::size_t agent_;
};

// Agent indices sorted by value, ties by index.
std::vector<std::size_t> ascending_order(std::span<const Rational> values);

// Complete-graph fair exchange: t_i = x_i + sum_{j != i} min(x_i, x_j).
// Sort-and-prefix-sum, O(n log n).
TotalProfile phi_forward(const CollectionProfile& x);
// Direct double loop over pairs, O(n^2). Kept as the reference for phi_forward.
TotalProfile phi_forward_reference(const CollectionProfile& x);

// Recovers X with phi_forward(X) = T by walking T in ascending order:
// x_(r) = (t_(r) - P) / (n - r + 1), P the prefix sum of recovered entries.
CollectionProfile phi_inverse(const TotalProfile& t);

}  // namespace fairex
