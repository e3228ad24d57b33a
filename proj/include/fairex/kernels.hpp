#pragma once

// Data-parallel building blocks. Every kernel has a serial path that runs the
// plain loop and a parallel path (OpenMP) whose result is identical: merges
// are deterministic and ties always go to the lowest index.

#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <omp.h>

#include "fairex/levels.hpp"
#include "fairex/rational.hpp"

namespace fairex {

enum class Execution { serial, parallel };

// Worker count for Execution::parallel regions (<= 0 keeps the OpenMP default).
void set_parallel_jobs(int jobs);
int parallel_jobs();

namespace kernels {

namespace detail {

class ErrorSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mu_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

}  // namespace detail

// Evaluates fn(i) -> std::optional<R> for i in [0, count) and returns the best
// (index, value) under `better`; equal values resolve to the lowest index.
template <class R, class Fn, class Better>
std::optional<std::pair<std::size_t, R>> best_of(std::size_t count, Fn&& fn, Better&& better, Execution exec) {
  using Entry = std::optional<std::pair<std::size_t, R>>;
  auto prefer = [&](const Entry& cand, const Entry& cur) {
    if (!cand) return false;
    if (!cur) return true;
    if (better(cand->second, cur->second)) return true;
    if (better(cur->second, cand->second)) return false;
    return cand->first < cur->first;
  };
  Entry best;
  if (exec == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) {
      if (auto v = fn(i)) {
        Entry cand{std::in_place, i, std::move(*v)};
        if (prefer(cand, best)) best = std::move(cand);
      }
    }
    return best;
  }
  detail::ErrorSlot errors;
  std::mutex merge_mu;
  const auto signed_count = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel
  {
    Entry local;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < signed_count; ++s) {
      errors.run([&] {
        const auto i = static_cast<std::size_t>(s);
        if (auto v = fn(i)) {
          Entry cand{std::in_place, i, std::move(*v)};
          if (prefer(cand, local)) local = std::move(cand);
        }
      });
    }
    std::lock_guard lock(merge_mu);
    if (prefer(local, best)) best = std::move(local);
  }
  errors.rethrow();
  return best;
}

// Lowest i in [0, count) for which fn(i) yields a value.
template <class R, class Fn>
std::optional<std::pair<std::size_t, R>> first_of(std::size_t count, Fn&& fn, Execution exec) {
  if (exec == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      if (auto v = fn(i)) return std::pair<std::size_t, R>{i, std::move(*v)};
    return std::nullopt;
  }
  std::atomic<std::size_t> cutoff{std::numeric_limits<std::size_t>::max()};
  std::vector<std::optional<R>> found(count);
  detail::ErrorSlot errors;
  const auto signed_count = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t s = 0; s < signed_count; ++s) {
    const auto i = static_cast<std::size_t>(s);
    if (i > cutoff.load(std::memory_order_relaxed)) continue;
    errors.run([&] {
      if (auto v = fn(i)) {
        found[i] = std::move(v);
        std::size_t cur = cutoff.load();
        while (i < cur && !cutoff.compare_exchange_weak(cur, i)) {
        }
      }
    });
  }
  errors.rethrow();
  const std::size_t at = cutoff.load();
  if (at == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return std::pair<std::size_t, R>{at, std::move(*found[at])};
}

// Outcome of a peeling pass: agents in selection order with the level each
// carried when selected (rank parameter K at step r is n - r for the max
// pass and r + 1 for the min pass, 0-based r).
struct PeelTrace {
  std::vector<std::size_t> order;
  std::vector<Rational> selected_level;
};

// Repeatedly removes the remaining agent with the smallest level at
// K = |remaining| (lowest index on ties).
PeelTrace peel_smallest_level(std::span<const LevelTable> tables, Execution exec);
// Repeatedly removes the remaining agent with the largest level at
// K = number already removed + 1 (lowest index on ties).
PeelTrace peel_largest_level(std::span<const LevelTable> tables, Execution exec);

}  // namespace kernels
}  // namespace fairex
