#include "fairex/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace fairex {

void set_parallel_jobs(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

int parallel_jobs() { return omp_get_max_threads(); }

namespace kernels {
namespace {

// Levels of all agents replaced by their position in one sorted list of
// distinct values, so selection compares integers instead of rationals.
struct RankedLevels {
  std::vector<Rational> distinct;
  std::vector<std::size_t> offset;  // steps of agent j live in [offset[j], offset[j+1])
  std::vector<std::size_t> from_rank;
  std::vector<std::uint32_t> value_rank;
};

RankedLevels rank_levels(std::span<const LevelTable> tables) {
  RankedLevels out;
  out.offset.reserve(tables.size() + 1);
  out.offset.push_back(0);
  for (const LevelTable& t : tables) {
    for (const auto& s : t.steps()) {
      out.distinct.push_back(s.value);
      out.from_rank.push_back(s.from_rank);
    }
    out.offset.push_back(out.from_rank.size());
  }
  std::vector<Rational> all = out.distinct;
  std::sort(out.distinct.begin(), out.distinct.end());
  out.distinct.erase(std::unique(out.distinct.begin(), out.distinct.end()), out.distinct.end());
  out.value_rank.reserve(all.size());
  for (const Rational& v : all) {
    const auto pos = std::lower_bound(out.distinct.begin(), out.distinct.end(), v) - out.distinct.begin();
    out.value_rank.push_back(static_cast<std::uint32_t>(pos));
  }
  return out;
}

PeelTrace peel_smallest_serial(std::span<const LevelTable> tables) {
  const std::size_t n = tables.size();
  std::vector<std::size_t> remaining(n);
  for (std::size_t j = 0; j < n; ++j) remaining[j] = j;
  PeelTrace trace;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t K = n - r;
    std::size_t best = 0;
    for (std::size_t p = 1; p < remaining.size(); ++p)
      if (tables[remaining[p]].at(K) < tables[remaining[best]].at(K)) best = p;
    trace.order.push_back(remaining[best]);
    trace.selected_level.push_back(tables[remaining[best]].at(K));
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return trace;
}

PeelTrace peel_largest_serial(std::span<const LevelTable> tables) {
  const std::size_t n = tables.size();
  std::vector<std::size_t> remaining(n);
  for (std::size_t j = 0; j < n; ++j) remaining[j] = j;
  PeelTrace trace;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t K = r + 1;
    std::size_t best = 0;
    for (std::size_t p = 1; p < remaining.size(); ++p)
      if (tables[remaining[p]].at(K) > tables[remaining[best]].at(K)) best = p;
    trace.order.push_back(remaining[best]);
    trace.selected_level.push_back(tables[remaining[best]].at(K));
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return trace;
}

template <bool Smallest>
PeelTrace peel_parallel(std::span<const LevelTable> tables) {
  const std::size_t n = tables.size();
  const RankedLevels ranked = rank_levels(tables);
  const auto top = static_cast<std::uint64_t>(ranked.distinct.size());

  std::vector<std::uint32_t> alive(n);
  std::vector<std::size_t> cursor(n);
  for (std::size_t j = 0; j < n; ++j) {
    alive[j] = static_cast<std::uint32_t>(j);
    cursor[j] = Smallest ? ranked.offset[j + 1] - 1 : ranked.offset[j];
  }

  PeelTrace trace;
  trace.order.reserve(n);
  trace.selected_level.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t K = Smallest ? n - r : r + 1;
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    const auto live = static_cast<std::ptrdiff_t>(alive.size());
#pragma omp parallel for reduction(min : best) schedule(static)
    for (std::ptrdiff_t p = 0; p < live; ++p) {
      const std::uint32_t j = alive[static_cast<std::size_t>(p)];
      std::size_t c = cursor[j];
      if constexpr (Smallest) {
        while (c > ranked.offset[j] && ranked.from_rank[c] > K) --c;
      } else {
        while (c + 1 < ranked.offset[j + 1] && ranked.from_rank[c + 1] <= K) ++c;
      }
      cursor[j] = c;
      const std::uint64_t v = ranked.value_rank[c];
      const std::uint64_t key = ((Smallest ? v : top - v) << 32) | j;
      best = std::min(best, key);
    }
    const auto chosen = static_cast<std::uint32_t>(best & 0xffffffffu);
    trace.order.push_back(chosen);
    trace.selected_level.push_back(ranked.distinct[ranked.value_rank[cursor[chosen]]]);
    alive.erase(std::lower_bound(alive.begin(), alive.end(), chosen));
  }
  return trace;
}

}  // namespace

PeelTrace peel_smallest_level(std::span<const LevelTable> tables, Execution exec) {
  return exec == Execution::serial ? peel_smallest_serial(tables) : peel_parallel<true>(tables);
}

PeelTrace peel_largest_level(std::span<const LevelTable> tables, Execution exec) {
  return exec == Execution::serial ? peel_largest_serial(tables) : peel_parallel<false>(tables);
}

}  // namespace kernels
}  // namespace fairex
