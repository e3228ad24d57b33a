#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fairex/kernels.hpp"
#include "fairex/model.hpp"

namespace fairex {

// Per-agent view of the two one-sided equilibrium conditions
//   lower <= t_i <= upper,  lower = s~_i^{k_up}, upper = s_i^{k}
// (ranks over the neighborhood on a graph). The lower bound uses the
// min-level, which is exactly "no strictly profitable upward move".
struct AgentSlack {
  RankPair ranks;
  Rational total;
  Rational lower;
  Rational upper;
  Rational upward_slack;    // total - lower
  Rational downward_slack;  // upper - total
  bool strict_upward = false;  // t_i >= s_i^{k_up} also holds

  bool ok() const { return upward_slack.sign() >= 0 && downward_slack.sign() >= 0; }
};

struct LocalReport {
  std::vector<AgentSlack> agents;
  std::vector<std::size_t> violations;  // agent indices failing either side

  bool pass() const { return violations.empty(); }
  bool strict_form() const;
};

// Continuous mode only; discrete instances must go through deviation_oracle.
LocalReport check_local_conditions(const Instance& inst, const CollectionProfile& x);

struct DeviationWitness {
  std::size_t agent = 0;  // index
  Rational from;
  Rational to;
  Rational gain;  // > 0
};

// Enumerates unilateral deviations of every agent over the grid
// {0, step, 2 step, ...} up to 2 (max_i s_i^{Kmax} + max_i x_i), plus every
// profile value, every level value and the exact preimages of the deviator's
// benefit breakpoints. In discrete mode the grid is all integers in range and
// `step` is ignored. Returns the first agent (by index) with a strictly
// improving deviation, at its largest gain (smallest deviation on ties).
std::optional<DeviationWitness> deviation_oracle(const Instance& inst, const CollectionProfile& x,
                                                 const Rational& step, Execution exec = Execution::serial);

// Deviation bound used by the oracles.
Rational deviation_bound(const Instance& inst, const CollectionProfile& x);

// Utility of agent i if it alone switches to `xi`.
Rational deviation_utility(const Instance& inst, const CollectionProfile& x, std::size_t i, const Rational& xi);

// Set of maximizers of agent i's utility with the others fixed, as a closed
// interval [lo, hi]. Utility is concave piecewise linear in x_i, so this is
// exact. In discrete mode the interval is over integers.
struct BestResponseSet {
  Rational lo;
  Rational hi;
  Rational value;
};
BestResponseSet best_response_set(const Instance& inst, const CollectionProfile& x, std::size_t i);
// Maximizer closest to the current x_i.
Rational best_response(const Instance& inst, const CollectionProfile& x, std::size_t i);
// Enumeration-based best response on the oracle's candidate set; smallest
// maximizer wins. Independent of the closed form above.
Rational oracle_best_response(const Instance& inst, const CollectionProfile& x, std::size_t i, const Rational& step);

struct ProbeResult {
  std::vector<CollectionProfile> equilibria;  // distinct, certified, in discovery order
  std::size_t converged = 0;
  std::size_t non_convergent = 0;   // hit the 10 n sweep cap
  std::size_t rejected = 0;         // fixed points the oracle refuted
};

// Gauss-Seidel best-response sweeps from seeded random starts; fixed points
// are re-certified by deviation_oracle at `step`.
ProbeResult extremality_probe(const Instance& inst, std::size_t restarts, std::uint64_t seed,
                              const Rational& step = Rational(1, 8));

struct DominanceWitness {
  CollectionProfile profile;
  std::vector<Rational> deltas;  // U_j(profile) - U_j(reference), all >= 0, one > 0
};

class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(const std::string& what, double required, double limit)
      : std::runtime_error(what), required_(required), limit_(limit) {}
  double required() const noexcept { return required_; }
  double limit() const noexcept { return limit_; }

 private:
  double required_;
  double limit_;
};

inline constexpr double kEnumerationLimit = 1e7;

// Scans the product of per-coordinate candidate sets (grid, reference values,
// level values; integers in discrete mode) for a profile that weakly improves
// every agent and strictly improves one. First witness in lexicographic order.
std::optional<DominanceWitness> pareto_scan(const Instance& inst, const CollectionProfile& ref, const Rational& step,
                                            Execution exec = Execution::serial);

// Sorted distinct candidate values shared by the oracles: the grid up to
// `bound`, the profile values and every agent's max and min levels.
std::vector<Rational> candidate_values(const Instance& inst, const CollectionProfile& x, const Rational& step,
                                       const Rational& bound);

}  // namespace fairex
