#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairex/kernels.hpp"
#include "fairex/model.hpp"

namespace fairex {

// Value used for the small positive slope perturbations in the named examples.
Rational example_epsilon();

enum class ClaimKind {
  solver_output,    // solver `detail` returns `profile`
  recommendation,   // mechanism recommendation equals `profile`; agent zeroes its report when `misreport`
  utility,          // U_agent(profile) == value
  total,            // t_agent(profile) == value
  best_response,    // best response of agent to `profile` == value (closed form and oracle agree)
  equilibrium,      // profile certified by the conditions and the deviation oracle
  not_equilibrium,  // oracle witness: agent moves to value
  incomparable,     // utilities of `profile` and `other` are componentwise incomparable
  audit_clean,      // misreport audit under model `agent` finds nothing
  exploit_gain,     // recommendation-only search: agent gains exactly value
};

struct Claim {
  ClaimKind kind;
  std::string profile;  // name of a pinned profile
  std::string other;    // second profile, or solver name
  std::size_t agent = 0;  // index, or model number for audits
  Rational value;
  bool misreport = false;
};

struct NamedExample {
  std::string name;
  std::string note;  // where the numbers come from
  Instance instance;
  std::vector<std::pair<std::string, CollectionProfile>> profiles;
  std::vector<Claim> claims;

  const CollectionProfile& profile(std::string_view name) const;
};

struct ClaimResult {
  std::string description;
  bool holds = false;
  std::string detail;  // recomputed value or witness
};

const std::vector<std::string>& example_names();
// Throws std::invalid_argument for an unknown name.
NamedExample load_example(std::string_view name);

// Re-derives every claim with the solvers, verifier and mechanism.
std::vector<ClaimResult> check_example(const NamedExample& ex, Execution exec = Execution::serial);

}  // namespace fairex
