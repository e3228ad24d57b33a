#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fairex/kernels.hpp"
#include "fairex/levels.hpp"
#include "fairex/model.hpp"

namespace fairex {

// Reported levels of one agent: levels[K - 1] stands for s^K, K = 1..Kmax.
struct Report {
  std::int64_t agent_id = 0;
  std::vector<Rational> levels;
};

enum class MechanismModel {
  enforced = 1,        // must submit exactly the recommendation
  threshold_cap = 2,   // participation threshold and cap at the recommendation
  recommend_only = 3,  // recommendation only; fair exchange on what is submitted
};

struct MechanismOutcome {
  MechanismModel model = MechanismModel::enforced;
  CollectionProfile recommended;
  CollectionProfile submitted;
  std::vector<Rational> totals;     // accessible data under the model's exchange rule
  std::vector<Rational> utilities;  // true utilities
};

std::vector<Report> truthful_reports(const Instance& inst);

// One level table per agent, in instance order. Throws std::invalid_argument
// naming the agent when a report is missing, too short, decreasing or negative.
std::vector<LevelTable> report_tables(const Instance& inst, std::span<const Report> reports);

// Maximal equilibrium on reported levels (the true benefits are not used),
// by the graph pass when the instance has a non-complete exchange graph.
CollectionProfile recommend(const Instance& inst, std::span<const Report> reports, Execution exec = Execution::serial);

// True utilities when `submitted` is handed in against `recommended`.
//  Model 1: everyone is held to the recommendation.
//  Model 2: credit min(sub, rec); an agent below its recommendation receives
//    nothing; surplus and outside collection are folded in via the closure v.
//  Model 3: plain fair exchange on the submitted profile.
MechanismOutcome realize(MechanismModel model, const Instance& inst, const CollectionProfile& recommended,
                         const CollectionProfile& submitted);

struct Exploit {
  std::size_t agent = 0;  // index
  Report misreport;
  CollectionProfile recommended;  // under the misreport
  CollectionProfile submitted;
  Rational truthful_utility;
  Rational exploit_utility;
  Rational gain;
};

// Searches every agent's monotone misreports with components on
// {0, step, ..., bound} plus all true levels. The deviator's true utility is
// compared with truth; first strict improvement (agent index, then
// lexicographic misreport order) is returned. Models 1 and 2 only; in Model 2
// the deviator may also decline to participate. Throws GuardExceeded when the
// search space passes the enumeration limit.
std::optional<Exploit> audit_truthfulness(const Instance& inst, MechanismModel model, const Rational& step,
                                          Execution exec = Execution::serial);

// Model 3: others submit their recommendation, the deviator submits its exact
// best response. Returns the largest strict gain found (earliest on ties).
std::optional<Exploit> model3_exploit_search(const Instance& inst, const Rational& step,
                                             Execution exec = Execution::serial);

// Number of monotone misreport vectors per agent for a given value count.
double misreport_count(std::size_t values, std::size_t length);

}  // namespace fairex
