#include "fairex/corpus.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairex/mechanism.hpp"
#include "fairex/solver_continuous.hpp"
#include "fairex/solver_discrete.hpp"
#include "fairex/solver_graph.hpp"
#include "fairex/verifier.hpp"

namespace fairex {
namespace {

using R = Rational;
using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

AgentSpec capped(std::int64_t id, const R& slope, const R& cap) {
  return AgentSpec{id, R(1), BenefitFunction::capped_linear(slope, cap)};
}

Claim claim(ClaimKind kind, std::string profile, std::string other = {}, std::size_t agent = 0, R value = R(0)) {
  return Claim{kind, std::move(profile), std::move(other), agent, std::move(value), false};
}

NamedExample model3_counterexample() {
  // Step payoffs 100 at total 10 and 20 at total 8, as concave caps.
  Instance inst({capped(1, R(10), R(10)), capped(2, R(5, 2), R(8))});
  NamedExample ex{"model3_counterexample",
                  "two agents whose payoffs jump at totals 10 and 8; truthful recommendation (6,4) pays agent 1 "
                  "94, a zero report plus best response (5) pays 95",
                  std::move(inst),
                  {{"truthful_recommendation", {6, 4}}, {"zero_report_recommendation", {0, 8}}, {"exploit", {5, 8}}},
                  {}};
  auto& c = ex.claims;
  c.push_back(claim(ClaimKind::solver_output, "truthful_recommendation", "solve-max"));
  c.push_back(claim(ClaimKind::recommendation, "truthful_recommendation"));
  Claim zero = claim(ClaimKind::recommendation, "zero_report_recommendation", {}, 0);
  zero.misreport = true;
  c.push_back(zero);
  c.push_back(claim(ClaimKind::total, "truthful_recommendation", {}, 0, R(10)));
  c.push_back(claim(ClaimKind::total, "truthful_recommendation", {}, 1, R(8)));
  c.push_back(claim(ClaimKind::utility, "truthful_recommendation", {}, 0, R(94)));
  c.push_back(claim(ClaimKind::utility, "exploit", {}, 0, R(95)));
  c.push_back(claim(ClaimKind::best_response, "zero_report_recommendation", {}, 0, R(5)));
  c.push_back(claim(ClaimKind::equilibrium, "truthful_recommendation"));
  c.push_back(claim(ClaimKind::not_equilibrium, "zero_report_recommendation", {}, 0, R(5)));
  c.push_back(claim(ClaimKind::audit_clean, "", {}, 1));
  c.push_back(claim(ClaimKind::audit_clean, "", {}, 2));
  c.push_back(claim(ClaimKind::exploit_gain, "", {}, 0, R(1)));
  return ex;
}

NamedExample collection_space_not_supermodular() {
  const R slope = R(1) + example_epsilon();
  Instance inst({capped(1, slope, R(10)), capped(2, slope, R(10))});
  NamedExample ex{"collection_space_not_supermodular",
                  "agent 1 targets total 10: it answers 5 when agent 2 collects 5 and 10 when agent 2 collects 0",
                  std::move(inst),
                  {{"opponent_five", {0, 5}}, {"opponent_zero", {0, 0}}},
                  {}};
  ex.claims.push_back(claim(ClaimKind::best_response, "opponent_five", {}, 0, R(5)));
  ex.claims.push_back(claim(ClaimKind::best_response, "opponent_zero", {}, 0, R(10)));
  return ex;
}

NamedExample discrete_nonmonotone_br() {
  const R slope = R(1) + example_epsilon();
  Instance inst({capped(1, slope, R(11)), capped(2, slope, R(11)), capped(3, slope, R(11))}, Mode::discrete);
  NamedExample ex{"discrete_nonmonotone_br",
                  "integer collections; against (0,6) agent 1 answers 6 reaching total 12, against the larger (1,7) "
                  "it answers 5 reaching total 11",
                  std::move(inst),
                  {{"opponents_low", {0, 0, 6}},
                   {"opponents_high", {0, 1, 7}},
                   {"answer_low", {6, 0, 6}},
                   {"answer_high", {5, 1, 7}}},
                  {}};
  auto& c = ex.claims;
  c.push_back(claim(ClaimKind::best_response, "opponents_low", {}, 0, R(6)));
  c.push_back(claim(ClaimKind::best_response, "opponents_high", {}, 0, R(5)));
  c.push_back(claim(ClaimKind::total, "answer_low", {}, 0, R(12)));
  c.push_back(claim(ClaimKind::total, "answer_high", {}, 0, R(11)));
  return ex;
}

NamedExample discrete_incomparable() {
  const R eps = example_epsilon();
  const R slope = R(1) + eps;
  // Agent 6 keeps a slope of eps past 117; the curve is closed off at 200,
  // far beyond any total reachable at equilibrium.
  BenefitFunction six({Segment{R(0), slope}, Segment{R(117), eps}, Segment{R(200), R(0)}});
  Instance inst({capped(1, R(1, 6), R(6)), capped(2, R(1, 6), R(6)), capped(3, slope, R(22)), capped(4, slope, R(22)),
                 capped(5, slope, R(22)), AgentSpec{6, R(1), std::move(six)}},
                Mode::discrete);
  NamedExample ex{"discrete_incomparable",
                  "six integer agents; (1,1,5,5,5,100) and (0,0,6,6,6,99) are equilibria with incomparable "
                  "utilities. The frequently quoted (0,0,6,6,6,100) is not one: agent 6 reaches total 117 with 99",
                  std::move(inst),
                  {{"helpers_in", {1, 1, 5, 5, 5, 100}},
                   {"helpers_out", {0, 0, 6, 6, 6, 99}},
                   {"helpers_out_printed", {0, 0, 6, 6, 6, 100}}},
                  {}};
  auto& c = ex.claims;
  c.push_back(claim(ClaimKind::solver_output, "helpers_in", "solve-discrete"));
  c.push_back(claim(ClaimKind::equilibrium, "helpers_in"));
  c.push_back(claim(ClaimKind::equilibrium, "helpers_out"));
  c.push_back(claim(ClaimKind::not_equilibrium, "helpers_out_printed", {}, 5, R(99)));
  c.push_back(claim(ClaimKind::incomparable, "helpers_in", "helpers_out"));
  return ex;
}

NamedExample graph_incomparable_derived() {
  // Path 1-2-3-4. Agents 1 and 2 only gain by collecting together with 3.
  // When they do, 3 needs less of its own data, which leaves 4 with less.
  Instance inst({capped(1, R(3, 4), R(100)), capped(2, R(2, 5), R(100)), capped(3, R(2), R(12)),
                 capped(4, R(2), R(18))},
                Edges{{0, 1}, {1, 2}, {2, 3}}, Mode::continuous);
  NamedExample ex{"graph_incomparable_derived",
                  "constructed path game: agent 3 prefers the equilibrium where 1 and 2 collect, agent 4 the one "
                  "where they do not",
                  std::move(inst),
                  {{"pair_active", {4, 4, 4, 14}}, {"pair_idle", {0, 0, 6, 12}}},
                  {}};
  auto& c = ex.claims;
  c.push_back(claim(ClaimKind::solver_output, "pair_active", "solve-graph"));
  c.push_back(claim(ClaimKind::equilibrium, "pair_active"));
  c.push_back(claim(ClaimKind::equilibrium, "pair_idle"));
  c.push_back(claim(ClaimKind::incomparable, "pair_active", "pair_idle"));
  c.push_back(claim(ClaimKind::utility, "pair_active", {}, 2, R(20)));
  c.push_back(claim(ClaimKind::utility, "pair_idle", {}, 2, R(18)));
  c.push_back(claim(ClaimKind::utility, "pair_active", {}, 3, R(22)));
  c.push_back(claim(ClaimKind::utility, "pair_idle", {}, 3, R(24)));
  return ex;
}

std::string show(const CollectionProfile& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + x[i].str();
  return s + ")";
}

std::string show(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

const Rational& oracle_step() {
  static const Rational step(1, 8);
  return step;
}

const Rational& audit_step() {
  static const Rational step(1, 2);
  return step;
}

ClaimResult evaluate(const NamedExample& ex, const Claim& c, Execution exec) {
  const Instance& inst = ex.instance;
  auto id = [&](std::size_t i) { return std::to_string(inst.agent(i).id); };
  ClaimResult r;
  switch (c.kind) {
    case ClaimKind::solver_output: {
      const CollectionProfile& want = ex.profile(c.profile);
      CollectionProfile got;
      if (c.other == "solve-max") got = solve_max(inst, exec).x;
      else if (c.other == "solve-min") got = solve_min(inst, exec).x;
      else if (c.other == "solve-graph") got = solve_graph(inst, exec).x;
      else if (c.other == "solve-discrete") got = solve_discrete(inst).x;
      else throw std::invalid_argument("unknown solver " + c.other);
      r.description = c.other + " returns " + c.profile + " " + show(want);
      r.holds = got == want;
      r.detail = show(got);
      break;
    }
    case ClaimKind::recommendation: {
      const CollectionProfile& want = ex.profile(c.profile);
      auto reports = truthful_reports(inst);
      if (c.misreport) std::fill(reports[c.agent].levels.begin(), reports[c.agent].levels.end(), R(0));
      const CollectionProfile got = recommend(inst, reports, exec);
      r.description = std::string("recommendation under ") +
                      (c.misreport ? "agent " + id(c.agent) + " reporting zero levels" : "truthful reports") +
                      " is " + show(want);
      r.holds = got == want;
      r.detail = show(got);
      break;
    }
    case ClaimKind::utility: {
      const R got = utility(inst, ex.profile(c.profile), c.agent);
      r.description = "utility of agent " + id(c.agent) + " at " + c.profile + " is " + c.value.str();
      r.holds = got == c.value;
      r.detail = got.str();
      break;
    }
    case ClaimKind::total: {
      const R got = total_data_of(inst, ex.profile(c.profile), c.agent);
      r.description = "total data of agent " + id(c.agent) + " at " + c.profile + " is " + c.value.str();
      r.holds = got == c.value;
      r.detail = got.str();
      break;
    }
    case ClaimKind::best_response: {
      const CollectionProfile& x = ex.profile(c.profile);
      const R closed = best_response_set(inst, x, c.agent).lo;
      const R oracle = oracle_best_response(inst, x, c.agent, oracle_step());
      r.description = "best response of agent " + id(c.agent) + " to " + c.profile + " " + show(x) + " is " +
                      c.value.str();
      r.holds = closed == c.value && oracle == c.value && best_response_set(inst, x, c.agent).hi == c.value;
      r.detail = "closed form " + closed.str() + ", oracle " + oracle.str();
      break;
    }
    case ClaimKind::equilibrium:
    case ClaimKind::not_equilibrium: {
      const CollectionProfile& x = ex.profile(c.profile);
      const auto w = deviation_oracle(inst, x, oracle_step(), exec);
      bool local = true;
      if (inst.mode() == Mode::continuous) local = check_local_conditions(inst, x).pass();
      if (c.kind == ClaimKind::equilibrium) {
        r.description = c.profile + " " + show(x) + " is an equilibrium";
        r.holds = !w && local;
      } else {
        r.description = c.profile + " " + show(x) + " is refuted by agent " + id(c.agent) + " moving to " +
                        c.value.str();
        r.holds = w && w->agent == c.agent && w->to == c.value &&
                  (inst.mode() == Mode::discrete || !local);
      }
      r.detail = w ? "witness: agent " + id(w->agent) + " " + w->from.str() + " -> " + w->to.str() + ", gain " +
                         w->gain.str()
                   : std::string("no improving deviation");
      break;
    }
    case ClaimKind::incomparable: {
      const auto u = utilities(inst, ex.profile(c.profile));
      const auto v = utilities(inst, ex.profile(c.other));
      bool first_better = false;
      bool second_better = false;
      for (std::size_t i = 0; i < u.size(); ++i) {
        first_better |= u[i] > v[i];
        second_better |= v[i] > u[i];
      }
      r.description = "utilities at " + c.profile + " and " + c.other + " are incomparable";
      r.holds = first_better && second_better;
      r.detail = show(u) + " vs " + show(v);
      break;
    }
    case ClaimKind::audit_clean: {
      const auto model = static_cast<MechanismModel>(c.agent);
      const auto hit = audit_truthfulness(inst, model, audit_step(), exec);
      r.description = "no profitable misreport under model " + std::to_string(c.agent);
      r.holds = !hit;
      r.detail = hit ? "agent " + id(hit->agent) + " reports " + show(hit->misreport.levels) + ", gain " +
                           hit->gain.str()
                     : std::string("clean");
      break;
    }
    case ClaimKind::exploit_gain: {
      const auto hit = model3_exploit_search(inst, audit_step(), exec);
      r.description = "under model 3 agent " + id(c.agent) + " gains exactly " + c.value.str() + " by misreporting";
      r.holds = hit && hit->agent == c.agent && hit->gain == c.value;
      r.detail = hit ? "agent " + id(hit->agent) + " reports " + show(hit->misreport.levels) + ", submits " +
                           show(hit->submitted) + ", utility " + hit->truthful_utility.str() + " -> " +
                           hit->exploit_utility.str()
                     : std::string("none found");
      break;
    }
  }
  return r;
}

}  // namespace

Rational example_epsilon() { return Rational(1, 1000); }

const CollectionProfile& NamedExample::profile(std::string_view wanted) const {
  for (const auto& [n, x] : profiles)
    if (n == wanted) return x;
  throw std::invalid_argument("example " + name + " has no profile '" + std::string(wanted) + "'");
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"collection_space_not_supermodular", "model3_counterexample",
                                              "discrete_nonmonotone_br", "discrete_incomparable",
                                              "graph_incomparable_derived"};
  return names;
}

NamedExample load_example(std::string_view name) {
  if (name == "model3_counterexample") return model3_counterexample();
  if (name == "collection_space_not_supermodular") return collection_space_not_supermodular();
  if (name == "discrete_nonmonotone_br") return discrete_nonmonotone_br();
  if (name == "discrete_incomparable") return discrete_incomparable();
  if (name == "graph_incomparable_derived") return graph_incomparable_derived();
  std::string known;
  for (const auto& n : example_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown example '" + std::string(name) + "'; known: " + known);
}

std::vector<ClaimResult> check_example(const NamedExample& ex, Execution exec) {
  std::vector<ClaimResult> out;
  out.reserve(ex.claims.size());
  for (const Claim& c : ex.claims) out.push_back(evaluate(ex, c, exec));
  return out;
}

}  // namespace fairex
