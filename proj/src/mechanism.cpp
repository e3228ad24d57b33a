#include "fairex/mechanism.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fairex/solver_continuous.hpp"
#include "fairex/solver_graph.hpp"
#include "fairex/verifier.hpp"

namespace fairex {
namespace {

void require_continuous(const Instance& inst, const char* who) {
  if (inst.mode() != Mode::continuous)
    throw std::invalid_argument(std::string(who) +
                                ": the discrete mechanism takes full cost and benefit reports; run solve_discrete");
}

CollectionProfile recommend_on(const Instance& inst, std::span<const LevelTable> tables) {
  if (inst.exchanges_with_all()) return max_equilibrium(tables, Execution::serial).x;
  return graph_equilibrium(inst, tables, Execution::serial).x;
}

// Model 2 utility of agent i when everyone hands in `rec` (participating) or
// i alone stays out; the agent takes the better branch.
Rational threshold_cap_value(const Instance& inst, const CollectionProfile& rec, std::size_t i) {
  const AgentSpec& a = inst.agent(i);
  const Rational in = outside_closure(a, total_data_of(inst, rec, i)) - a.cost * rec[i];
  return max(in, outside_closure(a, Rational(0)));
}

struct Candidate {
  Report report;
  CollectionProfile recommended;
  CollectionProfile submitted;
  Rational utility;
};

// Calls visit(values) for every nondecreasing vector of `length` entries from
// `values` whose first entry is values[first], in lexicographic index order.
// Stops early when visit returns true.
template <class Visit>
bool monotone_vectors(const std::vector<Rational>& values, std::size_t length, std::size_t first, Visit&& visit) {
  std::vector<std::size_t> d(length, first);
  std::vector<Rational> v(length, values[first]);
  while (true) {
    if (visit(v)) return true;
    std::size_t pos = length;
    while (pos > 1 && d[pos - 1] + 1 == values.size()) --pos;
    if (pos <= 1) return false;
    --pos;
    ++d[pos];
    for (std::size_t q = pos; q < length; ++q) {
      d[q] = d[pos];
      v[q] = values[d[pos]];
    }
  }
}

struct Search {
  const Instance& inst;
  std::vector<LevelTable> truthful;
  CollectionProfile truthful_rec;
  std::vector<Rational> values;

  Search(const Instance& in, const Rational& step) : inst(in) {
    truthful = level_tables(in, LevelKind::max);
    truthful_rec = recommend_on(in, truthful);
    const Rational bound = deviation_bound(in, truthful_rec);
    values = candidate_values(in, CollectionProfile{}, step, bound);
    std::size_t longest = 0;
    for (std::size_t i = 0; i < in.size(); ++i) longest = std::max(longest, in.max_rank(i));
    const double count = misreport_count(values.size(), longest);
    if (count > kEnumerationLimit)
      throw GuardExceeded("misreport search needs " + std::to_string(static_cast<long long>(count)) +
                              " report vectors per agent, limit " +
                              std::to_string(static_cast<long long>(kEnumerationLimit)),
                          count, kEnumerationLimit);
  }

  CollectionProfile rec_with(std::size_t i, const std::vector<Rational>& levels) const {
    std::vector<LevelTable> tables = truthful;
    tables[i] = LevelTable::from_values(i, levels);
    return recommend_on(inst, tables);
  }

  Exploit make(std::size_t i, const Rational& base, Candidate c) const {
    Exploit e;
    e.agent = i;
    e.misreport = std::move(c.report);
    e.recommended = std::move(c.recommended);
    e.submitted = std::move(c.submitted);
    e.truthful_utility = base;
    e.exploit_utility = c.utility;
    e.gain = c.utility - base;
    return e;
  }
};

}  // namespace

double misreport_count(std::size_t values, std::size_t length) {
  // C(values + length - 1, length)
  double c = 1;
  for (std::size_t q = 1; q <= length; ++q)
    c = c * static_cast<double>(values + q - 1) / static_cast<double>(q);
  return c;
}

std::vector<Report> truthful_reports(const Instance& inst) {
  std::vector<Report> out;
  out.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i)
    out.push_back(Report{inst.agent(i).id, LevelTable::from_agent(i, inst.agent(i), LevelKind::max, inst.max_rank(i))
                                               .expanded()});
  return out;
}

std::vector<LevelTable> report_tables(const Instance& inst, std::span<const Report> reports) {
  std::vector<std::optional<LevelTable>> slot(inst.size());
  for (const Report& r : reports) {
    const auto i = inst.index_of(r.agent_id);
    if (!i) throw std::invalid_argument("report for unknown agent " + std::to_string(r.agent_id));
    if (slot[*i]) throw std::invalid_argument("duplicate report for agent " + std::to_string(r.agent_id));
    if (r.levels.size() < inst.max_rank(*i))
      throw std::invalid_argument("report of agent " + std::to_string(r.agent_id) + " has " +
                                  std::to_string(r.levels.size()) + " levels, need " +
                                  std::to_string(inst.max_rank(*i)));
    try {
      slot[*i] = LevelTable::from_values(*i, r.levels);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("report of agent " + std::to_string(r.agent_id) + " rejected: " + e.what());
    }
  }
  std::vector<LevelTable> tables;
  tables.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!slot[i]) throw std::invalid_argument("missing report for agent " + std::to_string(inst.agent(i).id));
    tables.push_back(std::move(*slot[i]));
  }
  return tables;
}

CollectionProfile recommend(const Instance& inst, std::span<const Report> reports, Execution exec) {
  require_continuous(inst, "recommend");
  const auto tables = report_tables(inst, reports);
  if (inst.exchanges_with_all()) return max_equilibrium(tables, exec).x;
  return graph_equilibrium(inst, tables, exec).x;
}

MechanismOutcome realize(MechanismModel model, const Instance& inst, const CollectionProfile& recommended,
                         const CollectionProfile& submitted) {
  validate_profile(inst, recommended);
  validate_profile(inst, submitted);
  const std::size_t n = inst.size();
  MechanismOutcome out;
  out.model = model;
  out.recommended = recommended;
  out.submitted = model == MechanismModel::enforced ? recommended : submitted;
  out.totals.resize(n);
  out.utilities.resize(n);
  switch (model) {
    case MechanismModel::enforced:
    case MechanismModel::recommend_only: {
      const TotalProfile t = total_data(inst, out.submitted);
      for (std::size_t i = 0; i < n; ++i) {
        out.totals[i] = t[i];
        out.utilities[i] = utility(inst, out.submitted, i);
      }
      break;
    }
    case MechanismModel::threshold_cap: {
      std::vector<Rational> credit(n);
      for (std::size_t i = 0; i < n; ++i) credit[i] = min(submitted[i], recommended[i]);
      const CollectionProfile credited(credit);
      for (std::size_t i = 0; i < n; ++i) {
        const AgentSpec& a = inst.agent(i);
        const bool participates = submitted[i] >= recommended[i];
        const Rational exchanged = participates ? total_data_of(inst, credited, i) : credit[i];
        out.totals[i] = exchanged + (submitted[i] - credit[i]);
        out.utilities[i] = outside_closure(a, out.totals[i]) - a.cost * submitted[i];
      }
      break;
    }
  }
  return out;
}

std::optional<Exploit> audit_truthfulness(const Instance& inst, MechanismModel model, const Rational& step,
                                          Execution exec) {
  require_continuous(inst, "audit");
  if (model == MechanismModel::recommend_only)
    throw std::invalid_argument("audit covers models 1 and 2; use model3_exploit_search");
  const Search s(inst, step);

  auto value = [&](const CollectionProfile& rec, std::size_t i) {
    return model == MechanismModel::enforced ? utility(inst, rec, i) : threshold_cap_value(inst, rec, i);
  };
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Rational base = value(s.truthful_rec, i);
    auto from = [&](std::size_t first) -> std::optional<Candidate> {
      std::optional<Candidate> hit;
      monotone_vectors(s.values, inst.max_rank(i), first, [&](const std::vector<Rational>& levels) {
        CollectionProfile rec = s.rec_with(i, levels);
        Rational u = value(rec, i);
        if (u <= base) return false;
        hit = Candidate{Report{inst.agent(i).id, levels}, rec, rec, std::move(u)};
        return true;
      });
      return hit;
    };
    if (auto hit = kernels::first_of<Candidate>(s.values.size(), from, exec))
      return s.make(i, base, std::move(hit->second));
  }
  return std::nullopt;
}

std::optional<Exploit> model3_exploit_search(const Instance& inst, const Rational& step, Execution exec) {
  require_continuous(inst, "audit");
  const Search s(inst, step);
  std::optional<Exploit> best;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Rational base = utility(inst, s.truthful_rec, i);
    auto from = [&](std::size_t first) -> std::optional<Candidate> {
      std::optional<Candidate> top;
      monotone_vectors(s.values, inst.max_rank(i), first, [&](const std::vector<Rational>& levels) {
        CollectionProfile rec = s.rec_with(i, levels);
        CollectionProfile sub = with_entry(rec, i, best_response(inst, rec, i));
        Rational u = utility(inst, sub, i);
        if (u > base && (!top || u > top->utility))
          top = Candidate{Report{inst.agent(i).id, levels}, std::move(rec), std::move(sub), std::move(u)};
        return false;
      });
      return top;
    };
    auto hit = kernels::best_of<Candidate>(
        s.values.size(), from, [](const Candidate& a, const Candidate& b) { return a.utility > b.utility; }, exec);
    if (!hit) continue;
    Exploit e = s.make(i, base, std::move(hit->second));
    if (!best || e.gain > best->gain) best = std::move(e);
  }
  return best;
}

}  // namespace fairex
