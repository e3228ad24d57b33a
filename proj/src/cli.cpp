#include "fairex/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fairex/corpus.hpp"
#include "fairex/io.hpp"
#include "fairex/mechanism.hpp"
#include "fairex/solver_continuous.hpp"
#include "fairex/solver_discrete.hpp"
#include "fairex/solver_graph.hpp"
#include "fairex/transforms.hpp"
#include "fairex/verifier.hpp"

namespace fairex {
namespace {

using io::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string instance;
  std::string profile;
  std::string grid;
  std::string format = "json";
  std::string export_path;
  std::string example;
  int model = 0;
  std::int64_t seed = 0;
  std::size_t restarts = 0;
  int jobs = 1;
  bool timing = false;
};

Execution execution(const Options& o) {
  if (o.jobs == 1) return Execution::serial;
  set_parallel_jobs(o.jobs);
  return Execution::parallel;
}

Rational grid_or(const Options& o, const Rational& fallback) {
  if (o.grid.empty()) return fallback;
  Rational g;
  try {
    g = Rational::parse(o.grid);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
  if (g.sign() <= 0) throw UsageError("--grid must be positive, got " + g.str());
  return g;
}

std::uint64_t seed_of(const Options& o) {
  if (const char* env = std::getenv("FAIREX_SEED"); env && *env) {
    try {
      return static_cast<std::uint64_t>(std::stoll(env));
    } catch (const std::exception&) {
      throw UsageError(std::string("FAIREX_SEED is not an integer: '") + env + "'");
    }
  }
  return static_cast<std::uint64_t>(o.seed);
}

io::InstanceFile need_instance(const Options& o) {
  if (o.instance.empty()) throw UsageError("--instance is required");
  return io::load_instance(o.instance);
}

Json id_list(const Instance& inst, const std::vector<std::size_t>& idx) {
  Json arr = Json::array();
  for (std::size_t i : idx) arr.push_back(inst.agent(i).id);
  return arr;
}

Json witness_json(const Instance& inst, const DeviationWitness& w) {
  Json j;
  j["agent"] = inst.agent(w.agent).id;
  j["from"] = io::to_json(w.from);
  j["to"] = io::to_json(w.to);
  j["gain"] = io::to_json(w.gain);
  return j;
}

Json result_json(const Instance& inst, const EquilibriumResult& r) {
  Json j;
  j["x"] = io::to_json(r.x);
  j["t"] = io::to_json(r.t);
  j["selection_order"] = id_list(inst, r.selection_order);
  Json agents = Json::array();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const AgentDiagnostics& d = r.diagnostics[i];
    Json a;
    a["id"] = inst.agent(i).id;
    a["x"] = io::to_json(r.x[i]);
    a["t"] = io::to_json(r.t[i]);
    a["k"] = d.ranks.k;
    a["k_up"] = d.ranks.k_up;
    a["rank_parameter"] = d.rank_parameter;
    a["active_level"] = io::to_json(d.active_level);
    a["floor_binding"] = d.floor_binding;
    agents.push_back(std::move(a));
  }
  j["agents"] = std::move(agents);
  return j;
}

// Solver matching the instance: discrete, graph or complete continuous.
EquilibriumResult default_solution(const Instance& inst, Execution exec, std::string& name) {
  if (inst.mode() == Mode::discrete) {
    name = "solve-discrete";
    return solve_discrete(inst);
  }
  if (!inst.exchanges_with_all()) {
    name = "solve-graph";
    return solve_graph(inst, exec);
  }
  name = "solve-max";
  return solve_max(inst, exec);
}

void write_export(const Options& o, const Instance& inst, const io::NamedProfiles& profiles) {
  if (o.export_path.empty()) return;
  std::ofstream f(o.export_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + o.export_path + "'");
  f << io::instance_to_json(inst, profiles).dump(2) << "\n";
}

struct Outcome {
  Json body;
  int code = kExitPass;
};

Outcome cmd_solve(const std::string& which, const Options& o) {
  const io::InstanceFile file = need_instance(o);
  const Instance& inst = file.instance;
  const Execution exec = execution(o);
  Outcome res;
  if (which == "solve-discrete") {
    const DiscreteEquilibrium r = solve_discrete(inst);
    res.body = result_json(inst, r);
    Json rounds = Json::array();
    for (const TieGroup& g : r.rounds) {
      Json gj;
      gj["rank_parameter"] = g.rank_parameter;
      gj["members"] = id_list(inst, g.members);
      gj["targets"] = io::to_json(std::span<const Rational>(g.targets));
      gj["floor"] = io::to_json(g.floor);
      if (g.placed_above) {
        gj["fixed"] = "group at floor + 1";
      } else {
        gj["fixed"] = "agent " + std::to_string(inst.agent(*g.deviator).id) + " at floor";
      }
      rounds.push_back(std::move(gj));
    }
    res.body["rounds"] = std::move(rounds);
    write_export(o, inst, {{which, r.x}});
    return res;
  }
  EquilibriumResult r;
  if (which == "solve-max") r = solve_max(inst, exec);
  else if (which == "solve-min") r = solve_min(inst, exec);
  else r = solve_graph(inst, exec);
  res.body = result_json(inst, r);
  write_export(o, inst, {{which, r.x}});
  return res;
}

io::NamedProfiles profiles_to_check(const Options& o, const io::InstanceFile& file) {
  if (!o.profile.empty()) return {{"--profile", io::parse_profile(o.profile, file.instance)}};
  if (file.profiles.empty()) throw UsageError("no --profile given and the instance file pins no profiles");
  return file.profiles;
}

Json local_json(const Instance& inst, const LocalReport& rep) {
  Json j;
  j["pass"] = rep.pass();
  j["strict_form"] = rep.strict_form();
  Json agents = Json::array();
  for (std::size_t i = 0; i < rep.agents.size(); ++i) {
    const AgentSlack& s = rep.agents[i];
    Json a;
    a["id"] = inst.agent(i).id;
    a["k"] = s.ranks.k;
    a["k_up"] = s.ranks.k_up;
    a["t"] = io::to_json(s.total);
    a["lower"] = io::to_json(s.lower);
    a["upper"] = io::to_json(s.upper);
    a["upward_slack"] = io::to_json(s.upward_slack);
    a["downward_slack"] = io::to_json(s.downward_slack);
    agents.push_back(std::move(a));
  }
  j["agents"] = std::move(agents);
  j["violations"] = id_list(inst, rep.violations);
  return j;
}

Json oracle_json(const Instance& inst, const std::optional<DeviationWitness>& w) {
  Json j;
  j["pass"] = !w.has_value();
  if (w) j["witness"] = witness_json(inst, *w);
  return j;
}

Outcome cmd_verify(const Options& o, bool oracle_only) {
  const io::InstanceFile file = need_instance(o);
  const Instance& inst = file.instance;
  const Execution exec = execution(o);
  const Rational step = grid_or(o, Rational(1, 8));
  Outcome res;
  res.body["grid"] = inst.mode() == Mode::discrete ? Json("integers") : io::to_json(step);

  io::NamedProfiles targets;
  if (!oracle_only || !o.profile.empty() || o.restarts == 0) targets = profiles_to_check(o, file);
  Json checked = Json::array();
  for (const auto& [name, x] : targets) {
    Json pj;
    pj["name"] = name;
    pj["x"] = io::to_json(x);
    pj["t"] = io::to_json(total_data(inst, x));
    bool ok = true;
    if (!oracle_only && inst.mode() == Mode::continuous) {
      const LocalReport rep = check_local_conditions(inst, x);
      ok = ok && rep.pass();
      pj["local_conditions"] = local_json(inst, rep);
    }
    const auto w = deviation_oracle(inst, x, step, exec);
    ok = ok && !w;
    pj["deviation_oracle"] = oracle_json(inst, w);
    pj["verdict"] = ok ? "equilibrium" : "not an equilibrium";
    if (!ok) res.code = kExitWitness;
    checked.push_back(std::move(pj));
  }
  res.body["profiles"] = std::move(checked);

  if (oracle_only && o.restarts > 0) {
    const std::uint64_t seed = seed_of(o);
    const ProbeResult probe = extremality_probe(inst, o.restarts, seed, step);
    Json pj;
    pj["restarts"] = o.restarts;
    pj["seed"] = seed;
    pj["converged"] = probe.converged;
    pj["non_convergent"] = probe.non_convergent;
    pj["rejected"] = probe.rejected;
    Json eq = Json::array();
    for (const auto& x : probe.equilibria) {
      Json e;
      e["x"] = io::to_json(x);
      e["t"] = io::to_json(total_data(inst, x));
      eq.push_back(std::move(e));
    }
    pj["equilibria"] = std::move(eq);
    res.body["probe"] = std::move(pj);
  }
  return res;
}

Outcome cmd_pareto(const Options& o) {
  const io::InstanceFile file = need_instance(o);
  const Instance& inst = file.instance;
  const Execution exec = execution(o);
  const Rational step = grid_or(o, Rational(1, 4));
  std::string source;
  CollectionProfile ref;
  if (!o.profile.empty()) {
    source = "--profile";
    ref = io::parse_profile(o.profile, inst);
  } else if (!file.profiles.empty()) {
    source = file.profiles.front().first;
    ref = file.profiles.front().second;
  } else {
    ref = default_solution(inst, exec, source).x;
  }
  Outcome res;
  res.body["grid"] = inst.mode() == Mode::discrete ? Json("integers") : io::to_json(step);
  Json rj;
  rj["source"] = source;
  rj["x"] = io::to_json(ref);
  rj["utilities"] = io::to_json(std::span<const Rational>(utilities(inst, ref)));
  res.body["reference"] = std::move(rj);
  const auto w = pareto_scan(inst, ref, step, exec);
  res.body["verdict"] = w ? "dominated" : "undominated";
  if (w) {
    Json wj;
    wj["x"] = io::to_json(w->profile);
    wj["deltas"] = io::to_json(std::span<const Rational>(w->deltas));
    res.body["witness"] = std::move(wj);
    res.code = kExitWitness;
  }
  return res;
}

Json exploit_json(const Instance& inst, const Exploit& e) {
  Json j;
  j["agent"] = inst.agent(e.agent).id;
  j["misreport"] = io::to_json(std::span<const Rational>(e.misreport.levels));
  j["recommended"] = io::to_json(e.recommended);
  j["submitted"] = io::to_json(e.submitted);
  j["truthful_utility"] = io::to_json(e.truthful_utility);
  j["exploit_utility"] = io::to_json(e.exploit_utility);
  j["gain"] = io::to_json(e.gain);
  return j;
}

Outcome cmd_audit(const Options& o) {
  if (o.model < 1 || o.model > 3) throw UsageError("--model must be 1, 2 or 3");
  const io::InstanceFile file = need_instance(o);
  const Instance& inst = file.instance;
  const Execution exec = execution(o);
  const Rational step = grid_or(o, Rational(1, 2));
  Outcome res;
  res.body["model"] = o.model;
  res.body["grid"] = io::to_json(step);
  res.body["truthful_recommendation"] = io::to_json(recommend(inst, truthful_reports(inst), exec));
  const auto hit = o.model == 3 ? model3_exploit_search(inst, step, exec)
                                : audit_truthfulness(inst, static_cast<MechanismModel>(o.model), step, exec);
  res.body["verdict"] = hit ? "exploit" : "clean";
  if (hit) {
    res.body["exploit"] = exploit_json(inst, *hit);
    res.code = kExitWitness;
  }
  return res;
}

Outcome cmd_example(const Options& o) {
  Outcome res;
  if (o.example.empty()) {
    Json names = Json::array();
    for (const auto& n : example_names()) names.push_back(n);
    res.body["examples"] = std::move(names);
    return res;
  }
  std::optional<NamedExample> loaded;
  try {
    loaded.emplace(load_example(o.example));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const NamedExample& ex = *loaded;
  res.body["example"] = ex.name;
  res.body["note"] = ex.note;
  res.body["instance"] = io::instance_to_json(ex.instance, ex.profiles);
  Json claims = Json::array();
  for (const ClaimResult& c : check_example(ex, execution(o))) {
    Json cj;
    cj["claim"] = c.description;
    cj["holds"] = c.holds;
    cj["detail"] = c.detail;
    if (!c.holds) res.code = kExitWitness;
    claims.push_back(std::move(cj));
  }
  res.body["claims"] = std::move(claims);
  write_export(o, ex.instance, ex.profiles);
  return res;
}

// Plain-text rendering of a report: scalars and flat arrays inline, arrays of
// flat objects as aligned tables.
std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "(";
    for (std::size_t q = 0; q < v.size(); ++q) s += (q ? ", " : "") + scalar(v[q]);
    return s + ")";
  }
  return v.dump();
}

bool flat(const Json& v) {
  if (v.is_object()) return false;
  if (v.is_array()) return std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_structured(); });
  return true;
}

bool flat_rows(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const Json& row : v) {
    if (!row.is_object() || row.size() != v.front().size()) return false;
    for (const auto& [k, cell] : row.items())
      if (!flat(cell) || !v.front().contains(k)) return false;
  }
  return true;
}

void render(const Json& v, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, val] : v.items()) {
    if (flat(val)) {
      out << pad << key << ": " << scalar(val) << "\n";
    } else if (flat_rows(val)) {
      out << pad << key << ":\n";
      std::vector<std::string> cols;
      for (const auto& [k, _] : val.front().items()) cols.push_back(k);
      std::vector<std::size_t> width(cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c) {
        width[c] = cols[c].size();
        for (const Json& row : val) width[c] = std::max(width[c], scalar(row[cols[c]]).size());
      }
      auto line = [&](auto cell) {
        out << pad << "  ";
        for (std::size_t c = 0; c + 1 < cols.size(); ++c)
          out << std::left << std::setw(static_cast<int>(width[c])) << cell(c) << "  ";
        out << cell(cols.size() - 1) << "\n";
      };
      line([&](std::size_t c) { return cols[c]; });
      for (const Json& row : val) line([&](std::size_t c) { return scalar(row[cols[c]]); });
    } else if (val.is_array()) {
      out << pad << key << ":\n";
      for (const Json& e : val) {
        if (e.is_object()) {
          out << pad << "  -\n";
          render(e, out, indent + 4);
        } else {
          out << pad << "  - " << scalar(e) << "\n";
        }
      }
    } else {
      out << pad << key << ":\n";
      render(val, out, indent + 2);
    }
  }
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--jobs", o.jobs, "Worker threads for enumeration (1 = serial, 0 = all cores)");
  sub->add_flag("--timing", o.timing, "Include wall-clock time in the report");
}

void add_instance(CLI::App* sub, Options& o) {
  sub->add_option("--instance", o.instance, "Instance JSON file")->required();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Solve, verify and audit fair data-exchange games with exact arithmetic", "fairex"};
  app.require_subcommand(1);
  for (const char* name : {"solve-max", "solve-min", "solve-graph", "solve-discrete"}) {
    auto* sub = app.add_subcommand(name, std::string("Run ") + name + " and print the equilibrium");
    add_instance(sub, o);
    sub->add_option("--export", o.export_path, "Write the instance with the solution pinned as a profile");
    add_common(sub, o);
  }
  auto* verify = app.add_subcommand("verify", "Check equilibrium conditions and the deviation oracle");
  auto* oracle = app.add_subcommand("oracle", "Deviation oracle, optionally with best-response probes");
  for (auto* sub : {verify, oracle}) {
    add_instance(sub, o);
    sub->add_option("--profile", o.profile, "Profile as inline JSON array or path");
    sub->add_option("--grid", o.grid, "Grid step (fraction)");
    add_common(sub, o);
  }
  oracle->add_option("--restarts", o.restarts, "Random restarts for the best-response probe");
  oracle->add_option("--seed", o.seed, "Probe seed (FAIREX_SEED overrides)");
  auto* pareto = app.add_subcommand("pareto-scan", "Search for a profile that Pareto-dominates a reference");
  add_instance(pareto, o);
  pareto->add_option("--profile", o.profile, "Reference profile (default: first pinned profile, else the solver's)");
  pareto->add_option("--grid", o.grid, "Grid step (fraction)");
  add_common(pareto, o);
  auto* audit = app.add_subcommand("audit", "Search for profitable misreports under a mechanism model");
  add_instance(audit, o);
  audit->add_option("--model", o.model, "Mechanism model 1, 2 or 3")->required();
  audit->add_option("--grid", o.grid, "Misreport grid step (fraction)");
  add_common(audit, o);
  auto* example = app.add_subcommand("example", "List or re-verify the named examples");
  example->add_option("name", o.example, "Example name");
  example->add_option("--export", o.export_path, "Write the example instance file");
  add_common(example, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitPass : kExitError;
  }

  std::string command;
  for (const auto& a : args) command += (command.empty() ? "" : " ") + a;
  const std::string which = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Outcome res;
  try {
    if (which.rfind("solve-", 0) == 0) res = cmd_solve(which, o);
    else if (which == "verify") res = cmd_verify(o, false);
    else if (which == "oracle") res = cmd_verify(o, true);
    else if (which == "pareto-scan") res = cmd_pareto(o);
    else if (which == "audit") res = cmd_audit(o);
    else res = cmd_example(o);
  } catch (const GuardExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  Json report;
  report["command"] = command;
  report["status"] = res.code == kExitPass ? "pass" : "witness";
  for (auto& [k, v] : res.body.items()) report[k] = v;
  if (o.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream ts;
    ts << std::fixed << std::setprecision(3) << ms;
    report["timing_ms"] = ts.str();
  }
  if (o.format == "table") {
    render(report, out, 0);
  } else {
    out << report.dump(2) << "\n";
  }
  return res.code;
}

}  // namespace fairex
