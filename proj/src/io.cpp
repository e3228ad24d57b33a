#include "fairex/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace fairex::io {
namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::int64_t parse_id(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer agent id");
  return v.get<std::int64_t>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line number.
    std::size_t line = 1;
    for (std::size_t q = 0; q < std::min<std::size_t>(e.byte, text.size()); ++q)
      if (text[q] == '\n') ++line;
    throw ParseError(source + ": line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

CollectionProfile parse_values(const Json& arr, const Instance& inst, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array of data amounts");
  if (arr.size() != inst.size())
    throw ParseError(where + ": has " + std::to_string(arr.size()) + " entries for " + std::to_string(inst.size()) +
                     " agents");
  std::vector<Rational> v;
  for (std::size_t q = 0; q < arr.size(); ++q) v.push_back(parse_number(arr[q], where + "[" + std::to_string(q) + "]"));
  CollectionProfile x(std::move(v));
  try {
    validate_profile(inst, x);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
  return x;
}

}  // namespace

Rational parse_number(const Json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_number()) throw ParseError(where + ": non-integer JSON number; write it as a string such as \"3/2\"");
  if (!value.is_string()) throw ParseError(where + ": expected a number or a \"p/q\" string");
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

InstanceFile parse_instance(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance: expected a JSON object");
  Mode mode = Mode::continuous;
  if (auto it = doc.find("mode"); it != doc.end()) {
    if (*it == "continuous") {
      mode = Mode::continuous;
    } else if (*it == "discrete") {
      mode = Mode::discrete;
    } else {
      throw ParseError("mode: expected \"continuous\" or \"discrete\"");
    }
  }

  const Json& agents = field(doc, "agents", "instance");
  if (!agents.is_array() || agents.empty()) throw ParseError("agents: expected a non-empty array");
  std::vector<AgentSpec> specs;
  std::map<std::int64_t, std::size_t> index;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string at = "agents[" + std::to_string(i) + "]";
    const Json& a = agents[i];
    if (!a.is_object()) throw ParseError(at + ": expected an object");
    const std::int64_t id = parse_id(field(a, "id", at), at + ".id");
    if (!index.emplace(id, i).second) throw ParseError(at + ".id: duplicate id " + std::to_string(id));
    const Rational cost = parse_number(field(a, "cost", at), at + ".cost");
    const Json& curve = field(a, "benefit", at);
    if (!curve.is_array() || curve.empty()) throw ParseError(at + ".benefit: expected [[start, slope], ...]");
    std::vector<Segment> segs;
    for (std::size_t q = 0; q < curve.size(); ++q) {
      const std::string sat = at + ".benefit[" + std::to_string(q) + "]";
      if (!curve[q].is_array() || curve[q].size() != 2) throw ParseError(sat + ": expected [start, slope]");
      segs.push_back(Segment{parse_number(curve[q][0], sat + "[0]"), parse_number(curve[q][1], sat + "[1]")});
    }
    try {
      specs.push_back(AgentSpec{id, cost, BenefitFunction(std::move(segs))});
    } catch (const std::invalid_argument& e) {
      throw ParseError(at + ".benefit: " + e.what());
    }
  }

  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("edges: expected [[id, id], ...]");
    edges.emplace();
    for (std::size_t q = 0; q < it->size(); ++q) {
      const std::string at = "edges[" + std::to_string(q) + "]";
      const Json& e = (*it)[q];
      if (!e.is_array() || e.size() != 2) throw ParseError(at + ": expected [id, id]");
      std::size_t ends[2];
      for (int s = 0; s < 2; ++s) {
        const std::int64_t id = parse_id(e[s], at);
        auto f = index.find(id);
        if (f == index.end()) throw ParseError(at + ": unknown agent id " + std::to_string(id));
        ends[s] = f->second;
      }
      edges->emplace_back(ends[0], ends[1]);
    }
  }

  std::optional<Instance> inst;
  try {
    inst.emplace(std::move(specs), std::move(edges), mode);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }

  InstanceFile out{std::move(*inst), {}};
  if (auto it = doc.find("profiles"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("profiles: expected an object of named arrays");
    for (const auto& [name, arr] : it->items())
      out.profiles.emplace_back(name, parse_values(arr, out.instance, "profiles." + name));
  }
  return out;
}

InstanceFile parse_instance_text(std::string_view text, const std::string& source) {
  const Json doc = parse_json(text, source);
  try {
    return parse_instance(doc);
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

InstanceFile load_instance(const std::string& path) { return parse_instance_text(read_file(path), path); }

CollectionProfile parse_profile(const std::string& spec, const Instance& inst) {
  std::size_t p = spec.find_first_not_of(" \t\r\n");
  if (p != std::string::npos && spec[p] == '[') return parse_values(parse_json(spec, "--profile"), inst, "--profile");
  const Json doc = parse_json(read_file(spec), spec);
  return parse_values(doc, inst, spec);
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(std::span<const Rational> values) {
  Json arr = Json::array();
  for (const Rational& v : values) arr.push_back(v.str());
  return arr;
}

Json to_json(const CollectionProfile& x) { return to_json(x.values()); }
Json to_json(const TotalProfile& t) { return to_json(t.values()); }

Json instance_to_json(const Instance& inst, const NamedProfiles& profiles) {
  Json doc;
  doc["mode"] = inst.mode() == Mode::discrete ? "discrete" : "continuous";
  Json agents = Json::array();
  for (const AgentSpec& a : inst.agents()) {
    Json aj;
    aj["id"] = a.id;
    aj["cost"] = a.cost.str();
    Json curve = Json::array();
    for (const Segment& s : a.benefit.segments()) curve.push_back(Json::array({s.start.str(), s.slope.str()}));
    aj["benefit"] = std::move(curve);
    agents.push_back(std::move(aj));
  }
  doc["agents"] = std::move(agents);
  if (inst.has_graph()) {
    Json edges = Json::array();
    for (const auto& [i, j] : inst.graph().edges()) edges.push_back(Json::array({inst.agent(i).id, inst.agent(j).id}));
    doc["edges"] = std::move(edges);
  }
  if (!profiles.empty()) {
    Json pj = Json::object();
    for (const auto& [name, x] : profiles) pj[name] = to_json(x);
    doc["profiles"] = std::move(pj);
  }
  return doc;
}

}  // namespace fairex::io
