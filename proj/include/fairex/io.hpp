#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fairex/model.hpp"

namespace fairex::io {

using Json = nlohmann::ordered_json;

// Malformed instance or profile input; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using NamedProfiles = std::vector<std::pair<std::string, CollectionProfile>>;

struct InstanceFile {
  Instance instance;
  NamedProfiles profiles;  // in file order
};

// Accepts "p/q", "p" and decimal strings, or JSON integers.
Rational parse_number(const Json& value, const std::string& where);

InstanceFile parse_instance(const Json& doc);
InstanceFile parse_instance_text(std::string_view text, const std::string& source = "<input>");
InstanceFile load_instance(const std::string& path);

// `spec` is an inline JSON array ("[6, 4]", "[\"1/2\", 3]") or a path to a
// file holding such an array.
CollectionProfile parse_profile(const std::string& spec, const Instance& inst);

Json to_json(const Rational& r);
Json to_json(std::span<const Rational> values);
Json to_json(const CollectionProfile& x);
Json to_json(const TotalProfile& t);
Json instance_to_json(const Instance& inst, const NamedProfiles& profiles = {});

}  // namespace fairex::io
