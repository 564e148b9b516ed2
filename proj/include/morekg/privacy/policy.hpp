#ifndef MOREKG_PRIVACY_POLICY_HPP
#define MOREKG_PRIVACY_POLICY_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "morekg/error.hpp"
#include "morekg/numeric.hpp"
#include "morekg/ontology/schema.hpp"
#include "morekg/rdf/graph.hpp"
#include "morekg/rdf/prefix_map.hpp"
#include "morekg/vocab.hpp"

namespace morekg::privacy {

class PolicyError : public Error {
 public:
  using Error::Error;
};

enum class SensitivityLevel { kIdentifying, kHealth, kPublic };

inline const char* levelName(SensitivityLevel l) {
  switch (l) {
    case SensitivityLevel::kIdentifying: return "identifying";
    case SensitivityLevel::kHealth: return "health";
    case SensitivityLevel::kPublic: break;
  }
  return "public";
}

inline SensitivityLevel parseLevel(const std::string& s) {
  if (s == "identifying") return SensitivityLevel::kIdentifying;
  if (s == "health") return SensitivityLevel::kHealth;
  if (s == "public") return SensitivityLevel::kPublic;
  throw PolicyError("unknown sensitivity level '" + s + "'");
}

// Numeric banding: a value v falls into [floor(v/w)*w, floor(v/w)*w + w).
// Integer values print the inclusive upper bound ("5–9" for width 5),
// everything else the exclusive one ("15–20").
struct GeneralizationSpec {
  std::string kind = "band";
  Rational width = 1;
  // Predicate receiving the band literal; empty means target IRI + "Band".
  std::string output;

  friend bool operator==(const GeneralizationSpec&, const GeneralizationSpec&) = default;
};

inline constexpr std::string_view kBandDash = "\xE2\x80\x93";  // en dash

struct Role {
  std::string name;
  std::set<SensitivityLevel> allowed;
  std::map<std::string, GeneralizationSpec> generalizations;

  bool allows(SensitivityLevel l) const { return allowed.count(l) > 0; }
};

struct Policy {
  std::map<std::string, SensitivityLevel> annotations;
  std::vector<Role> roles;
  std::string provenance;

  SensitivityLevel levelOf(const std::string& iri) const {
    auto it = annotations.find(iri);
    return it == annotations.end() ? SensitivityLevel::kPublic : it->second;
  }

  const Role& role(const std::string& name) const {
    for (const auto& r : roles) {
      if (r.name == name) return r;
    }
    throw PolicyError("unknown role '" + name + "'");
  }

  bool hasRole(const std::string& name) const {
    for (const auto& r : roles) {
      if (r.name == name) return true;
    }
    return false;
  }

  static std::string bandPredicate(const std::string& target, const GeneralizationSpec& g) {
    return g.output.empty() ? target + "Band" : g.output;
  }
};

inline void validatePolicy(const Policy& p) {
  if (p.roles.empty()) throw PolicyError("policy defines no roles");
  std::set<std::string> names;
  for (const auto& r : p.roles) {
    if (r.name.empty()) throw PolicyError("role with empty name");
    if (!names.insert(r.name).second) throw PolicyError("duplicate role '" + r.name + "'");
    for (const auto& [target, g] : r.generalizations) {
      if (g.kind != "band") throw PolicyError("role '" + r.name + "': unsupported generalization kind '" + g.kind + "'");
      if (g.width <= 0) throw PolicyError("role '" + r.name + "': band width must be positive for " + target);
      if (Policy::bandPredicate(target, g) == target || r.generalizations.count(Policy::bandPredicate(target, g))) {
        throw PolicyError("role '" + r.name + "': band output for " + target + " collides with a generalized property");
      }
      if (!p.annotations.count(target)) {
        throw PolicyError("role '" + r.name + "': generalization target " + target + " has no sensitivity annotation");
      }
    }
  }
}

namespace detail {

inline std::string expandTarget(const std::string& text, const rdf::PrefixMap& pm) {
  if (text.size() > 1 && text.front() == '<' && text.back() == '>') return text.substr(1, text.size() - 2);
  if (text.find("://") != std::string::npos) return text;
  return pm.expand(text).value();
}

inline Rational jsonRational(const nlohmann::json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    if (auto r = parseDecimalText(j.get<std::string>(), true, false)) return *r;
  }
  if (j.is_number_float()) {
    // Round-trip through the shortest text form to keep e.g. 2.5 exact.
    std::ostringstream s;
    s << j.get<double>();
    if (auto r = parseDecimalText(s.str(), true, true)) return *r;
  }
  throw PolicyError(what + " must be a number");
}

}  // namespace detail

// Policy files are JSON:
//   { "provenance": "...",
//     "annotations": { "more:hasAge": "identifying", ... },
//     "roles": [ { "name": "public", "allow": ["public"],
//                  "generalize": { "more:hasAge": { "kind": "band", "width": 5 } } } ] }
// CURIEs resolve against `prefixes` extended by an optional "prefixes" object.
inline Policy policyFromJson(const std::string& text,
                             rdf::PrefixMap prefixes = rdf::PrefixMap::withDefaults()) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PolicyError(std::string("policy is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw PolicyError("policy must be a JSON object");
  Policy p;
  try {
    if (doc.contains("prefixes")) {
      for (auto& [k, v] : doc.at("prefixes").items()) prefixes.add(k, v.get<std::string>());
    }
    p.provenance = doc.value("provenance", "");
    if (doc.contains("annotations")) {
      for (auto& [k, v] : doc.at("annotations").items()) {
        std::string iri = detail::expandTarget(k, prefixes);
        auto level = parseLevel(v.get<std::string>());
        auto [it, fresh] = p.annotations.emplace(iri, level);
        if (!fresh && it->second != level) throw PolicyError("conflicting levels for " + iri);
      }
    }
    if (!doc.contains("roles") || !doc.at("roles").is_array()) throw PolicyError("policy needs a \"roles\" array");
    for (const auto& rj : doc.at("roles")) {
      Role r;
      r.name = rj.at("name").get<std::string>();
      for (const auto& l : rj.value("allow", nlohmann::json::array())) r.allowed.insert(parseLevel(l.get<std::string>()));
      if (rj.contains("generalize")) {
        for (auto& [k, v] : rj.at("generalize").items()) {
          GeneralizationSpec g;
          g.kind = v.value("kind", "band");
          g.width = detail::jsonRational(v.at("width"), "width of " + k);
          if (v.contains("output")) g.output = detail::expandTarget(v.at("output").get<std::string>(), prefixes);
          r.generalizations[detail::expandTarget(k, prefixes)] = g;
        }
      }
      p.roles.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw PolicyError(std::string("malformed policy: ") + e.what());
  } catch (const UnresolvedPrefixError& e) {
    throw PolicyError("policy uses unknown prefix '" + e.prefix() + "'");
  }
  validatePolicy(p);
  return p;
}

inline Policy loadPolicy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PolicyError("cannot read policy '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return policyFromJson(buf.str());
  } catch (const PolicyError& e) {
    throw PolicyError(path.string() + ": " + e.what());
  }
}

// The shipped default: identifying and health data are hidden from the
// public role; researchers see everything.
inline Policy defaultPolicy() {
  Policy p;
  p.provenance = "ODRL-style: permission for researcher on all levels; prohibition for public on identifying and health";
  p.annotations[vocab::hasAge().value()] = SensitivityLevel::kIdentifying;
  p.annotations[vocab::more("hasPostalCode").value()] = SensitivityLevel::kIdentifying;
  p.annotations[vocab::hasBmi().value()] = SensitivityLevel::kHealth;
  p.annotations[vocab::ageQuality().value()] = SensitivityLevel::kIdentifying;
  p.annotations[vocab::bmiQuality().value()] = SensitivityLevel::kHealth;
  p.roles.push_back({"researcher",
                     {SensitivityLevel::kIdentifying, SensitivityLevel::kHealth, SensitivityLevel::kPublic},
                     {}});
  p.roles.push_back({"public", {SensitivityLevel::kPublic}, {}});
  return p;
}

// Adds (target, more:sensitivityLevel, "level") for every annotation.
// Targets unknown to both the schema and `data` produce a warning only.
inline rdf::Graph annotateSchema(const ontology::OntologySchema& schema, const Policy& p,
                                 std::vector<std::string>* warnings = nullptr,
                                 const rdf::Graph* data = nullptr) {
  rdf::Graph out = schema.graph;
  auto known = [&](const rdf::Term& t) {
    for (const rdf::Graph* g : {&schema.graph, data}) {
      if (!g) continue;
      auto id = g->lookup(t);
      if (id && (g->count(*id, {}, {}) || g->count({}, *id, {}) || g->count({}, {}, *id))) return true;
    }
    return false;
  };
  for (const auto& [target, level] : p.annotations) {
    rdf::Term t = rdf::Term::iri(target);
    if (warnings && !known(t)) warnings->push_back("sensitivity target " + target + " is not used by the schema or data");
    out.insert({t, vocab::sensitivityLevel(), rdf::Term::literal(levelName(level))});
  }
  return out;
}

}  // namespace morekg::privacy

#endif  // MOREKG_PRIVACY_POLICY_HPP
