#ifndef MOREKG_ONTOLOGY_ALIASES_HPP
#define MOREKG_ONTOLOGY_ALIASES_HPP

#include <fstream>
#include <map>
#include "json.hpp"
#include <sstream>
#include <string>

#include "morekg/error.hpp"
#include "morekg/rdf/graph.hpp"
#include "morekg/rdf/prefix_map.hpp"

namespace morekg::ontology {

// IRI -> IRI remapping applied after emission, e.g. to swap the schematic
// `obi:realizes` for a numeric OBO id.
class AliasTable {
 public:
  void add(const rdf::Term& from, const rdf::Term& to) { map_[from] = to; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  // JSON object whose keys and values are CURIEs or <IRIs>.
  static AliasTable fromJson(const std::string& text,
                             const rdf::PrefixMap& pm = rdf::PrefixMap::withDefaults()) {
    AliasTable table;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("alias table: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("alias table must be a JSON object");
    for (const auto& [k, v] : j.items()) {
      if (!v.is_string()) throw ConfigError("alias target for '" + k + "' must be a string");
      table.add(resolve(k, pm), resolve(v.get<std::string>(), pm));
    }
    return table;
  }

  static AliasTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open alias table '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return fromJson(ss.str());
  }

  rdf::Graph apply(const rdf::Graph& g) const {
    if (map_.empty()) return g;
    rdf::Graph out;
    for (const rdf::Triple& t : g.triples()) {
      out.insert({remap(t.subject), remap(t.predicate), remap(t.object)});
    }
    return out;
  }

  const rdf::Term& remap(const rdf::Term& t) const {
    auto it = map_.find(t);
    return it == map_.end() ? t : it->second;
  }

 private:
  static rdf::Term resolve(const std::string& s, const rdf::PrefixMap& pm) {
    if (s.size() > 2 && s.front() == '<' && s.back() == '>') {
      return rdf::Term::iri(s.substr(1, s.size() - 2));
    }
    return pm.expand(s);
  }

  std::map<rdf::Term, rdf::Term> map_;
};

}  // namespace morekg::ontology

#endif  // MOREKG_ONTOLOGY_ALIASES_HPP
