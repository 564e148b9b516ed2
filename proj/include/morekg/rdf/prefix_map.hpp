#ifndef MOREKG_RDF_PREFIX_MAP_HPP
#define MOREKG_RDF_PREFIX_MAP_HPP

#include <map>
#include <string>
#include <string_view>

#include "morekg/rdf/term.hpp"

namespace morekg::rdf {

namespace ns {
inline constexpr std::string_view kMore = "https://w3id.org/more#";
inline constexpr std::string_view kObi = "http://purl.obolibrary.org/obo/OBI_";
inline constexpr std::string_view kIao = "http://purl.obolibrary.org/obo/IAO_";
inline constexpr std::string_view kBfo = "http://purl.obolibrary.org/obo/BFO_";
inline constexpr std::string_view kPato = "http://purl.obolibrary.org/obo/PATO_";
}  // namespace ns

// Characters allowed in the local part of a compacted name.
inline bool isLocalNameChar(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
}

inline bool isSafeLocalName(std::string_view local) {
  if (local.empty()) return false;
  if (local.front() == '-' || local.front() == '.' || local.back() == '.') {
    return false;
  }
  for (char c : local) {
    if (!isLocalNameChar(c)) return false;
  }
  return true;
}

class PrefixMap {
 public:
  // Empty map; see withDefaults() for the standard registrations.
  PrefixMap() = default;

  static PrefixMap withDefaults() {
    PrefixMap pm;
    pm.add("rdf", std::string(ns::kRdf));
    pm.add("rdfs", std::string(ns::kRdfs));
    pm.add("xsd", std::string(ns::kXsd));
    pm.add("more", std::string(ns::kMore));
    pm.add("obi", std::string(ns::kObi));
    pm.add("iao", std::string(ns::kIao));
    pm.add("bfo", std::string(ns::kBfo));
    pm.add("pato", std::string(ns::kPato));
    return pm;
  }

  // Re-registering a prefix replaces its namespace.
  void add(const std::string& prefix, const std::string& ns) {
    entries_[prefix] = ns;
  }

  bool contains(const std::string& prefix) const {
    return entries_.count(prefix) != 0;
  }

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

  Term expand(std::string_view curie) const {
    auto colon = curie.find(':');
    if (colon == std::string_view::npos) {
      throw UnresolvedPrefixError(std::string(curie));
    }
    std::string prefix(curie.substr(0, colon));
    auto it = entries_.find(prefix);
    if (it == entries_.end()) throw UnresolvedPrefixError(prefix);
    return Term::iri(it->second + std::string(curie.substr(colon + 1)));
  }

  // Longest matching namespace wins; ties go to the alphabetically first
  // prefix. Falls back to <iri> when nothing matches or the remaining local
  // part is not a safe name.
  std::string compact(const Term& iri) const {
    const std::string& v = iri.value();
    const std::string* best = nullptr;
    std::size_t bestLen = 0;
    for (const auto& [prefix, ns] : entries_) {
      if (ns.size() > bestLen && v.size() > ns.size() &&
          v.compare(0, ns.size(), ns) == 0 &&
          isSafeLocalName(std::string_view(v).substr(ns.size()))) {
        best = &prefix;
        bestLen = ns.size();
      }
    }
    if (best == nullptr) return "<" + v + ">";
    return *best + ":" + v.substr(bestLen);
  }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace morekg::rdf

#endif  // MOREKG_RDF_PREFIX_MAP_HPP
