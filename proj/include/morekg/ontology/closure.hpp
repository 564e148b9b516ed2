#ifndef MOREKG_ONTOLOGY_CLOSURE_HPP
#define MOREKG_ONTOLOGY_CLOSURE_HPP

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "morekg/ontology/schema.hpp"

namespace morekg::ontology {

// RDFS subset: transitive rdfs:subClassOf plus rdf:type propagation along it.
// Subclass axioms are taken from both `g` and the schema graph. Throws
// CycleError if those axioms contain a cycle.
inline rdf::Graph rdfsClosure(const rdf::Graph& g, const OntologySchema& schema) {
  rdf::Graph axioms;
  const rdf::Term subTerm = rdf::vocab::rdfsSubClassOf();
  for (const rdf::Graph* src : {&g, &schema.graph}) {
    for (const rdf::Triple& t : src->match({}, subTerm, {})) axioms.insert(t);
  }
  if (auto cycle = findSubclassCycle(axioms)) throw CycleError(*cycle);

  rdf::Graph out = g;
  const rdf::TermId sub = out.intern(subTerm);
  const rdf::TermId type = out.intern(rdf::vocab::rdfType());

  // Ancestors per class, memoized over the acyclic axiom graph.
  std::unordered_map<rdf::TermId, std::vector<rdf::TermId>> parents;
  axioms.forEach({}, {}, {}, [&](rdf::TermId s, rdf::TermId, rdf::TermId o) {
    parents[out.intern(axioms.term(s))].push_back(out.intern(axioms.term(o)));
  });
  std::unordered_map<rdf::TermId, std::vector<rdf::TermId>> ancestors;
  auto ancestorsOf = [&](auto& self, rdf::TermId c) -> const std::vector<rdf::TermId>& {
    if (auto it = ancestors.find(c); it != ancestors.end()) return it->second;
    std::vector<rdf::TermId> acc;
    if (auto it = parents.find(c); it != parents.end()) {
      for (rdf::TermId p : it->second) {
        acc.push_back(p);
        const auto& up = self(self, p);
        acc.insert(acc.end(), up.begin(), up.end());
      }
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return ancestors[c] = std::move(acc);
  };

  std::vector<rdf::TermId> classes;
  for (const auto& [c, _] : parents) classes.push_back(c);
  for (rdf::TermId c : classes) {
    for (rdf::TermId d : ancestorsOf(ancestorsOf, c)) out.insertIds(c, sub, d);
  }

  std::vector<std::pair<rdf::TermId, rdf::TermId>> typed;
  out.forEach({}, type, {}, [&](rdf::TermId x, rdf::TermId, rdf::TermId c) {
    typed.emplace_back(x, c);
  });
  for (auto [x, c] : typed) {
    if (!parents.count(c)) continue;
    for (rdf::TermId d : ancestorsOf(ancestorsOf, c)) out.insertIds(x, type, d);
  }
  return out;
}

}  // namespace morekg::ontology

#endif  // MOREKG_ONTOLOGY_CLOSURE_HPP
