#ifndef MOREKG_ONTOLOGY_SCHEMA_HPP
#define MOREKG_ONTOLOGY_SCHEMA_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "morekg/error.hpp"
#include "morekg/numeric.hpp"
#include "morekg/rdf/graph.hpp"
#include "morekg/vocab.hpp"

namespace morekg::ontology {

// A motor test item as defined in a study's test_items table.
struct TestItemDef {
  std::string key;
  std::string label;
  std::string dispositionLabel;
  std::string unit;
  std::string datatype = rdf::xsd::kDecimal;

  friend bool operator==(const TestItemDef&, const TestItemDef&) = default;
};

// The disposition a test item measures.
struct DispositionKind {
  rdf::Term iri;
  std::string label;
  std::string unit;
  std::string datatype;
};

struct ItemTerms {
  TestItemDef def;
  rdf::Term individual;    // more:Handgrip
  rdf::Term processClass;  // more:HandgripTestProcess
  DispositionKind disposition;
};

struct OntologySchema {
  rdf::Graph graph;
  std::map<std::string, ItemTerms> items;

  const ItemTerms& item(const std::string& key) const {
    auto it = items.find(key);
    if (it == items.end()) throw ConfigError("test item '" + key + "' is not in the schema");
    return it->second;
  }
};

// "shuttle_run" -> "ShuttleRun"
inline std::string upperCamel(const std::string& key) {
  std::string out;
  bool upper = true;
  for (char c : key) {
    if (c == '_' || c == '-' || c == ' ') {
      upper = true;
      continue;
    }
    out.push_back(upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
    upper = false;
  }
  return out;
}

// Subclass cycle among rdfs:subClassOf edges of `g`, as the sequence of
// classes along the cycle (first element repeated at the end), if any.
inline std::optional<std::vector<rdf::Term>> findSubclassCycle(const rdf::Graph& g) {
  auto sub = g.lookup(rdf::vocab::rdfsSubClassOf());
  if (!sub) return std::nullopt;
  std::unordered_map<rdf::TermId, std::vector<rdf::TermId>> edges;
  std::set<rdf::TermId> nodes;
  g.forEach({}, *sub, {}, [&](rdf::TermId s, rdf::TermId, rdf::TermId o) {
    edges[s].push_back(o);
    nodes.insert(s);
  });
  enum class Mark { kNew, kActive, kDone };
  std::unordered_map<rdf::TermId, Mark> mark;
  std::vector<rdf::TermId> stack;
  std::optional<std::vector<rdf::Term>> cycle;

  // Iterative DFS keeping the active path on `stack`.
  for (rdf::TermId root : nodes) {
    if (mark[root] != Mark::kNew) continue;
    std::vector<std::pair<rdf::TermId, std::size_t>> work{{root, 0}};
    mark[root] = Mark::kActive;
    stack.push_back(root);
    while (!work.empty()) {
      auto& [node, next] = work.back();
      auto& out = edges[node];
      if (next == out.size()) {
        mark[node] = Mark::kDone;
        stack.pop_back();
        work.pop_back();
        continue;
      }
      rdf::TermId child = out[next++];
      Mark m = mark[child];
      if (m == Mark::kActive) {
        std::vector<rdf::Term> path;
        auto it = std::find(stack.begin(), stack.end(), child);
        for (; it != stack.end(); ++it) path.push_back(g.term(*it));
        path.push_back(g.term(child));
        return path;
      }
      if (m == Mark::kNew) {
        mark[child] = Mark::kActive;
        stack.push_back(child);
        work.emplace_back(child, 0);
      }
    }
  }
  return cycle;
}

class CycleError : public Error {
 public:
  explicit CycleError(const std::vector<rdf::Term>& cycle)
      : Error(describe(cycle)), cycle_(cycle) {}
  const std::vector<rdf::Term>& cycle() const { return cycle_; }

 private:
  static std::string describe(const std::vector<rdf::Term>& cycle) {
    std::string s = "rdfs:subClassOf cycle: ";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) s += " -> ";
      s += "<" + cycle[i].value() + ">";
    }
    return s;
  }
  std::vector<rdf::Term> cycle_;
};

// Fixed MO|RE axioms plus, per registered item, its process subclass, its
// test-item individual and its disposition class.
inline OntologySchema buildSchema(const std::vector<TestItemDef>& registry) {
  using namespace vocab;
  OntologySchema schema;
  rdf::Graph& g = schema.graph;
  const rdf::Term type = rdf::vocab::rdfType();
  const rdf::Term sub = rdf::vocab::rdfsSubClassOf();
  const rdf::Term label = rdf::vocab::rdfsLabel();
  auto subclass = [&](const rdf::Term& a, const rdf::Term& b) {
    g.insert({a, sub, b});
    g.insert({a, type, rdf::vocab::rdfsClass()});
    g.insert({b, type, rdf::vocab::rdfsClass()});
  };

  // BFO upper level
  subclass(continuant(), bfo("Entity"));
  subclass(occurrent(), bfo("Entity"));
  subclass(process(), occurrent());
  subclass(independentContinuant(), continuant());
  subclass(materialEntity(), independentContinuant());
  subclass(specificallyDependentContinuant(), continuant());
  subclass(genericallyDependentContinuant(), continuant());
  subclass(quality(), specificallyDependentContinuant());
  subclass(realizableEntity(), specificallyDependentContinuant());
  subclass(disposition(), realizableEntity());
  subclass(role(), realizableEntity());

  // IAO / OBI
  subclass(informationContentEntity(), genericallyDependentContinuant());
  subclass(planSpecification(), informationContentEntity());
  subclass(measurementDatum(), informationContentEntity());
  subclass(scalarMeasurementDatum(), measurementDatum());
  subclass(valueSpecification(), informationContentEntity());
  subclass(plan(), realizableEntity());
  subclass(assay(), process());
  subclass(evaluantRole(), role());

  // MO|RE
  subclass(study(), planSpecification());
  subclass(testItem(), planSpecification());
  subclass(testProcess(), assay());
  subclass(testProcess(), process());
  subclass(handgripTestProcess(), testProcess());
  subclass(person(), materialEntity());
  subclass(ageQuality(), quality());
  subclass(heightQuality(), quality());
  subclass(weightQuality(), quality());
  subclass(bmiQuality(), quality());

  for (const rdf::Term& p :
       {executes(), hasSpecifiedOutput(), hasValueSpecification(),
        specifiesValueOf(), hasRole(), hasParticipant(), realizes(),
        concretizes(), inheresIn(), measuresDisposition(), hasAge(),
        partOfStudy(), conductedInYear(), hasHeight(), hasWeight(), hasBmi(),
        hasSex(), hasTitle(), hasDoi(), yearStart(), yearEnd(), hasUnit(),
        sessionDate(), trial()}) {
    g.insert({p, type, rdf::vocab::rdfProperty()});
  }

  for (const TestItemDef& def : registry) {
    if (schema.items.count(def.key)) {
      throw ConfigError("duplicate test item key '" + def.key + "'");
    }
    if (def.key.empty()) throw ConfigError("empty test item key");
    if (!isNumericDatatype(def.datatype)) {
      throw ConfigError("test item '" + def.key + "' has non-numeric datatype <" +
                        def.datatype + ">");
    }
    std::string camel = upperCamel(def.key);
    ItemTerms terms{def, more(camel), more(camel + "TestProcess"),
                    DispositionKind{more(camel + "Disposition"),
                                    def.dispositionLabel, def.unit, def.datatype}};
    subclass(terms.processClass, testProcess());
    g.insert({terms.processClass, label,
              rdf::Term::literal(def.label + " test process")});
    g.insert({terms.individual, type, testItem()});
    g.insert({terms.individual, label, rdf::Term::literal(def.label)});
    g.insert({terms.individual, hasUnit(), rdf::Term::literal(def.unit)});
    subclass(terms.disposition.iri, disposition());
    g.insert({terms.disposition.iri, label,
              rdf::Term::literal(def.dispositionLabel)});
    schema.items.emplace(def.key, std::move(terms));
  }

  if (auto cycle = findSubclassCycle(g)) throw CycleError(*cycle);
  return schema;
}

}  // namespace morekg::ontology

#endif  // MOREKG_ONTOLOGY_SCHEMA_HPP
