#ifndef MOREKG_INGEST_EMIT_HPP
#define MOREKG_INGEST_EMIT_HPP

#include <map>
#include <string>
#include <utility>

#include "morekg/ingest/bundle.hpp"
#include "morekg/ingest/iri.hpp"
#include "morekg/ontology/schema.hpp"
#include "morekg/vocab.hpp"

namespace morekg::ingest {

// Local name of the n-th (1-based) result of a participant for an item.
inline std::string resultLocal(const std::string& participantId,
                               const std::string& itemKey, std::size_t ordinal) {
  return participantId + "_" + itemKey + "_s" + std::to_string(ordinal);
}

// Instance graph for one bundle. Schema triples are not included; test items
// must be registered in `schema`.
inline rdf::Graph emitKg(const StudyBundle& b, const ontology::OntologySchema& schema) {
  using namespace vocab;
  using rdf::Term;
  rdf::Graph g;
  const Term type = rdf::vocab::rdfType();
  const Term value = rdf::vocab::rdfValue();
  const Term partOf = partOfStudy();
  const std::string& sid = b.metadata.id;
  auto mint = [&](EntityKind k, const std::string& local) { return mintIri(sid, k, local); };
  auto integer = [](long v) { return Term::literal(std::to_string(v), rdf::xsd::kInteger); };
  auto decimal = [](const Decimal& d) { return Term::literal(d.lexical, rdf::xsd::kDecimal); };

  const Term studyIri = mint(EntityKind::kStudy, sid);
  g.insert({studyIri, type, study()});
  g.insert({studyIri, hasTitle(), Term::literal(b.metadata.title)});
  g.insert({studyIri, yearStart(), integer(b.metadata.yearStart)});
  g.insert({studyIri, yearEnd(), integer(b.metadata.yearEnd)});
  if (b.metadata.doi) g.insert({studyIri, hasDoi(), Term::literal(*b.metadata.doi)});
  for (int y = b.metadata.yearStart; y <= b.metadata.yearEnd; ++y) {
    g.insert({studyIri, conductedInYear(), integer(y)});
  }

  for (const auto& def : b.items) {
    g.insert({schema.item(def.key).individual, partOf, studyIri});
  }

  for (const auto& p : b.participants) {
    const Term person = mint(EntityKind::kPerson, p.participantId);
    g.insert({person, type, vocab::person()});
    g.insert({person, partOf, studyIri});
    const Term age = integer(p.age);
    g.insert({person, hasAge(), age});
    g.insert({person, hasHeight(), decimal(p.heightCm)});
    g.insert({person, hasWeight(), decimal(p.weightKg)});
    g.insert({person, hasBmi(), decimal(p.bmi)});
    if (p.sex) g.insert({person, hasSex(), Term::literal(sexCode(*p.sex))});

    const std::pair<const char*, std::pair<Term, Term>> qualities[] = {
        {"age", {ageQuality(), age}},
        {"height", {heightQuality(), decimal(p.heightCm)}},
        {"weight", {weightQuality(), decimal(p.weightKg)}},
        {"bmi", {bmiQuality(), decimal(p.bmi)}},
    };
    for (const auto& [suffix, cls] : qualities) {
      const Term q = mint(EntityKind::kQuality, p.participantId + "_" + suffix);
      g.insert({q, type, cls.first});
      g.insert({q, inheresIn(), person});
      g.insert({q, value, cls.second});
      g.insert({q, partOf, studyIri});
    }

    for (const auto& def : b.items) {
      const Term d = mint(EntityKind::kDisposition, p.participantId + "_" + def.key);
      g.insert({d, type, schema.item(def.key).disposition.iri});
      g.insert({d, inheresIn(), person});
      g.insert({d, partOf, studyIri});
    }
  }

  std::map<std::pair<std::string, std::string>, std::size_t> ordinals;
  for (const auto& r : b.results) {
    const auto& item = schema.item(r.itemKey);
    std::string local = resultLocal(r.participantId, r.itemKey,
                                    ++ordinals[{r.participantId, r.itemKey}]);
    const Term person = mint(EntityKind::kPerson, r.participantId);
    const Term disp = mint(EntityKind::kDisposition, r.participantId + "_" + r.itemKey);
    const Term plan = mint(EntityKind::kPlan, local);
    const Term proc = mint(EntityKind::kProcess, local);
    const Term role = mint(EntityKind::kRole, local);
    const Term datum = mint(EntityKind::kDatum, local);
    const Term vs = mint(EntityKind::kValueSpec, local);

    g.insert({plan, type, vocab::plan()});
    g.insert({plan, concretizes(), item.individual});
    g.insert({plan, partOf, studyIri});

    g.insert({proc, type, item.processClass});
    g.insert({proc, realizes(), plan});
    g.insert({proc, executes(), item.individual});
    g.insert({proc, hasParticipant(), person});
    g.insert({proc, realizes(), role});
    g.insert({proc, hasSpecifiedOutput(), datum});
    g.insert({proc, partOf, studyIri});
    if (r.sessionDate) g.insert({proc, sessionDate(), Term::literal(*r.sessionDate, rdf::xsd::kDate)});
    if (r.trial) g.insert({proc, trial(), Term::literal(*r.trial)});

    g.insert({role, type, evaluantRole()});
    g.insert({person, hasRole(), role});
    g.insert({role, partOf, studyIri});

    g.insert({datum, type, scalarMeasurementDatum()});
    g.insert({datum, hasValueSpecification(), vs});
    g.insert({datum, partOf, studyIri});

    g.insert({vs, type, valueSpecification()});
    g.insert({vs, value, Term::literal(r.value.lexical, item.def.datatype)});
    g.insert({vs, hasUnit(), Term::literal(item.def.unit)});
    g.insert({vs, specifiesValueOf(), disp});
    g.insert({vs, partOf, studyIri});
  }
  return g;
}

}  // namespace morekg::ingest

#endif  // MOREKG_INGEST_EMIT_HPP
