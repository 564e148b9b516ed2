#ifndef MOREKG_VOCAB_HPP
#define MOREKG_VOCAB_HPP

#include <string>
#include <string_view>

#include "morekg/rdf/prefix_map.hpp"
#include "morekg/rdf/term.hpp"

// MO|RE, BFO, IAO, OBI and PATO terms. OBO-style names are composed as
// namespace + local name (e.g. OBI_has_specified_output), never resolved to
// numeric OBO ids; an alias table can remap them after emission.
namespace morekg::vocab {

inline rdf::Term more(std::string_view local) {
  return rdf::Term::iri(std::string(rdf::ns::kMore) + std::string(local));
}
inline rdf::Term obi(std::string_view local) {
  return rdf::Term::iri(std::string(rdf::ns::kObi) + std::string(local));
}
inline rdf::Term iao(std::string_view local) {
  return rdf::Term::iri(std::string(rdf::ns::kIao) + std::string(local));
}
inline rdf::Term bfo(std::string_view local) {
  return rdf::Term::iri(std::string(rdf::ns::kBfo) + std::string(local));
}
inline rdf::Term pato(std::string_view local) {
  return rdf::Term::iri(std::string(rdf::ns::kPato) + std::string(local));
}

// Classes
inline rdf::Term study() { return more("Study"); }
inline rdf::Term testItem() { return more("TestItem"); }
inline rdf::Term testProcess() { return more("TestProcess"); }
inline rdf::Term handgripTestProcess() { return more("HandgripTestProcess"); }
inline rdf::Term person() { return more("Person"); }
inline rdf::Term ageQuality() { return more("Age"); }
inline rdf::Term heightQuality() { return more("Height"); }
inline rdf::Term weightQuality() { return more("Weight"); }
inline rdf::Term bmiQuality() { return more("BMI"); }
inline rdf::Term planSpecification() { return iao("PlanSpecification"); }
inline rdf::Term informationContentEntity() {
  return iao("InformationContentEntity");
}
inline rdf::Term plan() { return iao("Plan"); }
inline rdf::Term measurementDatum() { return iao("MeasurementDatum"); }
inline rdf::Term scalarMeasurementDatum() {
  return iao("ScalarMeasurementDatum");
}
inline rdf::Term assay() { return obi("Assay"); }
inline rdf::Term evaluantRole() { return obi("EvaluantRole"); }
inline rdf::Term valueSpecification() { return obi("ValueSpecification"); }
inline rdf::Term process() { return bfo("Process"); }
inline rdf::Term occurrent() { return bfo("Occurrent"); }
inline rdf::Term continuant() { return bfo("Continuant"); }
inline rdf::Term independentContinuant() { return bfo("IndependentContinuant"); }
inline rdf::Term specificallyDependentContinuant() {
  return bfo("SpecificallyDependentContinuant");
}
inline rdf::Term genericallyDependentContinuant() {
  return bfo("GenericallyDependentContinuant");
}
inline rdf::Term materialEntity() { return bfo("MaterialEntity"); }
inline rdf::Term quality() { return bfo("Quality"); }
inline rdf::Term realizableEntity() { return bfo("RealizableEntity"); }
inline rdf::Term disposition() { return bfo("Disposition"); }
inline rdf::Term role() { return bfo("Role"); }

// Object properties
inline rdf::Term executes() { return pato("executes"); }
inline rdf::Term hasSpecifiedOutput() { return obi("has_specified_output"); }
inline rdf::Term hasValueSpecification() {
  return obi("has_value_specification");
}
inline rdf::Term specifiesValueOf() { return obi("specifies_value_of"); }
inline rdf::Term hasRole() { return obi("has_role"); }
inline rdf::Term hasParticipant() { return obi("has_participant"); }
inline rdf::Term realizes() { return obi("realizes"); }
inline rdf::Term concretizes() { return bfo("concretizes"); }
inline rdf::Term inheresIn() { return bfo("inheres_in"); }
inline rdf::Term measuresDisposition() { return more("measures_disposition"); }
inline rdf::Term partOfStudy() { return more("partOfStudy"); }

// Datatype properties
inline rdf::Term hasAge() { return more("hasAge"); }
inline rdf::Term hasHeight() { return more("hasHeight"); }
inline rdf::Term hasWeight() { return more("hasWeight"); }
inline rdf::Term hasBmi() { return more("hasBMI"); }
inline rdf::Term hasSex() { return more("hasSex"); }
inline rdf::Term hasTitle() { return more("hasTitle"); }
inline rdf::Term hasDoi() { return more("hasDOI"); }
inline rdf::Term yearStart() { return more("yearStart"); }
inline rdf::Term yearEnd() { return more("yearEnd"); }
inline rdf::Term conductedInYear() { return more("conductedInYear"); }
inline rdf::Term hasUnit() { return more("hasUnit"); }
inline rdf::Term sessionDate() { return more("sessionDate"); }
inline rdf::Term trial() { return more("trial"); }
inline rdf::Term sensitivityLevel() { return more("sensitivityLevel"); }

}  // namespace morekg::vocab

#endif  // MOREKG_VOCAB_HPP
