#ifndef MOREKG_RDF_TERM_HPP
#define MOREKG_RDF_TERM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "morekg/error.hpp"

namespace morekg::rdf {

namespace ns {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

namespace xsd {
inline const std::string kString = std::string(ns::kXsd) + "string";
inline const std::string kInteger = std::string(ns::kXsd) + "integer";
inline const std::string kDecimal = std::string(ns::kXsd) + "decimal";
inline const std::string kDouble = std::string(ns::kXsd) + "double";
inline const std::string kBoolean = std::string(ns::kXsd) + "boolean";
inline const std::string kDate = std::string(ns::kXsd) + "date";
}  // namespace xsd

inline const std::string kLangString = std::string(ns::kRdf) + "langString";

enum class TermKind : std::uint8_t { kIri = 0, kBlank = 1, kLiteral = 2 };

// An RDF term. IRIs hold the absolute IRI, blank nodes their local label and
// literals their lexical form plus datatype (and language tag for
// rdf:langString).
class Term {
 public:
  Term() = default;

  static Term iri(std::string value) {
    if (value.empty()) throw InvalidTripleError("empty IRI");
    for (char c : value) {
      if (static_cast<unsigned char>(c) <= 0x20) {
        throw InvalidTripleError("IRI contains whitespace: <" + value + ">");
      }
    }
    return Term(TermKind::kIri, std::move(value), {}, {});
  }

  static Term blank(std::string label) {
    if (label.empty()) throw InvalidTripleError("empty blank node label");
    return Term(TermKind::kBlank, std::move(label), {}, {});
  }

  static Term literal(std::string lexical, std::string datatype = xsd::kString) {
    if (datatype.empty()) datatype = xsd::kString;
    return Term(TermKind::kLiteral, std::move(lexical), std::move(datatype), {});
  }

  static Term langLiteral(std::string lexical, std::string language) {
    if (language.empty()) return literal(std::move(lexical));
    return Term(TermKind::kLiteral, std::move(lexical), kLangString,
                std::move(language));
  }

  TermKind kind() const { return kind_; }
  bool isIri() const { return kind_ == TermKind::kIri; }
  bool isBlank() const { return kind_ == TermKind::kBlank; }
  bool isLiteral() const { return kind_ == TermKind::kLiteral; }

  // IRI string, blank label or literal lexical form.
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Term(TermKind kind, std::string value, std::string datatype,
       std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  TermKind kind_ = TermKind::kIri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Throws InvalidTripleError for a literal subject or a non-IRI predicate.
inline void checkTriple(const Triple& t) {
  if (t.subject.isLiteral()) {
    throw InvalidTripleError("literal in subject position: \"" +
                             t.subject.value() + "\"");
  }
  if (!t.predicate.isIri()) {
    throw InvalidTripleError("predicate must be an IRI, got '" +
                             t.predicate.value() + "'");
  }
}

// Vocabulary terms used across modules.
namespace vocab {
inline Term rdfType() { return Term::iri(std::string(ns::kRdf) + "type"); }
inline Term rdfValue() { return Term::iri(std::string(ns::kRdf) + "value"); }
inline Term rdfProperty() { return Term::iri(std::string(ns::kRdf) + "Property"); }
inline Term rdfsSubClassOf() {
  return Term::iri(std::string(ns::kRdfs) + "subClassOf");
}
inline Term rdfsLabel() { return Term::iri(std::string(ns::kRdfs) + "label"); }
inline Term rdfsClass() { return Term::iri(std::string(ns::kRdfs) + "Class"); }
}  // namespace vocab

}  // namespace morekg::rdf

template <>
struct std::hash<morekg::rdf::Term> {
  std::size_t operator()(const morekg::rdf::Term& t) const noexcept {
    std::size_t h = std::hash<std::string>{}(t.value());
    h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(t.language()) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(t.kind());
  }
};

#endif  // MOREKG_RDF_TERM_HPP
