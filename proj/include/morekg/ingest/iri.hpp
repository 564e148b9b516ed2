#ifndef MOREKG_INGEST_IRI_HPP
#define MOREKG_INGEST_IRI_HPP

#include <string>
#include <string_view>

#include "morekg/error.hpp"
#include "morekg/rdf/term.hpp"

namespace morekg::ingest {

inline constexpr std::string_view kKgBase = "https://w3id.org/more/kg/";

enum class EntityKind {
  kStudy,
  kPerson,
  kQuality,
  kDisposition,
  kPlan,
  kProcess,
  kRole,
  kDatum,
  kValueSpec,
};

inline std::string_view kindSegment(EntityKind k) {
  switch (k) {
    case EntityKind::kStudy: return "study";
    case EntityKind::kPerson: return "person";
    case EntityKind::kQuality: return "quality";
    case EntityKind::kDisposition: return "disposition";
    case EntityKind::kPlan: return "plan";
    case EntityKind::kProcess: return "process";
    case EntityKind::kRole: return "role";
    case EntityKind::kDatum: return "datum";
    case EntityKind::kValueSpec: break;
  }
  return "valuespec";
}

// Percent-encodes every byte outside [A-Za-z0-9_-].
inline std::string encodeSegment(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    bool plain = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                 (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (plain) {
      out.push_back(c);
    } else {
      out.push_back('%');
      out.push_back(kHex[u >> 4]);
      out.push_back(kHex[u & 0xF]);
    }
  }
  return out;
}

// https://w3id.org/more/kg/{study}/{kind}/{local}
inline rdf::Term mintIri(std::string_view studyId, EntityKind kind,
                         std::string_view local) {
  if (studyId.empty()) throw Error("mintIri: empty study id");
  if (local.empty()) throw Error("mintIri: empty local name");
  std::string iri(kKgBase);
  iri += encodeSegment(studyId);
  iri += '/';
  iri += kindSegment(kind);
  iri += '/';
  iri += encodeSegment(local);
  return rdf::Term::iri(std::move(iri));
}

}  // namespace morekg::ingest

#endif  // MOREKG_INGEST_IRI_HPP
