#ifndef MOREKG_PRIVACY_VIEW_HPP
#define MOREKG_PRIVACY_VIEW_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "morekg/ingest/csv.hpp"
#include "morekg/numeric.hpp"
#include "morekg/privacy/policy.hpp"
#include "morekg/rdf/graph.hpp"
#include "morekg/serdes/ntriples.hpp"

namespace morekg::privacy {

namespace detail {

inline BigInt floorDiv(const Rational& v) {
  BigInt n = numerator(v);
  BigInt d = denominator(v);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

inline std::string bandNumber(const Rational& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return formatDecimal(v, 12);
}

// Numeric reading of a value for banding; dates band by year.
inline std::optional<std::pair<Rational, bool>> bandInput(const rdf::Term& t) {
  if (!t.isLiteral()) return std::nullopt;
  if (t.datatype() == rdf::xsd::kDate) {
    if (auto y = parseDecimalText(t.value().substr(0, t.value().find('-', 1)), false, false)) return {{*y, true}};
    return std::nullopt;
  }
  if (auto v = numericValue(t)) return {{*v, isIntegerDatatype(t.datatype())}};
  return std::nullopt;
}

inline bool integerBand(const GeneralizationSpec& g, bool integral) {
  return integral && denominator(g.width) == 1;
}

}  // namespace detail

// The band literal for `value`, or nullopt for non-numeric values.
inline std::optional<rdf::Term> bandLiteral(const rdf::Term& value, const GeneralizationSpec& g) {
  auto in = detail::bandInput(value);
  if (!in) return std::nullopt;
  Rational lo = Rational(detail::floorDiv(in->first / g.width)) * g.width;
  Rational hi = lo + g.width - (detail::integerBand(g, in->second) ? 1 : 0);
  return rdf::Term::literal(detail::bandNumber(lo) + std::string(kBandDash) + detail::bandNumber(hi));
}

// True when `lexical` is a band this spec could have produced.
inline bool isValidBand(const std::string& lexical, const GeneralizationSpec& g) {
  auto dash = lexical.find(kBandDash, 1);
  if (dash == std::string::npos) return false;
  auto lo = parseDecimalText(lexical.substr(0, dash), true, false);
  auto hi = parseDecimalText(lexical.substr(dash + kBandDash.size()), true, false);
  if (!lo || !hi) return false;
  if (denominator(Rational(*lo / g.width)) != 1) return false;
  Rational span = *hi - *lo;
  return span == g.width || (denominator(g.width) == 1 && g.width >= 1 && span == g.width - 1);
}

namespace detail {

struct RoleView {
  const Role& role;
  std::unordered_set<rdf::TermId> deniedPredicates;
  std::unordered_set<rdf::TermId> deniedClasses;
  std::unordered_map<rdf::TermId, std::pair<const GeneralizationSpec*, rdf::Term>> generalized;
  std::unordered_map<rdf::TermId, const GeneralizationSpec*> bandPredicates;
  std::optional<rdf::TermId> type;

  RoleView(const rdf::Graph& g, const Policy& p, const std::string& roleName) : role(p.role(roleName)) {
    type = g.lookup(rdf::vocab::rdfType());
    for (const auto& [iri, level] : p.annotations) {
      if (role.allows(level)) continue;
      if (auto id = g.lookup(rdf::Term::iri(iri))) {
        deniedPredicates.insert(*id);
        deniedClasses.insert(*id);
      }
    }
    for (const auto& [target, spec] : role.generalizations) {
      rdf::Term out = rdf::Term::iri(Policy::bandPredicate(target, spec));
      if (auto id = g.lookup(rdf::Term::iri(target))) generalized[*id] = {&spec, out};
      if (auto id = g.lookup(out)) bandPredicates[*id] = &spec;
    }
  }

  // Subjects typed with a denied class.
  std::unordered_set<rdf::TermId> deniedNodes(const rdf::Graph& g) const {
    std::unordered_set<rdf::TermId> out;
    if (!type) return out;
    for (auto c : deniedClasses) {
      g.forEach({}, *type, c, [&](rdf::TermId s, rdf::TermId, rdf::TermId) { out.insert(s); });
    }
    return out;
  }
};

}  // namespace detail

// Role-specific view: denied predicates dropped, instances of denied classes
// removed with every triple that mentions them, generalized properties
// replaced by band literals. The source graph is not modified.
inline rdf::Graph applyPolicy(const rdf::Graph& g, const Policy& p, const std::string& roleName) {
  detail::RoleView rv(g, p, roleName);
  const auto hidden = rv.deniedNodes(g);
  rdf::Graph view;
  g.forEach({}, {}, {}, [&](rdf::TermId s, rdf::TermId pr, rdf::TermId o) {
    if (hidden.count(s) || hidden.count(pr) || hidden.count(o)) return;
    if (auto it = rv.generalized.find(pr); it != rv.generalized.end()) {
      const auto& [spec, out] = it->second;
      if (!rv.role.allows(p.levelOf(out.value()))) return;
      if (auto band = bandLiteral(g.term(o), *spec)) view.insert({g.term(s), out, *band});
      return;
    }
    if (rv.deniedPredicates.count(pr)) return;
    // Pre-existing values under a band predicate must look like bands too.
    if (auto it = rv.bandPredicates.find(pr); it != rv.bandPredicates.end()) {
      const rdf::Term& lit = g.term(o);
      if (!lit.isLiteral() || !isValidBand(lit.value(), *it->second)) return;
    }
    view.insert({g.term(s), g.term(pr), g.term(o)});
  });
  return view;
}

struct Violation {
  enum class Kind { kDeniedPredicate, kDeniedClass, kUngeneralized, kMalformedBand };
  Kind kind;
  rdf::Triple triple;
  std::string detail;
};

inline const char* violationName(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::kDeniedPredicate: return "denied-predicate";
    case Violation::Kind::kDeniedClass: return "denied-class";
    case Violation::Kind::kUngeneralized: return "ungeneralized";
    case Violation::Kind::kMalformedBand: break;
  }
  return "malformed-band";
}

struct AuditReport {
  std::string role;
  std::size_t triplesChecked = 0;
  std::vector<Violation> violations;

  bool empty() const { return violations.empty(); }

  std::string toText() const {
    std::string out = "audit role=" + role + " triples=" + std::to_string(triplesChecked) +
                      " violations=" + std::to_string(violations.size()) + "\n";
    for (const auto& v : violations) {
      out += std::string(violationName(v.kind)) + ": " + serdes::toNTriples(v.triple.subject) + " " +
             serdes::toNTriples(v.triple.predicate) + " " + serdes::toNTriples(v.triple.object) + " (" +
             v.detail + ")\n";
    }
    return out;
  }

  std::string toCsv() const {
    std::string out = ingest::csvLine({"kind", "subject", "predicate", "object", "detail"});
    for (const auto& v : violations) {
      out += ingest::csvLine({violationName(v.kind), serdes::toNTriples(v.triple.subject),
                              serdes::toNTriples(v.triple.predicate), serdes::toNTriples(v.triple.object),
                              v.detail});
    }
    return out;
  }
};

// Lists every triple of `view` that the role may not see.
inline AuditReport auditView(const rdf::Graph& view, const Policy& p, const std::string& roleName) {
  detail::RoleView rv(view, p, roleName);
  AuditReport report;
  report.role = roleName;
  view.forEach({}, {}, {}, [&](rdf::TermId s, rdf::TermId pr, rdf::TermId o) {
    ++report.triplesChecked;
    auto flag = [&](Violation::Kind k, std::string why) {
      report.violations.push_back({k, {view.term(s), view.term(pr), view.term(o)}, std::move(why)});
    };
    const std::string& predIri = view.term(pr).value();
    if (rv.generalized.count(pr)) {
      flag(Violation::Kind::kUngeneralized, "raw value of generalized property");
    } else if (rv.deniedPredicates.count(pr)) {
      flag(Violation::Kind::kDeniedPredicate, std::string("predicate level ") + levelName(p.levelOf(predIri)));
    } else if (rv.type && pr == *rv.type && rv.deniedClasses.count(o)) {
      flag(Violation::Kind::kDeniedClass,
           std::string("class level ") + levelName(p.levelOf(view.term(o).value())));
    } else if (auto it = rv.bandPredicates.find(pr); it != rv.bandPredicates.end()) {
      const rdf::Term& lit = view.term(o);
      if (!lit.isLiteral() || !isValidBand(lit.value(), *it->second)) {
        flag(Violation::Kind::kMalformedBand, "not a band of width " + detail::bandNumber(it->second->width));
      }
    }
  });
  return report;
}

}  // namespace morekg::privacy

#endif  // MOREKG_PRIVACY_VIEW_HPP
