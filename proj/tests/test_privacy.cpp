#include <gtest/gtest.h>

#include <random>

#include "morekg/ontology/schema.hpp"
#include "morekg/privacy/policy.hpp"
#include "morekg/privacy/view.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

using namespace morekg;
using rdf::Term;
using privacy::SensitivityLevel;

namespace {

const std::string kDash = "\xE2\x80\x93";

const rdf::Graph& fixture() {
  static const rdf::Graph g = [] {
    testing_support::TempDir dir;
    return testing_support::buildFixture(dir.path(), {}, true);
  }();
  return g;
}

privacy::Policy ageBandPolicy() {
  return privacy::policyFromJson(R"({
    "annotations": {"more:hasAge": "identifying", "more:hasBMI": "health", "more:Age": "identifying"},
    "roles": [
      {"name": "researcher", "allow": ["identifying", "health", "public"]},
      {"name": "public", "allow": ["public"], "generalize": {"more:hasAge": {"kind": "band", "width": 5}}}
    ]})");
}

bool anyWithPredicate(const rdf::Graph& g, const Term& p) { return !g.match({}, p, {}).empty(); }

// Numeric or date-valued predicates in the fixture that may be generalized.
const std::vector<Term>& numericPredicates() {
  static const std::vector<Term> v = {vocab::hasAge(), vocab::hasHeight(), vocab::hasWeight(), vocab::hasBmi(),
                                      vocab::sessionDate(), vocab::conductedInYear()};
  return v;
}

// Candidate annotation targets: predicates and classes used by the fixture.
std::vector<std::string> annotationCandidates() {
  std::set<std::string> out;
  for (const auto& t : fixture().triples()) {
    if (t.predicate != rdf::vocab::rdfType()) out.insert(t.predicate.value());
    if (t.predicate == rdf::vocab::rdfType() && t.object.value().rfind("https://w3id.org/more#", 0) == 0) {
      out.insert(t.object.value());
    }
  }
  out.erase(rdf::vocab::rdfsSubClassOf().value());
  return {out.begin(), out.end()};
}

privacy::Policy randomPolicy(std::mt19937_64& rng, const std::vector<std::string>& candidates) {
  const SensitivityLevel levels[] = {SensitivityLevel::kIdentifying, SensitivityLevel::kHealth,
                                     SensitivityLevel::kPublic};
  privacy::Policy p;
  for (const auto& c : candidates) {
    if (rng() % 4 == 0) p.annotations[c] = levels[rng() % 3];
  }
  // Nested roles: each allows a superset of the previous.
  std::set<SensitivityLevel> allowed = {SensitivityLevel::kPublic};
  std::map<std::string, privacy::GeneralizationSpec> gens;
  for (const auto& t : numericPredicates()) {
    if (rng() % 3 == 0) {
      privacy::GeneralizationSpec g;
      g.width = rng() % 2 ? Rational(1 + static_cast<long>(rng() % 10)) : Rational(5, 2);
      gens[t.value()] = g;
      if (!p.annotations.count(t.value())) p.annotations[t.value()] = levels[rng() % 3];
    }
  }
  p.roles.push_back({"r0", allowed, gens});
  allowed.insert(SensitivityLevel::kHealth);
  p.roles.push_back({"r1", allowed, gens});
  allowed.insert(SensitivityLevel::kIdentifying);
  p.roles.push_back({"r2", allowed, gens});
  p.roles.push_back({"all", allowed, {}});
  privacy::validatePolicy(p);
  return p;
}

// The nested roles share their generalizations, so bands compare as-is.
bool isSubgraph(const rdf::Graph& a, const rdf::Graph& b) {
  for (const auto& t : a.triples()) {
    if (!b.contains(t)) return false;
  }
  return true;
}

}  // namespace

TEST(Policy, DefaultLoads) {
  auto p = privacy::defaultPolicy();
  EXPECT_NO_THROW(privacy::validatePolicy(p));
  EXPECT_TRUE(p.hasRole("public"));
  EXPECT_TRUE(p.hasRole("researcher"));
  EXPECT_EQ(p.levelOf(vocab::hasAge().value()), SensitivityLevel::kIdentifying);
  EXPECT_EQ(p.levelOf(vocab::hasBmi().value()), SensitivityLevel::kHealth);
  EXPECT_EQ(p.levelOf(vocab::hasHeight().value()), SensitivityLevel::kPublic);
}

TEST(Policy, ShippedFileMatchesDefault) {
  auto p = privacy::loadPolicy(std::filesystem::path(MOREKG_DATA_DIR) / "default.policy");
  auto d = privacy::defaultPolicy();
  EXPECT_EQ(p.annotations, d.annotations);
  ASSERT_EQ(p.roles.size(), d.roles.size());
  for (std::size_t i = 0; i < d.roles.size(); ++i) {
    EXPECT_EQ(p.roles[i].name, d.roles[i].name);
    EXPECT_EQ(p.roles[i].allowed, d.roles[i].allowed);
    EXPECT_EQ(p.roles[i].generalizations, d.roles[i].generalizations);
  }
}

TEST(Policy, Errors) {
  EXPECT_THROW(privacy::policyFromJson(R"({"roles": []})"), privacy::PolicyError);
  EXPECT_THROW(privacy::policyFromJson(R"({"annotations": {"more:hasAge": "secret"}, "roles": [{"name": "a"}]})"),
               privacy::PolicyError);
  EXPECT_THROW(privacy::policyFromJson(R"({"roles": [{"name": "a"}, {"name": "a"}]})"), privacy::PolicyError);
  EXPECT_THROW(privacy::policyFromJson(
                   R"({"roles": [{"name": "a", "generalize": {"more:hasAge": {"kind": "band", "width": 5}}}]})"),
               privacy::PolicyError);
  EXPECT_THROW(privacy::policyFromJson(R"({"annotations": {"more:hasAge": "identifying"},
      "roles": [{"name": "a", "generalize": {"more:hasAge": {"kind": "band", "width": 0}}}]})"),
               privacy::PolicyError);
  EXPECT_THROW(privacy::policyFromJson("not json"), privacy::PolicyError);
}

TEST(Policy, AgeBandSpec) {
  auto p = ageBandPolicy();
  const auto& g = p.role("public").generalizations.at(vocab::hasAge().value());
  EXPECT_EQ(g.kind, "band");
  EXPECT_EQ(g.width, Rational(5));
  EXPECT_EQ(privacy::Policy::bandPredicate(vocab::hasAge().value(), g), vocab::more("hasAgeBand").value());
}

TEST(Annotate, OneTripleIdempotentAndWarns) {
  auto schema = ontology::buildSchema({});
  privacy::Policy p;
  p.annotations[vocab::hasAge().value()] = SensitivityLevel::kIdentifying;
  p.roles.push_back({"r", {SensitivityLevel::kPublic}, {}});
  auto once = privacy::annotateSchema(schema, p);
  EXPECT_EQ(once.size(), schema.graph.size() + 1);
  EXPECT_TRUE(once.contains({vocab::hasAge(), vocab::sensitivityLevel(), Term::literal("identifying")}));
  ontology::OntologySchema again = schema;
  again.graph = once;
  EXPECT_EQ(privacy::annotateSchema(again, p), once);

  p.annotations["https://w3id.org/more#neverUsed"] = SensitivityLevel::kHealth;
  std::vector<std::string> warnings;
  auto out = privacy::annotateSchema(schema, p, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("neverUsed"), std::string::npos);
  EXPECT_TRUE(out.contains({Term::iri("https://w3id.org/more#neverUsed"), vocab::sensitivityLevel(),
                            Term::literal("health")}));
}

TEST(View, PublicHidesAgeResearcherSeesAll) {
  auto p = privacy::defaultPolicy();
  const auto& g = fixture();
  ASSERT_TRUE(anyWithPredicate(g, vocab::hasAge()));
  auto pub = privacy::applyPolicy(g, p, "public");
  EXPECT_FALSE(anyWithPredicate(pub, vocab::hasAge()));
  EXPECT_FALSE(anyWithPredicate(pub, vocab::hasBmi()));
  EXPECT_TRUE(pub.match({}, rdf::vocab::rdfType(), vocab::ageQuality()).empty());
  EXPECT_TRUE(anyWithPredicate(pub, vocab::hasHeight()));
  EXPECT_EQ(privacy::applyPolicy(g, p, "researcher"), g);
  EXPECT_THROW(privacy::applyPolicy(g, p, "nobody"), privacy::PolicyError);
}

TEST(View, AgeSevenBandsToFiveNine) {
  rdf::Graph g;
  Term person = Term::iri("https://w3id.org/more/kg/st01/person/p007");
  g.insert({person, rdf::vocab::rdfType(), vocab::person()});
  g.insert({person, vocab::hasAge(), Term::literal("7", rdf::xsd::kInteger)});
  auto view = privacy::applyPolicy(g, ageBandPolicy(), "public");
  EXPECT_TRUE(view.contains({person, vocab::more("hasAgeBand"), Term::literal("5" + kDash + "9")}));
  EXPECT_FALSE(anyWithPredicate(view, vocab::hasAge()));
  EXPECT_EQ(view.size(), 2u);
}

TEST(View, BandArithmetic) {
  privacy::GeneralizationSpec g;
  g.width = 5;
  auto band = [&](const Term& t) { return privacy::bandLiteral(t, g).value().value(); };
  EXPECT_EQ(band(Term::literal("10", rdf::xsd::kInteger)), "10" + kDash + "14");
  EXPECT_EQ(band(Term::literal("-1", rdf::xsd::kInteger)), "-5" + kDash + "-1");
  EXPECT_EQ(band(Term::literal("17.5", rdf::xsd::kDecimal)), "15" + kDash + "20");
  EXPECT_FALSE(privacy::bandLiteral(Term::literal("x"), g).has_value());
  EXPECT_TRUE(privacy::isValidBand("5" + kDash + "9", g));
  EXPECT_FALSE(privacy::isValidBand("5" + kDash + "7", g));
  EXPECT_FALSE(privacy::isValidBand("7", g));
}

TEST(Audit, AppliedViewIsCleanInsertedTripleIsFlagged) {
  auto p = ageBandPolicy();
  auto view = privacy::applyPolicy(fixture(), p, "public");
  auto report = privacy::auditView(view, p, "public");
  EXPECT_TRUE(report.empty()) << report.toText();
  EXPECT_EQ(report.triplesChecked, view.size());

  Term person = Term::iri("https://w3id.org/more/kg/st01/person/p001");
  view.insert({person, vocab::hasBmi(), Term::literal("18.0", rdf::xsd::kDecimal)});
  report = privacy::auditView(view, p, "public");
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, privacy::Violation::Kind::kDeniedPredicate);
  EXPECT_NE(report.toCsv().find("denied-predicate"), std::string::npos);

  view.insert({person, vocab::more("hasAgeBand"), Term::literal("5" + kDash + "6")});
  EXPECT_EQ(privacy::auditView(view, p, "public").violations.size(), 2u);
}

TEST(Audit, FixtureUnderResearcherIsClean) {
  auto p = privacy::defaultPolicy();
  auto report = privacy::auditView(fixture(), p, "researcher");
  EXPECT_TRUE(report.empty());
  EXPECT_EQ(report.triplesChecked, fixture().size());
}

TEST(PrivacyProperty, RandomPoliciesAreSound) {
  std::mt19937_64 rng(31);
  const auto candidates = annotationCandidates();
  const auto& g = fixture();
  for (int round = 0; round < 25; ++round) {
    auto p = randomPolicy(rng, candidates);
    std::map<std::string, rdf::Graph> views;
    for (const auto& role : p.roles) {
      views[role.name] = privacy::applyPolicy(g, p, role.name);
      auto report = privacy::auditView(views[role.name], p, role.name);
      ASSERT_TRUE(report.empty()) << "round " << round << " role " << role.name << "\n" << report.toText();
      // No triple with a denied predicate survives.
      for (const auto& [iri, level] : p.annotations) {
        if (!role.allows(level)) {
          ASSERT_FALSE(anyWithPredicate(views[role.name], Term::iri(iri))) << iri;
        }
      }
      // Bands are never narrower than configured.
      for (const auto& [target, spec] : role.generalizations) {
        Term out = Term::iri(privacy::Policy::bandPredicate(target, spec));
        for (const auto& t : views[role.name].match({}, out, {})) {
          ASSERT_TRUE(privacy::isValidBand(t.object.value(), spec)) << t.object.value();
          auto dash = t.object.value().find(kDash, 1);
          auto lo = oracle::decimal(t.object.value().substr(0, dash));
          auto hi = oracle::decimal(t.object.value().substr(dash + kDash.size()));
          bool integral = denominator(spec.width) == 1;
          ASSERT_GE(hi - lo + (integral && hi - lo != spec.width ? 1 : 0), spec.width);
        }
      }
      // Values that are neither annotated nor generalized pass through.
      for (const auto& t : g.triples()) {
        bool touched = p.annotations.count(t.predicate.value()) || role.generalizations.count(t.predicate.value());
        if (touched) continue;
        bool typedDenied = false;
        for (const auto& n : {t.subject, t.object}) {
          for (const auto& ty : g.match(n, rdf::vocab::rdfType(), {})) {
            if (!role.allows(p.levelOf(ty.object.value()))) typedDenied = true;
          }
        }
        if (!typedDenied && !p.annotations.count(t.object.value())) {
          ASSERT_TRUE(views[role.name].contains(t));
        }
      }
    }
    EXPECT_EQ(views["all"], g);
    // Monotone restriction along the nested roles.
    EXPECT_TRUE(isSubgraph(views["r0"], views["r1"]));
    EXPECT_TRUE(isSubgraph(views["r1"], views["r2"]));
  }
}
