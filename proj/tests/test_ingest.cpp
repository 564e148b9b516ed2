#include <gtest/gtest.h>

#include <set>

#include "morekg/cli/commands.hpp"
#include "morekg/ingest/bundle.hpp"
#include "morekg/ingest/emit.hpp"
#include "morekg/ingest/fixture.hpp"
#include "morekg/ingest/iri.hpp"
#include "morekg/ontology/schema.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

using namespace morekg;
using rdf::Term;
using testing_support::TempDir;
using testing_support::writeFile;

namespace {

rdf::Graph emitDir(const std::filesystem::path& dir) {
  auto b = ingest::loadBundle(dir);
  return ingest::emitKg(b, ontology::buildSchema(b.items));
}

}  // namespace

TEST(Bundle, MinimalBundleCounts) {
  TempDir dir;
  testing_support::writeMinimalBundle(dir.path());
  auto b = ingest::loadBundle(dir.path());
  EXPECT_EQ(b.metadata.id, "st01");
  EXPECT_EQ(b.participants.size(), 1u);
  EXPECT_EQ(b.items.size(), 1u);
  EXPECT_EQ(b.results.size(), 1u);
  EXPECT_EQ(b.metadata.doi.value(), "10.1234/abc");
  EXPECT_EQ(b.results[0].value.lexical, "32.5");
}

TEST(Bundle, DanglingParticipantNamesRow) {
  TempDir dir;
  testing_support::writeMinimalBundle(dir.path());
  writeFile(dir / "results.csv",
            "participant_id,test_item,value,session_date,trial\np007,handgrip,30.0,,\np999,handgrip,31.0,,\n");
  try {
    ingest::loadBundle(dir.path());
    FAIL() << "expected BundleError";
  } catch (const ingest::BundleError& e) {
    EXPECT_EQ(e.file(), "results.csv");
    EXPECT_EQ(e.row(), 3u);
    EXPECT_NE(std::string(e.what()).find("p999"), std::string::npos);
  }
}

TEST(Bundle, MissingFileNamed) {
  TempDir dir;
  testing_support::writeMinimalBundle(dir.path());
  std::filesystem::remove(dir / "participants.csv");
  try {
    ingest::loadBundle(dir.path());
    FAIL() << "expected BundleError";
  } catch (const ingest::BundleError& e) {
    EXPECT_NE(std::string(e.what()).find("participants.csv"), std::string::npos);
  }
}

TEST(Bundle, RejectsMalformedRows) {
  TempDir dir;
  testing_support::writeMinimalBundle(dir.path());
  writeFile(dir / "results.csv", "participant_id,test_item,value,session_date,trial\np007,handgrip,abc,,\n");
  EXPECT_THROW(ingest::loadBundle(dir.path()), ingest::BundleError);
  writeFile(dir / "results.csv", "participant_id,test_item,value,session_date,trial\np007,handgrip,1.0,2016-02-30,\n");
  EXPECT_THROW(ingest::loadBundle(dir.path()), ingest::BundleError);
  writeFile(dir / "results.csv", "participant_id,test_item,value\np007,handgrip,1.0\n");
  EXPECT_THROW(ingest::loadBundle(dir.path()), ingest::BundleError);
  testing_support::writeMinimalBundle(dir.path());
  writeFile(dir / "study.csv", "id,title,year_start,year_end,doi\nst01,x,2018,2016,\n");
  EXPECT_THROW(ingest::loadBundle(dir.path()), ingest::BundleError);
}

TEST(Bundle, FixtureLoadsAndValidatesClean) {
  TempDir dir;
  ingest::writeFixture(dir.path(), {});
  auto b = ingest::loadBundle(dir.path());
  EXPECT_EQ(b.participants.size(), 30u);
  EXPECT_EQ(b.results.size(), 60u);
  EXPECT_TRUE(ingest::validateBundle(b).empty());
}

TEST(Validate, BmiCheck) {
  TempDir dir;
  testing_support::writeMinimalBundle(dir.path());
  EXPECT_TRUE(ingest::validateBundle(ingest::loadBundle(dir.path())).empty());
  writeFile(dir / "participants.csv", "participant_id,age,sex,height_cm,weight_kg,bmi\np007,9,f,150,45,25.0\n");
  auto report = ingest::validateBundle(ingest::loadBundle(dir.path()));
  EXPECT_EQ(report.count(ingest::WarningKind::kBmiMismatch), 1u);
  EXPECT_EQ(report.warnings[0].subject, "p007");
}

TEST(Validate, EmptyBundleHasEmptyReport) {
  EXPECT_TRUE(ingest::validateBundle(ingest::StudyBundle{}).empty());
}

TEST(Iri, MintExamplesAndUniqueness) {
  EXPECT_EQ(ingest::mintIri("st01", ingest::EntityKind::kPerson, "p007").value(),
            "https://w3id.org/more/kg/st01/person/p007");
  EXPECT_EQ(ingest::mintIri("st01", ingest::EntityKind::kProcess, ingest::resultLocal("p007", "handgrip", 1)).value(),
            "https://w3id.org/more/kg/st01/process/p007_handgrip_s1");
  EXPECT_EQ(ingest::mintIri("st01", ingest::EntityKind::kValueSpec, "a b").value(),
            "https://w3id.org/more/kg/st01/valuespec/a%20b");
  EXPECT_THROW(ingest::mintIri("", ingest::EntityKind::kStudy, "x"), Error);

  std::set<std::string> seen;
  const ingest::EntityKind kinds[] = {ingest::EntityKind::kStudy, ingest::EntityKind::kPerson,
                                      ingest::EntityKind::kProcess, ingest::EntityKind::kValueSpec};
  for (const char* study : {"st01", "st02"}) {
    for (auto k : kinds) {
      for (const char* local : {"p1", "p1_handgrip_s1", "p1%", "p1/x"}) {
        EXPECT_TRUE(seen.insert(ingest::mintIri(study, k, local).value()).second) << study << " " << local;
      }
    }
  }
}

TEST(Emit, ValueSpecificationCarriesValueAndUnit) {
  TempDir dir;
  testing_support::writeMinimalBundle(dir.path());
  auto g = emitDir(dir.path());
  Term vs = ingest::mintIri("st01", ingest::EntityKind::kValueSpec, "p007_handgrip_s1");
  EXPECT_TRUE(g.contains({vs, rdf::vocab::rdfType(), vocab::valueSpecification()}));
  EXPECT_TRUE(g.contains({vs, rdf::vocab::rdfValue(), Term::literal("32.5", rdf::xsd::kDecimal)}));
  EXPECT_TRUE(g.contains({vs, vocab::hasUnit(), Term::literal("kg")}));
  EXPECT_TRUE(g.contains({vs, vocab::specifiesValueOf(),
                          ingest::mintIri("st01", ingest::EntityKind::kDisposition, "p007_handgrip")}));
}

TEST(Emit, ZeroResultsGiveZeroProcesses) {
  TempDir dir;
  testing_support::writeMinimalBundle(dir.path());
  writeFile(dir / "results.csv", "participant_id,test_item,value,session_date,trial\n");
  auto g = emitDir(dir.path());
  EXPECT_TRUE(g.match({}, rdf::vocab::rdfType(), vocab::handgripTestProcess()).empty());
  EXPECT_EQ(g.match({}, rdf::vocab::rdfType(), vocab::person()).size(), 1u);
}

TEST(Emit, TripleCountMatchesCsvOracle) {
  TempDir dir;
  testing_support::writeMinimalBundle(dir / "min");
  ingest::writeFixture(dir / "fix", testing_support::demoSpec());
  std::vector<std::filesystem::path> dirs = {dir / "min"};
  for (const auto& d : testing_support::bundleDirs(dir / "fix")) dirs.push_back(d);
  for (const auto& d : dirs) EXPECT_EQ(emitDir(d).size(), oracle::emittedTriples(d)) << d;
  EXPECT_EQ(emitDir(dir / "min").size(), 56u);
}

TEST(Emit, EveryResultHasTheFullPattern) {
  TempDir dir;
  ingest::writeFixture(dir.path(), {});
  auto b = ingest::loadBundle(dir.path());
  auto schema = ontology::buildSchema(b.items);
  auto g = ingest::emitKg(b, schema);
  std::map<std::pair<std::string, std::string>, int> ordinal;
  for (const auto& r : b.results) {
    std::string local = ingest::resultLocal(r.participantId, r.itemKey, ++ordinal[{r.participantId, r.itemKey}]);
    auto mint = [&](ingest::EntityKind k) { return ingest::mintIri("st01", k, local); };
    Term proc = mint(ingest::EntityKind::kProcess), datum = mint(ingest::EntityKind::kDatum);
    Term vs = mint(ingest::EntityKind::kValueSpec), role = mint(ingest::EntityKind::kRole);
    Term plan = mint(ingest::EntityKind::kPlan);
    Term person = ingest::mintIri("st01", ingest::EntityKind::kPerson, r.participantId);
    const auto& item = schema.item(r.itemKey);
    ASSERT_TRUE(g.contains({proc, rdf::vocab::rdfType(), item.processClass}));
    ASSERT_TRUE(g.contains({proc, vocab::executes(), item.individual}));
    ASSERT_TRUE(g.contains({proc, vocab::hasParticipant(), person}));
    ASSERT_TRUE(g.contains({proc, vocab::hasSpecifiedOutput(), datum}));
    ASSERT_TRUE(g.contains({proc, vocab::realizes(), plan}));
    ASSERT_TRUE(g.contains({plan, vocab::concretizes(), item.individual}));
    ASSERT_TRUE(g.contains({datum, vocab::hasValueSpecification(), vs}));
    ASSERT_TRUE(g.contains({vs, rdf::vocab::rdfValue(), Term::literal(r.value.lexical, rdf::xsd::kDecimal)}));
    // Role pattern: the person bears the role the process realizes.
    ASSERT_TRUE(g.contains({person, vocab::hasRole(), role}));
    ASSERT_TRUE(g.contains({proc, vocab::realizes(), role}));
    ASSERT_TRUE(g.contains({role, rdf::vocab::rdfType(), vocab::evaluantRole()}));
  }
}

TEST(Emit, Deterministic) {
  TempDir dir;
  ingest::writeFixture(dir.path(), {});
  auto a = emitDir(dir.path()), b = emitDir(dir.path());
  EXPECT_EQ(a, b);
  EXPECT_EQ(serdes::writeNTriples(a), serdes::writeNTriples(b));
}

TEST(Fixture, ByteIdenticalForSameSeed) {
  TempDir a, b, c;
  auto spec = testing_support::demoSpec();
  ingest::writeFixture(a.path(), spec);
  ingest::writeFixture(b.path(), spec);
  spec.seed = 43;
  ingest::writeFixture(c.path(), spec);
  bool anyDifferent = false;
  for (const char* study : {"st01", "st02", "st03"}) {
    for (const char* f : {"study.csv", "participants.csv", "test_items.csv", "results.csv"}) {
      auto rel = std::filesystem::path(study) / f;
      EXPECT_EQ(testing_support::readFile(a.path() / rel), testing_support::readFile(b.path() / rel)) << rel;
      anyDifferent |= testing_support::readFile(a.path() / rel) != testing_support::readFile(c.path() / rel);
    }
  }
  EXPECT_TRUE(anyDifferent);
}

TEST(Fixture, ZeroParticipants) {
  TempDir dir;
  ingest::FixtureSpec spec;
  spec.participants = 0;
  ingest::writeFixture(dir.path(), spec);
  auto b = ingest::loadBundle(dir.path());
  EXPECT_TRUE(b.participants.empty());
  EXPECT_TRUE(b.results.empty());
  EXPECT_EQ(b.items.size(), 2u);
}

TEST(Fixture, RejectsBadSpecs) {
  TempDir dir;
  ingest::FixtureSpec spec;
  spec.items = {"vo2max_unknown"};
  EXPECT_THROW(ingest::writeFixture(dir.path(), spec), Error);
  spec = {};
  spec.studies = 0;
  EXPECT_THROW(ingest::writeFixture(dir.path(), spec), Error);
}
