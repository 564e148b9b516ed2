// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "morekg/morekg.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

using namespace morekg;
using rdf::Term;
using testing_support::readFile;
using testing_support::TempDir;

namespace {

// Pinned tolerances and sizes.
constexpr double kQuerySeconds = 1.0;
constexpr double kPipelineSeconds = 60.0;
const oracle::Q kRenderTolerance(1, 1000000000);  // 1e-9
constexpr std::size_t kRandomGraphs = 500;
constexpr std::size_t kMaxShortcutTriples = 10000;
constexpr int kRandomPolicies = 25;
constexpr std::size_t kScaleParticipants = 10000;

const std::filesystem::path kData = MOREKG_DATA_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail.clear();
    ok = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

double seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << "s";
  return o.str();
}

std::set<rdf::Triple> asSet(const rdf::Graph& g) {
  auto ts = g.triples();
  return {ts.begin(), ts.end()};
}

// Materialized 30-participant, three-study seeded fixture.
struct Demo {
  TempDir dir;
  rdf::Graph graph;
  std::vector<std::filesystem::path> bundles;
};

const Demo& demo() {
  static const Demo* d = [] {
    auto* out = new Demo;
    out->graph = testing_support::buildFixture(out->dir.path(), testing_support::demoSpec(), true);
    out->bundles = testing_support::bundleDirs(out->dir.path());
    return out;
  }();
  return *d;
}

Outcome cq1Fidelity() {
  Outcome o;
  const auto& d = demo();
  auto expected = oracle::cq1(d.bundles);
  auto start = std::chrono::steady_clock::now();
  auto q = query::parseQuery(readFile(kData / "cq" / "cq1.rq"));
  auto table = query::evaluate(d.graph, q);
  double took = seconds(start);
  if (table.columns != std::vector<std::string>{"age", "avgStrength"}) o.fail("unexpected columns");
  if (table.rows.size() != expected.size()) {
    o.fail("rows " + std::to_string(table.rows.size()) + " vs oracle " + std::to_string(expected.size()));
  }
  std::size_t exactMatches = 0;
  for (const auto& row : table.rows) {
    if (row.size() != 2 || !row[0].bound() || !row[1].bound() || !row[1].exact) {
      o.fail("incomplete row");
      continue;
    }
    int age = std::stoi(row[0].term->value());
    auto it = expected.find(age);
    if (it == expected.end()) {
      o.fail("age " + std::to_string(age) + " not in oracle");
      continue;
    }
    if (*row[1].exact != it->second) o.fail("age " + std::to_string(age) + " exact mismatch");
    // Rendered decimals against the oracle's own rendering of the exact mean.
    auto diff = oracle::decimal(row[1].term->value()) - oracle::decimal(oracle::fixed(it->second, 6));
    if (abs(diff) > kRenderTolerance) o.fail("age " + std::to_string(age) + " rendered " + row[1].term->value());
    ++exactMatches;
  }
  if (took >= kQuerySeconds) o.fail("runtime " + fmt(took));
  if (o.ok) o.detail = std::to_string(exactMatches) + " age groups exact, runtime " + fmt(took);
  return o;
}

Outcome cq2Fidelity() {
  Outcome o;
  const auto& d = demo();
  auto expected = oracle::cq2(d.bundles, 2015, 2020);
  auto start = std::chrono::steady_clock::now();
  auto q = query::parseQuery(readFile(kData / "cq" / "cq2.rq"));
  auto table = query::evaluate(d.graph, q);
  double took = seconds(start);
  std::set<std::string> got;
  for (const auto& row : table.rows) {
    if (row.size() == 1 && row[0].bound()) got.insert(row[0].term->value());
  }
  if (got.size() != table.rows.size()) o.fail("duplicate or unbound rows");
  if (expected.empty()) o.fail("oracle set is empty; fixture does not exercise the filter");
  if (got != expected) o.fail(std::to_string(got.size()) + " items vs oracle " + std::to_string(expected.size()));
  if (took >= kQuerySeconds) o.fail("runtime " + fmt(took));
  if (o.ok) o.detail = std::to_string(got.size()) + " items equal to oracle, runtime " + fmt(took);
  return o;
}

Outcome subsumptionChain() {
  Outcome o;
  TempDir dir;
  auto g = testing_support::buildFixture(dir.path(), testing_support::demoSpec(), false);
  ingest::IngestConfig cfg;
  std::vector<std::string> paths = {dir.path().string()};
  auto schema = cli::schemaFor(cli::loadBundles(paths, cfg));
  auto closed = ontology::rdfsClosure(g, schema);
  const Term type = rdf::vocab::rdfType();

  std::size_t studies = 0, studyOk = 0, procs = 0, procOk = 0;
  for (const auto& t : g.match({}, type, vocab::study())) {
    ++studies;
    if (closed.contains({t.subject, type, vocab::planSpecification()}) &&
        closed.contains({t.subject, type, vocab::informationContentEntity()})) {
      ++studyOk;
    }
  }
  for (const auto& t : g.match({}, type, vocab::handgripTestProcess())) {
    ++procs;
    if (closed.contains({t.subject, type, vocab::assay()}) && closed.contains({t.subject, type, vocab::process()})) {
      ++procOk;
    }
  }
  if (studies == 0 || procs == 0) o.fail("fixture has no studies or handgrip processes");
  if (studyOk != studies) o.fail(std::to_string(studyOk) + "/" + std::to_string(studies) + " studies typed");
  if (procOk != procs) o.fail(std::to_string(procOk) + "/" + std::to_string(procs) + " processes typed");
  if (o.ok) {
    o.detail = std::to_string(studies) + "/" + std::to_string(studies) + " studies, " + std::to_string(procs) + "/" +
               std::to_string(procs) + " handgrip processes";
  }
  return o;
}

std::vector<oracle::SimpleRule> simple(const rules::RuleSet& rs) {
  std::vector<oracle::SimpleRule> out;
  for (const auto& r : rs.rules()) out.push_back({r.body, r.head});
  return out;
}

Outcome shortcutMaterialization() {
  Outcome o;
  const rules::RuleSet shortcut({rules::builtinShortcutRule()});
  std::size_t largest = 0, graphs = 0;
  // Participant counts chosen so the largest instance graph stays at or under the cap.
  for (std::size_t participants : {1, 10, 50, 100, 135}) {
    TempDir dir;
    ingest::FixtureSpec spec;
    spec.participants = participants;
    auto g = testing_support::buildFixture(dir.path(), spec, false);
    if (g.size() > kMaxShortcutTriples) {
      o.fail(std::to_string(participants) + " participants give " + std::to_string(g.size()) + " triples");
      continue;
    }
    largest = std::max(largest, g.size());
    ++graphs;
    std::string tag = std::to_string(g.size()) + " triples: ";

    auto expected = oracle::shortcutPairs(g.triples());
    auto full = rules::materialize(g, rules::builtinRules());
    std::set<std::pair<Term, Term>> got;
    for (const auto& t : full.match({}, vocab::measuresDisposition(), {})) got.insert({t.subject, t.object});
    if (expected.empty()) o.fail(tag + "oracle found no shortcut pairs");
    if (got.size() != expected.size() || got != expected) {
      o.fail(tag + std::to_string(got.size()) + " inferred vs oracle " + std::to_string(expected.size()));
    }
    if (asSet(rules::materialize(g, shortcut)) != oracle::naiveFixpoint(asSet(g), simple(shortcut))) {
      o.fail(tag + "semi-naive and naive fixpoints differ");
    }
  }
  // The whole builtin rule set on a small instance: the naive oracle is cubic.
  {
    TempDir dir;
    ingest::FixtureSpec spec;
    spec.participants = 3;
    auto g = testing_support::buildFixture(dir.path(), spec, false);
    if (asSet(rules::materialize(g, rules::builtinRules())) !=
        oracle::naiveFixpoint(asSet(g), simple(rules::builtinRules()))) {
      o.fail("builtin rule set: semi-naive and naive fixpoints differ");
    }
  }
  if (o.ok) o.detail = std::to_string(graphs) + " graphs up to " + std::to_string(largest) + " triples";
  return o;
}

serdes::SerializationConfig turtleConfig() {
  serdes::SerializationConfig cfg;
  cfg.format = serdes::Format::kTurtle;
  return cfg;
}

Outcome serializationRoundTrip() {
  Outcome o;
  std::mt19937_64 rng(2024);
  auto check = [&](const rdf::Graph& g, const std::string& tag) {
    if (serdes::parseNTriples(serdes::writeNTriples(g)) != g) o.fail(tag + " N-Triples");
    if (serdes::parseTurtle(serdes::writeTurtle(g, turtleConfig())) != g) o.fail(tag + " Turtle");
    auto once = serdes::writeNTriples(g);
    auto ts = g.triples();
    std::shuffle(ts.begin(), ts.end(), rng);
    rdf::Graph reordered;
    for (const auto& t : ts) reordered.insert(t);
    if (serdes::writeNTriples(reordered) != once || serdes::writeNTriples(g) != once) o.fail(tag + " not canonical");
  };
  for (std::size_t i = 0; i < kRandomGraphs && o.ok; ++i) {
    rdf::Graph g;
    for (const auto& t : oracle::randomTriples(rng, rng() % 60)) g.insert(t);
    try {
      check(g, "random graph " + std::to_string(i));
    } catch (const std::exception& e) {
      o.fail("random graph " + std::to_string(i) + ": " + e.what());
    }
  }
  check(demo().graph, "fixture KG");
  if (o.ok) {
    o.detail = std::to_string(kRandomGraphs) + " random graphs + fixture KG (" + std::to_string(demo().graph.size()) +
               " triples), both formats";
  }
  return o;
}

// Nested roles r0 < r1 < r2 share one set of band generalizations; "all"
// allows every level and generalizes nothing.
privacy::Policy randomPolicy(std::mt19937_64& rng, const std::vector<std::string>& candidates) {
  const privacy::SensitivityLevel levels[] = {privacy::SensitivityLevel::kIdentifying,
                                              privacy::SensitivityLevel::kHealth, privacy::SensitivityLevel::kPublic};
  privacy::Policy p;
  for (const auto& c : candidates) {
    if (rng() % 4 == 0) p.annotations[c] = levels[rng() % 3];
  }
  std::map<std::string, privacy::GeneralizationSpec> gens;
  for (const Term& t : {vocab::hasAge(), vocab::hasHeight(), vocab::hasWeight(), vocab::hasBmi(),
                        vocab::sessionDate(), vocab::conductedInYear()}) {
    if (rng() % 3) continue;
    privacy::GeneralizationSpec g;
    g.width = rng() % 2 ? Rational(1 + static_cast<long>(rng() % 10)) : Rational(5, 2);
    gens[t.value()] = g;
    if (!p.annotations.count(t.value())) p.annotations[t.value()] = levels[rng() % 3];
  }
  std::set<privacy::SensitivityLevel> allowed = {privacy::SensitivityLevel::kPublic};
  p.roles.push_back({"r0", allowed, gens});
  allowed.insert(privacy::SensitivityLevel::kHealth);
  p.roles.push_back({"r1", allowed, gens});
  allowed.insert(privacy::SensitivityLevel::kIdentifying);
  p.roles.push_back({"r2", allowed, gens});
  p.roles.push_back({"all", allowed, {}});
  privacy::validatePolicy(p);
  return p;
}

Outcome privacySoundness() {
  Outcome o;
  const auto& g = demo().graph;
  std::set<std::string> found;
  for (const auto& t : g.triples()) {
    if (t.predicate != rdf::vocab::rdfType()) found.insert(t.predicate.value());
    else if (t.object.value().rfind("https://w3id.org/more#", 0) == 0) found.insert(t.object.value());
  }
  found.erase(rdf::vocab::rdfsSubClassOf().value());
  std::vector<std::string> candidates(found.begin(), found.end());

  std::mt19937_64 rng(31);
  std::size_t views = 0;
  for (int round = 0; round < kRandomPolicies; ++round) {
    auto p = randomPolicy(rng, candidates);
    for (const auto& role : p.roles) {
      auto view = privacy::applyPolicy(g, p, role.name);
      ++views;
      auto report = privacy::auditView(view, p, role.name);
      if (!report.empty()) {
        o.fail("round " + std::to_string(round) + " role " + role.name + ": " +
               std::to_string(report.violations.size()) + " violations");
      }
      if (role.name == "all" && view != g) o.fail("round " + std::to_string(round) + ": permissive view differs");
    }
  }

  auto def = privacy::defaultPolicy();
  auto pub = privacy::applyPolicy(g, def, "public");
  std::size_t leaked = 0;
  for (const auto& [iri, level] : def.annotations) {
    if (level != privacy::SensitivityLevel::kPublic) leaked += pub.match({}, Term::iri(iri), {}).size();
  }
  if (leaked) o.fail("public view keeps " + std::to_string(leaked) + " identifying/health triples");
  if (g.match({}, vocab::hasAge(), {}).empty() || g.match({}, vocab::hasBmi(), {}).empty()) {
    o.fail("fixture lacks age or BMI triples");
  }
  if (!privacy::auditView(pub, def, "public").empty()) o.fail("default public view fails audit");
  if (privacy::applyPolicy(g, def, "researcher") != g) o.fail("researcher view differs from source");
  if (o.ok) {
    o.detail = std::to_string(kRandomPolicies) + " random policies, " + std::to_string(views) +
               " role views audited clean; public view has 0 sensitive triples";
  }
  return o;
}

struct PipelineRun {
  std::map<std::string, std::string> artifacts;
  double seconds = 0;
  bool ok = true;
  std::string error;
  std::filesystem::path bundles;
};

PipelineRun runPipeline(const std::filesystem::path& dir) {
  PipelineRun run;
  std::ostringstream out, err;
  cli::Io io{out, err};
  ingest::FixtureSpec spec;
  spec.participants = kScaleParticipants;
  spec.items = {"handgrip", "shuttle_run"};
  run.bundles = dir / "bundles";
  auto kg = dir / "kg.ttl", mat = dir / "mat.ttl";

  auto start = std::chrono::steady_clock::now();
  run.ok = cli::cmdGenFixture(run.bundles.string(), spec, io) == cli::kOk;
  cli::BuildOptions b;
  b.bundles = {run.bundles.string()};
  b.out = kg.string();
  run.ok = run.ok && cli::cmdBuild(b, io) == cli::kOk;
  run.ok = run.ok && cli::cmdMaterialize(kg.string(), mat.string(), std::nullopt, true, io) == cli::kOk;
  cli::QueryOptions q;
  q.kg = mat.string();
  q.query = (kData / "cq" / "cq1.rq").string();
  q.format = query::ResultFormat::kCsv;
  run.ok = run.ok && cli::cmdQuery(q, io) == cli::kOk;
  run.seconds = seconds(start);
  if (!run.ok) run.error = err.str();

  for (const char* f : {"study.csv", "participants.csv", "test_items.csv", "results.csv"}) {
    run.artifacts[f] = readFile(run.bundles / f);
  }
  run.artifacts["kg.ttl"] = readFile(kg);
  run.artifacts["mat.ttl"] = readFile(mat);
  run.artifacts["cq1.csv"] = out.str();
  return run;
}

Outcome endToEnd() {
  Outcome o;
  TempDir a, b;
  auto first = runPipeline(a.path());
  auto second = runPipeline(b.path());
  for (const auto* r : {&first, &second}) {
    if (!r->ok) o.fail("pipeline failed: " + r->error);
    if (r->seconds >= kPipelineSeconds) o.fail("run took " + fmt(r->seconds));
  }
  for (const auto& [name, bytes] : first.artifacts) {
    if (bytes.empty()) o.fail(name + " is empty");
    if (second.artifacts[name] != bytes) o.fail(name + " differs between runs");
  }
  if (first.ok) {
    auto expected = oracle::cq1Csv(oracle::cq1({first.bundles}));
    if (first.artifacts["cq1.csv"] != expected) o.fail("CQ1 output differs from oracle");
  }
  if (o.ok) {
    o.detail = std::to_string(kScaleParticipants) + " participants x 2 items, runs " + fmt(first.seconds) + " and " +
               fmt(second.seconds) + ", " + std::to_string(first.artifacts.size()) + " artifacts byte-identical";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"CQ1 fidelity", cq1Fidelity},
      {"CQ2 fidelity", cq2Fidelity},
      {"Subsumption chain", subsumptionChain},
      {"Shortcut materialization", shortcutMaterialization},
      {"Serialization round trip", serializationRoundTrip},
      {"Privacy soundness", privacySoundness},
      {"End-to-end determinism and scale", endToEnd},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
