#ifndef MOREKG_CLI_COMMANDS_HPP
#define MOREKG_CLI_COMMANDS_HPP

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "morekg/error.hpp"
#include "morekg/ingest/bundle.hpp"
#include "morekg/ingest/csv.hpp"
#include "morekg/ingest/emit.hpp"
#include "morekg/ingest/fixture.hpp"
#include "morekg/ontology/aliases.hpp"
#include "morekg/ontology/schema.hpp"
#include "morekg/privacy/policy.hpp"
#include "morekg/privacy/view.hpp"
#include "morekg/query/evaluate.hpp"
#include "morekg/query/explain.hpp"
#include "morekg/query/format.hpp"
#include "morekg/query/parser.hpp"
#include "morekg/rules/materialize.hpp"
#include "morekg/rules/parser.hpp"
#include "morekg/serdes/ntriples.hpp"
#include "morekg/serdes/turtle.hpp"

// Subcommand bodies. Each returns a process exit code: 0 success, 1 domain
// error (bad data, failed check), 2 usage error. Diagnostics go to `err`.
namespace morekg::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

inline constexpr const char* kPolicyEnv = "MOREKG_POLICY";

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

inline Io standardIo() { return {std::cout, std::cerr}; }

// Runs `body`, mapping exceptions onto the exit-code contract.
inline int guarded(Io io, const std::string& command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    io.err << command << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    io.err << command << ": " << e.what() << "\n";
    return kFailure;
  }
}

inline std::string readText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void writeText(const std::filesystem::path& path, const std::string& text, Io io) {
  if (path.empty() || path == "-") {
    io.out << text;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

inline bool isNTriplesPath(const std::filesystem::path& p) { return p.extension() == ".nt"; }

inline rdf::Graph loadGraph(const std::filesystem::path& path) {
  std::string text = readText(path);
  try {
    return isNTriplesPath(path) ? serdes::parseNTriples(text) : serdes::parseTurtle(text);
  } catch (const ParseError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

inline std::string renderGraph(const rdf::Graph& g, const std::filesystem::path& path) {
  serdes::SerializationConfig cfg;
  if (isNTriplesPath(path)) {
    cfg.format = serdes::Format::kNTriples;
    return serdes::writeNTriples(g, cfg);
  }
  cfg.format = serdes::Format::kTurtle;
  return serdes::writeTurtle(g, cfg);
}

// --policy wins over the environment variable.
inline std::optional<privacy::Policy> resolvePolicy(const std::optional<std::string>& flag) {
  if (flag) return privacy::loadPolicy(*flag);
  if (const char* env = std::getenv(kPolicyEnv); env && *env) return privacy::loadPolicy(env);
  return std::nullopt;
}

inline privacy::Policy requirePolicy(const std::optional<std::string>& flag) {
  auto p = resolvePolicy(flag);
  if (!p) throw UsageError(std::string("a policy is required (--policy or $") + kPolicyEnv + ")");
  return *p;
}

// A path is a bundle when it holds the study table; otherwise each
// sub-directory holding one is taken, in name order.
inline std::vector<std::filesystem::path> expandBundleDirs(const std::vector<std::string>& paths,
                                                           const ingest::IngestConfig& cfg) {
  namespace fs = std::filesystem;
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    if (!fs::is_directory(p)) throw Error("bundle directory '" + p + "' does not exist");
    if (fs::exists(fs::path(p) / cfg.studyFile)) {
      out.emplace_back(p);
      continue;
    }
    std::vector<fs::path> subs;
    for (const auto& e : fs::directory_iterator(p)) {
      if (e.is_directory() && fs::exists(e.path() / cfg.studyFile)) subs.push_back(e.path());
    }
    std::sort(subs.begin(), subs.end());
    if (subs.empty()) {
      out.emplace_back(p);  // loadBundle reports the missing file
    } else {
      out.insert(out.end(), subs.begin(), subs.end());
    }
  }
  return out;
}

// Merged item registry; the same key must mean the same item everywhere.
inline ontology::OntologySchema schemaFor(const std::vector<ingest::StudyBundle>& bundles) {
  std::vector<ontology::TestItemDef> registry;
  std::map<std::string, ontology::TestItemDef> seen;
  for (const auto& b : bundles) {
    for (const auto& item : b.items) {
      auto [it, fresh] = seen.emplace(item.key, item);
      if (fresh) {
        registry.push_back(item);
      } else if (!(it->second == item)) {
        throw ConfigError("study " + b.metadata.id + " redefines test item '" + item.key + "' differently");
      }
    }
  }
  return ontology::buildSchema(registry);
}

inline std::vector<ingest::StudyBundle> loadBundles(const std::vector<std::string>& paths,
                                                    const ingest::IngestConfig& cfg) {
  std::vector<ingest::StudyBundle> bundles;
  std::map<std::string, std::filesystem::path> ids;
  for (const auto& dir : expandBundleDirs(paths, cfg)) {
    ingest::StudyBundle b;
    try {
      b = ingest::loadBundle(dir, cfg);
    } catch (const ingest::BundleError& e) {
      throw Error((dir / "").string() + e.what());
    }
    auto [it, fresh] = ids.emplace(b.metadata.id, dir);
    if (!fresh) throw ConfigError("study id '" + b.metadata.id + "' appears in both " + it->second.string() + " and " + dir.string());
    bundles.push_back(std::move(b));
  }
  return bundles;
}

inline rules::RuleSet ruleSetFor(const std::optional<std::string>& rulesPath, bool builtins = true) {
  if (!rulesPath) {
    if (!builtins) throw UsageError("--no-builtins needs a --rules file");
    return rules::builtinRules();
  }
  try {
    return rules::parseRules(readText(*rulesPath), builtins);
  } catch (const ParseError& e) {
    throw Error(*rulesPath + ": " + e.what());
  }
}

struct BuildOptions {
  std::vector<std::string> bundles;
  std::string out;
  bool materialize = false;
  std::optional<std::string> config;
  std::optional<std::string> rules;
  bool builtins = true;
};

// Schema plus instance triples of every bundle, aliases applied, optionally
// materialized.
inline rdf::Graph buildGraph(const BuildOptions& o, Io io, std::size_t* studies = nullptr) {
  ingest::IngestConfig cfg = o.config ? ingest::IngestConfig::load(*o.config) : ingest::IngestConfig{};
  auto bundles = loadBundles(o.bundles, cfg);
  auto schema = schemaFor(bundles);
  rdf::Graph g = schema.graph;
  for (const auto& b : bundles) {
    for (const auto& w : ingest::validateBundle(b).warnings) io.err << "warning: " << b.metadata.id << ": " << w.message << "\n";
    g.insertAll(ingest::emitKg(b, schema));
  }
  if (cfg.aliasTable) g = ontology::AliasTable::load(*cfg.aliasTable).apply(g);
  if (o.materialize) g = rules::materialize(g, ruleSetFor(o.rules, o.builtins));
  if (studies) *studies = bundles.size();
  return g;
}

inline int cmdBuild(const BuildOptions& o, Io io = standardIo()) {
  return guarded(io, "build", [&] {
    if (o.bundles.empty()) throw UsageError("at least one bundle directory is required");
    if (o.out.empty()) throw UsageError("an output path is required (-o)");
    std::size_t studies = 0;
    rdf::Graph g = buildGraph(o, io, &studies);
    writeText(o.out, renderGraph(g, o.out), io);
    io.err << "build: " << studies << " stud" << (studies == 1 ? "y" : "ies") << ", " << g.size() << " triples -> " << o.out
           << "\n";
    return kOk;
  });
}

inline int cmdMaterialize(const std::string& in, const std::string& out, const std::optional<std::string>& rulesPath,
                          bool builtins = true, Io io = standardIo()) {
  return guarded(io, "materialize", [&] {
    if (out.empty()) throw UsageError("an output path is required (-o)");
    rdf::Graph g = loadGraph(in);
    rules::MaterializeStats stats;
    rdf::Graph m = rules::materialize(g, ruleSetFor(rulesPath, builtins), &stats);
    writeText(out, renderGraph(m, out), io);
    io.err << "materialize: " << stats.inferred << " inferred in " << stats.iterations << " rounds, " << m.size()
           << " triples -> " << out << "\n";
    return kOk;
  });
}

struct QueryOptions {
  std::string kg;
  std::string query;
  std::optional<std::string> role;
  std::optional<std::string> policy;
  query::ResultFormat format = query::ResultFormat::kTable;
  bool explain = false;
};

inline query::QueryAst loadQuery(const std::string& path) {
  try {
    return query::parseQuery(readText(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  } catch (const UnresolvedPrefixError& e) {
    throw Error(path + ": unknown prefix '" + e.prefix() + "'");
  }
}

inline int cmdQuery(const QueryOptions& o, Io io = standardIo()) {
  return guarded(io, "query", [&] {
    std::optional<privacy::Policy> policy;
    if (o.role) policy = requirePolicy(o.policy);
    if (policy && !policy->hasRole(*o.role)) throw UsageError("policy has no role '" + *o.role + "'");
    auto q = loadQuery(o.query);
    rdf::Graph g = loadGraph(o.kg);
    if (policy) g = privacy::applyPolicy(g, *policy, *o.role);
    if (o.explain) io.err << query::explain(q, g).toString(q.prefixes);
    auto table = query::evaluate(g, q);
    for (const auto& w : table.warnings) io.err << "warning: " << w << "\n";
    io.out << query::formatResult(table, o.format);
    return kOk;
  });
}

// ---- competency-question harness -----------------------------------------

struct CqCase {
  std::string name;
  std::filesystem::path query;
  std::filesystem::path expected;
  std::string role = "researcher";
};

// `#@role <name>` anywhere in the query file selects the role.
inline std::string roleDirective(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find("#@role");
    if (pos == std::string::npos) continue;
    std::istringstream rest(line.substr(pos + 6));
    std::string role;
    if (rest >> role) return role;
  }
  return "researcher";
}

inline std::vector<CqCase> discoverCases(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw UsageError("cases directory '" + dir.string() + "' does not exist");
  std::vector<CqCase> cases;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".rq") continue;
    CqCase c;
    c.name = e.path().stem().string();
    c.query = e.path();
    c.expected = dir / (c.name + ".expected.csv");
    cases.push_back(std::move(c));
  }
  std::sort(cases.begin(), cases.end(), [](const CqCase& a, const CqCase& b) { return a.name < b.name; });
  return cases;
}

inline Rational cellTolerance() { return Rational(1, 1000000000); }

inline bool cellsMatch(const std::string& expected, const std::string& actual) {
  if (expected == actual) return true;
  auto a = parseDecimalText(expected, true, true);
  auto b = parseDecimalText(actual, true, true);
  return a && b && abs(*a - *b) <= cellTolerance();
}

// Compares a result against expected CSV text. Row order matters only when
// the query orders its results. Returns the mismatches found.
inline std::vector<std::string> compareResult(const query::QueryAst& q, const query::SolutionTable& table,
                                              const std::string& expectedCsv) {
  std::vector<std::string> problems;
  auto records = ingest::parseCsv(expectedCsv, "expected");
  if (records.empty()) return {"expected file has no header"};
  if (records[0].fields != table.columns) {
    std::string want, got;
    for (const auto& f : records[0].fields) want += (want.empty() ? "" : ",") + f;
    for (const auto& f : table.columns) got += (got.empty() ? "" : ",") + f;
    return {"header mismatch: expected [" + want + "], query projects [" + got + "]"};
  }
  std::vector<std::vector<std::string>> expected, actual;
  for (std::size_t i = 1; i < records.size(); ++i) expected.push_back(records[i].fields);
  for (const auto& row : table.rows) {
    std::vector<std::string> r;
    for (const auto& c : row) r.push_back(query::cellText(c));
    actual.push_back(std::move(r));
  }
  if (expected.size() != actual.size()) {
    problems.push_back("row count: expected " + std::to_string(expected.size()) + ", got " +
                       std::to_string(actual.size()));
    return problems;
  }
  if (q.orderBy.empty()) {
    std::sort(expected.begin(), expected.end());
    std::sort(actual.begin(), actual.end());
  }
  for (std::size_t r = 0; r < expected.size(); ++r) {
    if (expected[r].size() != actual[r].size()) {
      problems.push_back("row " + std::to_string(r + 1) + ": expected " + std::to_string(expected[r].size()) +
                         " cells, got " + std::to_string(actual[r].size()));
      continue;
    }
    for (std::size_t c = 0; c < expected[r].size(); ++c) {
      if (!cellsMatch(expected[r][c], actual[r][c])) {
        problems.push_back("row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1) + " (?" +
                           table.columns[c] + "): expected '" + expected[r][c] + "', got '" + actual[r][c] + "'");
      }
    }
  }
  return problems;
}

struct CqSummary {
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;
};

inline CqSummary runCases(const rdf::Graph& g, const std::vector<CqCase>& cases,
                          const std::optional<privacy::Policy>& policy, Io io) {
  CqSummary s;
  std::map<std::string, rdf::Graph> views;
  for (auto c : cases) {
    ++s.cases;
    try {
      std::string text = readText(c.query);
      c.role = roleDirective(text);
      if (!std::filesystem::exists(c.expected)) {
        throw Error("missing expected file " + c.expected.filename().string());
      }
      const rdf::Graph* target = &g;
      if (policy) {
        auto it = views.find(c.role);
        if (it == views.end()) it = views.emplace(c.role, privacy::applyPolicy(g, *policy, c.role)).first;
        target = &it->second;
      } else if (c.role != "researcher") {
        throw Error("role '" + c.role + "' needs a policy");
      }
      query::QueryAst q;
      try {
        q = query::parseQuery(text);
      } catch (const ParseError& e) {
        throw Error(c.query.filename().string() + ": " + e.what());
      }
      auto start = std::chrono::steady_clock::now();
      auto table = query::evaluate(*target, q);
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      auto problems = compareResult(q, table, readText(c.expected));
      if (problems.empty()) {
        ++s.passed;
        std::ostringstream t;
        t.precision(1);
        t << std::fixed << ms;
        io.out << "PASS " << c.name << " (" << table.rows.size() << " rows, role " << c.role << ", " << t.str()
               << " ms)\n";
      } else {
        ++s.failed;
        io.out << "FAIL " << c.name << "\n";
        for (const auto& p : problems) io.out << "  " << p << "\n";
      }
    } catch (const std::exception& e) {
      ++s.errors;
      io.out << "ERROR " << c.name << ": " << e.what() << "\n";
    }
  }
  return s;
}

inline int cmdCq(const std::string& kg, const std::string& casesDir, const std::optional<std::string>& policyFlag,
                 Io io = standardIo()) {
  return guarded(io, "cq", [&] {
    auto cases = discoverCases(casesDir);
    if (cases.empty()) {
      io.out << "0 cases in " << casesDir << "\n";
      return kOk;
    }
    auto policy = resolvePolicy(policyFlag);
    rdf::Graph g = loadGraph(kg);
    auto s = runCases(g, cases, policy, io);
    io.out << s.cases << " cases: " << s.passed << " passed, " << s.failed << " failed, " << s.errors << " errors\n";
    return s.passed == s.cases ? kOk : kFailure;
  });
}

// ---- privacy -------------------------------------------------------------

inline int cmdRedact(const std::string& kg, const std::string& role, const std::optional<std::string>& policyFlag,
                     const std::string& out, Io io = standardIo()) {
  return guarded(io, "redact", [&] {
    if (out.empty()) throw UsageError("an output path is required (-o)");
    auto policy = requirePolicy(policyFlag);
    if (!policy.hasRole(role)) throw UsageError("policy has no role '" + role + "'");
    rdf::Graph g = loadGraph(kg);
    rdf::Graph view = privacy::applyPolicy(g, policy, role);
    writeText(out, renderGraph(view, out), io);
    io.err << "redact: role " << role << ", " << g.size() << " -> " << view.size() << " triples\n";
    return kOk;
  });
}

inline int cmdAudit(const std::string& kg, const std::string& role, const std::optional<std::string>& policyFlag,
                    bool csv, Io io = standardIo()) {
  return guarded(io, "audit", [&] {
    auto policy = requirePolicy(policyFlag);
    if (!policy.hasRole(role)) throw UsageError("policy has no role '" + role + "'");
    auto report = privacy::auditView(loadGraph(kg), policy, role);
    io.out << (csv ? report.toCsv() : report.toText());
    return report.empty() ? kOk : kFailure;
  });
}

// ---- schema / rules export -----------------------------------------------

inline int cmdSchemaExport(const std::vector<std::string>& bundles, const std::optional<std::string>& config,
                           const std::optional<std::string>& policyFlag, const std::string& out,
                           Io io = standardIo()) {
  return guarded(io, "schema export", [&] {
    ingest::IngestConfig cfg = config ? ingest::IngestConfig::load(*config) : ingest::IngestConfig{};
    auto schema = bundles.empty() ? ontology::buildSchema({}) : schemaFor(loadBundles(bundles, cfg));
    rdf::Graph g = schema.graph;
    if (auto policy = resolvePolicy(policyFlag)) {
      std::vector<std::string> warnings;
      g = privacy::annotateSchema(schema, *policy, &warnings);
      for (const auto& w : warnings) io.err << "warning: " << w << "\n";
    }
    writeText(out, renderGraph(g, out), io);
    return kOk;
  });
}

inline int cmdRulesExport(const std::optional<std::string>& rulesPath, bool builtins, const std::string& out,
                          Io io = standardIo()) {
  return guarded(io, "rules export", [&] {
    writeText(out, rules::writeRules(ruleSetFor(rulesPath, builtins)), io);
    return kOk;
  });
}

// ---- fixtures and validation ---------------------------------------------

inline std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline int cmdGenFixture(const std::string& outDir, const ingest::FixtureSpec& spec, Io io = standardIo()) {
  return guarded(io, "gen-fixture", [&] {
    if (outDir.empty()) throw UsageError("an output directory is required (-o)");
    if (spec.items.empty()) throw UsageError("--items must name at least one test item");
    auto dirs = ingest::writeFixture(outDir, spec);
    io.err << "gen-fixture: " << dirs.size() << " bundle" << (dirs.size() == 1 ? "" : "s") << ", "
           << spec.participants << " participants each, seed " << spec.seed << " -> " << outDir << "\n";
    return kOk;
  });
}

inline int cmdValidate(const std::vector<std::string>& bundles, const std::optional<std::string>& config, bool strict,
                       Io io = standardIo()) {
  return guarded(io, "validate", [&] {
    if (bundles.empty()) throw UsageError("at least one bundle directory is required");
    ingest::IngestConfig cfg = config ? ingest::IngestConfig::load(*config) : ingest::IngestConfig{};
    std::size_t warnings = 0;
    for (const auto& b : loadBundles(bundles, cfg)) {
      auto report = ingest::validateBundle(b);
      for (const auto& w : report.warnings) io.out << "warning: " << b.metadata.id << ": " << w.message << "\n";
      warnings += report.warnings.size();
      io.out << b.metadata.id << ": " << b.participants.size() << " participants, " << b.items.size() << " items, "
             << b.results.size() << " results\n";
    }
    io.out << warnings << " warning" << (warnings == 1 ? "" : "s") << "\n";
    return strict && warnings ? kFailure : kOk;
  });
}

}  // namespace morekg::cli

#endif  // MOREKG_CLI_COMMANDS_HPP
