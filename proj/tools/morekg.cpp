#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morekg/cli/commands.hpp"

using namespace morekg;

int main(int argc, char** argv) {
  CLI::App app{"morekg: motor performance study bundles to an OBO-aligned knowledge graph"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  cli::BuildOptions build;
  auto* buildCmd = app.add_subcommand("build", "ingest bundle directories into a Turtle (.ttl) or N-Triples (.nt) KG");
  buildCmd->add_option("bundles", build.bundles, "bundle directory, or a directory of bundles")->required();
  buildCmd->add_option("-o,--out", build.out, "output KG path")->required();
  buildCmd->add_flag("--materialize", build.materialize, "run the rule engine before writing");
  buildCmd->add_option("--config", build.config, "ingest config (JSON)");
  buildCmd->add_option("--rules", build.rules, "extra rule file for --materialize");
  bool buildNoBuiltins = false;
  buildCmd->add_flag("--no-builtins", buildNoBuiltins, "use only the rules from --rules");

  std::string matIn, matOut;
  std::optional<std::string> matRules;
  auto* matCmd = app.add_subcommand("materialize", "forward-chain rules over a KG to a fixpoint");
  matCmd->add_option("kg", matIn, "input KG")->required();
  matCmd->add_option("-o,--out", matOut, "output KG path")->required();
  matCmd->add_option("--rules", matRules, "extra rule file");
  bool matNoBuiltins = false;
  matCmd->add_flag("--no-builtins", matNoBuiltins, "use only the rules from --rules");

  cli::QueryOptions query;
  std::string queryFormat = "table";
  auto* queryCmd = app.add_subcommand("query", "evaluate a SPARQL-subset query");
  queryCmd->add_option("kg", query.kg, "KG file")->required();
  queryCmd->add_option("query", query.query, ".rq file")->required();
  queryCmd->add_option("--role", query.role, "evaluate over this role's policy view");
  queryCmd->add_option("--policy", query.policy, "policy file (default: $MOREKG_POLICY)");
  queryCmd->add_option("--format", queryFormat, "table or csv")->check(CLI::IsMember({"table", "csv"}));
  queryCmd->add_flag("--explain", query.explain, "print the join order to stderr");

  std::string cqKg, cqDir = "data/cq";
  std::optional<std::string> cqPolicy;
  auto* cqCmd = app.add_subcommand("cq", "run competency-question cases (name.rq + name.expected.csv)");
  cqCmd->add_option("kg", cqKg, "KG file")->required();
  cqCmd->add_option("cases", cqDir, "cases directory");
  cqCmd->add_option("--policy", cqPolicy, "policy file for #@role cases");

  std::string redKg, redRole, redOut;
  std::optional<std::string> redPolicy;
  auto* redactCmd = app.add_subcommand("redact", "write the policy view of a KG for one role");
  redactCmd->add_option("kg", redKg, "KG file")->required();
  redactCmd->add_option("--role", redRole, "role name")->required();
  redactCmd->add_option("--policy", redPolicy, "policy file (default: $MOREKG_POLICY)");
  redactCmd->add_option("-o,--out", redOut, "output KG path")->required();

  std::string audKg, audRole, audFormat = "text";
  std::optional<std::string> audPolicy;
  auto* auditCmd = app.add_subcommand("audit", "list triples a role may not see; exit 1 if any");
  auditCmd->add_option("kg", audKg, "view to audit")->required();
  auditCmd->add_option("--role", audRole, "role name")->required();
  auditCmd->add_option("--policy", audPolicy, "policy file (default: $MOREKG_POLICY)");
  auditCmd->add_option("--format", audFormat, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  std::vector<std::string> schemaBundles;
  std::optional<std::string> schemaConfig, schemaPolicy;
  std::string schemaOut = "-";
  auto* schemaCmd = app.add_subcommand("schema", "schema utilities");
  auto* schemaExport = schemaCmd->add_subcommand("export", "write the schema for the items of some bundles");
  schemaCmd->require_subcommand(1);
  schemaExport->add_option("bundles", schemaBundles, "bundle directories supplying test items");
  schemaExport->add_option("--config", schemaConfig, "ingest config (JSON)");
  schemaExport->add_option("--policy", schemaPolicy, "add sensitivity annotations from this policy");
  schemaExport->add_option("-o,--out", schemaOut, "output path (.ttl/.nt, - for stdout)");

  std::optional<std::string> rulesIn;
  std::string rulesOut = "-";
  auto* rulesCmd = app.add_subcommand("rules", "rule utilities");
  auto* rulesExport = rulesCmd->add_subcommand("export", "print the effective rule set");
  rulesCmd->require_subcommand(1);
  rulesExport->add_option("--rules", rulesIn, "extra rule file");
  bool rulesNoBuiltins = false;
  rulesExport->add_flag("--no-builtins", rulesNoBuiltins, "leave out the builtin rules");
  rulesExport->add_option("-o,--out", rulesOut, "output path (- for stdout)");

  ingest::FixtureSpec spec;
  std::string fixOut, fixItems = "handgrip,shuttle_run";
  auto* fixCmd = app.add_subcommand("gen-fixture", "write a deterministic synthetic bundle");
  fixCmd->add_option("-o,--out", fixOut, "output directory")->required();
  fixCmd->add_option("--seed", spec.seed, "RNG seed");
  fixCmd->add_option("--participants", spec.participants, "participants per study");
  fixCmd->add_option("--items", fixItems, "comma-separated item keys (handgrip, shuttle_run, sit_and_reach, dash_20m)");
  fixCmd->add_option("--studies", spec.studies, "number of studies (>1 writes one sub-directory each)")
      ->check(CLI::PositiveNumber);
  fixCmd->add_option("--age-min", spec.ageMin, "youngest age");
  fixCmd->add_option("--age-max", spec.ageMax, "oldest age");
  fixCmd->add_option("--year-from", spec.yearFrom, "first study year");
  fixCmd->add_option("--year-to", spec.yearTo, "last study year");

  std::vector<std::string> valBundles;
  std::optional<std::string> valConfig;
  bool valStrict = false;
  auto* validateCmd = app.add_subcommand("validate", "load bundles and report soft warnings");
  validateCmd->add_option("bundles", valBundles, "bundle directories")->required();
  validateCmd->add_option("--config", valConfig, "ingest config (JSON)");
  validateCmd->add_flag("--strict", valStrict, "exit 1 when any warning is reported");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  if (*buildCmd) {
    build.builtins = !buildNoBuiltins;
    return cli::cmdBuild(build);
  }
  if (*matCmd) return cli::cmdMaterialize(matIn, matOut, matRules, !matNoBuiltins);
  if (*queryCmd) {
    query.format = queryFormat == "csv" ? query::ResultFormat::kCsv : query::ResultFormat::kTable;
    return cli::cmdQuery(query);
  }
  if (*cqCmd) return cli::cmdCq(cqKg, cqDir, cqPolicy);
  if (*redactCmd) return cli::cmdRedact(redKg, redRole, redPolicy, redOut);
  if (*auditCmd) return cli::cmdAudit(audKg, audRole, audPolicy, audFormat == "csv");
  if (*schemaExport) return cli::cmdSchemaExport(schemaBundles, schemaConfig, schemaPolicy, schemaOut);
  if (*rulesExport) return cli::cmdRulesExport(rulesIn, !rulesNoBuiltins, rulesOut);
  if (*fixCmd) {
    spec.items = cli::splitList(fixItems);
    return cli::cmdGenFixture(fixOut, spec);
  }
  if (*validateCmd) return cli::cmdValidate(valBundles, valConfig, valStrict);
  return cli::kUsage;
}
