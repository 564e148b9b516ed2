#ifndef MOREKG_INGEST_BUNDLE_HPP
#define MOREKG_INGEST_BUNDLE_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "morekg/error.hpp"
#include "morekg/ingest/csv.hpp"
#include "morekg/numeric.hpp"
#include "morekg/ontology/schema.hpp"
#include "morekg/rdf/prefix_map.hpp"

namespace morekg::ingest {

// Load-time failure with file and row context.
class BundleError : public Error {
 public:
  BundleError(const std::string& file, std::size_t row, const std::string& message)
      : Error(file + (row ? ":" + std::to_string(row) : std::string()) + ": " + message),
        file_(file),
        row_(row) {}
  const std::string& file() const { return file_; }
  std::size_t row() const { return row_; }

 private:
  std::string file_;
  std::size_t row_;
};

// A decimal as written in the source table plus its exact value.
struct Decimal {
  std::string lexical;
  Rational value;

  static std::optional<Decimal> parse(const std::string& text) {
    auto v = parseDecimalText(text, true, false);
    if (!v) return std::nullopt;
    return Decimal{text, *v};
  }
  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.lexical == b.lexical;
  }
};

enum class Sex { kFemale, kMale, kDiverse };

inline std::string sexCode(Sex s) {
  switch (s) {
    case Sex::kFemale: return "f";
    case Sex::kMale: return "m";
    case Sex::kDiverse: break;
  }
  return "d";
}

struct StudyMetadata {
  std::string id;
  std::string title;
  int yearStart = 0;
  int yearEnd = 0;
  std::optional<std::string> doi;
};

struct ParticipantRecord {
  std::string participantId;
  int age = 0;
  std::optional<Sex> sex;
  Decimal heightCm;
  Decimal weightKg;
  Decimal bmi;
};

struct ResultRecord {
  std::string participantId;
  std::string itemKey;
  Decimal value;
  std::optional<std::string> sessionDate;
  std::optional<std::string> trial;
};

struct StudyBundle {
  StudyMetadata metadata;
  std::vector<ParticipantRecord> participants;
  std::vector<ontology::TestItemDef> items;
  std::vector<ResultRecord> results;
};

struct IngestConfig {
  std::string studyFile = "study.csv";
  std::string participantsFile = "participants.csv";
  std::string testItemsFile = "test_items.csv";
  std::string resultsFile = "results.csv";
  std::optional<std::string> aliasTable;
  std::uint64_t fixtureSeed = 42;

  // {"files": {"study": ..., "participants": ..., "test_items": ...,
  //  "results": ...}, "alias_table": "...", "fixture_seed": 42}
  static IngestConfig fromJson(const std::string& text) {
    IngestConfig cfg;
    try {
      auto j = nlohmann::json::parse(text);
      if (auto f = j.find("files"); f != j.end()) {
        cfg.studyFile = f->value("study", cfg.studyFile);
        cfg.participantsFile = f->value("participants", cfg.participantsFile);
        cfg.testItemsFile = f->value("test_items", cfg.testItemsFile);
        cfg.resultsFile = f->value("results", cfg.resultsFile);
      }
      if (auto a = j.find("alias_table"); a != j.end() && !a->is_null()) {
        cfg.aliasTable = a->get<std::string>();
      }
      cfg.fixtureSeed = j.value("fixture_seed", cfg.fixtureSeed);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("ingest config: ") + e.what());
    }
    return cfg;
  }

  static IngestConfig load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open ingest config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return fromJson(ss.str());
  }
};

inline bool matchesIdPattern(const std::string& s, bool allowUpper) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
              c == '-' || (allowUpper && c >= 'A' && c <= 'Z');
    if (!ok) return false;
  }
  return true;
}

// YYYY-MM-DD with a valid day for the month.
inline bool isIsoDate(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  int y = std::stoi(s.substr(0, 4));
  int m = std::stoi(s.substr(5, 2));
  int d = std::stoi(s.substr(8, 2));
  if (m < 1 || m > 12 || d < 1) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  int max = kDays[m - 1] + (m == 2 && leap ? 1 : 0);
  return d <= max;
}

namespace detail {

inline std::string readFile(const std::filesystem::path& path, const std::string& name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError(name, 0, "missing file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parsed table with named column access.
class Table {
 public:
  Table(const std::filesystem::path& dir, const std::string& file,
        const std::vector<std::string>& required)
      : file_(file) {
    std::string text = readFile(dir / file, file);
    try {
      records_ = parseCsv(text, file);
    } catch (const BundleError&) {
      throw;
    } catch (const Error& e) {
      throw BundleError(file, 0, e.what());
    }
    if (records_.empty()) throw BundleError(file, 1, "missing header row");
    const auto& header = records_.front().fields;
    for (std::size_t i = 0; i < header.size(); ++i) column_[header[i]] = i;
    for (const auto& name : required) {
      if (!column_.count(name)) {
        std::string expected;
        for (const auto& r : required) expected += (expected.empty() ? "" : ",") + r;
        throw BundleError(file, 1, "header mismatch: missing column '" + name +
                                       "' (expected " + expected + ")");
      }
    }
  }

  std::size_t rows() const { return records_.size() - 1; }
  std::size_t line(std::size_t row) const { return records_[row + 1].line; }
  const std::string& file() const { return file_; }

  std::string get(std::size_t row, const std::string& col) const {
    const auto& fields = records_[row + 1].fields;
    std::size_t idx = column_.at(col);
    if (fields.size() != records_.front().fields.size()) {
      throw BundleError(file_, line(row), "expected " +
                                              std::to_string(records_.front().fields.size()) +
                                              " fields, found " + std::to_string(fields.size()));
    }
    return fields[idx];
  }

  [[noreturn]] void fail(std::size_t row, const std::string& msg) const {
    throw BundleError(file_, line(row), msg);
  }

  int integer(std::size_t row, const std::string& col) const {
    std::string v = get(row, col);
    auto r = parseDecimalText(v, false, false);
    if (!r || abs(*r) > 1000000000) fail(row, "non-integer " + col + " '" + v + "'");
    return static_cast<int>(numerator(*r));
  }

  Decimal decimal(std::size_t row, const std::string& col) const {
    std::string v = get(row, col);
    auto d = Decimal::parse(v);
    if (!d) fail(row, "non-numeric " + col + " '" + v + "'");
    return *d;
  }

 private:
  std::string file_;
  std::vector<CsvRecord> records_;
  std::map<std::string, std::size_t> column_;
};

inline std::optional<std::string> optionalField(std::string v) {
  if (v.empty()) return std::nullopt;
  return v;
}

}  // namespace detail

// Loads and cross-checks the four tables of one study bundle.
inline StudyBundle loadBundle(const std::filesystem::path& dir,
                              const IngestConfig& config = {}) {
  using detail::Table;
  StudyBundle b;

  Table study(dir, config.studyFile, {"id", "title", "year_start", "year_end", "doi"});
  if (study.rows() != 1) {
    throw BundleError(config.studyFile, 0, "expected exactly one study row, found " +
                                               std::to_string(study.rows()));
  }
  b.metadata.id = study.get(0, "id");
  if (!matchesIdPattern(b.metadata.id, false)) {
    study.fail(0, "study id '" + b.metadata.id + "' must match [a-z0-9_-]+");
  }
  b.metadata.title = study.get(0, "title");
  b.metadata.yearStart = study.integer(0, "year_start");
  b.metadata.yearEnd = study.integer(0, "year_end");
  if (b.metadata.yearStart > b.metadata.yearEnd) {
    study.fail(0, "year_start " + std::to_string(b.metadata.yearStart) +
                      " is after year_end " + std::to_string(b.metadata.yearEnd));
  }
  b.metadata.doi = detail::optionalField(study.get(0, "doi"));

  Table items(dir, config.testItemsFile, {"key", "label", "disposition_label", "unit", "datatype"});
  std::set<std::string> itemKeys;
  const rdf::PrefixMap pm = rdf::PrefixMap::withDefaults();
  for (std::size_t r = 0; r < items.rows(); ++r) {
    ontology::TestItemDef def;
    def.key = items.get(r, "key");
    if (!matchesIdPattern(def.key, false) || def.key.find('-') != std::string::npos) {
      items.fail(r, "test item key '" + def.key + "' must match [a-z0-9_]+");
    }
    if (!itemKeys.insert(def.key).second) items.fail(r, "duplicate test item key '" + def.key + "'");
    def.label = items.get(r, "label");
    def.dispositionLabel = items.get(r, "disposition_label");
    def.unit = items.get(r, "unit");
    std::string dt = items.get(r, "datatype");
    if (dt.empty()) {
      def.datatype = rdf::xsd::kDecimal;
    } else if (dt.front() == '<' && dt.back() == '>') {
      def.datatype = dt.substr(1, dt.size() - 2);
    } else if (dt.find("://") != std::string::npos) {
      def.datatype = dt;
    } else {
      try {
        def.datatype = pm.expand(dt).value();
      } catch (const UnresolvedPrefixError& e) {
        items.fail(r, e.what());
      }
    }
    if (!isNumericDatatype(def.datatype)) items.fail(r, "datatype '" + dt + "' is not numeric");
    b.items.push_back(std::move(def));
  }

  Table people(dir, config.participantsFile,
               {"participant_id", "age", "sex", "height_cm", "weight_kg", "bmi"});
  std::set<std::string> pids;
  for (std::size_t r = 0; r < people.rows(); ++r) {
    ParticipantRecord p;
    p.participantId = people.get(r, "participant_id");
    if (!matchesIdPattern(p.participantId, true)) {
      people.fail(r, "participant_id '" + p.participantId + "' must match [A-Za-z0-9_-]+");
    }
    if (!pids.insert(p.participantId).second) {
      people.fail(r, "duplicate participant_id '" + p.participantId + "'");
    }
    p.age = people.integer(r, "age");
    if (p.age < 0) people.fail(r, "negative age");
    std::string sex = people.get(r, "sex");
    if (sex == "f") {
      p.sex = Sex::kFemale;
    } else if (sex == "m") {
      p.sex = Sex::kMale;
    } else if (sex == "d") {
      p.sex = Sex::kDiverse;
    } else if (!sex.empty()) {
      people.fail(r, "sex must be one of f, m, d or empty, got '" + sex + "'");
    }
    p.heightCm = people.decimal(r, "height_cm");
    p.weightKg = people.decimal(r, "weight_kg");
    p.bmi = people.decimal(r, "bmi");
    if (p.heightCm.value <= 0) people.fail(r, "height_cm must be positive");
    if (p.weightKg.value <= 0) people.fail(r, "weight_kg must be positive");
    b.participants.push_back(std::move(p));
  }

  // Minted local names join participant id and item key with '_'; reject
  // bundles where two different pairs would collide.
  std::map<std::string, std::pair<std::string, std::string>> joined;
  for (const auto& pid : pids) {
    for (const auto& key : itemKeys) {
      auto [it, fresh] = joined.try_emplace(pid + "_" + key, pid, key);
      if (!fresh && it->second != std::make_pair(pid, key)) {
        throw BundleError(config.participantsFile, 0,
                          "participant '" + pid + "' and item '" + key +
                              "' produce the same entity name as participant '" +
                              it->second.first + "' and item '" + it->second.second + "'");
      }
    }
  }

  Table results(dir, config.resultsFile,
                {"participant_id", "test_item", "value", "session_date", "trial"});
  std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
  for (std::size_t r = 0; r < results.rows(); ++r) {
    ResultRecord rec;
    rec.participantId = results.get(r, "participant_id");
    rec.itemKey = results.get(r, "test_item");
    if (!pids.count(rec.participantId)) {
      results.fail(r, "dangling reference to unknown participant '" + rec.participantId + "'");
    }
    if (!itemKeys.count(rec.itemKey)) {
      results.fail(r, "dangling reference to unknown test item '" + rec.itemKey + "'");
    }
    const auto& def = *std::find_if(b.items.begin(), b.items.end(),
                                    [&](const auto& d) { return d.key == rec.itemKey; });
    std::string raw = results.get(r, "value");
    auto parsed = isIntegerDatatype(def.datatype) ? parseDecimalText(raw, false, false)
                                                  : parseDecimalText(raw, true, false);
    if (!parsed) results.fail(r, "non-numeric value '" + raw + "' for " + rec.itemKey);
    rec.value = Decimal{raw, *parsed};
    rec.sessionDate = detail::optionalField(results.get(r, "session_date"));
    if (rec.sessionDate && !isIsoDate(*rec.sessionDate)) {
      results.fail(r, "session_date '" + *rec.sessionDate + "' is not an ISO-8601 date");
    }
    rec.trial = detail::optionalField(results.get(r, "trial"));
    if (rec.trial && !matchesIdPattern(*rec.trial, true)) {
      results.fail(r, "trial '" + *rec.trial + "' must match [A-Za-z0-9_-]+");
    }
    if (!seen.insert({rec.participantId, rec.itemKey, rec.sessionDate.value_or(""),
                      rec.trial.value_or("")})
             .second) {
      results.fail(r, "duplicate result for participant '" + rec.participantId + "', item '" +
                          rec.itemKey + "'");
    }
    b.results.push_back(std::move(rec));
  }
  return b;
}

enum class WarningKind { kBmiMismatch, kAgeOutlier, kDuplicateSession };

struct ValidationWarning {
  WarningKind kind;
  std::string subject;  // participant id
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationWarning> warnings;
  bool empty() const { return warnings.empty(); }
  std::size_t count(WarningKind k) const {
    std::size_t n = 0;
    for (const auto& w : warnings) n += w.kind == k;
    return n;
  }
};

inline const Rational& bmiTolerance() {
  static const Rational kTolerance(1, 2);
  return kTolerance;
}

// Soft checks that never reject the bundle: BMI against weight/height²,
// implausible ages and repeated identical sessions.
inline ValidationReport validateBundle(const StudyBundle& b) {
  ValidationReport report;
  for (const auto& p : b.participants) {
    Rational heightM = p.heightCm.value / 100;
    Rational computed = p.weightKg.value / (heightM * heightM);
    if (abs(computed - p.bmi.value) > bmiTolerance()) {
      report.warnings.push_back(
          {WarningKind::kBmiMismatch, p.participantId,
           "participant " + p.participantId + ": recorded BMI " + p.bmi.lexical +
               " differs from weight/height^2 = " + formatDecimal(computed, 2)});
    }
    if (p.age > 120) {
      report.warnings.push_back({WarningKind::kAgeOutlier, p.participantId,
                                 "participant " + p.participantId + ": age " +
                                     std::to_string(p.age) + " is above 120"});
    }
  }
  std::map<std::tuple<std::string, std::string, std::string, std::string>, int> sessions;
  for (const auto& r : b.results) {
    auto key = std::make_tuple(r.participantId, r.itemKey, r.sessionDate.value_or(""),
                               r.value.lexical);
    if (++sessions[key] == 2) {
      report.warnings.push_back(
          {WarningKind::kDuplicateSession, r.participantId,
           "participant " + r.participantId + ": repeated " + r.itemKey + " value " +
               r.value.lexical + " in session '" + r.sessionDate.value_or("") + "'"});
    }
  }
  return report;
}

}  // namespace morekg::ingest

#endif  // MOREKG_INGEST_BUNDLE_HPP
