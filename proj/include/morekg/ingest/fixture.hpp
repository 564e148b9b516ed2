#ifndef MOREKG_INGEST_FIXTURE_HPP
#define MOREKG_INGEST_FIXTURE_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "morekg/error.hpp"
#include "morekg/ingest/csv.hpp"

namespace morekg::ingest {

// Catalog entry for synthetic data; values are generated in tenths of the
// unit so that every emitted decimal is exact.
struct CatalogItem {
  std::string key;
  std::string label;
  std::string dispositionLabel;
  std::string unit;
  int minTenths;
  int maxTenths;
  // Tenths added per year of age above the youngest group.
  int ageSlope;
};

inline const std::vector<CatalogItem>& fixtureCatalog() {
  static const std::vector<CatalogItem> kCatalog = {
      {"handgrip", "Handgrip", "grip strength", "kg", 50, 600, 20},
      {"shuttle_run", "Shuttle Run", "aerobic endurance", "s", 100, 250, -5},
      {"sit_and_reach", "Sit and Reach", "flexibility", "cm", 100, 400, 0},
      {"dash_20m", "20 meter Dash", "speed", "s", 30, 60, -1},
  };
  return kCatalog;
}

struct FixtureSpec {
  std::uint64_t seed = 42;
  std::size_t participants = 30;
  std::vector<std::string> items = {"handgrip", "shuttle_run"};
  // More than one study writes one sub-directory per study.
  std::size_t studies = 1;
  int ageMin = 6;
  int ageMax = 10;
  int yearFrom = 2012;
  int yearTo = 2023;
};

namespace detail {

// std::mt19937_64 output is fully specified, unlike the std distributions.
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}
  // Uniform-ish integer in [lo, hi].
  long between(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::string tenths(long t) {
  std::string sign = t < 0 ? "-" : "";
  t = t < 0 ? -t : t;
  return sign + std::to_string(t / 10) + "." + std::to_string(t % 10);
}

inline long roundDiv(long long num, long long den) { return static_cast<long>((num * 2 + den) / (den * 2)); }

inline void writeText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

inline std::string pad(std::size_t n, std::size_t width) {
  std::string s = std::to_string(n);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

}  // namespace detail

// Writes a deterministic synthetic bundle (or one bundle per study) and
// returns the bundle directories.
inline std::vector<std::filesystem::path> writeFixture(const std::filesystem::path& outDir,
                                                       const FixtureSpec& spec) {
  if (spec.studies == 0) throw Error("gen-fixture: --studies must be positive");
  if (spec.ageMin > spec.ageMax || spec.ageMin < 0) throw Error("gen-fixture: bad age range");
  if (spec.yearFrom > spec.yearTo) throw Error("gen-fixture: bad year range");
  std::vector<const CatalogItem*> chosen;
  for (const auto& key : spec.items) {
    const auto& cat = fixtureCatalog();
    auto it = std::find_if(cat.begin(), cat.end(), [&](const auto& c) { return c.key == key; });
    if (it == cat.end()) throw Error("gen-fixture: unknown test item '" + key + "'");
    if (std::find(chosen.begin(), chosen.end(), &*it) == chosen.end()) chosen.push_back(&*it);
  }

  detail::FixtureRng rng(spec.seed);
  std::vector<std::filesystem::path> dirs;
  const std::size_t pidWidth = std::max<std::size_t>(3, std::to_string(spec.participants).size());
  for (std::size_t k = 1; k <= spec.studies; ++k) {
    std::string studyId = "st" + detail::pad(k, 2);
    std::filesystem::path dir = spec.studies == 1 ? outDir : outDir / studyId;
    std::filesystem::create_directories(dir);
    dirs.push_back(dir);

    int start = static_cast<int>(rng.between(spec.yearFrom, spec.yearTo));
    int end = std::min(spec.yearTo, start + static_cast<int>(rng.between(0, 3)));
    detail::writeText(dir / "study.csv",
                      csvLine({"id", "title", "year_start", "year_end", "doi"}) +
                          csvLine({studyId, "Synthetic motor performance study " + std::to_string(k),
                                   std::to_string(start), std::to_string(end), ""}));

    // A single study carries every requested item. Otherwise each study draws
    // a non-empty subset, and the first always includes the first item.
    std::vector<const CatalogItem*> items;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      if (spec.studies == 1 || (k == 1 && i == 0) || rng.between(0, 1) == 1) items.push_back(chosen[i]);
    }
    if (items.empty() && !chosen.empty()) items.push_back(chosen[static_cast<std::size_t>(rng.between(0, static_cast<long>(chosen.size()) - 1))]);

    std::string itemCsv = csvLine({"key", "label", "disposition_label", "unit", "datatype"});
    for (const auto* item : items) {
      itemCsv += csvLine({item->key, item->label, item->dispositionLabel, item->unit, "xsd:decimal"});
    }
    detail::writeText(dir / "test_items.csv", itemCsv);

    std::string people = csvLine({"participant_id", "age", "sex", "height_cm", "weight_kg", "bmi"});
    std::string results = csvLine({"participant_id", "test_item", "value", "session_date", "trial"});
    for (std::size_t i = 1; i <= spec.participants; ++i) {
      std::string pid = "p" + detail::pad(i, pidWidth);
      long age = rng.between(spec.ageMin, spec.ageMax);
      std::string sex = rng.between(0, 1) ? "f" : "m";
      long heightT = 1100 + (age - spec.ageMin) * 60 + rng.between(-80, 80);   // cm tenths
      long bmiTarget = rng.between(140, 200);                                   // tenths
      long long h2 = static_cast<long long>(heightT) * heightT;
      long weightT = detail::roundDiv(static_cast<long long>(bmiTarget) * h2, 1000000);
      long bmiT = detail::roundDiv(static_cast<long long>(weightT) * 1000000, h2);
      people += csvLine({pid, std::to_string(age), sex, detail::tenths(heightT),
                         detail::tenths(weightT), detail::tenths(bmiT)});
      for (const auto* item : items) {
        long base = item->minTenths + (age - spec.ageMin) * item->ageSlope;
        long spread = (item->maxTenths - item->minTenths) / 3;
        long v = base + rng.between(0, spread);
        if (item->ageSlope < 0) v = item->maxTenths + (age - spec.ageMin) * item->ageSlope - rng.between(0, spread);
        v = std::clamp<long>(v, item->minTenths, item->maxTenths);
        int year = static_cast<int>(rng.between(start, end));
        std::string date = std::to_string(year) + "-" + detail::pad(rng.between(1, 12), 2) + "-" +
                           detail::pad(rng.between(1, 28), 2);
        results += csvLine({pid, item->key, detail::tenths(v), date, ""});
      }
    }
    detail::writeText(dir / "participants.csv", people);
    detail::writeText(dir / "results.csv", results);
  }
  return dirs;
}

}  // namespace morekg::ingest

#endif  // MOREKG_INGEST_FIXTURE_HPP
