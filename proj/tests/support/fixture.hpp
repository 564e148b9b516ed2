#ifndef MOREKG_TESTS_FIXTURE_HPP
#define MOREKG_TESTS_FIXTURE_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "morekg/cli/commands.hpp"
#include "morekg/ingest/fixture.hpp"

namespace testing_support {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("morekg-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

 private:
  std::filesystem::path path_;
};

inline void writeFile(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string readFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// The three-study demo fixture used by the shipped CQ cases.
inline morekg::ingest::FixtureSpec demoSpec() {
  morekg::ingest::FixtureSpec s;
  s.studies = 3;
  s.items = {"handgrip", "shuttle_run", "sit_and_reach", "dash_20m"};
  return s;
}

// Generates `spec` under `dir` and builds it (schema + instances, optionally
// materialized) without going through files for the graph.
inline morekg::rdf::Graph buildFixture(const std::filesystem::path& dir, const morekg::ingest::FixtureSpec& spec,
                                       bool materialize) {
  morekg::ingest::writeFixture(dir, spec);
  morekg::cli::BuildOptions o;
  o.bundles = {dir.string()};
  o.materialize = materialize;
  std::ostringstream sink;
  return morekg::cli::buildGraph(o, {sink, sink});
}

inline std::vector<std::filesystem::path> bundleDirs(const std::filesystem::path& dir) {
  morekg::ingest::IngestConfig cfg;
  return morekg::cli::expandBundleDirs({dir.string()}, cfg);
}

// Minimal one-participant bundle; callers overwrite single files to break it.
inline void writeMinimalBundle(const std::filesystem::path& dir, const std::string& value = "32.5") {
  writeFile(dir / "study.csv", "id,title,year_start,year_end,doi\nst01,Grip study,2016,2017,10.1234/abc\n");
  writeFile(dir / "participants.csv",
            "participant_id,age,sex,height_cm,weight_kg,bmi\np007,9,f,150,45,20.0\n");
  writeFile(dir / "test_items.csv",
            "key,label,disposition_label,unit,datatype\nhandgrip,Handgrip,grip strength,kg,xsd:decimal\n");
  writeFile(dir / "results.csv",
            "participant_id,test_item,value,session_date,trial\np007,handgrip," + value + ",2016-05-03,\n");
}

}  // namespace testing_support

#endif  // MOREKG_TESTS_FIXTURE_HPP
