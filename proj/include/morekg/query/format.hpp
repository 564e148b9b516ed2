#ifndef MOREKG_QUERY_FORMAT_HPP
#define MOREKG_QUERY_FORMAT_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "morekg/ingest/csv.hpp"
#include "morekg/query/evaluate.hpp"
#include "morekg/rdf/prefix_map.hpp"

namespace morekg::query {

enum class ResultFormat { kTable, kCsv };

// CSV cells follow the SPARQL CSV convention: full IRIs, bare lexical forms,
// empty for unbound.
inline std::string cellText(const Cell& c, const rdf::PrefixMap* pm = nullptr) {
  if (!c.term) return "";
  const rdf::Term& t = *c.term;
  if (t.isBlank()) return "_:" + t.value();
  if (t.isIri()) {
    if (!pm) return t.value();
    std::string s = pm->compact(t);
    return s.front() == '<' ? t.value() : s;
  }
  return t.value();
}

inline std::string formatCsv(const SolutionTable& table) {
  std::string out = ingest::csvLine(table.columns);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    for (const auto& c : row) fields.push_back(cellText(c));
    out += ingest::csvLine(fields);
  }
  return out;
}

inline std::string formatTable(const SolutionTable& table,
                               const rdf::PrefixMap& pm = rdf::PrefixMap::withDefaults()) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header;
  for (const auto& c : table.columns) header.push_back("?" + c);
  grid.push_back(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    for (const auto& c : row) line.push_back(cellText(c, &pm));
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> width(table.columns.size(), 0);
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  auto rule = [&] {
    std::string s = "+";
    for (auto w : width) s += std::string(w + 2, '-') + "+";
    return s + "\n";
  };
  std::string out = rule();
  for (std::size_t r = 0; r < grid.size(); ++r) {
    out += "|";
    for (std::size_t i = 0; i < grid[r].size(); ++i) {
      out += " " + grid[r][i] + std::string(width[i] - grid[r][i].size() + 1, ' ') + "|";
    }
    out += "\n";
    if (r == 0) out += rule();
  }
  out += rule();
  out += std::to_string(table.rows.size()) + (table.rows.size() == 1 ? " row\n" : " rows\n");
  return out;
}

inline std::string formatResult(const SolutionTable& table, ResultFormat format) {
  return format == ResultFormat::kCsv ? formatCsv(table) : formatTable(table);
}

}  // namespace morekg::query

#endif  // MOREKG_QUERY_FORMAT_HPP
