#ifndef MOREKG_INGEST_CSV_HPP
#define MOREKG_INGEST_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

#include "morekg/error.hpp"

namespace morekg::ingest {

struct CsvRecord {
  std::size_t line;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

// RFC-4180: comma separated, double-quote quoting with "" escapes, CRLF or LF
// line ends, quoted fields may span lines. Empty lines are skipped.
inline std::vector<CsvRecord> parseCsv(std::string_view text,
                                       const std::string& fileName = "<csv>") {
  std::vector<CsvRecord> records;
  std::size_t i = 0;
  std::size_t line = 1;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
  while (i < text.size()) {
    CsvRecord rec{line, {}};
    std::string field;
    bool quotedField = false;
    bool endOfRecord = false;
    while (!endOfRecord) {
      if (i >= text.size()) {
        rec.fields.push_back(std::move(field));
        break;
      }
      char c = text[i];
      if (c == '"' && field.empty() && !quotedField) {
        quotedField = true;
        ++i;
        while (true) {
          if (i >= text.size()) {
            throw Error(fileName + ":" + std::to_string(rec.line) +
                        ": unterminated quoted field");
          }
          char q = text[i++];
          if (q == '"') {
            if (i < text.size() && text[i] == '"') {
              field.push_back('"');
              ++i;
            } else {
              break;
            }
          } else {
            if (q == '\n') ++line;
            field.push_back(q);
          }
        }
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw Error(fileName + ":" + std::to_string(line) +
                      ": characters after closing quote");
        }
        continue;
      }
      ++i;
      if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        quotedField = false;
      } else if (c == '\r' || c == '\n') {
        if (c == '\r' && i < text.size() && text[i] == '\n') ++i;
        ++line;
        rec.fields.push_back(std::move(field));
        endOfRecord = true;
      } else {
        field.push_back(c);
      }
    }
    bool blank = rec.fields.size() == 1 && rec.fields[0].empty();
    if (!blank) records.push_back(std::move(rec));
  }
  return records;
}

inline std::string csvEscape(std::string_view field) {
  bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string csvLine(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csvEscape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace morekg::ingest

#endif  // MOREKG_INGEST_CSV_HPP
