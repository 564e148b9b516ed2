#ifndef MOREKG_SERDES_NTRIPLES_HPP
#define MOREKG_SERDES_NTRIPLES_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "morekg/rdf/graph.hpp"
#include "morekg/rdf/prefix_map.hpp"
#include "morekg/serdes/scanner.hpp"

namespace morekg::serdes {

enum class Format { kNTriples, kTurtle };

struct SerializationConfig {
  Format format = Format::kNTriples;
  rdf::PrefixMap prefixes = rdf::PrefixMap::withDefaults();
  // Sorted output that depends only on the triple set.
  bool canonical = true;
};

inline std::string escapeLiteral(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string escapeIri(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '\\') {
      out += "\\u00";
      out.push_back(kHex[u >> 4]);
      out.push_back(kHex[u & 0xF]);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline std::string toNTriples(const rdf::Term& t) {
  switch (t.kind()) {
    case rdf::TermKind::kIri:
      return "<" + escapeIri(t.value()) + ">";
    case rdf::TermKind::kBlank:
      return "_:" + t.value();
    case rdf::TermKind::kLiteral:
      break;
  }
  std::string out = "\"" + escapeLiteral(t.value()) + "\"";
  if (!t.language().empty()) return out + "@" + t.language();
  if (t.datatype() == rdf::xsd::kString) return out;
  return out + "^^<" + escapeIri(t.datatype()) + ">";
}

// One triple per non-blank, non-comment line. Duplicates are absorbed.
inline rdf::Graph parseNTriples(std::string_view text) {
  rdf::Graph g;
  Scanner sc(text);
  auto readNode = [&](bool allowLiteral) -> rdf::Term {
    char c = sc.peek();
    if (c == '<') return rdf::Term::iri(sc.readIriRef());
    if (c == '_' && sc.peek(1) == ':') return rdf::Term::blank(sc.readBlankLabel());
    if (c == '"' && allowLiteral) {
      std::string lexical = sc.readQuoted();
      if (sc.peek() == '@') return rdf::Term::langLiteral(lexical, sc.readLangTag());
      if (sc.peek() == '^' && sc.peek(1) == '^') {
        sc.get();
        sc.get();
        return rdf::Term::literal(lexical, sc.readIriRef());
      }
      return rdf::Term::literal(lexical);
    }
    sc.fail("malformed term");
  };
  while (true) {
    sc.skipInlineSpace();
    if (sc.eof()) break;
    if (sc.peek() == '\n') {
      sc.get();
      continue;
    }
    if (sc.peek() == '#') {
      while (!sc.eof() && sc.peek() != '\n') sc.get();
      continue;
    }
    std::size_t line = sc.line();
    std::size_t col = sc.column();
    rdf::Term s = readNode(false);
    sc.skipInlineSpace();
    if (sc.peek() != '<') sc.fail("predicate must be an IRI");
    rdf::Term p = readNode(false);
    sc.skipInlineSpace();
    rdf::Term o = readNode(true);
    sc.skipInlineSpace();
    sc.expect('.');
    sc.skipInlineSpace();
    if (sc.peek() == '#') {
      while (!sc.eof() && sc.peek() != '\n') sc.get();
    }
    if (!sc.eof() && sc.peek() != '\n') sc.fail("trailing characters after '.'");
    try {
      g.insert({std::move(s), std::move(p), std::move(o)});
    } catch (const InvalidTripleError& e) {
      throw ParseError(e.what(), line, col);
    }
  }
  return g;
}

inline std::string writeNTriples(const rdf::Graph& g,
                                 const SerializationConfig& cfg = {}) {
  std::vector<std::string> lines;
  lines.reserve(g.size());
  g.forEach({}, {}, {}, [&](rdf::TermId s, rdf::TermId p, rdf::TermId o) {
    lines.push_back(toNTriples(g.term(s)) + " " + toNTriples(g.term(p)) + " " +
                    toNTriples(g.term(o)) + " .\n");
  });
  if (cfg.canonical) std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l;
  return out;
}

}  // namespace morekg::serdes

#endif  // MOREKG_SERDES_NTRIPLES_HPP
