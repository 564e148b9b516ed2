#ifndef MOREKG_SERDES_TURTLE_HPP
#define MOREKG_SERDES_TURTLE_HPP

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "morekg/rdf/graph.hpp"
#include "morekg/rdf/prefix_map.hpp"
#include "morekg/serdes/ntriples.hpp"
#include "morekg/serdes/scanner.hpp"

namespace morekg::serdes {

// Turtle subset: @prefix/PREFIX directives, IRIs, prefixed names, `a`,
// predicate lists (;), object lists (,), typed/language literals and numeric
// or boolean shorthand. No collections, blank-node property lists or @base.
inline rdf::Graph parseTurtle(std::string_view text,
                              rdf::PrefixMap prefixes = rdf::PrefixMap()) {
  rdf::Graph g;
  Scanner sc(text);
  auto readSubject = [&]() -> rdf::Term {
    char c = sc.peek();
    if (c == '"' || c == '\'' || (c >= '0' && c <= '9') || c == '+' || c == '-') {
      sc.fail("literal in subject position");
    }
    if (c == '[' || c == '(') sc.fail("blank node property lists and collections are not supported");
    return sc.readTerm(prefixes);
  };
  while (true) {
    sc.skipSpace();
    if (sc.eof()) break;
    if (sc.peek() == '@') {
      sc.get();
      std::string kw = sc.readWord();
      if (kw == "base") sc.fail("@base is not supported");
      if (kw != "prefix") sc.fail("unknown directive '@" + kw + "'");
      sc.skipSpace();
      std::string name = sc.readPrefixedName();
      if (name.back() != ':') sc.fail("malformed prefix declaration");
      sc.skipSpace();
      std::string ns = sc.readIriRef();
      prefixes.add(name.substr(0, name.size() - 1), ns);
      sc.skipSpace();
      sc.expect('.');
      continue;
    }
    if (sc.consumeKeyword("PREFIX")) {
      sc.skipSpace();
      std::string name = sc.readPrefixedName();
      if (name.back() != ':') sc.fail("malformed prefix declaration");
      sc.skipSpace();
      prefixes.add(name.substr(0, name.size() - 1), sc.readIriRef());
      continue;
    }
    if (sc.consumeKeyword("BASE")) sc.fail("BASE is not supported");

    rdf::Term subject = readSubject();
    while (true) {
      sc.skipSpace();
      std::size_t pl = sc.line(), pc = sc.column();
      rdf::Term predicate = sc.readTerm(prefixes);
      if (!predicate.isIri()) throw ParseError("predicate must be an IRI", pl, pc);
      while (true) {
        sc.skipSpace();
        if (sc.peek() == '[' || sc.peek() == '(') {
          sc.fail("blank node property lists and collections are not supported");
        }
        std::size_t ol = sc.line(), oc = sc.column();
        rdf::Term object = sc.readTerm(prefixes);
        try {
          g.insert({subject, predicate, std::move(object)});
        } catch (const InvalidTripleError& e) {
          throw ParseError(e.what(), ol, oc);
        }
        sc.skipSpace();
        if (!sc.consume(',')) break;
      }
      // `;` may repeat and may precede the final '.'.
      bool more = false;
      while (sc.consume(';')) {
        more = true;
        sc.skipSpace();
      }
      if (more && sc.peek() != '.') continue;
      sc.expect('.');
      break;
    }
  }
  return g;
}

inline std::string toTurtle(const rdf::Term& t, const rdf::PrefixMap& pm) {
  switch (t.kind()) {
    case rdf::TermKind::kIri: {
      std::string c = pm.compact(t);
      return c.front() == '<' ? "<" + escapeIri(t.value()) + ">" : c;
    }
    case rdf::TermKind::kBlank:
      return "_:" + t.value();
    case rdf::TermKind::kLiteral:
      break;
  }
  const std::string& lex = t.value();
  auto allDigits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view body = lex;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    body.remove_prefix(1);
  }
  if (t.datatype() == rdf::xsd::kInteger && allDigits(body)) return lex;
  if (t.datatype() == rdf::xsd::kDecimal) {
    auto dot = body.find('.');
    if (dot != std::string_view::npos && allDigits(body.substr(dot + 1)) &&
        (dot == 0 || allDigits(body.substr(0, dot)))) {
      return lex;
    }
  }
  std::string out = "\"" + escapeLiteral(lex) + "\"";
  if (!t.language().empty()) return out + "@" + t.language();
  if (t.datatype() == rdf::xsd::kString) return out;
  return out + "^^" + toTurtle(rdf::Term::iri(t.datatype()), pm);
}

// Prefix block (every registered prefix) followed by one subject block per
// subject using `;` and `,` abbreviations.
inline std::string writeTurtle(const rdf::Graph& g,
                               const SerializationConfig& cfg = {}) {
  const rdf::PrefixMap& pm = cfg.prefixes;
  std::string out;
  for (const auto& [prefix, ns] : pm.entries()) {
    out += "@prefix " + prefix + ": <" + escapeIri(ns) + "> .\n";
  }
  if (g.empty()) return out;
  out += "\n";

  const rdf::Term type = rdf::vocab::rdfType();
  std::vector<std::pair<std::string, rdf::TermId>> subjects;
  {
    std::vector<rdf::TermId> ids;
    g.forEach({}, {}, {}, [&](rdf::TermId s, rdf::TermId, rdf::TermId) {
      if (ids.empty() || ids.back() != s) ids.push_back(s);
    });
    for (rdf::TermId s : ids) subjects.emplace_back(toTurtle(g.term(s), pm), s);
  }
  if (cfg.canonical) std::sort(subjects.begin(), subjects.end());

  for (const auto& [subjectText, sid] : subjects) {
    // predicate text -> object texts
    std::map<std::string, std::vector<std::string>> byPredicate;
    std::vector<std::string> order;
    g.forEach(sid, {}, {}, [&](rdf::TermId, rdf::TermId p, rdf::TermId o) {
      const rdf::Term& pt = g.term(p);
      std::string key = pt == type ? "a" : toTurtle(pt, pm);
      auto [it, fresh] = byPredicate.try_emplace(key);
      if (fresh) order.push_back(key);
      it->second.push_back(toTurtle(g.term(o), pm));
    });
    if (cfg.canonical) {
      // `a` first, then the remaining predicates in text order.
      std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if ((a == "a") != (b == "a")) return a == "a";
        return a < b;
      });
    }
    out += subjectText;
    bool firstPredicate = true;
    for (const auto& pred : order) {
      auto& objects = byPredicate[pred];
      if (cfg.canonical) std::sort(objects.begin(), objects.end());
      out += firstPredicate ? " " : " ;\n    ";
      firstPredicate = false;
      out += pred;
      for (std::size_t i = 0; i < objects.size(); ++i) {
        out += (i == 0 ? " " : ", ");
        out += objects[i];
      }
    }
    out += " .\n";
  }
  return out;
}

}  // namespace morekg::serdes

#endif  // MOREKG_SERDES_TURTLE_HPP
