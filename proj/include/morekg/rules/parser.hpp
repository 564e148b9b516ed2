#ifndef MOREKG_RULES_PARSER_HPP
#define MOREKG_RULES_PARSER_HPP

#include <string>
#include <string_view>

#include "morekg/rdf/prefix_map.hpp"
#include "morekg/rules/rule.hpp"
#include "morekg/serdes/scanner.hpp"
#include "morekg/serdes/turtle.hpp"

namespace morekg::rules {

// Line-oriented rule syntax:
//
//   @prefix ex: <http://example.org/> .
//   name: ?s ex:p ?o & ?o ex:q ?z => ?s ex:r ?z .
//
// Terms use Turtle notation; `?x` is a variable. When `withBuiltins` is set
// the builtin rules come first; a parsed rule identical to a builtin of the
// same name is absorbed.
inline RuleSet parseRules(std::string_view text, bool withBuiltins = true,
                          rdf::PrefixMap prefixes = rdf::PrefixMap::withDefaults()) {
  RuleSet rs = withBuiltins ? builtinRules() : RuleSet();
  serdes::Scanner sc(text);

  auto readPatternTerm = [&]() -> rdf::PatternTerm {
    if (sc.peek() == '?' || sc.peek() == '$') {
      sc.get();
      std::string name = sc.readWord();
      if (name.empty()) sc.fail("empty variable name");
      return rdf::Variable{name};
    }
    return sc.readTerm(prefixes);
  };
  auto readPatterns = [&](bool head) {
    std::vector<rdf::TriplePattern> out;
    while (true) {
      sc.skipSpace();
      rdf::TriplePattern p;
      p.subject = readPatternTerm();
      sc.skipSpace();
      p.predicate = readPatternTerm();
      sc.skipSpace();
      p.object = readPatternTerm();
      out.push_back(std::move(p));
      sc.skipSpace();
      if (sc.consume('&')) continue;
      if (!head && sc.peek() == '=' && sc.peek(1) == '>') {
        sc.get();
        sc.get();
        break;
      }
      if (head && sc.consume('.')) break;
      sc.fail(head ? "expected '&' or '.'" : "expected '&' or '=>'");
    }
    return out;
  };

  while (true) {
    sc.skipSpace();
    if (sc.eof()) break;
    std::size_t line = sc.line(), col = sc.column();
    if (sc.peek() == '@') {
      sc.get();
      if (sc.readWord() != "prefix") sc.fail("expected @prefix");
      sc.skipSpace();
      std::string name = sc.readPrefixedName();
      if (name.back() != ':') sc.fail("malformed prefix declaration");
      sc.skipSpace();
      prefixes.add(name.substr(0, name.size() - 1), sc.readIriRef());
      sc.skipSpace();
      sc.expect('.');
      continue;
    }
    Rule rule;
    rule.name = sc.readWord();
    if (rule.name.empty()) sc.fail("expected rule name");
    if (!sc.consume(':')) sc.fail("expected ':' after rule name");
    rule.body = readPatterns(false);
    rule.head = readPatterns(true);
    try {
      validateRule(rule);
      if (withBuiltins) {
        const auto& existing = rs.rules();
        auto it = std::find_if(existing.begin(), existing.end(),
                               [&](const Rule& r) { return r.name == rule.name; });
        if (it != existing.end() && *it == rule) continue;
      }
      rs.add(std::move(rule));
    } catch (const RuleError& e) {
      throw ParseError(e.what(), line, col);
    }
  }
  return rs;
}

inline std::string writeRules(const RuleSet& rs,
                              const rdf::PrefixMap& prefixes = rdf::PrefixMap::withDefaults()) {
  std::string out;
  for (const auto& [prefix, ns] : prefixes.entries()) {
    out += "@prefix " + prefix + ": <" + serdes::escapeIri(ns) + "> .\n";
  }
  auto term = [&](const rdf::PatternTerm& t) {
    if (auto* v = std::get_if<rdf::Variable>(&t)) return "?" + v->name;
    return serdes::toTurtle(std::get<rdf::Term>(t), prefixes);
  };
  auto patterns = [&](const std::vector<rdf::TriplePattern>& ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) s += "\n    & ";
      s += term(ps[i].subject) + " " + term(ps[i].predicate) + " " + term(ps[i].object);
    }
    return s;
  };
  for (const Rule& r : rs.rules()) {
    out += "\n" + r.name + ":\n    " + patterns(r.body) + "\n    => " + patterns(r.head) + " .\n";
  }
  return out;
}

}  // namespace morekg::rules

#endif  // MOREKG_RULES_PARSER_HPP
