#ifndef MOREKG_QUERY_PARSER_HPP
#define MOREKG_QUERY_PARSER_HPP

#include <algorithm>
#include <set>
#include <string>
#include <string_view>

#include "morekg/query/ast.hpp"
#include "morekg/serdes/scanner.hpp"

namespace morekg::query {

namespace detail {

class QueryParser {
 public:
  QueryParser(std::string_view text, rdf::PrefixMap prefixes) : sc_(text) {
    ast_.prefixes = std::move(prefixes);
  }

  QueryAst parse() {
    sc_.skipSpace();
    while (sc_.consumeKeyword("PREFIX")) {
      sc_.skipSpace();
      std::string name = sc_.readPrefixedName();
      if (name.back() != ':') sc_.fail("malformed PREFIX declaration");
      sc_.skipSpace();
      ast_.prefixes.add(name.substr(0, name.size() - 1), sc_.readIriRef());
      sc_.skipSpace();
    }
    if (!sc_.consumeKeyword("SELECT")) sc_.fail("expected SELECT");
    sc_.skipSpace();
    if (sc_.consumeKeyword("DISTINCT")) ast_.distinct = true;
    parseProjection();
    sc_.skipSpace();
    sc_.consumeKeyword("WHERE");
    sc_.skipSpace();
    parseGroupPattern();
    parseModifiers();
    sc_.skipSpace();
    if (!sc_.eof()) sc_.fail("unexpected trailing input");
    return std::move(ast_);
  }

 private:
  std::string readVar() {
    if (sc_.peek() != '?' && sc_.peek() != '$') sc_.fail("expected variable");
    sc_.get();
    std::string name = sc_.readWord();
    if (name.empty()) sc_.fail("empty variable name");
    return name;
  }

  void parseProjection() {
    sc_.skipSpace();
    if (sc_.consume('*')) {
      ast_.selectAll = true;
      return;
    }
    while (true) {
      sc_.skipSpace();
      char c = sc_.peek();
      if (c == '?' || c == '$') {
        ast_.projection.push_back({readVar(), std::nullopt});
      } else if (c == '(') {
        sc_.get();
        sc_.skipSpace();
        Aggregate agg;
        if (sc_.consumeKeyword("COUNT")) {
          agg.fn = Aggregate::Fn::kCount;
        } else if (sc_.consumeKeyword("SUM")) {
          agg.fn = Aggregate::Fn::kSum;
        } else if (sc_.consumeKeyword("AVG")) {
          agg.fn = Aggregate::Fn::kAvg;
        } else if (sc_.consumeKeyword("MIN")) {
          agg.fn = Aggregate::Fn::kMin;
        } else if (sc_.consumeKeyword("MAX")) {
          agg.fn = Aggregate::Fn::kMax;
        } else {
          sc_.fail("expected aggregate (COUNT, SUM, AVG, MIN, MAX)");
        }
        sc_.skipSpace();
        sc_.expect('(');
        sc_.skipSpace();
        if (sc_.consumeKeyword("DISTINCT")) {
          agg.distinct = true;
          sc_.skipSpace();
        }
        if (sc_.consume('*')) {
          if (agg.fn != Aggregate::Fn::kCount) sc_.fail("'*' is only allowed in COUNT");
        } else {
          agg.var = readVar();
        }
        sc_.skipSpace();
        sc_.expect(')');
        sc_.skipSpace();
        if (!sc_.consumeKeyword("AS")) sc_.fail("expected AS");
        sc_.skipSpace();
        std::string alias = readVar();
        sc_.skipSpace();
        sc_.expect(')');
        ast_.projection.push_back({alias, agg});
      } else {
        break;
      }
    }
    if (ast_.projection.empty()) sc_.fail("empty projection");
  }

  rdf::PatternTerm readPatternTerm() {
    if (sc_.peek() == '?' || sc_.peek() == '$') return rdf::Variable{readVar()};
    return sc_.readTerm(ast_.prefixes);
  }

  void parseGroupPattern() {
    sc_.expect('{');
    while (true) {
      sc_.skipSpace();
      if (sc_.consume('}')) break;
      if (sc_.eof()) sc_.fail("unterminated group pattern");
      if (sc_.consume('.')) continue;
      if (sc_.consumeKeyword("FILTER")) {
        sc_.skipSpace();
        if (sc_.peek() != '(') sc_.fail("expected '(' after FILTER");
        ast_.filters.push_back(parsePrimary());
        continue;
      }
      if (sc_.consumeKeyword("OPTIONAL") || sc_.consumeKeyword("UNION") ||
          sc_.consumeKeyword("BIND") || sc_.consumeKeyword("VALUES") || sc_.peek() == '{') {
        sc_.fail("unsupported graph pattern construct");
      }
      parseTriplesBlock();
    }
  }

  void parseTriplesBlock() {
    rdf::PatternTerm subject = readPatternTerm();
    if (auto* t = std::get_if<rdf::Term>(&subject); t && t->isLiteral()) {
      sc_.fail("literal in subject position");
    }
    while (true) {
      sc_.skipSpace();
      rdf::PatternTerm predicate = readPatternTerm();
      if (auto* t = std::get_if<rdf::Term>(&predicate); t && !t->isIri()) {
        sc_.fail("predicate must be an IRI or variable");
      }
      while (true) {
        sc_.skipSpace();
        if (sc_.peek() == '[' || sc_.peek() == '(') sc_.fail("unsupported term syntax");
        ast_.where.push_back({subject, predicate, readPatternTerm()});
        sc_.skipSpace();
        if (!sc_.consume(',')) break;
      }
      bool more = false;
      while (sc_.consume(';')) {
        more = true;
        sc_.skipSpace();
      }
      if (more && sc_.peek() != '.' && sc_.peek() != '}') continue;
      break;
    }
  }

  // expr := and ('||' and)*
  Expr parseOr() {
    Expr left = parseAnd();
    while (true) {
      sc_.skipSpace();
      if (sc_.peek() == '|' && sc_.peek(1) == '|') {
        sc_.get();
        sc_.get();
        left = Expr::node(Expr::Op::kOr, {std::move(left), parseAnd()});
      } else {
        return left;
      }
    }
  }

  Expr parseAnd() {
    Expr left = parseRelational();
    while (true) {
      sc_.skipSpace();
      if (sc_.peek() == '&' && sc_.peek(1) == '&') {
        sc_.get();
        sc_.get();
        left = Expr::node(Expr::Op::kAnd, {std::move(left), parseRelational()});
      } else {
        return left;
      }
    }
  }

  Expr parseRelational() {
    Expr left = parseUnary();
    sc_.skipSpace();
    Expr::Op op;
    char c = sc_.peek();
    char d = sc_.peek(1);
    int width = 1;
    if (c == '=') {
      op = Expr::Op::kEq;
    } else if (c == '!' && d == '=') {
      op = Expr::Op::kNe;
      width = 2;
    } else if (c == '<' && d == '=') {
      op = Expr::Op::kLe;
      width = 2;
    } else if (c == '>' && d == '=') {
      op = Expr::Op::kGe;
      width = 2;
    } else if (c == '<') {
      op = Expr::Op::kLt;
    } else if (c == '>') {
      op = Expr::Op::kGt;
    } else {
      return left;
    }
    for (int i = 0; i < width; ++i) sc_.get();
    sc_.skipSpace();
    return Expr::node(op, {std::move(left), parseUnary()});
  }

  Expr parseUnary() {
    sc_.skipSpace();
    if (sc_.peek() == '!' && sc_.peek(1) != '=') {
      sc_.get();
      return Expr::node(Expr::Op::kNot, {parseUnary()});
    }
    return parsePrimary();
  }

  Expr parsePrimary() {
    sc_.skipSpace();
    char c = sc_.peek();
    if (c == '(') {
      sc_.get();
      Expr e = parseOr();
      sc_.skipSpace();
      sc_.expect(')');
      return e;
    }
    if (c == '?' || c == '$') return Expr::variable(readVar());
    // A bare '<' here is an IRI, not a comparison.
    return Expr::literal(sc_.readTerm(ast_.prefixes));
  }

  std::vector<std::string> readVarList() {
    std::vector<std::string> vars;
    while (true) {
      sc_.skipSpace();
      if (sc_.peek() != '?' && sc_.peek() != '$') break;
      vars.push_back(readVar());
    }
    return vars;
  }

  std::size_t readNatural() {
    sc_.skipSpace();
    std::string digits;
    while (sc_.peek() >= '0' && sc_.peek() <= '9') digits.push_back(sc_.get());
    if (digits.empty() || digits.size() > 18) sc_.fail("expected a natural number");
    return static_cast<std::size_t>(std::stoull(digits));
  }

  void parseModifiers() {
    while (true) {
      sc_.skipSpace();
      if (sc_.consumeKeyword("GROUP")) {
        sc_.skipSpace();
        if (!sc_.consumeKeyword("BY")) sc_.fail("expected BY");
        ast_.groupBy = readVarList();
        if (ast_.groupBy.empty()) sc_.fail("expected variables after GROUP BY");
      } else if (sc_.consumeKeyword("ORDER")) {
        sc_.skipSpace();
        if (!sc_.consumeKeyword("BY")) sc_.fail("expected BY");
        while (true) {
          sc_.skipSpace();
          if (sc_.peek() == '?' || sc_.peek() == '$') {
            ast_.orderBy.push_back({readVar(), false});
          } else if (bool desc = sc_.consumeKeyword("DESC"); desc || sc_.consumeKeyword("ASC")) {
            sc_.skipSpace();
            sc_.expect('(');
            sc_.skipSpace();
            ast_.orderBy.push_back({readVar(), desc});
            sc_.skipSpace();
            sc_.expect(')');
          } else {
            break;
          }
        }
        if (ast_.orderBy.empty()) sc_.fail("expected ORDER BY keys");
      } else if (sc_.consumeKeyword("LIMIT")) {
        ast_.limit = readNatural();
      } else if (sc_.consumeKeyword("OFFSET")) {
        ast_.offset = readNatural();
      } else {
        return;
      }
    }
  }

  serdes::Scanner sc_;
  QueryAst ast_;
};

inline void requireIn(const std::vector<std::string>& known, const std::string& var,
                      const std::string& where) {
  if (std::find(known.begin(), known.end(), var) == known.end()) {
    throw QueryError(QueryError::Kind::kUnboundVariable,
                     "variable ?" + var + " in " + where + " does not occur in the WHERE clause");
  }
}

// Structural checks: grouped projections, variable scoping, alias clashes.
inline void checkQuery(const QueryAst& q) {
  const auto whereVars = q.whereVariables();
  std::set<std::string> aliases;
  for (const auto& p : q.projection) {
    if (p.aggregate) {
      if (p.aggregate->var) requireIn(whereVars, *p.aggregate->var, "aggregate");
      if (std::find(whereVars.begin(), whereVars.end(), p.name) != whereVars.end()) {
        throw QueryError(QueryError::Kind::kDuplicateName,
                         "alias ?" + p.name + " is already bound in the WHERE clause");
      }
      if (!aliases.insert(p.name).second) {
        throw QueryError(QueryError::Kind::kDuplicateName, "duplicate alias ?" + p.name);
      }
    } else {
      requireIn(whereVars, p.name, "projection");
    }
  }
  for (const auto& f : q.filters) {
    std::vector<std::string> vars;
    f.collectVariables(vars);
    for (const auto& v : vars) requireIn(whereVars, v, "FILTER");
  }
  for (const auto& g : q.groupBy) requireIn(whereVars, g, "GROUP BY");
  if (q.grouped()) {
    if (q.selectAll) {
      throw QueryError(QueryError::Kind::kUngroupedVariable, "SELECT * cannot be combined with grouping");
    }
    for (const auto& p : q.projection) {
      if (!p.aggregate && std::find(q.groupBy.begin(), q.groupBy.end(), p.name) == q.groupBy.end()) {
        throw QueryError(QueryError::Kind::kUngroupedVariable,
                         "projected variable ?" + p.name + " is neither grouped nor aggregated");
      }
    }
  }
  for (const auto& k : q.orderBy) {
    bool alias = aliases.count(k.var) != 0;
    if (q.grouped()) {
      if (!alias && std::find(q.groupBy.begin(), q.groupBy.end(), k.var) == q.groupBy.end()) {
        throw QueryError(QueryError::Kind::kUngroupedVariable,
                         "ORDER BY ?" + k.var + " is neither grouped nor an aggregate alias");
      }
    } else if (!alias) {
      requireIn(whereVars, k.var, "ORDER BY");
    }
  }
}

}  // namespace detail

// Parses the supported SELECT subset. Standard prefixes (more:, obi:, iao:,
// bfo:, pato:, rdf:, rdfs:, xsd:) are pre-registered; PREFIX declarations
// override them.
inline QueryAst parseQuery(std::string_view text,
                           rdf::PrefixMap prefixes = rdf::PrefixMap::withDefaults()) {
  QueryAst q = detail::QueryParser(text, std::move(prefixes)).parse();
  detail::checkQuery(q);
  return q;
}

}  // namespace morekg::query

#endif  // MOREKG_QUERY_PARSER_HPP
