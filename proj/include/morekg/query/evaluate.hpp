#ifndef MOREKG_QUERY_EVALUATE_HPP
#define MOREKG_QUERY_EVALUATE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "morekg/numeric.hpp"
#include "morekg/query/ast.hpp"
#include "morekg/query/explain.hpp"
#include "morekg/rdf/graph.hpp"

namespace morekg::query {

// One result cell. `exact` carries the rational behind numeric values so
// that aggregates can be checked without re-parsing rendered decimals.
struct Cell {
  std::optional<rdf::Term> term;
  std::optional<Rational> exact;

  bool bound() const { return term.has_value(); }
  friend bool operator==(const Cell& a, const Cell& b) { return a.term == b.term; }
};

struct SolutionTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;

  std::size_t column(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw Error("no column ?" + name);
    return static_cast<std::size_t>(it - columns.begin());
  }
};

struct EvalOptions {
  // Fixed decimal places used to render AVG.
  unsigned avgPlaces = 6;
};

namespace detail {

inline constexpr rdf::TermId kNone = static_cast<rdf::TermId>(-1);

// Numeric view of a term. Non-literal nodes resolve through a single numeric
// rdf:value, which is how value specifications carry their number.
class Numerics {
 public:
  explicit Numerics(const rdf::Graph& g) : g_(g), value_(g.lookup(rdf::vocab::rdfValue())) {}

  std::optional<Rational> of(const rdf::Term& t, std::optional<rdf::TermId> id = std::nullopt) const {
    if (t.isLiteral()) return numericValue(t);
    if (!value_) return std::nullopt;
    if (!id) id = g_.lookup(t);
    if (!id) return std::nullopt;
    std::optional<Rational> out;
    int n = 0;
    g_.forEach(*id, *value_, {}, [&](rdf::TermId, rdf::TermId, rdf::TermId o) {
      ++n;
      out = numericValue(g_.term(o));
    });
    if (n != 1) return std::nullopt;
    return out;
  }

 private:
  const rdf::Graph& g_;
  std::optional<rdf::TermId> value_;
};

inline bool sameLiteralKind(const rdf::Term& a, const rdf::Term& b) {
  return a.isLiteral() && b.isLiteral() && a.datatype() == b.datatype() &&
         a.language() == b.language();
}

enum class Tri { kFalse, kTrue, kError };

inline Tri fromBool(bool b) { return b ? Tri::kTrue : Tri::kFalse; }

// Three-way comparison for FILTER; nullopt when the terms are incomparable.
inline std::optional<int> compareTerms(const rdf::Term& a, const rdf::Term& b, const Numerics& num) {
  auto na = num.of(a);
  auto nb = num.of(b);
  if (na && nb) return *na < *nb ? -1 : (*na > *nb ? 1 : 0);
  if (sameLiteralKind(a, b) &&
      (a.datatype() == rdf::xsd::kString || a.datatype() == rdf::xsd::kDate ||
       a.datatype() == rdf::kLangString || a.datatype() == rdf::xsd::kBoolean)) {
    int c = a.value().compare(b.value());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  return std::nullopt;
}

inline Tri equalTerms(const rdf::Term& a, const rdf::Term& b, const Numerics& num) {
  if (a == b) return Tri::kTrue;
  if (!a.isLiteral() && !b.isLiteral()) return Tri::kFalse;
  auto na = num.of(a);
  auto nb = num.of(b);
  if (na && nb) return fromBool(*na == *nb);
  if (a.isLiteral() && b.isLiteral()) {
    if (sameLiteralKind(a, b)) return Tri::kFalse;
    return Tri::kError;
  }
  return Tri::kFalse;
}

inline Tri effectiveBoolean(const rdf::Term& t) {
  if (!t.isLiteral()) return Tri::kError;
  if (t.datatype() == rdf::xsd::kBoolean) return fromBool(t.value() == "true" || t.value() == "1");
  if (auto n = numericValue(t)) return fromBool(*n != 0);
  if (t.datatype() == rdf::xsd::kString || t.datatype() == rdf::kLangString) {
    return fromBool(!t.value().empty());
  }
  return Tri::kError;
}

class ExprEval {
 public:
  ExprEval(const rdf::Graph& g, const Numerics& num,
           const std::unordered_map<std::string, std::size_t>& slots)
      : g_(g), num_(num), slots_(slots) {}

  Tri test(const Expr& e, const std::vector<rdf::TermId>& row) const {
    using Op = Expr::Op;
    switch (e.op) {
      case Op::kVar:
      case Op::kConst: {
        auto t = value(e, row);
        return t ? effectiveBoolean(*t) : Tri::kError;
      }
      case Op::kNot: {
        Tri v = test(e.args[0], row);
        return v == Tri::kError ? v : fromBool(v == Tri::kFalse);
      }
      case Op::kAnd: {
        Tri l = test(e.args[0], row);
        Tri r = test(e.args[1], row);
        if (l == Tri::kFalse || r == Tri::kFalse) return Tri::kFalse;
        if (l == Tri::kError || r == Tri::kError) return Tri::kError;
        return Tri::kTrue;
      }
      case Op::kOr: {
        Tri l = test(e.args[0], row);
        Tri r = test(e.args[1], row);
        if (l == Tri::kTrue || r == Tri::kTrue) return Tri::kTrue;
        if (l == Tri::kError || r == Tri::kError) return Tri::kError;
        return Tri::kFalse;
      }
      default:
        break;
    }
    auto a = value(e.args[0], row);
    auto b = value(e.args[1], row);
    if (!a || !b) return Tri::kError;
    if (e.op == Op::kEq) return equalTerms(*a, *b, num_);
    if (e.op == Op::kNe) {
      Tri eq = equalTerms(*a, *b, num_);
      return eq == Tri::kError ? eq : fromBool(eq == Tri::kFalse);
    }
    auto c = compareTerms(*a, *b, num_);
    if (!c) return Tri::kError;
    switch (e.op) {
      case Op::kLt: return fromBool(*c < 0);
      case Op::kLe: return fromBool(*c <= 0);
      case Op::kGt: return fromBool(*c > 0);
      case Op::kGe: return fromBool(*c >= 0);
      default: return Tri::kError;
    }
  }

 private:
  std::optional<rdf::Term> value(const Expr& e, const std::vector<rdf::TermId>& row) const {
    if (e.op == Expr::Op::kConst) return e.constant;
    if (e.op == Expr::Op::kVar) {
      rdf::TermId id = row[slots_.at(e.var)];
      if (id == kNone) return std::nullopt;
      return g_.term(id);
    }
    return std::nullopt;
  }

  const rdf::Graph& g_;
  const Numerics& num_;
  const std::unordered_map<std::string, std::size_t>& slots_;
};

// SPARQL ORDER BY ordering: unbound < blank < IRI < literal; numeric literals
// by value, other literals by lexical form then datatype.
inline int orderCells(const Cell& a, const Cell& b) {
  if (!a.bound() || !b.bound()) return a.bound() == b.bound() ? 0 : (a.bound() ? 1 : -1);
  const rdf::Term& x = *a.term;
  const rdf::Term& y = *b.term;
  auto rank = [](const rdf::Term& t) {
    return t.isBlank() ? 0 : (t.isIri() ? 1 : 2);
  };
  if (rank(x) != rank(y)) return rank(x) < rank(y) ? -1 : 1;
  std::optional<Rational> nx = a.exact ? a.exact : numericValue(x);
  std::optional<Rational> ny = b.exact ? b.exact : numericValue(y);
  if (nx && ny) {
    if (*nx != *ny) return *nx < *ny ? -1 : 1;
    return 0;
  }
  if (nx || ny) return nx ? -1 : 1;
  if (int c = x.value().compare(y.value()); c != 0) return c < 0 ? -1 : 1;
  if (int c = x.datatype().compare(y.datatype()); c != 0) return c < 0 ? -1 : 1;
  return 0;
}

struct CellLess {
  bool operator()(const std::vector<Cell>& a, const std::vector<Cell>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].term != b[i].term) {
        if (!a[i].term) return true;
        if (!b[i].term) return false;
        return *a[i].term < *b[i].term;
      }
    }
    return false;
  }
};

inline rdf::Term integerLiteral(const BigInt& n) {
  return rdf::Term::literal(n.str(), rdf::xsd::kInteger);
}

}  // namespace detail

// Evaluates `q` over `g`: basic graph pattern join (bag semantics) in the
// order chosen by planJoin(), FILTER, grouping and aggregates in exact
// rational arithmetic, projection, DISTINCT, ORDER BY (stable), then
// OFFSET/LIMIT.
inline SolutionTable evaluate(const rdf::Graph& g, const QueryAst& q, const EvalOptions& opts = {}) {
  using detail::kNone;
  SolutionTable table;
  table.columns = q.columns();

  const auto vars = q.whereVariables();
  std::unordered_map<std::string, std::size_t> slots;
  for (std::size_t i = 0; i < vars.size(); ++i) slots[vars[i]] = i;

  // Compile patterns; a constant missing from the graph empties the BGP.
  struct Pos {
    bool isVar;
    std::size_t slot;
    rdf::TermId id;
  };
  std::vector<std::array<Pos, 3>> patterns;
  bool impossible = false;
  for (const auto& p : q.where) {
    std::array<Pos, 3> c{};
    for (int i = 0; i < 3; ++i) {
      if (auto* v = std::get_if<rdf::Variable>(&p.at(i))) {
        c[i] = {true, slots[v->name], 0};
      } else if (auto id = g.lookup(std::get<rdf::Term>(p.at(i)))) {
        c[i] = {false, 0, *id};
      } else {
        impossible = true;
      }
    }
    patterns.push_back(c);
  }

  std::vector<std::vector<rdf::TermId>> rows;
  if (!impossible) {
    const auto plan = planJoin(q, &g);
    std::vector<rdf::TermId> binding(vars.size(), kNone);
    auto resolve = [&](const Pos& p) -> std::optional<rdf::TermId> {
      if (!p.isVar) return p.id;
      if (binding[p.slot] == kNone) return std::nullopt;
      return binding[p.slot];
    };
    auto step = [&](auto& self, std::size_t depth) -> void {
      if (depth == plan.steps.size()) {
        rows.push_back(binding);
        return;
      }
      const auto& pat = patterns[plan.steps[depth].patternIndex];
      std::vector<rdf::IdTriple> matches;
      g.forEach(resolve(pat[0]), resolve(pat[1]), resolve(pat[2]),
                [&](rdf::TermId s, rdf::TermId p, rdf::TermId o) { matches.push_back({s, p, o}); });
      for (const auto& t : matches) {
        std::vector<std::size_t> newly;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
          if (!pat[i].isVar) continue;
          rdf::TermId& b = binding[pat[i].slot];
          if (b == kNone) {
            b = t[i];
            newly.push_back(pat[i].slot);
          } else if (b != t[i]) {
            ok = false;
          }
        }
        if (ok) self(self, depth + 1);
        for (auto s : newly) binding[s] = kNone;
      }
    };
    if (!patterns.empty()) step(step, 0);
  }

  const detail::Numerics numerics(g);
  if (!q.filters.empty()) {
    detail::ExprEval eval(g, numerics, slots);
    std::vector<std::vector<rdf::TermId>> kept;
    for (auto& r : rows) {
      bool keep = true;
      for (const auto& f : q.filters) {
        if (eval.test(f, r) != detail::Tri::kTrue) {
          keep = false;
          break;
        }
      }
      if (keep) kept.push_back(std::move(r));
    }
    rows = std::move(kept);
  }

  // Extended rows: one cell per WHERE variable followed by one per alias.
  std::vector<std::string> extendedNames = vars;
  std::vector<std::vector<Cell>> extended;
  auto cellOf = [&](rdf::TermId id) {
    Cell c;
    if (id != kNone) c.term = g.term(id);
    return c;
  };

  if (!q.grouped()) {
    extended.reserve(rows.size());
    for (const auto& r : rows) {
      std::vector<Cell> cells;
      cells.reserve(r.size());
      for (rdf::TermId id : r) cells.push_back(cellOf(id));
      extended.push_back(std::move(cells));
    }
  } else {
    std::vector<std::size_t> keySlots;
    for (const auto& v : q.groupBy) keySlots.push_back(slots.at(v));
    std::vector<std::vector<rdf::TermId>> keys;
    std::map<std::vector<rdf::TermId>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<rdf::TermId> key;
      for (auto s : keySlots) key.push_back(rows[i][s]);
      auto [it, fresh] = groups.try_emplace(key);
      if (fresh) keys.push_back(key);
      it->second.push_back(i);
    }
    // Aggregates without GROUP BY form one group even when empty.
    if (q.groupBy.empty() && keys.empty()) {
      keys.emplace_back();
      groups[{}];
    }
    for (const auto& p : q.projection) {
      if (p.aggregate) extendedNames.push_back(p.name);
    }
    for (const auto& key : keys) {
      const auto& members = groups[key];
      std::vector<Cell> cells(vars.size());
      for (std::size_t k = 0; k < keySlots.size(); ++k) cells[keySlots[k]] = cellOf(key[k]);
      for (const auto& p : q.projection) {
        if (!p.aggregate) continue;
        const Aggregate& agg = *p.aggregate;
        std::vector<rdf::TermId> values;
        for (auto m : members) {
          if (!agg.var) {
            values.push_back(0);
            continue;
          }
          rdf::TermId id = rows[m][slots.at(*agg.var)];
          if (id != kNone) values.push_back(id);
        }
        if (agg.distinct && agg.var) {
          std::sort(values.begin(), values.end());
          values.erase(std::unique(values.begin(), values.end()), values.end());
        }
        Cell out;
        if (agg.fn == Aggregate::Fn::kCount) {
          out.term = detail::integerLiteral(values.size());
          out.exact = Rational(values.size());
          cells.push_back(std::move(out));
          continue;
        }
        if (values.empty()) {
          cells.push_back(std::move(out));
          continue;
        }
        std::vector<Rational> nums;
        bool allNumeric = true;
        bool allInteger = true;
        for (auto id : values) {
          const rdf::Term& t = g.term(id);
          auto n = numerics.of(t, id);
          if (!n) {
            allNumeric = false;
            break;
          }
          if (!(t.isLiteral() && isIntegerDatatype(t.datatype()))) allInteger = false;
          nums.push_back(*n);
        }
        if (agg.fn == Aggregate::Fn::kSum || agg.fn == Aggregate::Fn::kAvg) {
          if (!allNumeric) {
            std::string groupText;
            for (std::size_t k = 0; k < key.size(); ++k) {
              if (k) groupText += ", ";
              groupText += key[k] == kNone ? "UNDEF" : g.term(key[k]).value();
            }
            table.warnings.push_back(std::string(aggregateName(agg.fn)) + "(?" + *agg.var +
                                     ") over non-numeric value in group [" + groupText +
                                     "]; result left unbound");
            cells.push_back(std::move(out));
            continue;
          }
          Rational sum = 0;
          for (const auto& n : nums) sum += n;
          if (agg.fn == Aggregate::Fn::kSum) {
            out.exact = sum;
            out.term = allInteger ? detail::integerLiteral(numerator(sum))
                                  : rdf::Term::literal(formatDecimal(sum, 40), rdf::xsd::kDecimal);
          } else {
            Rational avg = sum / static_cast<long>(nums.size());
            out.exact = avg;
            out.term = rdf::Term::literal(formatFixed(avg, opts.avgPlaces), rdf::xsd::kDecimal);
          }
          cells.push_back(std::move(out));
          continue;
        }
        // MIN / MAX keep the original term.
        std::size_t best = 0;
        for (std::size_t k = 1; k < values.size(); ++k) {
          Cell a{g.term(values[k]), allNumeric ? std::optional<Rational>(nums[k]) : std::nullopt};
          Cell b{g.term(values[best]), allNumeric ? std::optional<Rational>(nums[best]) : std::nullopt};
          int c = detail::orderCells(a, b);
          if ((agg.fn == Aggregate::Fn::kMin && c < 0) || (agg.fn == Aggregate::Fn::kMax && c > 0)) best = k;
        }
        out.term = g.term(values[best]);
        if (allNumeric) out.exact = nums[best];
        cells.push_back(std::move(out));
      }
      extended.push_back(std::move(cells));
    }
  }

  // ORDER BY (stable) on extended rows.
  if (!q.orderBy.empty()) {
    std::vector<std::pair<std::size_t, bool>> keys;
    for (const auto& k : q.orderBy) {
      auto it = std::find(extendedNames.begin(), extendedNames.end(), k.var);
      keys.emplace_back(static_cast<std::size_t>(it - extendedNames.begin()), k.descending);
    }
    std::stable_sort(extended.begin(), extended.end(), [&](const auto& a, const auto& b) {
      for (auto [idx, desc] : keys) {
        int c = detail::orderCells(a[idx], b[idx]);
        if (c != 0) return desc ? c > 0 : c < 0;
      }
      return false;
    });
  }

  std::vector<std::size_t> projectIdx;
  for (const auto& name : table.columns) {
    auto it = std::find(extendedNames.begin(), extendedNames.end(), name);
    projectIdx.push_back(static_cast<std::size_t>(it - extendedNames.begin()));
  }
  std::set<std::vector<Cell>, detail::CellLess> seen;
  for (auto& r : extended) {
    std::vector<Cell> projected;
    projected.reserve(projectIdx.size());
    for (auto i : projectIdx) projected.push_back(r[i]);
    if (q.distinct && !seen.insert(projected).second) continue;
    table.rows.push_back(std::move(projected));
  }

  std::size_t offset = std::min(q.offset.value_or(0), table.rows.size());
  table.rows.erase(table.rows.begin(), table.rows.begin() + static_cast<std::ptrdiff_t>(offset));
  if (q.limit && *q.limit < table.rows.size()) table.rows.resize(*q.limit);
  return table;
}

}  // namespace morekg::query

#endif  // MOREKG_QUERY_EVALUATE_HPP
