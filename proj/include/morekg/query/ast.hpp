#ifndef MOREKG_QUERY_AST_HPP
#define MOREKG_QUERY_AST_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "morekg/error.hpp"
#include "morekg/rdf/pattern.hpp"
#include "morekg/rdf/prefix_map.hpp"

namespace morekg::query {

// Semantic errors found after a successful parse.
class QueryError : public Error {
 public:
  enum class Kind { kUngroupedVariable, kUnboundVariable, kDuplicateName };
  QueryError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Expr {
  enum class Op { kVar, kConst, kNot, kAnd, kOr, kEq, kNe, kLt, kLe, kGt, kGe };
  Op op = Op::kConst;
  std::string var;
  rdf::Term constant;
  std::vector<Expr> args;

  static Expr variable(std::string name) {
    Expr e;
    e.op = Op::kVar;
    e.var = std::move(name);
    return e;
  }
  static Expr literal(rdf::Term t) {
    Expr e;
    e.op = Op::kConst;
    e.constant = std::move(t);
    return e;
  }
  static Expr node(Op op, std::vector<Expr> args) {
    Expr e;
    e.op = op;
    e.args = std::move(args);
    return e;
  }

  void collectVariables(std::vector<std::string>& out) const {
    if (op == Op::kVar) out.push_back(var);
    for (const auto& a : args) a.collectVariables(out);
  }
};

struct Aggregate {
  enum class Fn { kCount, kSum, kAvg, kMin, kMax };
  Fn fn = Fn::kCount;
  bool distinct = false;
  std::optional<std::string> var;  // nullopt means COUNT(*)
};

inline const char* aggregateName(Aggregate::Fn fn) {
  switch (fn) {
    case Aggregate::Fn::kCount: return "COUNT";
    case Aggregate::Fn::kSum: return "SUM";
    case Aggregate::Fn::kAvg: return "AVG";
    case Aggregate::Fn::kMin: return "MIN";
    case Aggregate::Fn::kMax: break;
  }
  return "MAX";
}

// A projected column: a plain variable or `(AGG(...) AS ?name)`.
struct Projection {
  std::string name;
  std::optional<Aggregate> aggregate;
};

struct OrderKey {
  std::string var;
  bool descending = false;
};

struct QueryAst {
  rdf::PrefixMap prefixes;
  bool distinct = false;
  bool selectAll = false;
  std::vector<Projection> projection;
  std::vector<rdf::TriplePattern> where;
  std::vector<Expr> filters;
  std::vector<std::string> groupBy;
  std::vector<OrderKey> orderBy;
  std::optional<std::size_t> limit;
  std::optional<std::size_t> offset;

  bool hasAggregates() const {
    for (const auto& p : projection) {
      if (p.aggregate) return true;
    }
    return false;
  }
  bool grouped() const { return hasAggregates() || !groupBy.empty(); }

  // Variables of the WHERE patterns in first-occurrence order.
  std::vector<std::string> whereVariables() const {
    std::vector<std::string> out;
    for (const auto& p : where) {
      for (auto& v : p.variables()) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
    }
    return out;
  }

  std::vector<std::string> columns() const {
    if (selectAll) return whereVariables();
    std::vector<std::string> out;
    for (const auto& p : projection) out.push_back(p.name);
    return out;
  }
};

}  // namespace morekg::query

#endif  // MOREKG_QUERY_AST_HPP
