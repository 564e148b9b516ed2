#ifndef MOREKG_QUERY_EXPLAIN_HPP
#define MOREKG_QUERY_EXPLAIN_HPP

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "morekg/query/ast.hpp"
#include "morekg/rdf/graph.hpp"
#include "morekg/serdes/turtle.hpp"

namespace morekg::query {

struct PlanStep {
  std::size_t patternIndex = 0;
  rdf::TriplePattern pattern;
  // Matches of the pattern with its variables left open.
  std::size_t estimate = 0;
  bool connected = false;
};

struct PlanDescription {
  std::vector<PlanStep> steps;

  std::string toString(const rdf::PrefixMap& pm = rdf::PrefixMap::withDefaults()) const {
    std::ostringstream out;
    auto show = [&](const rdf::PatternTerm& t) {
      if (auto* v = std::get_if<rdf::Variable>(&t)) return "?" + v->name;
      return serdes::toTurtle(std::get<rdf::Term>(t), pm);
    };
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& s = steps[i];
      out << (i + 1) << ". " << show(s.pattern.subject) << ' ' << show(s.pattern.predicate) << ' '
          << show(s.pattern.object) << "  [est. " << s.estimate << (s.connected || i == 0 ? "" : ", cross product")
          << "]\n";
    }
    return out.str();
  }
};

namespace detail {

inline std::size_t estimatePattern(const rdf::TriplePattern& p, const rdf::Graph* g) {
  std::optional<rdf::TermId> ids[3];
  int constants = 0;
  for (int i = 0; i < 3; ++i) {
    if (auto* t = std::get_if<rdf::Term>(&p.at(i))) {
      ++constants;
      if (g) {
        ids[i] = g->lookup(*t);
        if (!ids[i]) return 0;
      }
    }
  }
  if (g) return g->count(ids[0], ids[1], ids[2]);
  // Without a graph: fewer open positions means fewer matches.
  static const std::size_t kGuess[] = {1000000, 10000, 100, 1};
  return kGuess[constants];
}

}  // namespace detail

// Greedy join order: start at the smallest estimate, then repeatedly take the
// smallest pattern sharing a variable with those already placed (falling back
// to the smallest remaining one). Ties keep the written order.
inline PlanDescription planJoin(const QueryAst& q, const rdf::Graph* g) {
  PlanDescription plan;
  std::vector<std::size_t> est;
  for (const auto& p : q.where) est.push_back(detail::estimatePattern(p, g));
  std::vector<bool> used(q.where.size(), false);
  std::set<std::string> bound;
  for (std::size_t n = 0; n < q.where.size(); ++n) {
    std::size_t best = q.where.size();
    bool bestConnected = false;
    for (std::size_t i = 0; i < q.where.size(); ++i) {
      if (used[i]) continue;
      bool connected = false;
      for (const auto& v : q.where[i].variables()) connected = connected || bound.count(v) > 0;
      if (best == q.where.size() || (connected && !bestConnected) ||
          (connected == bestConnected && est[i] < est[best])) {
        best = i;
        bestConnected = connected;
      }
    }
    used[best] = true;
    for (const auto& v : q.where[best].variables()) bound.insert(v);
    plan.steps.push_back({best, q.where[best], est[best], bestConnected});
  }
  return plan;
}

inline PlanDescription explain(const QueryAst& q) { return planJoin(q, nullptr); }
inline PlanDescription explain(const QueryAst& q, const rdf::Graph& g) { return planJoin(q, &g); }

}  // namespace morekg::query

#endif  // MOREKG_QUERY_EXPLAIN_HPP
