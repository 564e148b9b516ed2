#ifndef MOREKG_RULES_MATERIALIZE_HPP
#define MOREKG_RULES_MATERIALIZE_HPP

#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "morekg/rdf/graph.hpp"
#include "morekg/rules/rule.hpp"

namespace morekg::rules {

struct MaterializeStats {
  std::size_t iterations = 0;
  std::size_t inferred = 0;
};

namespace detail {

// Pattern position: variable slot (>= 0) or constant id.
struct Slot {
  bool isVar;
  std::uint32_t value;
};

struct CompiledAtom {
  std::array<Slot, 3> pos;
};

struct CompiledRule {
  std::vector<CompiledAtom> body;
  std::vector<CompiledAtom> head;
  std::size_t vars = 0;
};

inline constexpr rdf::TermId kUnbound = static_cast<rdf::TermId>(-1);

inline CompiledRule compile(const Rule& r, rdf::Graph& g) {
  CompiledRule c;
  std::unordered_map<std::string, std::uint32_t> slots;
  auto slot = [&](const rdf::PatternTerm& t) -> Slot {
    if (auto* v = std::get_if<rdf::Variable>(&t)) {
      auto [it, fresh] = slots.try_emplace(v->name, static_cast<std::uint32_t>(slots.size()));
      return {true, it->second};
    }
    return {false, g.intern(std::get<rdf::Term>(t))};
  };
  auto atoms = [&](const std::vector<rdf::TriplePattern>& ps) {
    std::vector<CompiledAtom> out;
    for (const auto& p : ps) out.push_back({{slot(p.subject), slot(p.predicate), slot(p.object)}});
    return out;
  };
  c.body = atoms(r.body);
  c.head = atoms(r.head);
  c.vars = slots.size();
  return c;
}

// Binds `atom` against a concrete triple; false on conflict. Newly bound
// slots are recorded in `trail` so the caller can undo them.
inline bool unify(const CompiledAtom& atom, const rdf::IdTriple& t,
                  std::vector<rdf::TermId>& binding, std::vector<std::uint32_t>& trail) {
  std::size_t mark = trail.size();
  for (int i = 0; i < 3; ++i) {
    const Slot& s = atom.pos[i];
    if (!s.isVar) {
      if (s.value != t[i]) {
        for (std::size_t k = mark; k < trail.size(); ++k) binding[trail[k]] = kUnbound;
        trail.resize(mark);
        return false;
      }
      continue;
    }
    rdf::TermId& b = binding[s.value];
    if (b == kUnbound) {
      b = t[i];
      trail.push_back(s.value);
    } else if (b != t[i]) {
      for (std::size_t k = mark; k < trail.size(); ++k) binding[trail[k]] = kUnbound;
      trail.resize(mark);
      return false;
    }
  }
  return true;
}

inline std::optional<rdf::TermId> resolved(const Slot& s, const std::vector<rdf::TermId>& binding) {
  if (!s.isVar) return s.value;
  if (binding[s.value] == kUnbound) return std::nullopt;
  return binding[s.value];
}

// Joins the atoms not in `done` against `g`, most-bound atom first, calling
// emit() for every complete binding.
template <typename Emit>
void join(const rdf::Graph& g, const CompiledRule& rule, std::vector<bool>& done,
          std::size_t remaining, std::vector<rdf::TermId>& binding,
          std::vector<std::uint32_t>& trail, Emit& emit) {
  if (remaining == 0) {
    emit(binding);
    return;
  }
  std::size_t best = rule.body.size();
  int bestBound = -1;
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    if (done[i]) continue;
    int bound = 0;
    for (const Slot& s : rule.body[i].pos) bound += resolved(s, binding).has_value();
    if (bound > bestBound) {
      bestBound = bound;
      best = i;
    }
  }
  const CompiledAtom& atom = rule.body[best];
  done[best] = true;
  std::vector<rdf::IdTriple> matches;
  g.forEach(resolved(atom.pos[0], binding), resolved(atom.pos[1], binding),
            resolved(atom.pos[2], binding),
            [&](rdf::TermId s, rdf::TermId p, rdf::TermId o) { matches.push_back({s, p, o}); });
  for (const auto& t : matches) {
    std::size_t mark = trail.size();
    if (!unify(atom, t, binding, trail)) continue;
    join(g, rule, done, remaining - 1, binding, trail, emit);
    for (std::size_t k = mark; k < trail.size(); ++k) binding[trail[k]] = kUnbound;
    trail.resize(mark);
  }
  done[best] = false;
}

}  // namespace detail

// Least fixpoint of `g` under `rs` by semi-naive iteration: after the first
// round, a rule body is only re-evaluated with at least one atom bound to a
// triple derived in the previous round. Heads never invent terms, so the
// iteration terminates. Head instantiations that would not form a valid
// triple (literal subject, non-IRI predicate) are skipped.
inline rdf::Graph materialize(const rdf::Graph& g, const RuleSet& rs,
                              MaterializeStats* stats = nullptr) {
  for (const Rule& r : rs.rules()) validateRule(r);
  rdf::Graph out = g;
  std::vector<detail::CompiledRule> rules;
  for (const Rule& r : rs.rules()) rules.push_back(detail::compile(r, out));

  MaterializeStats local;
  auto validTriple = [&](const rdf::IdTriple& t) {
    return !out.term(t[0]).isLiteral() && out.term(t[1]).isIri();
  };

  std::set<rdf::IdTriple> pending;
  auto derive = [&](const detail::CompiledRule& rule) {
    return [&](const std::vector<rdf::TermId>& binding) {
      for (const auto& h : rule.head) {
        rdf::IdTriple t;
        for (int i = 0; i < 3; ++i) t[i] = h.pos[i].isVar ? binding[h.pos[i].value] : h.pos[i].value;
        if (!out.containsIds(t[0], t[1], t[2]) && validTriple(t)) pending.insert(t);
      }
    };
  };

  // Round 1: full evaluation.
  for (const auto& rule : rules) {
    std::vector<rdf::TermId> binding(rule.vars, detail::kUnbound);
    std::vector<std::uint32_t> trail;
    std::vector<bool> done(rule.body.size(), false);
    auto emit = derive(rule);
    detail::join(out, rule, done, rule.body.size(), binding, trail, emit);
  }

  while (!pending.empty()) {
    ++local.iterations;
    std::vector<rdf::IdTriple> delta(pending.begin(), pending.end());
    pending.clear();
    for (const auto& t : delta) out.insertIds(t[0], t[1], t[2]);
    local.inferred += delta.size();

    std::unordered_map<rdf::TermId, std::vector<const rdf::IdTriple*>> byPredicate;
    for (const auto& t : delta) byPredicate[t[1]].push_back(&t);

    for (const auto& rule : rules) {
      std::vector<rdf::TermId> binding(rule.vars, detail::kUnbound);
      std::vector<std::uint32_t> trail;
      std::vector<bool> done(rule.body.size(), false);
      auto emit = derive(rule);
      for (std::size_t i = 0; i < rule.body.size(); ++i) {
        const auto& atom = rule.body[i];
        auto visit = [&](const rdf::IdTriple& t) {
          if (!detail::unify(atom, t, binding, trail)) return;
          done[i] = true;
          detail::join(out, rule, done, rule.body.size() - 1, binding, trail, emit);
          done[i] = false;
          for (auto s : trail) binding[s] = detail::kUnbound;
          trail.clear();
        };
        if (!atom.pos[1].isVar) {
          auto it = byPredicate.find(atom.pos[1].value);
          if (it == byPredicate.end()) continue;
          for (const auto* t : it->second) visit(*t);
        } else {
          for (const auto& t : delta) visit(t);
        }
      }
    }
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace morekg::rules

#endif  // MOREKG_RULES_MATERIALIZE_HPP
