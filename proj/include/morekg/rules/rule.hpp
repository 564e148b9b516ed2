#ifndef MOREKG_RULES_RULE_HPP
#define MOREKG_RULES_RULE_HPP

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "morekg/error.hpp"
#include "morekg/rdf/pattern.hpp"
#include "morekg/vocab.hpp"

namespace morekg::rules {

class RuleError : public Error {
 public:
  using Error::Error;
};

// Horn rule over triple patterns: when every body pattern matches under one
// binding, the head patterns are added.
struct Rule {
  std::string name;
  std::vector<rdf::TriplePattern> body;
  std::vector<rdf::TriplePattern> head;

  friend bool operator==(const Rule&, const Rule&) = default;
};

// Throws RuleError for an empty body or a head variable absent from the body.
inline void validateRule(const Rule& r) {
  if (r.name.empty()) throw RuleError("rule without a name");
  if (r.body.empty()) throw RuleError("rule '" + r.name + "' has an empty body");
  if (r.head.empty()) throw RuleError("rule '" + r.name + "' has an empty head");
  std::set<std::string> bound;
  for (const auto& p : r.body) {
    for (auto& v : p.variables()) bound.insert(v);
  }
  for (const auto& p : r.head) {
    for (auto& v : p.variables()) {
      if (!bound.count(v)) {
        throw RuleError("rule '" + r.name + "': head variable ?" + v + " does not occur in the body");
      }
    }
    if (auto* t = std::get_if<rdf::Term>(&p.predicate); t && !t->isIri()) {
      throw RuleError("rule '" + r.name + "': head predicate must be an IRI");
    }
    if (auto* t = std::get_if<rdf::Term>(&p.subject); t && t->isLiteral()) {
      throw RuleError("rule '" + r.name + "': head subject must not be a literal");
    }
  }
}

class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<Rule> rules) {
    for (auto& r : rules) add(std::move(r));
  }

  void add(Rule r) {
    validateRule(r);
    if (contains(r.name)) throw RuleError("duplicate rule name '" + r.name + "'");
    rules_.push_back(std::move(r));
  }

  bool contains(const std::string& name) const {
    return std::any_of(rules_.begin(), rules_.end(), [&](const Rule& r) { return r.name == name; });
  }

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }

  friend bool operator==(const RuleSet&, const RuleSet&) = default;

 private:
  std::vector<Rule> rules_;
};

namespace detail {
inline rdf::PatternTerm var(const char* n) { return rdf::Variable{n}; }
}  // namespace detail

// (?proc executes ?item), (?proc has_specified_output ?datum),
// (?datum has_value_specification ?vs), (?vs specifies_value_of ?disp)
//   => (?item measures_disposition ?disp)
inline Rule builtinShortcutRule() {
  using detail::var;
  return Rule{"measures-disposition",
              {{var("proc"), vocab::executes(), var("item")},
               {var("proc"), vocab::hasSpecifiedOutput(), var("datum")},
               {var("datum"), vocab::hasValueSpecification(), var("vs")},
               {var("vs"), vocab::specifiesValueOf(), var("disp")}},
              {{var("item"), vocab::measuresDisposition(), var("disp")}}};
}

// Same head as the shortcut rule, reached through the plan that concretizes
// the item and is realized by the process.
inline Rule builtinPlanChainRule() {
  using detail::var;
  return Rule{"measures-disposition-via-plan",
              {{var("plan"), vocab::concretizes(), var("item")},
               {var("proc"), vocab::realizes(), var("plan")},
               {var("proc"), vocab::hasSpecifiedOutput(), var("datum")},
               {var("datum"), vocab::hasValueSpecification(), var("vs")},
               {var("vs"), vocab::specifiesValueOf(), var("disp")}},
              {{var("item"), vocab::measuresDisposition(), var("disp")}}};
}

inline Rule builtinSubclassTransitivity() {
  using detail::var;
  const rdf::Term sub = rdf::vocab::rdfsSubClassOf();
  return Rule{"subclass-transitivity",
              {{var("a"), sub, var("b")}, {var("b"), sub, var("c")}},
              {{var("a"), sub, var("c")}}};
}

inline Rule builtinTypePropagation() {
  using detail::var;
  return Rule{"type-propagation",
              {{var("x"), rdf::vocab::rdfType(), var("c")},
               {var("c"), rdf::vocab::rdfsSubClassOf(), var("d")}},
              {{var("x"), rdf::vocab::rdfType(), var("d")}}};
}

inline RuleSet builtinRules() {
  return RuleSet({builtinSubclassTransitivity(), builtinTypePropagation(),
                  builtinShortcutRule(), builtinPlanChainRule()});
}

}  // namespace morekg::rules

#endif  // MOREKG_RULES_RULE_HPP
