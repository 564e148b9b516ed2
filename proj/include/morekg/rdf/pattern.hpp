#ifndef MOREKG_RDF_PATTERN_HPP
#define MOREKG_RDF_PATTERN_HPP

#include <string>
#include <variant>
#include <vector>

#include "morekg/rdf/term.hpp"

namespace morekg::rdf {

struct Variable {
  std::string name;  // without the leading '?'
  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Variable, Term>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;

  const PatternTerm& at(int i) const {
    return i == 0 ? subject : (i == 1 ? predicate : object);
  }

  std::vector<std::string> variables() const {
    std::vector<std::string> out;
    for (int i = 0; i < 3; ++i) {
      if (auto* v = std::get_if<Variable>(&at(i))) out.push_back(v->name);
    }
    return out;
  }
};

}  // namespace morekg::rdf

#endif  // MOREKG_RDF_PATTERN_HPP
