#ifndef MOREKG_RDF_GRAPH_HPP
#define MOREKG_RDF_GRAPH_HPP

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "morekg/rdf/term.hpp"

namespace morekg::rdf {

using TermId = std::uint32_t;

// Interns terms to dense ids. Ids are assigned in first-seen order and are
// local to one dictionary.
class Dictionary {
 public:
  Dictionary() = default;
  Dictionary(const Dictionary& other) { *this = other; }
  Dictionary& operator=(const Dictionary& other) {
    if (this == &other) return *this;
    terms_.clear();
    index_.clear();
    for (const Term& t : other.terms_) intern(t);
    return *this;
  }
  Dictionary(Dictionary&&) noexcept = default;
  Dictionary& operator=(Dictionary&&) noexcept = default;

  TermId intern(const Term& term) {
    if (auto it = index_.find(&term); it != index_.end()) return it->second;
    terms_.push_back(term);
    auto id = static_cast<TermId>(terms_.size() - 1);
    index_.emplace(&terms_.back(), id);
    return id;
  }

  std::optional<TermId> lookup(const Term& term) const {
    if (auto it = index_.find(&term); it != index_.end()) return it->second;
    return std::nullopt;
  }

  const Term& term(TermId id) const { return terms_.at(id); }
  std::size_t size() const { return terms_.size(); }

 private:
  struct PtrHash {
    std::size_t operator()(const Term* t) const noexcept {
      return std::hash<Term>{}(*t);
    }
  };
  struct PtrEq {
    bool operator()(const Term* a, const Term* b) const noexcept {
      return *a == *b;
    }
  };

  std::deque<Term> terms_;
  std::unordered_map<const Term*, TermId, PtrHash, PtrEq> index_;
};

// The three positional orderings kept by Graph.
enum class IndexOrder { kSpo, kPos, kOsp };

using IdTriple = std::array<TermId, 3>;

// Indexed in-memory triple set. Every triple is stored under SPO, POS and OSP
// orderings so that any pattern with bound positions is a prefix scan on one
// of them.
class Graph {
 public:
  using Pattern = std::array<std::optional<TermId>, 3>;

  // Returns true iff the triple was not present. Throws InvalidTripleError for
  // a literal subject or a non-IRI predicate.
  bool insert(const Triple& t) {
    checkTriple(t);
    return insertIds(dict_.intern(t.subject), dict_.intern(t.predicate),
                     dict_.intern(t.object));
  }

  // Ids must come from this graph's dictionary.
  bool insertIds(TermId s, TermId p, TermId o) {
    if (!spo_.insert({s, p, o}).second) return false;
    pos_.insert({p, o, s});
    osp_.insert({o, s, p});
    return true;
  }

  void insertAll(const Graph& other) {
    other.forEach({}, {}, {}, [&](TermId s, TermId p, TermId o) {
      insertIds(dict_.intern(other.term(s)), dict_.intern(other.term(p)),
                dict_.intern(other.term(o)));
    });
  }

  bool contains(const Triple& t) const {
    auto s = dict_.lookup(t.subject);
    auto p = dict_.lookup(t.predicate);
    auto o = dict_.lookup(t.object);
    return s && p && o && containsIds(*s, *p, *o);
  }
  bool containsIds(TermId s, TermId p, TermId o) const {
    return spo_.count({s, p, o}) != 0;
  }

  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  TermId intern(const Term& t) { return dict_.intern(t); }
  std::optional<TermId> lookup(const Term& t) const { return dict_.lookup(t); }
  const Term& term(TermId id) const { return dict_.term(id); }
  const Dictionary& dictionary() const { return dict_; }

  // Calls fn(s, p, o) for each triple agreeing with the bound positions,
  // choosing the index whose key order makes the bound positions a prefix.
  template <typename Fn>
  void forEach(std::optional<TermId> s, std::optional<TermId> p,
               std::optional<TermId> o, Fn&& fn) const {
    if (s && p && o) {
      if (containsIds(*s, *p, *o)) fn(*s, *p, *o);
      return;
    }
    if (s) {
      if (o) {
        scan(IndexOrder::kOsp, {*o, *s}, 2, fn);
      } else if (p) {
        scan(IndexOrder::kSpo, {*s, *p}, 2, fn);
      } else {
        scan(IndexOrder::kSpo, {*s}, 1, fn);
      }
    } else if (p) {
      if (o) {
        scan(IndexOrder::kPos, {*p, *o}, 2, fn);
      } else {
        scan(IndexOrder::kPos, {*p}, 1, fn);
      }
    } else if (o) {
      scan(IndexOrder::kOsp, {*o}, 1, fn);
    } else {
      scan(IndexOrder::kSpo, {}, 0, fn);
    }
  }

  // Same contract as forEach, but forced through one index: a prefix scan
  // where the bound positions allow it, otherwise a filtered full scan.
  template <typename Fn>
  void forEachVia(IndexOrder order, std::optional<TermId> s,
                  std::optional<TermId> p, std::optional<TermId> o,
                  Fn&& fn) const {
    const std::set<IdTriple>& idx = index(order);
    for (const IdTriple& key : idx) {
      IdTriple t = toSpo(order, key);
      if ((s && t[0] != *s) || (p && t[1] != *p) || (o && t[2] != *o)) continue;
      fn(t[0], t[1], t[2]);
    }
  }

  std::size_t count(std::optional<TermId> s, std::optional<TermId> p,
                    std::optional<TermId> o) const {
    std::size_t n = 0;
    forEach(s, p, o, [&](TermId, TermId, TermId) { ++n; });
    return n;
  }

  // Term-level match. A bound term absent from the dictionary matches nothing.
  std::vector<Triple> match(const std::optional<Term>& s,
                            const std::optional<Term>& p,
                            const std::optional<Term>& o) const {
    std::vector<Triple> out;
    std::optional<TermId> sid, pid, oid;
    if (!resolve(s, sid) || !resolve(p, pid) || !resolve(o, oid)) return out;
    forEach(sid, pid, oid, [&](TermId a, TermId b, TermId c) {
      out.push_back({term(a), term(b), term(c)});
    });
    return out;
  }

  std::vector<Triple> triples() const { return match({}, {}, {}); }

  // Set equality over terms; dictionaries may differ.
  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) return false;
    for (const IdTriple& t : a.spo_) {
      auto s = b.lookup(a.term(t[0]));
      auto p = b.lookup(a.term(t[1]));
      auto o = b.lookup(a.term(t[2]));
      if (!s || !p || !o || !b.containsIds(*s, *p, *o)) return false;
    }
    return true;
  }

 private:
  static bool resolve(const std::optional<Term>& t,
                      std::optional<TermId>& id, const Dictionary& d) {
    if (!t) return true;
    id = d.lookup(*t);
    return id.has_value();
  }
  bool resolve(const std::optional<Term>& t, std::optional<TermId>& id) const {
    return resolve(t, id, dict_);
  }

  const std::set<IdTriple>& index(IndexOrder order) const {
    switch (order) {
      case IndexOrder::kSpo:
        return spo_;
      case IndexOrder::kPos:
        return pos_;
      case IndexOrder::kOsp:
        break;
    }
    return osp_;
  }

  static IdTriple toSpo(IndexOrder order, const IdTriple& k) {
    switch (order) {
      case IndexOrder::kSpo:
        return k;
      case IndexOrder::kPos:
        return {k[2], k[0], k[1]};
      case IndexOrder::kOsp:
        break;
    }
    return {k[1], k[2], k[0]};
  }

  template <typename Fn>
  void scan(IndexOrder order, std::array<TermId, 2> prefix, int bound,
            Fn& fn) const {
    const std::set<IdTriple>& idx = index(order);
    IdTriple lo{0, 0, 0};
    for (int i = 0; i < bound; ++i) lo[i] = prefix[i];
    for (auto it = idx.lower_bound(lo); it != idx.end(); ++it) {
      bool inside = true;
      for (int i = 0; i < bound; ++i) {
        if ((*it)[i] != prefix[i]) {
          inside = false;
          break;
        }
      }
      if (!inside) break;
      IdTriple t = toSpo(order, *it);
      fn(t[0], t[1], t[2]);
    }
  }

  Dictionary dict_;
  std::set<IdTriple> spo_;
  std::set<IdTriple> pos_;
  std::set<IdTriple> osp_;
};

}  // namespace morekg::rdf

#endif  // MOREKG_RDF_GRAPH_HPP
