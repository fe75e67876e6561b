#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "osl/belief.hpp"

namespace osl {

/// Literal contradiction: same atom, opposite polarity. Symmetric and false
/// on identical literals.
inline bool contradict(const Literal& l1, const Literal& l2) {
  return l1.negated != l2.negated && l1.atom == l2.atom;
}

// A connected component of the contradiction graph; at least two records,
// ascending ids.
struct ContradictionComponent {
  std::vector<RecordId> record_ids;
};

namespace detail {

// Disjoint sets with union by rank and path compression.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

// Union all contradiction edges for one atom: live records of opposite
// polarity whose nodes are comparable.
inline void unite_atom_edges(const BeliefBase& base, const std::string& atom,
                             UnionFind& uf, std::vector<char>& touched) {
  const auto pos_ids = base.record_ids(Literal{atom, false});
  const auto neg_ids = base.record_ids(Literal{atom, true});
  if (pos_ids.empty() || neg_ids.empty()) return;
  for (RecordId p : pos_ids) {
    const BeliefRecord& rp = base.record(p);
    if (!rp.live) continue;
    for (RecordId q : neg_ids) {
      const BeliefRecord& rq = base.record(q);
      if (!rq.live) continue;
      if (base.carrier().comparable(rp.node, rq.node)) {
        uf.unite(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
        touched[static_cast<std::size_t>(p)] = 1;
        touched[static_cast<std::size_t>(q)] = 1;
      }
    }
  }
}

inline std::vector<ContradictionComponent> collect_components(
    const BeliefBase& base, UnionFind& uf, const std::vector<char>& touched) {
  // Bucket by root in ascending id order; only records with at least one
  // edge can form a (non-singleton) component.
  std::vector<std::pair<std::size_t, RecordId>> by_root;
  for (std::size_t i = 0; i < base.record_count(); ++i)
    if (touched[i]) by_root.emplace_back(uf.find(i), static_cast<RecordId>(i));
  std::stable_sort(by_root.begin(), by_root.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ContradictionComponent> components;
  std::size_t i = 0;
  while (i < by_root.size()) {
    std::size_t j = i;
    ContradictionComponent c;
    while (j < by_root.size() && by_root[j].first == by_root[i].first)
      c.record_ids.push_back(by_root[j++].second);
    std::sort(c.record_ids.begin(), c.record_ids.end());
    components.push_back(std::move(c));
    i = j;
  }
  std::sort(components.begin(), components.end(),
            [](const ContradictionComponent& a, const ContradictionComponent& b) {
              return a.record_ids.front() < b.record_ids.front();
            });
  return components;
}

}  // namespace detail

/// Contradiction components over the whole base. Candidate pairs are limited
/// to records sharing an atom with opposite polarity; the comparability
/// filter then decides edge membership. Deterministic: members ascend, and
/// components are ordered by smallest member id.
inline std::vector<ContradictionComponent> mcc(const BeliefBase& base) {
  detail::UnionFind uf(base.record_count());
  std::vector<char> touched(base.record_count(), 0);
  for (const std::string& atom : base.live_atoms())
    detail::unite_atom_edges(base, atom, uf, touched);
  return detail::collect_components(base, uf, touched);
}

/// Contradiction components restricted to one atom. Inserting a literal can
/// only create edges on its own atom, so the integrated pipeline scopes
/// detection this way.
inline std::vector<ContradictionComponent> mcc_atom(const BeliefBase& base,
                                                    const std::string& atom) {
  detail::UnionFind uf(base.record_count());
  std::vector<char> touched(base.record_count(), 0);
  detail::unite_atom_edges(base, atom, uf, touched);
  return detail::collect_components(base, uf, touched);
}

/// Live contradiction edges inside a component, ascending (min-id, max-id).
inline std::vector<std::pair<RecordId, RecordId>> contradiction_edges(
    const BeliefBase& base, const ContradictionComponent& component) {
  std::vector<std::pair<RecordId, RecordId>> edges;
  const auto& ids = component.record_ids;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const BeliefRecord& ri = base.record(ids[i]);
    if (!ri.live) continue;
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const BeliefRecord& rj = base.record(ids[j]);
      if (!rj.live) continue;
      if (contradict(ri.literal, rj.literal) &&
          base.carrier().comparable(ri.node, rj.node))
        edges.emplace_back(ids[i], ids[j]);
    }
  }
  return edges;
}

struct ResolutionReport {
  std::vector<RecordId> removed;
  std::vector<std::vector<RecordId>> survivors;  // per component, ascending
};

/// Credibility-based resolution. Edges are processed in ascending
/// (min-id, max-id) order; on each edge whose endpoints are both still live,
/// the strictly lower-weight record is removed, and on equal weights the
/// later insertion (larger id) is removed. Repeats until the component has
/// no live contradiction edge.
inline ResolutionReport resolve(BeliefBase& base,
                                const std::vector<ContradictionComponent>& components) {
  for (const ContradictionComponent& c : components)
    for (RecordId id : c.record_ids)
      if (!base.has_record(id) || !base.record(id).live)
        throw StaleComponents("component references record " + std::to_string(id) +
                              " that is absent or already removed");

  ResolutionReport report;
  for (const ContradictionComponent& c : components) {
    for (;;) {
      const auto edges = contradiction_edges(base, c);
      if (edges.empty()) break;
      for (const auto& [i, j] : edges) {
        const BeliefRecord& ri = base.record(i);
        const BeliefRecord& rj = base.record(j);
        if (!ri.live || !rj.live) continue;
        RecordId victim;
        if (ri.weight < rj.weight)
          victim = i;
        else if (rj.weight < ri.weight)
          victim = j;
        else
          victim = std::max(i, j);
        base.mark_removed(victim);
        report.removed.push_back(victim);
      }
    }
    std::vector<RecordId> alive;
    for (RecordId id : c.record_ids)
      if (base.record(id).live) alive.push_back(id);
    report.survivors.push_back(std::move(alive));
  }
  return report;
}

// ---------------------------------------------------------------------------
// General-formula contradiction, desk scale.
//
// The engine's formula language is literals, but the contradiction predicate
// is an extension point. `Prop` and `contradict_exhaustive` cover small
// propositional formulas by exhaustive truth-table evaluation; they are not
// used by the benchmark paths.
// ---------------------------------------------------------------------------

class Prop {
 public:
  static Prop var(std::string name) {
    return Prop(Kind::Var, std::move(name), nullptr, nullptr);
  }
  static Prop lit(const Literal& l) {
    Prop v = var(l.atom);
    return l.negated ? negate(v) : v;
  }
  static Prop negate(Prop a) {
    return Prop(Kind::Not, {}, std::make_shared<Prop>(std::move(a)), nullptr);
  }
  static Prop conj(Prop a, Prop b) {
    return Prop(Kind::And, {}, std::make_shared<Prop>(std::move(a)),
                std::make_shared<Prop>(std::move(b)));
  }
  static Prop disj(Prop a, Prop b) {
    return Prop(Kind::Or, {}, std::make_shared<Prop>(std::move(a)),
                std::make_shared<Prop>(std::move(b)));
  }

  void collect_atoms(std::set<std::string>& out) const {
    switch (kind_) {
      case Kind::Var: out.insert(name_); break;
      case Kind::Not: a_->collect_atoms(out); break;
      case Kind::And:
      case Kind::Or:
        a_->collect_atoms(out);
        b_->collect_atoms(out);
        break;
    }
  }

  template <typename Lookup>  // Lookup: (const std::string&) -> bool
  bool eval(const Lookup& value_of) const {
    switch (kind_) {
      case Kind::Var: return value_of(name_);
      case Kind::Not: return !a_->eval(value_of);
      case Kind::And: return a_->eval(value_of) && b_->eval(value_of);
      case Kind::Or: return a_->eval(value_of) || b_->eval(value_of);
    }
    return false;  // unreachable
  }

 private:
  enum class Kind { Var, Not, And, Or };

  Prop(Kind kind, std::string name, std::shared_ptr<const Prop> a,
       std::shared_ptr<const Prop> b)
      : kind_(kind), name_(std::move(name)), a_(std::move(a)), b_(std::move(b)) {}

  Kind kind_;
  std::string name_;
  std::shared_ptr<const Prop> a_;
  std::shared_ptr<const Prop> b_;
};

/// True iff f1 and f2 cannot hold together under any assignment. Exhaustive
/// over all assignments; refuses more than 20 distinct atoms.
inline bool contradict_exhaustive(const Prop& f1, const Prop& f2) {
  std::set<std::string> atom_set;
  f1.collect_atoms(atom_set);
  f2.collect_atoms(atom_set);
  if (atom_set.size() > 20)
    throw InvalidSpec("exhaustive contradiction check limited to 20 atoms, got " +
                      std::to_string(atom_set.size()));
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  const std::uint32_t combos = 1u << atoms.size();
  for (std::uint32_t mask = 0; mask < combos; ++mask) {
    auto value_of = [&](const std::string& name) {
      auto it = std::lower_bound(atoms.begin(), atoms.end(), name);
      return ((mask >> (it - atoms.begin())) & 1u) != 0;
    };
    if (f1.eval(value_of) && f2.eval(value_of)) return false;
  }
  return true;
}

}  // namespace osl
