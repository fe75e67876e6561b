#pragma once

// Brute-force reference implementations used by tests and acceptance checks.
// Everything here is a pure function and deliberately naive; nothing in the
// engine, the CLI, or the benchmark harness may include this header.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "osl/belief.hpp"
#include "osl/manager.hpp"
#include "osl/poset.hpp"
#include "osl/product.hpp"

namespace osl::oracle {

/// Credibility by definition: linear scan over all live records, max weight
/// among those matching the literal at a node below or equal to the query.
inline double cred_brute(const std::vector<BeliefRecord>& records,
                         const OslCarrier& carrier, const Literal& literal,
                         NodeId node) {
  double best = 0.0;
  for (const BeliefRecord& r : records) {
    if (!r.live || r.literal != literal) continue;
    if (carrier.leq(r.node, node) && r.weight > best) best = r.weight;
  }
  return best;
}

// Outcome of bound enumeration over a component lattice.
struct BruteBounds {
  std::optional<int> lub;
  std::optional<int> glb;
  std::vector<int> minimal_uppers;  // evidence when lub is absent
  std::vector<int> maximal_lowers;  // evidence when glb is absent
};

/// Enumerate all elements, filter common bounds of S, and verify a unique
/// extremal bound exists on each side.
inline BruteBounds bounds_brute(const ComponentLattice& l, std::span<const int> s) {
  const int n = l.size();
  std::vector<int> uppers, lowers;
  for (int x = 0; x < n; ++x) {
    bool upper = true, lower = true;
    for (int m : s) {
      if (!l.leq(m, x)) upper = false;
      if (!l.leq(x, m)) lower = false;
    }
    if (upper) uppers.push_back(x);
    if (lower) lowers.push_back(x);
  }
  BruteBounds out;
  for (int u : uppers) {
    bool minimal = true;
    for (int v : uppers)
      if (v != u && l.leq(v, u)) { minimal = false; break; }
    if (minimal) out.minimal_uppers.push_back(u);
  }
  for (int w : lowers) {
    bool maximal = true;
    for (int v : lowers)
      if (v != w && l.leq(w, v)) { maximal = false; break; }
    if (maximal) out.maximal_lowers.push_back(w);
  }
  if (out.minimal_uppers.size() == 1) out.lub = out.minimal_uppers.front();
  if (out.maximal_lowers.size() == 1) out.glb = out.maximal_lowers.front();
  return out;
}

/// Same enumeration over carrier nodes, via the componentwise order.
inline BruteBounds carrier_bounds_brute(const OslCarrier& c,
                                        std::span<const NodeId> s) {
  const int n = c.size();
  std::vector<int> uppers, lowers;
  for (NodeId x = 0; x < n; ++x) {
    bool upper = true, lower = true;
    for (NodeId m : s) {
      if (!c.leq(m, x)) upper = false;
      if (!c.leq(x, m)) lower = false;
    }
    if (upper) uppers.push_back(x);
    if (lower) lowers.push_back(x);
  }
  BruteBounds out;
  for (int u : uppers) {
    bool minimal = true;
    for (int v : uppers)
      if (v != u && c.leq(v, u)) { minimal = false; break; }
    if (minimal) out.minimal_uppers.push_back(u);
  }
  for (int w : lowers) {
    bool maximal = true;
    for (int v : lowers)
      if (v != w && c.leq(w, v)) { maximal = false; break; }
    if (maximal) out.maximal_lowers.push_back(w);
  }
  if (out.minimal_uppers.size() == 1) out.lub = out.minimal_uppers.front();
  if (out.maximal_lowers.size() == 1) out.glb = out.maximal_lowers.front();
  return out;
}

/// Bound enumeration over a raw (possibly non-lattice) poset spec, from a
/// naive reachability closure. Labels index into spec.elements; on a
/// non-lattice input the evidence lists carry the competing minimal uppers
/// (or maximal lowers) for S.
inline BruteBounds bounds_brute_spec(const PosetSpec& spec, std::span<const int> s) {
  const std::size_t n = spec.elements.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[spec.elements[i]] = i;
  for (const auto& [lo, hi] : spec.covers) reach[index.at(lo)][index.at(hi)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  std::vector<int> uppers, lowers;
  for (std::size_t x = 0; x < n; ++x) {
    bool upper = true, lower = true;
    for (int m : s) {
      if (!reach[static_cast<std::size_t>(m)][x]) upper = false;
      if (!reach[x][static_cast<std::size_t>(m)]) lower = false;
    }
    if (upper) uppers.push_back(static_cast<int>(x));
    if (lower) lowers.push_back(static_cast<int>(x));
  }
  BruteBounds out;
  for (int u : uppers) {
    bool minimal = true;
    for (int v : uppers)
      if (v != u && reach[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
        minimal = false;
    if (minimal) out.minimal_uppers.push_back(u);
  }
  for (int w : lowers) {
    bool maximal = true;
    for (int v : lowers)
      if (v != w && reach[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)])
        maximal = false;
    if (maximal) out.maximal_lowers.push_back(w);
  }
  if (out.minimal_uppers.size() == 1) out.lub = out.minimal_uppers.front();
  if (out.maximal_lowers.size() == 1) out.glb = out.maximal_lowers.front();
  return out;
}

/// Naive poset validation mirroring build_lattice: returns the error code the
/// builder should raise, or an empty string for a valid lattice. Works from
/// an O(n^3) closure with none of the builder's machinery.
inline std::string validate_brute(const PosetSpec& spec) {
  const std::size_t n = spec.elements.size();
  if (n == 0) return "InvalidSpec";
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.elements[i].empty()) return "InvalidSpec";
    if (!index.emplace(spec.elements[i], static_cast<int>(i)).second)
      return "DuplicateLabel";
  }
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const auto& [lo, hi] : spec.covers) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end() || b == index.end()) return "InvalidSpec";
    if (a->second == b->second) return "InvalidSpec";
    reach[static_cast<std::size_t>(a->second)][static_cast<std::size_t>(b->second)] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (reach[i][j] && reach[j][i]) return "CycleDetected";

  std::size_t minimal = 0, maximal = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool is_min = true, is_max = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (reach[j][i]) is_min = false;
      if (reach[i][j]) is_max = false;
    }
    if (is_min) ++minimal;
    if (is_max) ++maximal;
  }
  if (minimal != 1 || maximal != 1) return "NoUniqueBound";

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      std::size_t min_uppers = 0, max_lowers = 0;
      for (std::size_t x = 0; x < n; ++x) {
        if (reach[a][x] && reach[b][x]) {
          bool minimal_upper = true;
          for (std::size_t y = 0; y < n; ++y)
            if (y != x && reach[a][y] && reach[b][y] && reach[y][x])
              minimal_upper = false;
          if (minimal_upper) ++min_uppers;
        }
        if (reach[x][a] && reach[x][b]) {
          bool maximal_lower = true;
          for (std::size_t y = 0; y < n; ++y)
            if (y != x && reach[y][a] && reach[y][b] && reach[x][y])
              maximal_lower = false;
          if (maximal_lower) ++max_lowers;
        }
      }
      if (min_uppers != 1 || max_lowers != 1) return "NotALattice";
    }
  }
  return "";
}

/// Contradiction components by the quadratic definition: all record pairs,
/// comparability filter, literal contradiction, then graph search. Singleton
/// components dropped.
inline std::vector<ContradictionComponent> mcc_brute(
    const std::vector<BeliefRecord>& records, const OslCarrier& carrier) {
  std::vector<RecordId> live;
  for (const BeliefRecord& r : records)
    if (r.live) live.push_back(r.id);
  std::map<RecordId, std::vector<RecordId>> adj;
  for (std::size_t i = 0; i < live.size(); ++i) {
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      const BeliefRecord& a = records[static_cast<std::size_t>(live[i])];
      const BeliefRecord& b = records[static_cast<std::size_t>(live[j])];
      if (carrier.comparable(a.node, b.node) && contradict(a.literal, b.literal)) {
        adj[a.id].push_back(b.id);
        adj[b.id].push_back(a.id);
      }
    }
  }
  std::set<RecordId> seen;
  std::vector<ContradictionComponent> components;
  for (RecordId id : live) {
    if (!adj.count(id) || seen.count(id)) continue;
    ContradictionComponent c;
    std::vector<RecordId> stack{id};
    seen.insert(id);
    while (!stack.empty()) {
      RecordId cur = stack.back();
      stack.pop_back();
      c.record_ids.push_back(cur);
      for (RecordId next : adj[cur])
        if (seen.insert(next).second) stack.push_back(next);
    }
    std::sort(c.record_ids.begin(), c.record_ids.end());
    components.push_back(std::move(c));
  }
  std::sort(components.begin(), components.end(),
            [](const ContradictionComponent& a, const ContradictionComponent& b) {
              return a.record_ids.front() < b.record_ids.front();
            });
  return components;
}

/// Satisfiability of a literal theory by enumerating all assignments over its
/// atoms (at most 20).
inline SatReport sat_brute(const std::vector<Literal>& theory) {
  std::set<std::string> atom_set;
  for (const Literal& l : theory) atom_set.insert(l.atom);
  if (atom_set.size() > 20)
    throw InvalidSpec("sat_brute limited to 20 atoms, got " +
                      std::to_string(atom_set.size()));
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  SatReport report;
  const std::uint32_t combos = 1u << atoms.size();
  for (std::uint32_t mask = 0; mask < combos; ++mask) {
    bool ok = true;
    for (const Literal& l : theory) {
      const auto it = std::lower_bound(atoms.begin(), atoms.end(), l.atom);
      const bool value = ((mask >> (it - atoms.begin())) & 1u) != 0;
      if (value == l.negated) { ok = false; break; }
    }
    if (ok) {
      report.satisfiable = true;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        report.witness[atoms[i]] = ((mask >> i) & 1u) != 0;
      return report;
    }
  }
  report.satisfiable = false;
  for (const Literal& l : theory) {
    Literal flipped{l.atom, !l.negated};
    if (std::find(theory.begin(), theory.end(), flipped) != theory.end()) {
      report.conflict_atom = l.atom;
      break;
    }
  }
  return report;
}

}  // namespace osl::oracle
