#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osl/errors.hpp"

namespace osl {

// Hasse-diagram description of a finite poset. `covers` lists (lower, upper)
// pairs; transitive pairs are tolerated on input and reduced to the covering
// relation during the build.
struct PosetSpec {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
};

// A validated finite complete lattice over labeled elements.
//
// The order is stored as one fixed-width bit row per element (the
// reflexive-transitive closure of the covers), so `leq` is a single bit test
// and up-sets enumerate in O(n/64) words. Binary join/meet tables are filled
// for all pairs at build time; set joins/meets fold over them.
class ComponentLattice {
 public:
  static ComponentLattice build(const PosetSpec& spec);

  int size() const noexcept { return n_; }

  /// a <= b in the lattice order.
  bool leq(int a, int b) const {
    check_index(a);
    check_index(b);
    return test(up_, a, b);
  }

  int join(int a, int b) const {
    check_index(a);
    check_index(b);
    return join_[static_cast<std::size_t>(a) * n_ + b];
  }

  int meet(int a, int b) const {
    check_index(a);
    check_index(b);
    return meet_[static_cast<std::size_t>(a) * n_ + b];
  }

  /// Least upper bound of a set; the empty join is the bottom element.
  int join_set(std::span<const int> s) const {
    int acc = bottom_;
    for (int x : s) acc = join(acc, x);
    return acc;
  }

  /// Greatest lower bound of a set; the empty meet is the top element.
  int meet_set(std::span<const int> s) const {
    int acc = top_;
    for (int x : s) acc = meet(acc, x);
    return acc;
  }

  /// All elements x with a <= x, ascending. Always contains a and top().
  std::vector<int> up_set(int a) const {
    check_index(a);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(up_count_[a]));
    scan_row(up_, a, out);
    return out;
  }

  /// All elements x with x <= a, ascending. Always contains bottom() and a.
  std::vector<int> down_set(int a) const {
    check_index(a);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(dn_count_[a]));
    scan_row(dn_, a, out);
    return out;
  }

  int bottom() const noexcept { return bottom_; }
  int top() const noexcept { return top_; }

  const std::string& label(int i) const {
    check_index(i);
    return labels_[static_cast<std::size_t>(i)];
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Index of a label, resolved by binary search over the sorted label list.
  std::optional<int> find(std::string_view label) const {
    auto it = std::lower_bound(by_label_.begin(), by_label_.end(), label,
                               [this](int idx, std::string_view key) {
                                 return labels_[static_cast<std::size_t>(idx)] < key;
                               });
    if (it == by_label_.end() || labels_[static_cast<std::size_t>(*it)] != label)
      return std::nullopt;
    return *it;
  }

  int index_of(std::string_view label) const {
    auto idx = find(label);
    if (!idx) throw UnknownLabel(std::string(label));
    return *idx;
  }

  /// Canonical covering pairs (the Hasse diagram of the stored order).
  const std::vector<std::pair<std::string, std::string>>& covers() const noexcept {
    return covers_;
  }

  // Raw row access for the product construction.
  std::size_t row_words() const noexcept { return words_; }
  const std::uint64_t* up_row(int a) const {
    return up_.data() + static_cast<std::size_t>(a) * words_;
  }
  int up_count(int a) const { return up_count_[static_cast<std::size_t>(a)]; }
  int down_count(int a) const { return dn_count_[static_cast<std::size_t>(a)]; }

 private:
  ComponentLattice() = default;

  void check_index(int i) const {
    if (i < 0 || i >= n_)
      throw IndexOutOfRange("element index " + std::to_string(i) +
                            " out of range [0," + std::to_string(n_) + ")");
  }

  bool test(const std::vector<std::uint64_t>& rows, int a, int b) const {
    return (rows[static_cast<std::size_t>(a) * words_ + (b >> 6)] >>
            (b & 63)) & 1u;
  }

  void scan_row(const std::vector<std::uint64_t>& rows, int a,
                std::vector<int>& out) const {
    const std::uint64_t* row = rows.data() + static_cast<std::size_t>(a) * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        out.push_back(static_cast<int>((w << 6) + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> up_;  // up_[a] bit b: a <= b
  std::vector<std::uint64_t> dn_;  // dn_[a] bit b: b <= a
  std::vector<int> up_count_;
  std::vector<int> dn_count_;
  std::vector<int> join_;
  std::vector<int> meet_;
  int bottom_ = -1;
  int top_ = -1;
  std::vector<std::string> labels_;
  std::vector<int> by_label_;  // indices sorted by label
  std::vector<std::pair<std::string, std::string>> covers_;
};

namespace detail {

inline void validate_labels(const PosetSpec& spec) {
  if (spec.elements.empty())
    throw InvalidSpec("poset must contain at least one element");
  std::vector<std::string> sorted = spec.elements;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].empty()) throw InvalidSpec("element labels must be non-empty");
    if (i + 1 < sorted.size() && sorted[i] == sorted[i + 1])
      throw DuplicateLabel(sorted[i]);
  }
}

// Deduplicated edge list (lower -> upper) from label pairs.
inline std::vector<std::pair<int, int>> build_edges(const PosetSpec& spec) {
  std::vector<std::pair<std::string, int>> index;
  index.reserve(spec.elements.size());
  for (std::size_t i = 0; i < spec.elements.size(); ++i)
    index.emplace_back(spec.elements[i], static_cast<int>(i));
  std::sort(index.begin(), index.end());
  auto lookup = [&](const std::string& label) -> int {
    auto it = std::lower_bound(
        index.begin(), index.end(), label,
        [](const auto& entry, const std::string& key) { return entry.first < key; });
    if (it == index.end() || it->first != label)
      throw InvalidSpec("cover references unknown label: \"" + label + "\"");
    return it->second;
  };
  std::vector<std::pair<int, int>> edges;
  edges.reserve(spec.covers.size());
  for (const auto& [lo, hi] : spec.covers) {
    int a = lookup(lo);
    int b = lookup(hi);
    if (a == b)
      throw InvalidSpec("self-cover on label: \"" + lo + "\"");
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace detail

inline ComponentLattice ComponentLattice::build(const PosetSpec& spec) {
  detail::validate_labels(spec);
  const int n = static_cast<int>(spec.elements.size());
  auto edges = detail::build_edges(spec);

  // Kahn's algorithm: a topological order exists iff the covers are acyclic.
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : edges) {
    succ[static_cast<std::size_t>(a)].push_back(b);
    ++indeg[static_cast<std::size_t>(b)];
  }
  std::vector<int> topo;
  topo.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (indeg[static_cast<std::size_t>(i)] == 0) topo.push_back(i);
  for (std::size_t head = 0; head < topo.size(); ++head) {
    for (int b : succ[static_cast<std::size_t>(topo[head])])
      if (--indeg[static_cast<std::size_t>(b)] == 0) topo.push_back(b);
  }
  if (static_cast<int>(topo.size()) != n) {
    std::string cyclic;
    for (int i = 0; i < n; ++i)
      if (indeg[static_cast<std::size_t>(i)] > 0) {
        if (!cyclic.empty()) cyclic += ", ";
        cyclic += "\"" + spec.elements[static_cast<std::size_t>(i)] + "\"";
      }
    throw CycleDetected("cover relation is cyclic through: " + cyclic);
  }

  ComponentLattice l;
  l.n_ = n;
  l.words_ = static_cast<std::size_t>((n + 63) / 64);
  l.labels_ = spec.elements;
  l.up_.assign(static_cast<std::size_t>(n) * l.words_, 0);
  l.dn_.assign(static_cast<std::size_t>(n) * l.words_, 0);

  auto set_bit = [&](std::vector<std::uint64_t>& rows, int a, int b) {
    rows[static_cast<std::size_t>(a) * l.words_ + (b >> 6)] |=
        std::uint64_t{1} << (b & 63);
  };

  // Reachability rows, sinks first so successor rows are complete.
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int a = *it;
    set_bit(l.up_, a, a);
    std::uint64_t* row = l.up_.data() + static_cast<std::size_t>(a) * l.words_;
    for (int b : succ[static_cast<std::size_t>(a)]) {
      const std::uint64_t* rb = l.up_.data() + static_cast<std::size_t>(b) * l.words_;
      for (std::size_t w = 0; w < l.words_; ++w) row[w] |= rb[w];
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (l.test(l.up_, a, b)) set_bit(l.dn_, b, a);

  l.up_count_.resize(static_cast<std::size_t>(n));
  l.dn_count_.resize(static_cast<std::size_t>(n));
  auto popcount_row = [&](const std::vector<std::uint64_t>& rows, int a) {
    int c = 0;
    const std::uint64_t* row = rows.data() + static_cast<std::size_t>(a) * l.words_;
    for (std::size_t w = 0; w < l.words_; ++w) c += std::popcount(row[w]);
    return c;
  };
  for (int a = 0; a < n; ++a) {
    l.up_count_[static_cast<std::size_t>(a)] = popcount_row(l.up_, a);
    l.dn_count_[static_cast<std::size_t>(a)] = popcount_row(l.dn_, a);
  }

  // Bottom and top are the unique minimal/maximal elements; ambiguity is an
  // error since a complete lattice has exactly one of each.
  std::vector<int> minimal, maximal;
  for (int a = 0; a < n; ++a) {
    if (l.dn_count_[static_cast<std::size_t>(a)] == 1) minimal.push_back(a);
    if (l.up_count_[static_cast<std::size_t>(a)] == 1) maximal.push_back(a);
  }
  auto name_list = [&](const std::vector<int>& xs) {
    std::string out;
    for (int x : xs) {
      if (!out.empty()) out += ", ";
      out += "\"" + l.labels_[static_cast<std::size_t>(x)] + "\"";
    }
    return out;
  };
  if (minimal.size() != 1)
    throw NoUniqueBound("no unique bottom element; minimal elements: " +
                        name_list(minimal));
  if (maximal.size() != 1)
    throw NoUniqueBound("no unique top element; maximal elements: " +
                        name_list(maximal));
  l.bottom_ = minimal.front();
  l.top_ = maximal.front();

  // Pairwise bound tables. The minimum of the common-upper-bound set, when it
  // exists, is its unique member of maximal up-set cardinality; the candidate
  // is verified against the whole set so non-lattices are caught.
  l.join_.assign(static_cast<std::size_t>(n) * n, -1);
  l.meet_.assign(static_cast<std::size_t>(n) * n, -1);
  std::vector<std::uint64_t> common(l.words_);
  auto fill = [&](std::vector<int>& table,
                  const std::vector<std::uint64_t>& rows,
                  const std::vector<std::uint64_t>& dual_rows,
                  const std::vector<int>& counts, const char* kind) {
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        int bound = -1;
        if (l.test(rows, a, b)) {
          bound = b;
        } else if (l.test(rows, b, a)) {
          bound = a;
        } else {
          const std::uint64_t* ra = rows.data() + static_cast<std::size_t>(a) * l.words_;
          const std::uint64_t* rb = rows.data() + static_cast<std::size_t>(b) * l.words_;
          int best = -1, best_count = -1;
          for (std::size_t w = 0; w < l.words_; ++w) {
            std::uint64_t bits = common[w] = ra[w] & rb[w];
            while (bits) {
              int x = static_cast<int>((w << 6) + std::countr_zero(bits));
              bits &= bits - 1;
              if (counts[static_cast<std::size_t>(x)] > best_count) {
                best_count = counts[static_cast<std::size_t>(x)];
                best = x;
              }
            }
          }
          bool ok = best >= 0;
          if (ok) {
            const std::uint64_t* rbest =
                rows.data() + static_cast<std::size_t>(best) * l.words_;
            for (std::size_t w = 0; w < l.words_; ++w)
              if (common[w] & ~rbest[w]) { ok = false; break; }
          }
          if (!ok) {
            // Collect extremal elements of the common-bound set as evidence.
            std::vector<int> extremal;
            for (std::size_t w = 0; w < l.words_ && extremal.size() < 2; ++w) {
              std::uint64_t bits = common[w];
              while (bits) {
                int x = static_cast<int>((w << 6) + std::countr_zero(bits));
                bits &= bits - 1;
                const std::uint64_t* dx =
                    dual_rows.data() + static_cast<std::size_t>(x) * l.words_;
                bool extreme = true;
                for (std::size_t v = 0; v < l.words_; ++v) {
                  std::uint64_t below = dx[v] & common[v];
                  if (v == w) below &= ~(std::uint64_t{1} << (x & 63));
                  if (below) { extreme = false; break; }
                }
                if (extreme) {
                  extremal.push_back(x);
                  if (extremal.size() >= 2) break;
                }
              }
            }
            throw NotALattice(
                std::string("no unique ") + kind + " for (\"" +
                    l.labels_[static_cast<std::size_t>(a)] + "\", \"" +
                    l.labels_[static_cast<std::size_t>(b)] + "\"); candidates: " +
                    name_list(extremal),
                l.labels_[static_cast<std::size_t>(a)],
                l.labels_[static_cast<std::size_t>(b)]);
          }
          bound = best;
        }
        table[static_cast<std::size_t>(a) * n + b] = bound;
        table[static_cast<std::size_t>(b) * n + a] = bound;
      }
    }
  };
  fill(l.join_, l.up_, l.dn_, l.up_count_, "least upper bound");
  fill(l.meet_, l.dn_, l.up_, l.dn_count_, "greatest lower bound");

  // Canonical covers: a < b with nothing strictly between.
  for (int a = 0; a < n; ++a) {
    const std::uint64_t* ra = l.up_.data() + static_cast<std::size_t>(a) * l.words_;
    for (int b = 0; b < n; ++b) {
      if (a == b || !l.test(l.up_, a, b)) continue;
      const std::uint64_t* db = l.dn_.data() + static_cast<std::size_t>(b) * l.words_;
      int between = 0;
      for (std::size_t w = 0; w < l.words_; ++w)
        between += std::popcount(ra[w] & db[w]);
      if (between == 2)
        l.covers_.emplace_back(l.labels_[static_cast<std::size_t>(a)],
                               l.labels_[static_cast<std::size_t>(b)]);
    }
  }

  l.by_label_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) l.by_label_[static_cast<std::size_t>(i)] = i;
  std::sort(l.by_label_.begin(), l.by_label_.end(), [&](int x, int y) {
    return l.labels_[static_cast<std::size_t>(x)] < l.labels_[static_cast<std::size_t>(y)];
  });
  return l;
}

inline ComponentLattice build_lattice(const PosetSpec& spec) {
  return ComponentLattice::build(spec);
}

}  // namespace osl
