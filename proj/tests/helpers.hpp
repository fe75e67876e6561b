#pragma once

// Shared fixtures and generators for the test suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "osl/belief.hpp"
#include "osl/poset.hpp"
#include "osl/product.hpp"

namespace testutil {

using osl::PosetSpec;

inline PosetSpec chain_spec(int k, const std::string& prefix = "c") {
  PosetSpec spec;
  for (int i = 0; i < k; ++i) spec.elements.push_back(prefix + std::to_string(i));
  for (int i = 0; i + 1 < k; ++i)
    spec.covers.emplace_back(spec.elements[static_cast<std::size_t>(i)],
                             spec.elements[static_cast<std::size_t>(i + 1)]);
  return spec;
}

inline PosetSpec diamond_spec() {
  return PosetSpec{{"bot", "x", "y", "top"},
                   {{"bot", "x"}, {"bot", "y"}, {"x", "top"}, {"y", "top"}}};
}

// Two incomparable middle layers without a unique join for (a, b).
inline PosetSpec non_lattice_spec() {
  return PosetSpec{{"bot", "a", "b", "c", "d", "top"},
                   {{"bot", "a"},
                    {"bot", "b"},
                    {"a", "c"},
                    {"a", "d"},
                    {"b", "c"},
                    {"b", "d"},
                    {"c", "top"},
                    {"d", "top"}}};
}

inline PosetSpec grid_spec(int rows, int cols, const std::string& prefix = "g") {
  PosetSpec spec;
  auto name = [&](int r, int c) {
    return prefix + std::to_string(r) + "_" + std::to_string(c);
  };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) spec.elements.push_back(name(r, c));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (r + 1 < rows) spec.covers.emplace_back(name(r, c), name(r + 1, c));
      if (c + 1 < cols) spec.covers.emplace_back(name(r, c), name(r, c + 1));
    }
  return spec;
}

// Random lattice as an intersection-closed family of bitmasks over a small
// ground set (always a lattice under the subset order). Emits the full order
// relation, exercising the cover reduction on ingestion.
inline PosetSpec random_lattice_spec(std::mt19937_64& rng, int ground_bits = 5,
                                     int seeds = 4) {
  const std::uint32_t universe = (1u << ground_bits) - 1;
  std::vector<std::uint32_t> masks{universe};
  std::uniform_int_distribution<std::uint32_t> pick(0, universe);
  for (int i = 0; i < seeds; ++i) {
    std::uint32_t m = pick(rng);
    if (std::find(masks.begin(), masks.end(), m) == masks.end()) masks.push_back(m);
  }
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = 0; j < masks.size(); ++j) {
      std::uint32_t inter = masks[i] & masks[j];
      if (std::find(masks.begin(), masks.end(), inter) == masks.end())
        masks.push_back(inter);
    }
  std::sort(masks.begin(), masks.end());

  PosetSpec spec;
  for (std::uint32_t m : masks) spec.elements.push_back("m" + std::to_string(m));
  for (std::uint32_t a : masks)
    for (std::uint32_t b : masks)
      if (a != b && (a & b) == a)
        spec.covers.emplace_back("m" + std::to_string(a), "m" + std::to_string(b));
  return spec;
}

inline PosetSpec random_lattice_of_size(std::mt19937_64& rng, int target) {
  for (;;) {
    std::uniform_int_distribution<int> gb(3, 6), sd(2, 7);
    PosetSpec spec = random_lattice_spec(rng, gb(rng), sd(rng));
    if (static_cast<int>(spec.elements.size()) == target) return spec;
  }
}

// Arbitrary random DAG (or, with back_edge, cyclic graph); usually not a
// lattice. Feeds the rejection-equivalence property.
inline PosetSpec random_poset_spec(std::mt19937_64& rng, int max_elems = 8,
                                   double edge_prob = 0.3, bool back_edge = false) {
  std::uniform_int_distribution<int> count(2, max_elems);
  const int k = count(rng);
  PosetSpec spec;
  for (int i = 0; i < k; ++i) spec.elements.push_back("e" + std::to_string(i));
  std::bernoulli_distribution flip(edge_prob);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (flip(rng))
        spec.covers.emplace_back(spec.elements[static_cast<std::size_t>(i)],
                                 spec.elements[static_cast<std::size_t>(j)]);
  if (back_edge && k >= 2) {
    std::uniform_int_distribution<int> pick(0, k - 1);
    int a = pick(rng), b = pick(rng);
    if (a == b) b = (b + 1) % k;
    if (a < b) std::swap(a, b);
    spec.covers.emplace_back(spec.elements[static_cast<std::size_t>(a)],
                             spec.elements[static_cast<std::size_t>(b)]);
  }
  return spec;
}

// A random chain through the carrier: a monotone walk from bottom to top.
// All returned nodes are pairwise comparable.
inline std::vector<osl::NodeId> random_chain_nodes(std::mt19937_64& rng,
                                                   const osl::OslCarrier& c) {
  std::vector<osl::NodeId> chain{c.bottom()};
  osl::NodeId current = c.bottom();
  while (current != c.top()) {
    std::vector<osl::NodeId> above;
    for (osl::NodeId x : c.upward_closure(current))
      if (x != current) above.push_back(x);
    std::uniform_int_distribution<std::size_t> pick(0, above.size() - 1);
    current = above[pick(rng)];
    chain.push_back(current);
  }
  return chain;
}

inline osl::Literal random_literal(std::mt19937_64& rng, int atom_pool,
                                   double neg_prob = 0.5) {
  std::uniform_int_distribution<int> pick(0, atom_pool - 1);
  std::bernoulli_distribution flip(neg_prob);
  return osl::Literal{"a" + std::to_string(pick(rng)), flip(rng)};
}

inline osl::OslCarrier chain_carrier(int n_obs, int n_sit) {
  return osl::OslCarrier(osl::build_lattice(chain_spec(n_obs, "o")),
                         osl::build_lattice(chain_spec(n_sit, "s")));
}

inline osl::OslCarrier random_carrier(std::mt19937_64& rng, int max_nodes = 100,
                                      int min_nodes = 1) {
  for (;;) {
    std::uniform_int_distribution<int> gb(2, 5), sd(1, 8);
    PosetSpec ospec = random_lattice_spec(rng, gb(rng), sd(rng));
    PosetSpec sspec = random_lattice_spec(rng, gb(rng), sd(rng));
    const int n = static_cast<int>(ospec.elements.size() * sspec.elements.size());
    if (n <= max_nodes && n >= min_nodes)
      return osl::OslCarrier(osl::build_lattice(ospec), osl::build_lattice(sspec));
  }
}

}  // namespace testutil
