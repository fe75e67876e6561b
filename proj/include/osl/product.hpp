#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "osl/errors.hpp"
#include "osl/poset.hpp"

namespace osl {

// Index of an (observer, situation) pair in a carrier, packed row-major by
// observer: id = observer_index * |situations| + situation_index.
using NodeId = std::int32_t;

// The product lattice of an observer lattice and a situation lattice under
// the componentwise order. The product order is never materialized; every
// test decomposes into the two component lattices.
class OslCarrier {
 public:
  OslCarrier(ComponentLattice observers, ComponentLattice situations)
      : observers_(std::move(observers)), situations_(std::move(situations)) {
    n_ = observers_.size() * situations_.size();
  }

  const ComponentLattice& observers() const noexcept { return observers_; }
  const ComponentLattice& situations() const noexcept { return situations_; }

  int size() const noexcept { return n_; }

  NodeId pack(int observer, int situation) const {
    if (observer < 0 || observer >= observers_.size() || situation < 0 ||
        situation >= situations_.size())
      throw IndexOutOfRange("component index out of range");
    return static_cast<NodeId>(observer * situations_.size() + situation);
  }

  std::pair<int, int> unpack(NodeId e) const {
    check_node(e);
    return {e / situations_.size(), e % situations_.size()};
  }

  int observer_of(NodeId e) const {
    check_node(e);
    return e / situations_.size();
  }
  int situation_of(NodeId e) const {
    check_node(e);
    return e % situations_.size();
  }

  NodeId bottom() const {
    return static_cast<NodeId>(observers_.bottom() * situations_.size() +
                               situations_.bottom());
  }
  NodeId top() const {
    return static_cast<NodeId>(observers_.top() * situations_.size() +
                               situations_.top());
  }

  /// Componentwise order: both the observer and situation orders must hold.
  bool leq(NodeId e1, NodeId e2) const {
    check_node(e1);
    check_node(e2);
    const int ns = situations_.size();
    return observers_.leq(e1 / ns, e2 / ns) && situations_.leq(e1 % ns, e2 % ns);
  }

  /// Comparability: related in either direction.
  bool comparable(NodeId e1, NodeId e2) const {
    return leq(e1, e2) || leq(e2, e1);
  }

  NodeId join_set(std::span<const NodeId> s) const {
    const int ns = situations_.size();
    int o = observers_.bottom();
    int sit = situations_.bottom();
    for (NodeId e : s) {
      check_node(e);
      o = observers_.join(o, e / ns);
      sit = situations_.join(sit, e % ns);
    }
    return static_cast<NodeId>(o * ns + sit);
  }

  NodeId meet_set(std::span<const NodeId> s) const {
    const int ns = situations_.size();
    int o = observers_.top();
    int sit = situations_.top();
    for (NodeId e : s) {
      check_node(e);
      o = observers_.meet(o, e / ns);
      sit = situations_.meet(sit, e % ns);
    }
    return static_cast<NodeId>(o * ns + sit);
  }

  NodeId join(NodeId e1, NodeId e2) const {
    const NodeId pair[2] = {e1, e2};
    return join_set(pair);
  }
  NodeId meet(NodeId e1, NodeId e2) const {
    const NodeId pair[2] = {e1, e2};
    return meet_set(pair);
  }

  /// {e' : e <= e'}, in ascending NodeId order; the Cartesian product of the
  /// component up-sets.
  std::vector<NodeId> upward_closure(NodeId e) const {
    std::vector<NodeId> out;
    out.reserve(static_cast<std::size_t>(upward_closure_size(e)));
    for_upward_closure(e, [&](NodeId id) { out.push_back(id); });
    return out;
  }

  /// |upward_closure(e)| without enumerating it.
  int upward_closure_size(NodeId e) const {
    check_node(e);
    const int ns = situations_.size();
    return observers_.up_count(e / ns) * situations_.up_count(e % ns);
  }

  /// Visit the upward closure in ascending NodeId order without
  /// materializing it. The hot path of belief propagation.
  template <typename Fn>
  void for_upward_closure(NodeId e, Fn&& fn) const {
    check_node(e);
    const int ns = situations_.size();
    const std::uint64_t* orow = observers_.up_row(e / ns);
    const std::uint64_t* srow = situations_.up_row(e % ns);
    const std::size_t owords = observers_.row_words();
    const std::size_t swords = situations_.row_words();
    for (std::size_t ow = 0; ow < owords; ++ow) {
      std::uint64_t obits = orow[ow];
      while (obits) {
        const int o = static_cast<int>((ow << 6) + std::countr_zero(obits));
        obits &= obits - 1;
        const NodeId base = static_cast<NodeId>(o * ns);
        for (std::size_t sw = 0; sw < swords; ++sw) {
          std::uint64_t sbits = srow[sw];
          while (sbits) {
            const int s = static_cast<int>((sw << 6) + std::countr_zero(sbits));
            sbits &= sbits - 1;
            fn(static_cast<NodeId>(base + s));
          }
        }
      }
    }
  }

  std::string node_label(NodeId e) const {
    auto [o, s] = unpack(e);
    return "(" + observers_.label(o) + ", " + situations_.label(s) + ")";
  }

  void check_node(NodeId e) const {
    if (e < 0 || e >= n_)
      throw IndexOutOfRange("node id " + std::to_string(e) +
                            " out of range [0," + std::to_string(n_) + ")");
  }

 private:
  ComponentLattice observers_;
  ComponentLattice situations_;
  int n_ = 0;
};

inline OslCarrier build_carrier(ComponentLattice observers,
                                ComponentLattice situations) {
  return OslCarrier(std::move(observers), std::move(situations));
}

}  // namespace osl
