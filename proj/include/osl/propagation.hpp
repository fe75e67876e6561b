#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "osl/belief.hpp"

namespace osl {

// Nodes whose cached credibility for the inserted literal strictly
// increased, ascending. Always a subset of the insertion node's upward
// closure.
struct AffectedSet {
  std::vector<NodeId> nodes;

  bool empty() const noexcept { return nodes.empty(); }
  std::size_t size() const noexcept { return nodes.size(); }
};

// Optional hook fired once per affected node, for downstream consumers.
using NotifyFn = std::function<void(const Literal&, NodeId, double)>;

// Incremental propagation of a single insertion. Visits exactly the upward
// closure of the insertion node; each visited cell becomes max(old, weight).
// Nothing outside the closure, and no other formula's row, is touched.
inline AffectedSet rbp_insert(BeliefBase& base, const Literal& literal,
                              NodeId node, double weight,
                              const NotifyFn& notify = {}) {
  std::vector<double>& row = *base.insert_raw_with_row(literal, node, weight).second;

  AffectedSet affected;
  std::uint64_t visited = 0;
  base.carrier().for_upward_closure(node, [&](NodeId e) {
    ++visited;
    double& cell = row[static_cast<std::size_t>(e)];
    if (weight > cell) {
      cell = weight;
      affected.nodes.push_back(e);
      if (notify) notify(literal, e, weight);
    }
  });
  base.note_visits(visited);
  return affected;
}

// Per-iteration convergence trace of a full sweep.
struct SweepReport {
  int iterations = 0;
  std::vector<double> deltas;  // max absolute cache change per iteration
};

namespace detail {

// The fixpoint row for one formula, computed from its live records alone.
inline std::vector<double> sweep_target_row(const BeliefBase& base,
                                            const Literal& literal) {
  std::vector<double> row(static_cast<std::size_t>(base.carrier().size()), 0.0);
  bool any = false;
  for (RecordId id : base.record_ids(literal)) {
    const BeliefRecord& r = base.record(id);
    if (!r.live || r.weight <= 0.0) continue;
    any = true;
    base.carrier().for_upward_closure(r.node, [&](NodeId e) {
      double& cell = row[static_cast<std::size_t>(e)];
      if (r.weight > cell) cell = r.weight;
    });
  }
  if (!any) row.clear();
  return row;
}

inline double row_delta(const std::vector<double>* current,
                        const std::vector<double>& target, std::size_t n) {
  double delta = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    const double oldv = (current && !current->empty()) ? (*current)[e] : 0.0;
    const double newv = target.empty() ? 0.0 : target[e];
    delta = std::max(delta, std::fabs(newv - oldv));
  }
  return delta;
}

inline SweepReport sweep_impl(BeliefBase& base, const std::vector<Literal>& literals,
                              double epsilon, int max_iterations) {
  SweepReport report;
  const std::size_t n = static_cast<std::size_t>(base.carrier().size());
  while (report.iterations < max_iterations) {
    double delta = 0.0;
    std::vector<std::pair<Literal, std::vector<double>>> targets;
    targets.reserve(literals.size());
    for (const Literal& literal : literals) {
      std::vector<double> target = sweep_target_row(base, literal);
      delta = std::max(delta, row_delta(base.cred_row(literal), target, n));
      targets.emplace_back(literal, std::move(target));
    }
    for (auto& [literal, target] : targets) {
      if (target.empty()) {
        base.clear_row(literal);
      } else {
        base.mutable_cred_row(literal) = std::move(target);
      }
    }
    ++report.iterations;
    report.deltas.push_back(delta);
    if (delta < epsilon) break;
  }
  return report;
}

}  // namespace detail

inline constexpr double kSweepEpsilon = 1e-12;
inline constexpr int kSweepMaxIterations = 20;

// Full rebuild of the cache from the live records, iterated to a fixpoint.
// The update rule reads only the record store, so it settles in one sweep
// and confirms with a zero-delta second sweep; a run on an already-correct
// cache converges immediately.
inline SweepReport full_sweep(BeliefBase& base, double epsilon = kSweepEpsilon,
                              int max_iterations = kSweepMaxIterations) {
  return detail::sweep_impl(base, base.known_literals(), epsilon, max_iterations);
}

// Same sweep restricted to the given formulas; used after removals, when only
// those rows can be stale.
inline SweepReport resweep(BeliefBase& base, const std::vector<Literal>& literals,
                           double epsilon = kSweepEpsilon,
                           int max_iterations = kSweepMaxIterations) {
  return detail::sweep_impl(base, literals, epsilon, max_iterations);
}

}  // namespace osl
