#pragma once

#include <map>
#include <string>
#include <vector>

#include "osl/contradiction.hpp"
#include "osl/propagation.hpp"

namespace osl {

// Everything one belief assertion did: the stored record, the nodes its
// propagation raised, any contradiction components it triggered, and the
// resolution plus cache rebuild when it did.
struct UpdateReport {
  BeliefRecord record;
  AffectedSet affected;
  std::vector<ContradictionComponent> components;
  // edges per component, captured at detection time (resolution erases them)
  std::vector<std::vector<std::pair<RecordId, RecordId>>> component_edges;
  ResolutionReport resolution;  // empty unless components were found
  SweepReport resweep;          // iterations == 0 unless components were found

  bool resolved() const noexcept { return !components.empty(); }
};

/// Integrated update: insert and propagate, detect contradiction components
/// on the inserted atom, resolve them by credibility, and rebuild the rows of
/// the formulas that lost records.
inline UpdateReport assert_belief(BeliefBase& base, const Literal& literal,
                                  NodeId node, double weight,
                                  const NotifyFn& notify = {}) {
  UpdateReport report;
  report.affected = rbp_insert(base, literal, node, weight, notify);
  const RecordId id = static_cast<RecordId>(base.record_count()) - 1;
  report.components = mcc_atom(base, literal.atom);
  if (!report.components.empty()) {
    for (const ContradictionComponent& c : report.components)
      report.component_edges.push_back(contradiction_edges(base, c));
    report.resolution = resolve(base, report.components);
    std::vector<Literal> stale;
    for (RecordId removed : report.resolution.removed)
      stale.push_back(base.record(removed).literal);
    std::sort(stale.begin(), stale.end());
    stale.erase(std::unique(stale.begin(), stale.end()), stale.end());
    report.resweep = resweep(base, stale);
  }
  // snapshot after resolution so the report shows whether the new record
  // survived its own contradiction round
  report.record = base.record(id);
  return report;
}

/// Label-addressed credibility lookup. Read-only.
inline double query(const BeliefBase& base, const Literal& literal,
                    const std::string& observer, const std::string& situation) {
  const int o = base.carrier().observers().index_of(observer);
  const int s = base.carrier().situations().index_of(situation);
  return base.cred(literal, base.carrier().pack(o, s));
}

// Satisfiability report for the supported theory at a node.
struct SatReport {
  bool satisfiable = true;
  std::map<std::string, bool> witness;  // meaningful when satisfiable
  std::string conflict_atom;            // meaningful when unsatisfiable
};

/// For a literal language the supported theory is satisfiable exactly when no
/// atom is supported in both polarities. The witness gives each supported
/// literal its polarity and defaults every other known atom to false.
inline SatReport check_soundness(const BeliefBase& base, NodeId node) {
  const std::vector<Literal> theory = base.supported_theory(node);
  SatReport report;
  for (std::size_t i = 0; i + 1 < theory.size(); ++i) {
    if (contradict(theory[i], theory[i + 1])) {
      report.satisfiable = false;
      report.conflict_atom = theory[i].atom;
      return report;
    }
  }
  for (const std::string& atom : base.live_atoms()) report.witness[atom] = false;
  for (const Literal& literal : theory)
    report.witness[literal.atom] = !literal.negated;
  return report;
}

}  // namespace osl
