#pragma once

// Benchmark harness: propagation scaling with a log-log power-law fit,
// contradiction-detection scaling, and the component ablation.
//
// Workload constants are fixed here and recorded in the output metadata:
// pre-load density defaults to n/2 records, all scaling records share one
// formula so propagation runs against a saturated cache, and nodes and
// weights are drawn uniformly.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "osl/contradiction.hpp"
#include "osl/io.hpp"
#include "osl/manager.hpp"
#include "osl/propagation.hpp"

namespace osl {

struct BenchConfig {
  std::vector<std::pair<int, int>> sizes;  // (observers, situations) pairs
  int trials = 30;
  std::uint64_t seed = 42;
  int warmup = 5;           // discarded leading trials per size
  int insert_count = 0;     // records pre-loaded per trial; 0 = n/2
  std::string shape = "chain";
};

struct TrialRecord {
  int lattice_size = 0;
  int n_obs = 0;
  int n_sit = 0;
  int trial_index = 0;
  double time_us = 0.0;
  int affected_count = 0;
  int upclosure_size = 0;
  std::uint64_t visited = 0;  // instrumented node-visit counter
};

inline double balance_factor(int n_obs, int n_sit) {
  return static_cast<double>(std::max(n_obs, n_sit)) /
         static_cast<double>(std::min(n_obs, n_sit));
}

namespace bench_detail {

inline PosetSpec chain_component(int k, const std::string& prefix) {
  PosetSpec spec;
  for (int i = 0; i < k; ++i) spec.elements.push_back(prefix + std::to_string(i));
  for (int i = 0; i + 1 < k; ++i)
    spec.covers.emplace_back(spec.elements[static_cast<std::size_t>(i)],
                             spec.elements[static_cast<std::size_t>(i + 1)]);
  return spec;
}

// k as a two-chain grid, using the largest divisor not above sqrt(k); primes
// degenerate to a chain.
inline PosetSpec grid_component(int k, const std::string& prefix) {
  int rows = 1;
  for (int d = 1; d * d <= k; ++d)
    if (k % d == 0) rows = d;
  const int cols = k / rows;
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

inline PosetSpec component_spec(int k, const std::string& shape,
                                const std::string& prefix) {
  if (shape == "chain") return chain_component(k, prefix);
  if (shape == "grid-ish") return grid_component(k, prefix);
  throw UnknownShape(shape);
}

inline std::mt19937_64 size_rng(std::uint64_t seed, int n_obs, int n_sit) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(n_obs),
                    static_cast<std::uint64_t>(n_sit)};
  return std::mt19937_64(seq);
}

}  // namespace bench_detail

/// Deterministic near-square carrier of the requested component sizes.
inline OslCarrier gen_balanced_carrier(int n_obs, int n_sit,
                                       const std::string& shape = "chain",
                                       std::uint64_t seed = 0) {
  (void)seed;  // current shapes are fully determined by their dimensions
  if (n_obs < 1 || n_sit < 1)
    throw InvalidSpec("component sizes must be at least 1");
  return OslCarrier(build_lattice(bench_detail::component_spec(n_obs, shape, "o")),
                    build_lattice(bench_detail::component_spec(n_sit, shape, "s")));
}

/// Timed single-insert trials over increasing lattice sizes. Every trial
/// pre-loads a fresh base, then times exactly one propagated insertion.
inline std::vector<TrialRecord> run_rbp_scaling(const BenchConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  std::vector<TrialRecord> out;
  const Literal probe = pos("p");
  for (const auto& [n_obs, n_sit] : cfg.sizes) {
    const OslCarrier carrier = gen_balanced_carrier(n_obs, n_sit, cfg.shape, cfg.seed);
    const int n = carrier.size();
    const int preload = cfg.insert_count > 0 ? cfg.insert_count : std::max(1, n / 2);
    auto rng = bench_detail::size_rng(cfg.seed, n_obs, n_sit);
    std::uniform_int_distribution<NodeId> node(0, n - 1);
    std::uniform_real_distribution<double> weight(0.0, 1.0);

    for (int t = 0; t < cfg.warmup + cfg.trials; ++t) {
      BeliefBase base(carrier);
      base.reserve(static_cast<std::size_t>(preload) + 1);
      for (int i = 0; i < preload; ++i)
        rbp_insert(base, probe, node(rng), weight(rng));

      const NodeId at = node(rng);
      const double w = weight(rng);
      const auto t0 = Clock::now();
      const AffectedSet affected = rbp_insert(base, probe, at, w);
      const auto t1 = Clock::now();

      if (t < cfg.warmup) continue;
      TrialRecord r;
      r.lattice_size = n;
      r.n_obs = n_obs;
      r.n_sit = n_sit;
      r.trial_index = t - cfg.warmup;
      r.time_us =
          std::chrono::duration_cast<std::chrono::duration<double, std::micro>>(t1 - t0)
              .count();
      r.affected_count = static_cast<int>(affected.size());
      r.upclosure_size = carrier.upward_closure_size(at);
      r.visited = base.last_visits();
      out.push_back(r);
    }
  }
  return out;
}

// Ordinary-least-squares power-law fit in log-log space.
struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double ci_low = 0.0;   // 95% confidence interval for the slope
  double ci_high = 0.0;
};

/// OLS on (log x, log y) points; the slope is the scaling exponent.
inline FitReport fit_loglog(const std::vector<std::pair<double, double>>& points) {
  const std::size_t m = points.size();
  if (m < 3)
    throw InsufficientData("power-law fit needs at least 3 points, got " +
                           std::to_string(m));
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / static_cast<double>(m);
  const double my = sy / static_cast<double>(m);
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  FitReport fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (const auto& [x, y] : points) {
    const double ly = std::log(y);
    const double pred = fit.intercept + fit.slope * std::log(x);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - my) * (ly - my);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  const double df = static_cast<double>(m - 2);
  const double se = std::sqrt((ss_res / df) / sxx);
  const double t = boost::math::quantile(boost::math::students_t(df), 0.975);
  fit.ci_low = fit.slope - t * se;
  fit.ci_high = fit.slope + t * se;
  return fit;
}

/// Fit over per-size means of log time.
inline FitReport fit_powerlaw(const std::vector<TrialRecord>& records) {
  std::map<int, std::pair<double, int>> log_sum;  // size -> (sum of log t, count)
  for (const TrialRecord& r : records) {
    auto& [sum, count] = log_sum[r.lattice_size];
    sum += std::log(r.time_us);
    ++count;
  }
  if (log_sum.size() < 3)
    throw InsufficientData("power-law fit needs at least 3 distinct sizes, got " +
                           std::to_string(log_sum.size()));
  std::vector<std::pair<double, double>> points;
  for (const auto& [size, acc] : log_sum)
    points.emplace_back(static_cast<double>(size),
                        std::exp(acc.first / acc.second));
  return fit_loglog(points);
}

// -- ablation ---------------------------------------------------------------------

struct AblationRow {
  std::string config;
  double runtime_ms = 0.0;
  double coverage = 0.0;  // fraction of supported probes answered positively
  int belief_count = 0;   // live records after the workload
};

namespace bench_detail {

struct AblationWorkload {
  struct Insert {
    Literal literal;
    NodeId node = 0;
    double weight = 0.0;
  };
  std::vector<Insert> inserts;
  std::vector<std::pair<Literal, NodeId>> probes;  // supported off-node queries
};

// The same deterministic insert stream for every configuration: payload atoms
// that are never negated carry the coverage probes; conflict atoms appear in
// both polarities to generate contradiction work.
inline AblationWorkload make_ablation_workload(const OslCarrier& carrier,
                                               std::uint64_t seed, int inserts,
                                               int probes) {
  AblationWorkload w;
  auto rng = size_rng(seed, carrier.observers().size(), carrier.situations().size());
  std::uniform_int_distribution<NodeId> node(0, carrier.size() - 1);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::uniform_int_distribution<int> payload_atom(0, 7);
  std::uniform_int_distribution<int> conflict_atom(0, 3);
  std::bernoulli_distribution is_conflict(0.3);
  std::bernoulli_distribution negate(0.5);
  for (int i = 0; i < inserts; ++i) {
    AblationWorkload::Insert ins;
    if (is_conflict(rng)) {
      ins.literal = Literal{"c" + std::to_string(conflict_atom(rng)), negate(rng)};
    } else {
      ins.literal = Literal{"q" + std::to_string(payload_atom(rng)), false};
    }
    ins.node = node(rng);
    ins.weight = weight(rng);
    w.inserts.push_back(std::move(ins));
  }

  // nodes used per payload atom, to keep probes off every insert node
  std::map<std::string, std::vector<NodeId>> used;
  for (const auto& ins : w.inserts)
    if (ins.literal.atom[0] == 'q') used[ins.literal.atom].push_back(ins.node);

  std::uniform_int_distribution<std::size_t> pick(0, w.inserts.size() - 1);
  int guard = probes * 50;
  while (static_cast<int>(w.probes.size()) < probes && guard-- > 0) {
    const auto& ins = w.inserts[pick(rng)];
    if (ins.literal.atom[0] != 'q') continue;
    std::vector<NodeId> candidates;
    for (NodeId e : carrier.upward_closure(ins.node)) {
      const auto& taken = used[ins.literal.atom];
      if (std::find(taken.begin(), taken.end(), e) == taken.end())
        candidates.push_back(e);
    }
    if (candidates.empty()) continue;
    std::uniform_int_distribution<std::size_t> chose(0, candidates.size() - 1);
    w.probes.emplace_back(ins.literal, candidates[chose(rng)]);
  }
  return w;
}

}  // namespace bench_detail

/// One deterministic workload replayed under three configurations: the full
/// pipeline, propagation without contradiction handling, and bare insertion
/// that only touches the inserted node's cache cell.
inline std::vector<AblationRow> run_ablation(const BenchConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  if (cfg.sizes.empty()) throw InvalidSpec("ablation needs at least one size");
  const auto [n_obs, n_sit] = cfg.sizes.front();
  const OslCarrier carrier = gen_balanced_carrier(n_obs, n_sit, cfg.shape, cfg.seed);
  const int inserts =
      cfg.insert_count > 0 ? cfg.insert_count : std::max(500, 4 * carrier.size());
  const auto workload =
      bench_detail::make_ablation_workload(carrier, cfg.seed, inserts, 200);

  std::vector<AblationRow> rows;
  for (const std::string config : {"full", "no-mcc", "no-propagation"}) {
    BeliefBase base(carrier);
    const auto t0 = Clock::now();
    for (const auto& ins : workload.inserts) {
      if (config == "full") {
        assert_belief(base, ins.literal, ins.node, ins.weight);
      } else if (config == "no-mcc") {
        rbp_insert(base, ins.literal, ins.node, ins.weight);
      } else {
        base.insert_raw(ins.literal, ins.node, ins.weight);
        std::vector<double>& row = base.mutable_cred_row(ins.literal);
        double& cell = row[static_cast<std::size_t>(ins.node)];
        if (ins.weight > cell) cell = ins.weight;
      }
    }
    const auto t1 = Clock::now();

    int hits = 0;
    for (const auto& [literal, node] : workload.probes)
      if (base.cred(literal, node) > 0.0) ++hits;

    AblationRow row;
    row.config = config;
    row.runtime_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
            .count();
    row.coverage = workload.probes.empty()
                       ? 0.0
                       : static_cast<double>(hits) /
                             static_cast<double>(workload.probes.size());
    row.belief_count = static_cast<int>(base.live_count());
    rows.push_back(std::move(row));
  }
  return rows;
}

// -- contradiction-detection scaling (informational) ----------------------------

struct MccScalingPoint {
  int belief_count = 0;
  double time_ms = 0.0;
};

/// Wall time of full contradiction decomposition against belief-base size.
inline std::vector<MccScalingPoint> run_mcc_scaling(
    const BenchConfig& cfg, const std::vector<int>& belief_counts) {
  using Clock = std::chrono::steady_clock;
  if (cfg.sizes.empty()) throw InvalidSpec("mcc scaling needs a carrier size");
  const auto [n_obs, n_sit] = cfg.sizes.front();
  const OslCarrier carrier = gen_balanced_carrier(n_obs, n_sit, cfg.shape, cfg.seed);
  std::vector<MccScalingPoint> out;
  for (int b : belief_counts) {
    auto rng = bench_detail::size_rng(cfg.seed, b, carrier.size());
    std::uniform_int_distribution<NodeId> node(0, carrier.size() - 1);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    std::uniform_int_distribution<int> atom(0, 15);
    std::bernoulli_distribution negate(0.5);
    BeliefBase base(carrier);
    for (int i = 0; i < b; ++i)
      base.insert_raw(Literal{"a" + std::to_string(atom(rng)), negate(rng)},
                      node(rng), weight(rng));
    const auto t0 = Clock::now();
    const auto components = mcc(base);
    const auto t1 = Clock::now();
    MccScalingPoint p;
    p.belief_count = b;
    p.time_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
            .count();
    out.push_back(p);
    (void)components;
  }
  return out;
}

// -- output -----------------------------------------------------------------------

inline void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << "size,n_obs,n_sit,trial,time_us,affected,upclosure\n";
  for (const TrialRecord& r : records)
    os << r.lattice_size << ',' << r.n_obs << ',' << r.n_sit << ',' << r.trial_index
       << ',' << r.time_us << ',' << r.affected_count << ',' << r.upclosure_size
       << '\n';
}

inline Json scaling_summary_json(const BenchConfig& cfg,
                                 const std::vector<TrialRecord>& records,
                                 const FitReport* fit) {
  Json summary;
  summary["shape"] = cfg.shape;
  summary["seed"] = cfg.seed;
  summary["trials"] = cfg.trials;
  summary["warmup"] = cfg.warmup;
  if (cfg.insert_count > 0)
    summary["insert_count"] = cfg.insert_count;
  else
    summary["insert_count"] = "n/2";

  std::map<int, std::vector<const TrialRecord*>> by_size;
  for (const TrialRecord& r : records) by_size[r.lattice_size].push_back(&r);
  Json sizes = Json::array();
  for (const auto& [n, trials] : by_size) {
    double sum = 0, sum_sq = 0, affected = 0, upclosure = 0;
    int max_affected = 0;
    for (const TrialRecord* r : trials) {
      sum += r->time_us;
      sum_sq += r->time_us * r->time_us;
      affected += r->affected_count;
      upclosure += r->upclosure_size;
      max_affected = std::max(max_affected, r->affected_count);
    }
    const double count = static_cast<double>(trials.size());
    const double mean = sum / count;
    const double variance = std::max(0.0, sum_sq / count - mean * mean);
    const double stddev = std::sqrt(variance);
    Json row;
    row["size"] = n;
    row["n_obs"] = trials.front()->n_obs;
    row["n_sit"] = trials.front()->n_sit;
    row["kappa"] = balance_factor(trials.front()->n_obs, trials.front()->n_sit);
    row["trials"] = trials.size();
    row["mean_time_us"] = mean;
    row["std_time_us"] = stddev;
    row["mean_affected"] = affected / count;
    row["max_affected"] = max_affected;
    row["mean_upclosure"] = upclosure / count;
    row["high_variance"] = stddev > 3.0 * mean;  // flag pathological spread
    sizes.push_back(std::move(row));
  }
  summary["sizes"] = std::move(sizes);
  if (fit) {
    Json f;
    f["slope"] = fit->slope;
    f["intercept"] = fit->intercept;
    f["r_squared"] = fit->r_squared;
    f["slope_ci95"] = Json::array({fit->ci_low, fit->ci_high});
    summary["fit"] = std::move(f);
  } else {
    summary["fit"] = nullptr;  // needs at least 3 distinct sizes
  }
  return summary;
}

inline Json ablation_json(const std::vector<AblationRow>& rows) {
  Json out = Json::array();
  for (const AblationRow& r : rows) {
    Json row;
    row["config"] = r.config;
    row["runtime_ms"] = r.runtime_ms;
    row["coverage"] = r.coverage;
    row["belief_count"] = r.belief_count;
    out.push_back(std::move(row));
  }
  return out;
}

/// The component dimensions used in the scaling study, near-square from 9 to
/// 1980 product nodes.
inline std::vector<std::pair<int, int>> standard_scaling_sizes() {
  return {{3, 3},   {4, 4},   {5, 6},   {7, 8},   {10, 10},
          {13, 14}, {18, 18}, {24, 25}, {33, 33}, {44, 45}};
}

}  // namespace osl
