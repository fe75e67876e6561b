#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "osl/bench.hpp"
#include "osl/oracle.hpp"

using namespace osl;

TEST_CASE("balanced carrier generation") {
  auto c = gen_balanced_carrier(3, 3, "chain");
  CHECK(c.size() == 9);
  CHECK(balance_factor(3, 3) == 1.0);

  auto big = gen_balanced_carrier(44, 45, "chain");
  CHECK(big.size() == 1980);
  CHECK_THAT(balance_factor(44, 45), Catch::Matchers::WithinAbs(45.0 / 44.0, 1e-12));

  auto unit = gen_balanced_carrier(1, 1, "chain");
  CHECK(unit.size() == 1);

  CHECK_THROWS_AS(gen_balanced_carrier(3, 3, "moebius"), UnknownShape);
  CHECK_THROWS_AS(gen_balanced_carrier(0, 3, "chain"), InvalidSpec);
}

TEST_CASE("grid-ish components are valid lattices of the requested size") {
  for (int k : {4, 9, 12, 13, 30}) {
    auto c = gen_balanced_carrier(k, k, "grid-ish");
    CHECK(c.size() == k * k);
    CHECK(c.observers().size() == k);
  }
}

TEST_CASE("scaling trials respect their structural bounds") {
  BenchConfig cfg;
  cfg.sizes = {{3, 3}, {5, 6}};
  cfg.trials = 30;
  cfg.warmup = 3;
  auto records = run_rbp_scaling(cfg);
  REQUIRE(records.size() == 60);
  for (const TrialRecord& r : records) {
    CHECK(r.time_us > 0.0);
    CHECK(r.affected_count <= r.upclosure_size);
    CHECK(r.upclosure_size <= r.lattice_size);
    CHECK(r.visited == static_cast<std::uint64_t>(r.upclosure_size));
    CHECK(r.trial_index >= 0);
    CHECK(r.trial_index < 30);
  }
  // saturation keeps strict increases well below the visited set on average
  double affected = 0, upclosure = 0;
  for (const TrialRecord& r : records) {
    affected += r.affected_count;
    upclosure += r.upclosure_size;
  }
  CHECK(affected < upclosure);
}

TEST_CASE("trial structure is deterministic for a fixed seed") {
  BenchConfig cfg;
  cfg.sizes = {{4, 4}, {7, 8}};
  cfg.trials = 10;
  cfg.warmup = 2;
  cfg.seed = 1234;
  auto a = run_rbp_scaling(cfg);
  auto b = run_rbp_scaling(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].affected_count == b[i].affected_count);
    CHECK(a[i].upclosure_size == b[i].upclosure_size);
    CHECK(a[i].visited == b[i].visited);
  }

  cfg.seed = 99;
  auto c = run_rbp_scaling(cfg);
  bool any_different = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].upclosure_size != c[i].upclosure_size) any_different = true;
  CHECK(any_different);
}

TEST_CASE("power-law fit recovers constructed exponents") {
  std::vector<TrialRecord> synth;
  for (int n : {10, 100, 1000, 10000}) {
    TrialRecord r;
    r.lattice_size = n;
    r.time_us = std::sqrt(static_cast<double>(n));
    synth.push_back(r);
  }
  auto fit = fit_powerlaw(synth);
  CHECK_THAT(fit.slope, Catch::Matchers::WithinAbs(0.5, 1e-9));
  CHECK_THAT(fit.r_squared, Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(fit.ci_low, Catch::Matchers::WithinAbs(0.5, 1e-6));
  CHECK_THAT(fit.ci_high, Catch::Matchers::WithinAbs(0.5, 1e-6));

  for (TrialRecord& r : synth) r.time_us = 7.5;
  auto flat = fit_powerlaw(synth);
  CHECK_THAT(flat.slope, Catch::Matchers::WithinAbs(0.0, 1e-12));

  synth.resize(2);
  CHECK_THROWS_AS(fit_powerlaw(synth), InsufficientData);
}

TEST_CASE("fit averages log-times per size") {
  // two sizes with asymmetric trial counts must not skew toward the
  // oversampled size
  std::vector<TrialRecord> synth;
  auto add = [&](int n, double t, int copies) {
    for (int i = 0; i < copies; ++i) {
      TrialRecord r;
      r.lattice_size = n;
      r.time_us = t;
      synth.push_back(r);
    }
  };
  add(10, 10.0, 50);
  add(100, 100.0, 1);
  add(1000, 1000.0, 1);
  auto fit = fit_powerlaw(synth);
  CHECK_THAT(fit.slope, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("ablation separates the three configurations") {
  BenchConfig cfg;
  cfg.sizes = {{8, 8}};
  cfg.seed = 7;
  auto rows = run_ablation(cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].config == "full");
  CHECK(rows[1].config == "no-mcc");
  CHECK(rows[2].config == "no-propagation");

  CHECK(rows[0].coverage == 1.0);
  CHECK(rows[1].coverage == 1.0);
  CHECK(rows[2].coverage == 0.0);

  // resolution can only shrink the live set
  CHECK(rows[0].belief_count <= rows[1].belief_count);
  CHECK(rows[1].belief_count == rows[2].belief_count);

  CHECK(rows[2].runtime_ms < rows[0].runtime_ms);
}

TEST_CASE("contradiction-detection scaling produces usable points") {
  BenchConfig cfg;
  cfg.sizes = {{6, 6}};
  auto points = run_mcc_scaling(cfg, {50, 100, 200, 400});
  REQUIRE(points.size() == 4);
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : points) {
    CHECK(p.time_ms >= 0.0);
    xy.emplace_back(p.belief_count, std::max(p.time_ms, 1e-6));
  }
  auto fit = fit_loglog(xy);
  CHECK(std::isfinite(fit.slope));
}

TEST_CASE("csv output carries one row per trial") {
  BenchConfig cfg;
  cfg.sizes = {{3, 3}, {4, 4}};
  cfg.trials = 5;
  cfg.warmup = 1;
  auto records = run_rbp_scaling(cfg);
  std::ostringstream os;
  write_trials_csv(os, records);
  const std::string text = os.str();
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + records.size());
  CHECK(text.rfind("size,n_obs,n_sit,trial,time_us,affected,upclosure\n", 0) == 0);
}

TEST_CASE("summary flags pathological per-size variance") {
  std::vector<TrialRecord> synth;
  auto add = [&](int n, double t) {
    TrialRecord r;
    r.lattice_size = n;
    r.n_obs = r.n_sit = n;
    r.time_us = t;
    synth.push_back(r);
  };
  // calm size
  for (int i = 0; i < 10; ++i) add(9, 10.0 + 0.01 * i);
  // wild size: one enormous outlier drives std over 3x mean
  for (int i = 0; i < 20; ++i) add(16, 1.0);
  add(16, 400.0);
  for (int n : {25, 36}) add(n, 5.0);

  BenchConfig cfg;
  cfg.sizes = {{3, 3}};
  auto fit = fit_powerlaw(synth);
  auto summary = scaling_summary_json(cfg, synth, &fit);
  bool calm_flag = true, wild_flag = false;
  for (const auto& row : summary.at("sizes")) {
    if (row.at("size") == 9) calm_flag = row.at("high_variance").get<bool>();
    if (row.at("size") == 16) wild_flag = row.at("high_variance").get<bool>();
  }
  CHECK_FALSE(calm_flag);
  CHECK(wild_flag);
  CHECK(summary.at("fit").contains("slope_ci95"));
}

TEST_CASE("standard scaling grid matches the published dimensions") {
  auto sizes = standard_scaling_sizes();
  REQUIRE(sizes.size() == 10);
  std::vector<int> products;
  for (auto [o, s] : sizes) products.push_back(o * s);
  CHECK(products == std::vector<int>{9, 16, 30, 56, 100, 182, 324, 600, 1089, 1980});
  for (auto [o, s] : sizes) CHECK(balance_factor(o, s) <= 1.21);
}
