// Command-line surface for the belief-store engine: lattice validation,
// belief streams, queries, contradiction reports, the false-belief battery,
// and the benchmark harness.
//
// Exit codes: 0 ok, 2 lattice invalid, 3 label/query error, 4 parse error,
// 5 scenario failure. Error exits carry a JSON diagnostic on stderr.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osl/bench.hpp"
#include "osl/io.hpp"
#include "osl/manager.hpp"
#include "osl/scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitLattice = 2;
constexpr int kExitLabel = 3;
constexpr int kExitParse = 4;
constexpr int kExitScenario = 5;

int exit_code_for(const osl::Error& e) {
  const std::string& code = e.code();
  if (code == "ParseError" || code == "WeightOutOfRange") return kExitParse;
  if (code == "UnknownLabel" || code == "InvalidScenario" || code == "InvalidNode" ||
      code == "IndexOutOfRange")
    return kExitLabel;
  if (code == "CycleDetected" || code == "NotALattice" || code == "NoUniqueBound" ||
      code == "DuplicateLabel" || code == "InvalidSpec")
    return kExitLattice;
  return 1;
}

int report_error(const osl::Error& e) {
  osl::Json diag;
  diag["error"] = e.code();
  diag["message"] = e.what();
  if (const auto* nl = dynamic_cast<const osl::NotALattice*>(&e))
    diag["pair"] = osl::Json::array({nl->first, nl->second});
  std::cerr << diag.dump() << std::endl;
  return exit_code_for(e);
}

osl::Literal parse_literal(std::string text) {
  bool negated = false;
  if (!text.empty() && (text[0] == '!' || text[0] == '~')) {
    negated = true;
    text.erase(0, 1);
  }
  if (text.empty()) throw osl::ParseError("empty literal");
  return osl::Literal{std::move(text), negated};
}

std::vector<std::pair<int, int>> parse_sizes(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string part = text.substr(pos, comma - pos);
    const std::size_t x = part.find('x');
    if (x == std::string::npos)
      throw osl::ParseError("size must look like 10x10, got \"" + part + "\"");
    try {
      out.emplace_back(std::stoi(part.substr(0, x)), std::stoi(part.substr(x + 1)));
    } catch (const std::exception&) {
      throw osl::ParseError("size must look like 10x10, got \"" + part + "\"");
    }
    pos = comma + 1;
  }
  if (out.empty()) throw osl::ParseError("no sizes given");
  return out;
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("OSL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw osl::ParseError(std::string("OSL_SEED is not an integer: ") + env);
    }
  }
  return flag_seed;
}

int cmd_validate(const std::string& path) {
  const osl::Json j = osl::load_json_file(path);
  if (j.is_object() && j.contains("elements")) {
    osl::build_lattice(osl::poset_spec_from_json(j));
  } else {
    osl::build_carrier(osl::carrier_spec_from_json(
        j.contains("carrier") ? j.at("carrier") : j));
  }
  std::cout << "{\"valid\":true}" << std::endl;
  return kExitOk;
}

int cmd_assert(const std::string& session_path, const std::string& stream_path,
               const std::string& out_path, bool verbose) {
  osl::Session session = osl::session_from_json(osl::load_json_file(session_path));
  osl::OslCarrier carrier = osl::build_carrier(session.spec);
  osl::BeliefBase base(carrier);
  for (const osl::BeliefStmt& b : session.beliefs)
    osl::assert_belief(base, b.literal,
                       osl::resolve_node(carrier, b.observer, b.situation), b.weight);

  std::ifstream file;
  std::istream* in = &std::cin;
  if (stream_path != "-") {
    file.open(stream_path);
    if (!file) throw osl::ParseError("cannot open file: " + stream_path);
    in = &file;
  }
  std::string line;
  int line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    osl::BeliefStmt stmt;
    try {
      stmt = osl::belief_from_json(osl::parse_json(line));
    } catch (const osl::ParseError& e) {
      throw osl::ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    const osl::NodeId node = osl::resolve_node(carrier, stmt.observer, stmt.situation);
    const osl::UpdateReport report =
        osl::assert_belief(base, stmt.literal, node, stmt.weight);
    std::cout << osl::update_report_to_json(carrier, report, verbose).dump()
              << std::endl;
    session.beliefs.push_back(stmt);
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << osl::session_to_json(session).dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_query(const std::string& session_path, const std::string& literal_text,
              const std::string& observer, const std::string& situation) {
  osl::Session session = osl::session_from_json(osl::load_json_file(session_path));
  osl::OslCarrier carrier = osl::build_carrier(session.spec);
  osl::BeliefBase base(carrier);
  for (const osl::BeliefStmt& b : session.beliefs)
    osl::assert_belief(base, b.literal,
                       osl::resolve_node(carrier, b.observer, b.situation), b.weight);
  const double w =
      osl::query(base, parse_literal(literal_text), observer, situation);
  std::cout << osl::Json(w).dump() << std::endl;
  return kExitOk;
}

int cmd_mcc(const std::string& session_path) {
  osl::Session session = osl::session_from_json(osl::load_json_file(session_path));
  osl::OslCarrier carrier = osl::build_carrier(session.spec);
  osl::BeliefBase base(carrier);
  // raw replay: contradictions must survive for the report to show them
  for (const osl::BeliefStmt& b : session.beliefs)
    osl::rbp_insert(base, b.literal,
                    osl::resolve_node(carrier, b.observer, b.situation), b.weight);
  const auto components = osl::mcc(base);
  std::vector<std::vector<std::pair<osl::RecordId, osl::RecordId>>> edges;
  for (const auto& c : components) edges.push_back(osl::contradiction_edges(base, c));
  std::cout << osl::components_to_json(components, edges).dump() << std::endl;
  return kExitOk;
}

int cmd_check(const std::string& session_path, const std::string& observer,
              const std::string& situation) {
  osl::Session session = osl::session_from_json(osl::load_json_file(session_path));
  osl::OslCarrier carrier = osl::build_carrier(session.spec);
  osl::BeliefBase base(carrier);
  for (const osl::BeliefStmt& b : session.beliefs)
    osl::assert_belief(base, b.literal,
                       osl::resolve_node(carrier, b.observer, b.situation), b.weight);
  const auto report =
      osl::check_soundness(base, osl::resolve_node(carrier, observer, situation));
  std::cout << osl::sat_report_to_json(report).dump() << std::endl;
  return kExitOk;
}

int cmd_tom(const std::string& scenarios_path) {
  std::vector<osl::Scenario> scenarios =
      scenarios_path.empty() ? osl::builtin_scenarios()
                             : osl::load_scenarios(scenarios_path);
  bool all_passed = true;
  std::printf("%-30s %-8s %-9s %-11s %s\n", "Scenario", "Result", "Expected",
              "Confidence", "Time(ms)");
  for (const osl::Scenario& s : scenarios) {
    const osl::ScenarioResult r = osl::run_scenario(s);
    all_passed = all_passed && r.passed;
    std::printf("%-30s %-8s %-9s %-11.3f %.3f\n", r.name.c_str(),
                r.passed ? "PASS" : "FAIL", "PASS", r.confidence, r.engine_ms);
    if (r.engine_ms >= 1.0)
      std::fprintf(stderr, "warning: %s took %.3f ms of engine time\n",
                   r.name.c_str(), r.engine_ms);
  }
  std::fflush(stdout);
  return all_passed ? kExitOk : kExitScenario;
}

int cmd_bench(osl::BenchConfig cfg, const std::string& out_prefix, bool mcc_scaling) {
  const auto records = osl::run_rbp_scaling(cfg);
  std::optional<osl::FitReport> fit;
  try {
    fit = osl::fit_powerlaw(records);
  } catch (const osl::InsufficientData&) {
    // fewer than 3 sizes: emit trials without a fit
  }
  osl::Json summary =
      osl::scaling_summary_json(cfg, records, fit ? &*fit : nullptr);
  if (mcc_scaling) {
    const std::vector<int> counts{100, 200, 400, 800, 1600};
    const auto points = osl::run_mcc_scaling(cfg, counts);
    std::vector<std::pair<double, double>> xy;
    osl::Json mcc_json = osl::Json::array();
    for (const auto& p : points) {
      xy.emplace_back(p.belief_count, std::max(p.time_ms, 1e-6));
      osl::Json row;
      row["beliefs"] = p.belief_count;
      row["time_ms"] = p.time_ms;
      mcc_json.push_back(std::move(row));
    }
    const auto mcc_fit = osl::fit_loglog(xy);
    summary["mcc_scaling"] = std::move(mcc_json);
    summary["mcc_fit_slope"] = mcc_fit.slope;
  }

  if (out_prefix.empty()) {
    osl::write_trials_csv(std::cout, records);
    std::cerr << summary.dump(2) << std::endl;
  } else {
    std::ofstream csv(out_prefix + ".csv");
    osl::write_trials_csv(csv, records);
    std::ofstream json(out_prefix + ".json");
    json << summary.dump(2) << '\n';
    std::cout << summary.at("fit").dump() << std::endl;
  }
  return kExitOk;
}

int cmd_ablate(osl::BenchConfig cfg, const std::string& out_path) {
  const auto rows = osl::run_ablation(cfg);
  const osl::Json j = osl::ablation_json(rows);
  std::cout << j.dump(2) << std::endl;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Observer-situation lattice belief store"};
  app.require_subcommand(1);

  std::string lattice_path;
  auto* validate = app.add_subcommand("validate", "validate a lattice or carrier spec");
  validate->add_option("file", lattice_path, "lattice/carrier JSON")->required();

  std::string session_path, stream_path, out_path;
  bool verbose = false;
  auto* assert_cmd = app.add_subcommand("assert", "assert a JSONL belief stream");
  assert_cmd->add_option("session", session_path, "session JSON")->required();
  assert_cmd->add_option("stream", stream_path, "belief JSONL file, - for stdin")
      ->required();
  assert_cmd->add_option("--out", out_path, "write the extended session here");
  assert_cmd->add_flag("--verbose", verbose, "include full affected-node lists");

  std::string literal_text, observer, situation;
  auto* query = app.add_subcommand("query", "credibility of a literal at a node");
  query->add_option("session", session_path, "session JSON")->required();
  query->add_option("literal", literal_text, "atom or !atom")->required();
  query->add_option("observer", observer, "observer label")->required();
  query->add_option("situation", situation, "situation label")->required();

  auto* mcc_cmd = app.add_subcommand("mcc", "contradiction components of a session");
  mcc_cmd->add_option("session", session_path, "session JSON")->required();

  auto* check = app.add_subcommand("check", "satisfiability of the supported theory");
  check->add_option("session", session_path, "session JSON")->required();
  check->add_option("observer", observer, "observer label")->required();
  check->add_option("situation", situation, "situation label")->required();

  std::string scenarios_path;
  auto* tom = app.add_subcommand("tom", "run the false-belief battery");
  tom->add_option("--scenarios", scenarios_path, "scenario JSON (defaults to builtin)");

  std::string sizes_text, shape = "chain", out_prefix;
  std::uint64_t seed = 42;
  int trials = 30, warmup = 5, insert_count = 0;
  bool mcc_scaling = false;
  auto* bench = app.add_subcommand("bench", "propagation scaling benchmark");
  bench->add_option("--sizes", sizes_text, "comma-separated OxS pairs, e.g. 3x3,10x10");
  bench->add_option("--trials", trials, "timed trials per size");
  bench->add_option("--seed", seed, "workload seed (OSL_SEED overrides)");
  bench->add_option("--warmup", warmup, "discarded trials per size");
  bench->add_option("--insert-count", insert_count, "pre-loaded records (0 = n/2)");
  bench->add_option("--shape", shape, "component shape: chain or grid-ish");
  bench->add_option("--out", out_prefix, "write <out>.csv and <out>.json");
  bench->add_flag("--mcc-scaling", mcc_scaling, "also time contradiction detection");

  std::string ablate_out;
  auto* ablate = app.add_subcommand("ablate", "component ablation study");
  ablate->add_option("--sizes", sizes_text, "carrier size, e.g. 10x10");
  ablate->add_option("--seed", seed, "workload seed (OSL_SEED overrides)");
  ablate->add_option("--insert-count", insert_count, "workload length (0 = auto)");
  ablate->add_option("--shape", shape, "component shape");
  ablate->add_option("--out", ablate_out, "also write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(lattice_path);
    if (assert_cmd->parsed()) return cmd_assert(session_path, stream_path, out_path, verbose);
    if (query->parsed()) return cmd_query(session_path, literal_text, observer, situation);
    if (mcc_cmd->parsed()) return cmd_mcc(session_path);
    if (check->parsed()) return cmd_check(session_path, observer, situation);
    if (tom->parsed()) return cmd_tom(scenarios_path);
    if (bench->parsed() || ablate->parsed()) {
      osl::BenchConfig cfg;
      cfg.sizes = sizes_text.empty()
                      ? (bench->parsed() ? osl::standard_scaling_sizes()
                                         : std::vector<std::pair<int, int>>{{10, 10}})
                      : parse_sizes(sizes_text);
      cfg.trials = trials;
      cfg.warmup = warmup;
      cfg.insert_count = insert_count;
      cfg.shape = shape;
      cfg.seed = effective_seed(seed);
      if (bench->parsed()) return cmd_bench(cfg, out_prefix, mcc_scaling);
      return cmd_ablate(cfg, ablate_out);
    }
  } catch (const osl::Error& e) {
    return report_error(e);
  }
  return kExitOk;
}
