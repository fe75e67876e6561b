#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "osl/oracle.hpp"
#include "osl/scenarios.hpp"

using namespace osl;

namespace {

std::string data_dir() {
  if (const char* env = std::getenv("OSL_DATA")) return env;
  for (const char* candidate : {"data", "../data", "../../data"})
    if (std::filesystem::exists(std::filesystem::path(candidate) / "scenarios"))
      return candidate;
  return "data";
}

const std::vector<std::string> kExpectedNames{
    "Sally-Anne (basic)",       "Sally-Anne with distractor",
    "Nested belief (Level 2)",  "Multiple objects",
    "Temporal belief change",   "False photograph",
    "Appearance-reality"};

}  // namespace

TEST_CASE("the builtin battery has seven episodes in report order") {
  auto scenarios = builtin_scenarios();
  REQUIRE(scenarios.size() == 7);
  for (std::size_t i = 0; i < scenarios.size(); ++i)
    CHECK(scenarios[i].name == kExpectedNames[i]);
}

TEST_CASE("every builtin episode passes with its encoded confidence") {
  const std::vector<double> expected_confidence{1.0, 1.0, 0.95, 1.0, 0.975, 1.0, 0.925};
  auto scenarios = builtin_scenarios();
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    auto result = run_scenario(scenarios[i]);
    INFO(result.name);
    CHECK(result.passed);
    CHECK(result.confidence == expected_confidence[i]);
    CHECK(result.engine_ms >= 0.0);
    for (const QueryOutcome& q : result.queries) CHECK(q.ok);
  }
}

TEST_CASE("false-belief separation holds at the lattice level") {
  auto s = builtin_scenarios().front();
  OslCarrier carrier = build_carrier(s.carrier);
  BeliefBase base(carrier);
  for (const ScenarioStep& step : s.steps) {
    if (step.kind != ScenarioStep::Kind::Assert) continue;
    assert_belief(base, step.literal,
                  resolve_node(carrier, step.observer, step.situation), step.weight);
  }
  const NodeId sally_after = resolve_node(carrier, "sally", "after-move");
  const NodeId reality_after = resolve_node(carrier, "reality", "after-move");
  CHECK(base.cred(pos("marble_in_basket"), sally_after) > 0.0);
  CHECK(base.cred(pos("marble_in_box"), sally_after) == 0.0);
  CHECK(base.cred(pos("marble_in_box"), reality_after) > 0.0);
  // distinct nodes hold genuinely distinct belief states
  CHECK(base.supported_theory(sally_after) != base.supported_theory(reality_after));
}

TEST_CASE("a corrupted expectation fails the episode") {
  Scenario s = builtin_scenarios().front();
  ScenarioStep bogus;
  bogus.kind = ScenarioStep::Kind::Query;
  bogus.literal = pos("marble_on_roof");  // never asserted
  bogus.observer = "reality";
  bogus.situation = "after-move";
  bogus.expect = ScenarioStep::Expect::Positive;
  s.steps.push_back(bogus);
  auto result = run_scenario(s);
  CHECK_FALSE(result.passed);
  CHECK(result.confidence == 0.0);
  CHECK_FALSE(result.queries.back().ok);
}

TEST_CASE("scenarios round-trip through JSON") {
  auto scenarios = builtin_scenarios();
  Json array = Json::array();
  for (const Scenario& s : scenarios) array.push_back(scenario_to_json(s));

  auto tmp = std::filesystem::temp_directory_path() / "osl_scenarios_roundtrip.json";
  {
    std::ofstream out(tmp);
    out << array.dump(2);
  }
  auto loaded = load_scenarios(tmp.string());
  REQUIRE(loaded.size() == scenarios.size());
  for (std::size_t i = 0; i < loaded.size(); ++i)
    CHECK(scenario_to_json(loaded[i]).dump() == scenario_to_json(scenarios[i]).dump());
  std::filesystem::remove(tmp);
}

TEST_CASE("malformed scenario files raise parse errors") {
  auto tmp = std::filesystem::temp_directory_path() / "osl_scenarios_bad.json";
  {
    std::ofstream out(tmp);
    out << "{\"name\": \"broken\"";
  }
  CHECK_THROWS_AS(load_scenarios(tmp.string()), ParseError);
  {
    std::ofstream out(tmp);
    out << "{\"name\": \"broken\", \"carrier\": {}, \"steps\": []}";
  }
  CHECK_THROWS_AS(load_scenarios(tmp.string()), ParseError);
  std::filesystem::remove(tmp);
  CHECK_THROWS_AS(load_scenarios("/nonexistent/osl.json"), ParseError);
}

TEST_CASE("semantic scenario defects are reported with their step") {
  Scenario s = builtin_scenarios().front();
  s.steps.clear();
  CHECK_THROWS_AS(run_scenario(s), InvalidScenario);

  s = builtin_scenarios().front();
  s.steps.resize(4);  // asserts only, no query
  CHECK_THROWS_AS(run_scenario(s), InvalidScenario);

  s = builtin_scenarios().front();
  s.steps[2].observer = "martian";
  try {
    run_scenario(s);
    FAIL("expected InvalidScenario");
  } catch (const InvalidScenario& e) {
    CHECK(std::string(e.what()).find("step 2") != std::string::npos);
  }
}

TEST_CASE("shipped scenario files mirror the builtin encodings") {
  const std::vector<std::string> files{
      "sally_anne_basic.json",      "sally_anne_distractor.json",
      "nested_belief_level2.json",  "multiple_objects.json",
      "temporal_belief_change.json", "false_photograph.json",
      "appearance_reality.json"};
  auto scenarios = builtin_scenarios();
  REQUIRE(files.size() == scenarios.size());
  const std::filesystem::path dir = std::filesystem::path(data_dir()) / "scenarios";
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto loaded = load_scenarios((dir / files[i]).string());
    REQUIRE(loaded.size() == 1);
    INFO(files[i]);
    CHECK(scenario_to_json(loaded[0]).dump() == scenario_to_json(scenarios[i]).dump());
  }
}

TEST_CASE("replaying an episode is deterministic") {
  for (const Scenario& s : builtin_scenarios()) {
    auto a = run_scenario(s);
    auto b = run_scenario(s);
    CHECK(a.passed == b.passed);
    CHECK(a.confidence == b.confidence);
    REQUIRE(a.queries.size() == b.queries.size());
    for (std::size_t i = 0; i < a.queries.size(); ++i)
      CHECK(a.queries[i].actual == b.queries[i].actual);
  }
}
