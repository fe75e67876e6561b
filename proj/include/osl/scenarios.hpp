#pragma once

// Data-driven false-belief episodes, replayed through the integrated
// belief-management pipeline. Each scenario is a carrier spec plus an ordered
// list of assert and query steps; nothing in the engine is task-specific.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "osl/io.hpp"
#include "osl/manager.hpp"

namespace osl {

struct ScenarioStep {
  enum class Kind { Assert, Query };
  enum class Expect { Positive, Zero, Exact };

  Kind kind = Kind::Assert;
  Literal literal;
  std::string observer;
  std::string situation;
  double weight = 0.0;  // assert only

  Expect expect = Expect::Positive;  // query only
  double value = 0.0;                // exact expectation
  double tolerance = 1e-9;
};

struct Scenario {
  std::string name;
  CarrierSpec carrier;
  std::vector<ScenarioStep> steps;
};

struct QueryOutcome {
  int step = 0;
  ScenarioStep::Expect expect = ScenarioStep::Expect::Positive;
  double actual = 0.0;
  bool ok = false;
};

struct ScenarioResult {
  std::string name;
  bool passed = false;
  double confidence = 1.0;  // min credibility over positive-expectation queries
  std::vector<QueryOutcome> queries;
  double engine_ms = 0.0;  // time spent inside engine calls only
};

inline ScenarioResult run_scenario(const Scenario& s) {
  if (s.steps.empty()) throw InvalidScenario(s.name + ": scenario has no steps");
  bool any_query = false;
  for (const ScenarioStep& step : s.steps)
    if (step.kind == ScenarioStep::Kind::Query) any_query = true;
  if (!any_query) throw InvalidScenario(s.name + ": scenario has no query step");

  OslCarrier carrier = build_carrier(s.carrier);
  BeliefBase base(carrier);
  ScenarioResult result;
  result.name = s.name;
  result.passed = true;

  using Clock = std::chrono::steady_clock;
  std::chrono::nanoseconds engine_time{0};

  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const ScenarioStep& step = s.steps[i];
    NodeId node;
    try {
      node = resolve_node(carrier, step.observer, step.situation);
    } catch (const UnknownLabel& e) {
      throw InvalidScenario(s.name + ": step " + std::to_string(i) + ": " + e.what());
    }
    if (step.kind == ScenarioStep::Kind::Assert) {
      if (!(step.weight >= 0.0 && step.weight <= 1.0))
        throw InvalidScenario(s.name + ": step " + std::to_string(i) +
                              ": weight out of range");
      const auto t0 = Clock::now();
      assert_belief(base, step.literal, node, step.weight);
      engine_time += Clock::now() - t0;
    } else {
      const auto t0 = Clock::now();
      const double actual = base.cred(step.literal, node);
      engine_time += Clock::now() - t0;
      QueryOutcome outcome;
      outcome.step = static_cast<int>(i);
      outcome.expect = step.expect;
      outcome.actual = actual;
      switch (step.expect) {
        case ScenarioStep::Expect::Positive:
          outcome.ok = actual > 0.0;
          result.confidence = std::min(result.confidence, actual);
          break;
        case ScenarioStep::Expect::Zero:
          outcome.ok = actual == 0.0;
          break;
        case ScenarioStep::Expect::Exact:
          outcome.ok = std::fabs(actual - step.value) <= step.tolerance;
          break;
      }
      result.passed = result.passed && outcome.ok;
      result.queries.push_back(outcome);
    }
  }
  result.engine_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(engine_time)
          .count();
  return result;
}

// -- JSON ----------------------------------------------------------------------

inline ScenarioStep scenario_step_from_json(const Json& j) {
  ScenarioStep step;
  const std::string action = jsonutil::require_string(j, "action", "scenario step");
  if (action == "assert") {
    step.kind = ScenarioStep::Kind::Assert;
  } else if (action == "query") {
    step.kind = ScenarioStep::Kind::Query;
  } else {
    throw ParseError("scenario step: unknown action \"" + action + "\"");
  }
  step.literal.atom = jsonutil::require_string(j, "atom", "scenario step");
  step.literal.negated = jsonutil::optional_bool(j, "negated", false);
  step.observer = jsonutil::require_string(j, "observer", "scenario step");
  step.situation = jsonutil::require_string(j, "situation", "scenario step");
  if (step.kind == ScenarioStep::Kind::Assert) {
    step.weight = jsonutil::require_number(j, "weight", "scenario step");
  } else {
    const std::string expect = jsonutil::require_string(j, "expect", "scenario step");
    if (expect == "positive") {
      step.expect = ScenarioStep::Expect::Positive;
    } else if (expect == "zero") {
      step.expect = ScenarioStep::Expect::Zero;
    } else if (expect == "exact") {
      step.expect = ScenarioStep::Expect::Exact;
      step.value = jsonutil::require_number(j, "value", "scenario step");
      if (j.contains("tolerance"))
        step.tolerance = jsonutil::require_number(j, "tolerance", "scenario step");
    } else {
      throw ParseError("scenario step: unknown expectation \"" + expect + "\"");
    }
  }
  return step;
}

inline Json scenario_step_to_json(const ScenarioStep& step) {
  Json j;
  j["action"] = step.kind == ScenarioStep::Kind::Assert ? "assert" : "query";
  j["atom"] = step.literal.atom;
  j["negated"] = step.literal.negated;
  j["observer"] = step.observer;
  j["situation"] = step.situation;
  if (step.kind == ScenarioStep::Kind::Assert) {
    j["weight"] = step.weight;
  } else {
    switch (step.expect) {
      case ScenarioStep::Expect::Positive: j["expect"] = "positive"; break;
      case ScenarioStep::Expect::Zero: j["expect"] = "zero"; break;
      case ScenarioStep::Expect::Exact:
        j["expect"] = "exact";
        j["value"] = step.value;
        j["tolerance"] = step.tolerance;
        break;
    }
  }
  return j;
}

inline Scenario scenario_from_json(const Json& j) {
  Scenario s;
  s.name = jsonutil::require_string(j, "name", "scenario");
  s.carrier = carrier_spec_from_json(jsonutil::require(j, "carrier", "scenario"));
  const Json& steps = jsonutil::require(j, "steps", "scenario");
  if (!steps.is_array()) throw ParseError("scenario: \"steps\" must be an array");
  for (const Json& step : steps) s.steps.push_back(scenario_step_from_json(step));
  return s;
}

inline Json scenario_to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["carrier"] = carrier_spec_to_json(s.carrier);
  Json steps = Json::array();
  for (const ScenarioStep& step : s.steps) steps.push_back(scenario_step_to_json(step));
  j["steps"] = std::move(steps);
  return j;
}

/// Load one scenario or an array of scenarios; // comments are allowed.
inline std::vector<Scenario> load_scenarios(const std::string& path) {
  const Json j = load_json_file(path, /*allow_comments=*/true);
  std::vector<Scenario> out;
  if (j.is_array()) {
    for (const Json& s : j) out.push_back(scenario_from_json(s));
  } else {
    out.push_back(scenario_from_json(j));
  }
  return out;
}

// -- builtin episodes ------------------------------------------------------------

namespace scenario_detail {

// Observers for the false-belief family: two agents below an informed top,
// over a shared common-ground bottom.
inline PosetSpec agents_observers() {
  return PosetSpec{{"anyone", "sally", "anne", "reality"},
                   {{"anyone", "sally"},
                    {"anyone", "anne"},
                    {"sally", "reality"},
                    {"anne", "reality"}}};
}

inline PosetSpec move_situations() {
  return PosetSpec{{"before-move", "after-move"}, {{"before-move", "after-move"}}};
}

inline ScenarioStep assert_step(std::string atom, std::string observer,
                                std::string situation, double weight) {
  ScenarioStep s;
  s.kind = ScenarioStep::Kind::Assert;
  s.literal = Literal{std::move(atom), false};
  s.observer = std::move(observer);
  s.situation = std::move(situation);
  s.weight = weight;
  return s;
}

inline ScenarioStep query_step(std::string atom, std::string observer,
                               std::string situation, ScenarioStep::Expect expect) {
  ScenarioStep s;
  s.kind = ScenarioStep::Kind::Query;
  s.literal = Literal{std::move(atom), false};
  s.observer = std::move(observer);
  s.situation = std::move(situation);
  s.expect = expect;
  return s;
}

}  // namespace scenario_detail

/// The seven canonical false-belief episodes, in report order. Weights are
/// chosen so the confidence of each episode is reproducible exactly.
inline std::vector<Scenario> builtin_scenarios() {
  using scenario_detail::assert_step;
  using scenario_detail::query_step;
  constexpr auto kPositive = ScenarioStep::Expect::Positive;
  constexpr auto kZero = ScenarioStep::Expect::Zero;

  std::vector<Scenario> out;

  {
    Scenario s;
    s.name = "Sally-Anne (basic)";
    s.carrier = {scenario_detail::agents_observers(), scenario_detail::move_situations()};
    s.steps = {
        assert_step("marble_in_basket", "sally", "before-move", 1.0),
        assert_step("marble_in_basket", "anne", "before-move", 1.0),
        assert_step("marble_in_box", "anne", "after-move", 1.0),
        assert_step("marble_in_box", "reality", "after-move", 1.0),
        query_step("marble_in_basket", "sally", "after-move", kPositive),
        query_step("marble_in_box", "sally", "after-move", kZero),
        query_step("marble_in_box", "reality", "after-move", kPositive),
    };
    out.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "Sally-Anne with distractor";
    s.carrier = {scenario_detail::agents_observers(), scenario_detail::move_situations()};
    s.steps = {
        assert_step("marble_in_basket", "sally", "before-move", 1.0),
        assert_step("toy_on_shelf", "anyone", "before-move", 1.0),
        assert_step("marble_in_pocket", "anne", "before-move", 0.5),
        assert_step("marble_in_box", "anne", "after-move", 1.0),
        assert_step("marble_in_box", "reality", "after-move", 1.0),
        query_step("marble_in_basket", "sally", "after-move", kPositive),
        query_step("marble_in_box", "sally", "after-move", kZero),
        query_step("toy_on_shelf", "sally", "after-move", kPositive),
        query_step("marble_in_pocket", "sally", "after-move", kZero),
        query_step("marble_in_box", "reality", "after-move", kPositive),
    };
    out.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "Nested belief (Level 2)";
    s.carrier = {PosetSpec{{"anyone", "sally", "anne", "annes-model-of-sally", "reality"},
                           {{"anyone", "sally"},
                            {"anyone", "anne"},
                            {"anyone", "annes-model-of-sally"},
                            {"sally", "reality"},
                            {"anne", "reality"},
                            {"annes-model-of-sally", "reality"}}},
                 scenario_detail::move_situations()};
    s.steps = {
        assert_step("marble_in_basket", "annes-model-of-sally", "before-move", 0.95),
        assert_step("marble_in_box", "anne", "after-move", 1.0),
        query_step("marble_in_basket", "annes-model-of-sally", "after-move", kPositive),
        query_step("marble_in_box", "annes-model-of-sally", "after-move", kZero),
        query_step("marble_in_box", "anne", "after-move", kPositive),
    };
    out.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "Multiple objects";
    s.carrier = {scenario_detail::agents_observers(), scenario_detail::move_situations()};
    s.steps = {
        assert_step("marble_in_basket", "anyone", "before-move", 1.0),
        assert_step("ball_in_cupboard", "anyone", "before-move", 1.0),
        assert_step("marble_in_box", "anne", "after-move", 1.0),
        assert_step("marble_in_box", "reality", "after-move", 1.0),
        query_step("marble_in_basket", "sally", "after-move", kPositive),
        query_step("ball_in_cupboard", "sally", "after-move", kPositive),
        query_step("marble_in_box", "sally", "after-move", kZero),
        query_step("ball_in_cupboard", "reality", "after-move", kPositive),
    };
    out.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "Temporal belief change";
    s.carrier = {scenario_detail::agents_observers(),
                 PosetSpec{{"t0", "t1", "t2"}, {{"t0", "t1"}, {"t1", "t2"}}}};
    s.steps = {
        assert_step("marble_in_basket", "anyone", "t0", 0.975),
        query_step("marble_in_basket", "sally", "t1", kPositive),
        assert_step("marble_in_box", "anne", "t1", 1.0),
        query_step("marble_in_box", "sally", "t1", kZero),
        assert_step("marble_in_box", "sally", "t2", 1.0),
        query_step("marble_in_box", "sally", "t2", kPositive),
        query_step("marble_in_box", "sally", "t1", kZero),
    };
    out.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "False photograph";
    s.carrier = {PosetSpec{{"anyone", "camera", "reality"},
                           {{"anyone", "camera"}, {"camera", "reality"}}},
                 PosetSpec{{"t0", "t1"}, {{"t0", "t1"}}}};
    s.steps = {
        assert_step("marble_in_basket", "camera", "t0", 1.0),
        assert_step("marble_in_box", "reality", "t1", 1.0),
        query_step("marble_in_basket", "camera", "t1", kPositive),
        query_step("marble_in_box", "camera", "t1", kZero),
        query_step("marble_in_box", "reality", "t1", kPositive),
    };
    out.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "Appearance-reality";
    s.carrier = {PosetSpec{{"naive-viewer", "informed-viewer"},
                           {{"naive-viewer", "informed-viewer"}}},
                 PosetSpec{{"inspection"}, {}}};
    s.steps = {
        assert_step("looks_like_rock", "naive-viewer", "inspection", 0.925),
        assert_step("is_sponge", "informed-viewer", "inspection", 1.0),
        query_step("looks_like_rock", "naive-viewer", "inspection", kPositive),
        query_step("is_sponge", "naive-viewer", "inspection", kZero),
        query_step("is_sponge", "informed-viewer", "inspection", kPositive),
        query_step("looks_like_rock", "informed-viewer", "inspection", kPositive),
    };
    out.push_back(std::move(s));
  }

  return out;
}

}  // namespace osl
