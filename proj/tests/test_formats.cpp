#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "osl/io.hpp"
#include "osl/manager.hpp"

using namespace osl;

TEST_CASE("poset specs round-trip through JSON") {
  const PosetSpec spec = testutil::diamond_spec();
  const Json j = poset_spec_to_json(spec);
  const PosetSpec back = poset_spec_from_json(j);
  CHECK(back.elements == spec.elements);
  CHECK(back.covers == spec.covers);
}

TEST_CASE("poset spec parsing validates shape") {
  CHECK_THROWS_AS(poset_spec_from_json(parse_json("{}")), ParseError);
  CHECK_THROWS_AS(poset_spec_from_json(parse_json(R"({"elements": "x"})")), ParseError);
  CHECK_THROWS_AS(
      poset_spec_from_json(parse_json(R"({"elements": ["a"], "covers": [["a"]]})")),
      ParseError);
  CHECK_THROWS_AS(
      poset_spec_from_json(parse_json(R"({"elements": [1], "covers": []})")),
      ParseError);
}

TEST_CASE("carrier specs build carriers") {
  const Json j = parse_json(R"({
    "observers": {"elements": ["o0", "o1"], "covers": [["o0", "o1"]]},
    "situations": {"elements": ["s0", "s1"], "covers": [["s0", "s1"]]}
  })");
  const CarrierSpec spec = carrier_spec_from_json(j);
  const OslCarrier carrier = build_carrier(spec);
  CHECK(carrier.size() == 4);
  CHECK(carrier_spec_to_json(spec) == j);
}

TEST_CASE("belief statements parse with a defaulted polarity") {
  const Json j = parse_json(
      R"({"atom": "p", "observer": "o0", "situation": "s0", "weight": 0.8})");
  const BeliefStmt stmt = belief_from_json(j);
  CHECK(stmt.literal == pos("p"));
  CHECK(stmt.weight == 0.8);

  CHECK_THROWS_AS(
      belief_from_json(parse_json(R"({"atom": "p", "observer": "o0"})")), ParseError);
  CHECK_THROWS_AS(
      belief_from_json(parse_json(
          R"({"atom": "p", "observer": "o0", "situation": "s0", "weight": "x"})")),
      ParseError);
  const Json round = belief_to_json(stmt);
  CHECK(belief_from_json(round).literal == stmt.literal);
}

TEST_CASE("sessions round-trip and tolerate a missing stream") {
  Session s;
  s.spec = CarrierSpec{testutil::chain_spec(2, "o"), testutil::chain_spec(2, "s")};
  s.beliefs.push_back(BeliefStmt{pos("p"), "o0", "s0", 0.5});
  const Json j = session_to_json(s);
  const Session back = session_from_json(j);
  REQUIRE(back.beliefs.size() == 1);
  CHECK(back.beliefs[0].literal == pos("p"));
  CHECK(session_to_json(back) == j);

  const Session bare = session_from_json(parse_json(
      R"({"carrier": {"observers": {"elements": ["o"], "covers": []},
                      "situations": {"elements": ["s"], "covers": []}}})"));
  CHECK(bare.beliefs.empty());
}

TEST_CASE("node references use component labels") {
  auto c = testutil::chain_carrier(2, 3);
  const NodeId e = resolve_node(c, "o1", "s2");
  CHECK(e == c.pack(1, 2));
  const Json j = node_to_json(c, e);
  CHECK(j.at("observer") == "o1");
  CHECK(j.at("situation") == "s2");
  CHECK_THROWS_AS(resolve_node(c, "o7", "s0"), UnknownLabel);
}

TEST_CASE("update reports serialize with stable keys") {
  auto c = testutil::chain_carrier(2, 2);
  BeliefBase base(c);
  assert_belief(base, pos("p"), c.bottom(), 0.8);
  const UpdateReport r = assert_belief(base, neg("p"), c.top(), 0.3);

  const Json full = update_report_to_json(c, r);
  CHECK(full.contains("affected"));
  CHECK(full.at("record").at("id") == 1);
  CHECK(full.at("components").size() == 1);
  CHECK(full.at("components")[0].at("edges")[0] == Json::array({0, 1}));
  CHECK(full.at("resolution").at("removed") == Json::array({1}));
  CHECK(full.at("resweep").at("iterations") == 2);

  const Json compact = update_report_to_json(c, r, false);
  CHECK_FALSE(compact.contains("affected"));
  CHECK(compact.at("affected_count") == 1);

  // key order is fixed
  const std::string dumped = full.dump();
  CHECK(dumped.find("\"record\"") < dumped.find("\"affected\""));
  CHECK(dumped.find("\"affected\"") < dumped.find("\"components\""));
}

TEST_CASE("clean updates serialize null resolution") {
  auto c = testutil::chain_carrier(2, 2);
  BeliefBase base(c);
  const UpdateReport r = assert_belief(base, pos("p"), c.bottom(), 0.8);
  const Json j = update_report_to_json(c, r);
  CHECK(j.at("resolution").is_null());
  CHECK(j.at("resweep").is_null());
  CHECK(j.at("components") == Json::array());
}

TEST_CASE("sat reports expose either a witness or the conflicting atom") {
  SatReport sat;
  sat.satisfiable = true;
  sat.witness = {{"p", true}, {"q", false}};
  const Json j = sat_report_to_json(sat);
  CHECK(j.at("witness").at("p") == true);
  CHECK_FALSE(j.contains("conflict_atom"));

  SatReport unsat;
  unsat.satisfiable = false;
  unsat.conflict_atom = "p";
  const Json k = sat_report_to_json(unsat);
  CHECK(k.at("conflict_atom") == "p");
  CHECK_FALSE(k.contains("witness"));
}

TEST_CASE("comments are tolerated when requested") {
  const std::string text = "// leading note\n{\"elements\": [\"a\"], \"covers\": []}";
  CHECK_THROWS_AS(parse_json(text), ParseError);
  const Json j = parse_json(text, /*allow_comments=*/true);
  CHECK(j.at("elements")[0] == "a");
}
