#pragma once

// JSON bindings for the file formats and reports. All emitted JSON uses
// ordered maps so output is byte-stable across runs.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "osl/manager.hpp"
#include "osl/poset.hpp"
#include "osl/product.hpp"

namespace osl {

using Json = nlohmann::ordered_json;

inline Json parse_json(const std::string& text, bool allow_comments = false) {
  try {
    return Json::parse(text, nullptr, true, allow_comments);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

inline Json load_json_file(const std::string& path, bool allow_comments = false) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), allow_comments);
}

namespace jsonutil {

inline const Json& require(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline std::string require_string(const Json& j, const char* key, const char* what) {
  const Json& v = require(j, key, what);
  if (!v.is_string())
    throw ParseError(std::string(what) + ": field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline double require_number(const Json& j, const char* key, const char* what) {
  const Json& v = require(j, key, what);
  if (!v.is_number())
    throw ParseError(std::string(what) + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

inline bool optional_bool(const Json& j, const char* key, bool fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_boolean()) throw ParseError(std::string("field \"") + key + "\" must be a boolean");
  return v.get<bool>();
}

}  // namespace jsonutil

// -- lattice and carrier specs ------------------------------------------------

inline PosetSpec poset_spec_from_json(const Json& j) {
  PosetSpec spec;
  const Json& elements = jsonutil::require(j, "elements", "poset spec");
  if (!elements.is_array()) throw ParseError("poset spec: \"elements\" must be an array");
  for (const Json& e : elements) {
    if (!e.is_string()) throw ParseError("poset spec: element labels must be strings");
    spec.elements.push_back(e.get<std::string>());
  }
  const Json& covers = jsonutil::require(j, "covers", "poset spec");
  if (!covers.is_array()) throw ParseError("poset spec: \"covers\" must be an array");
  for (const Json& pair : covers) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      throw ParseError("poset spec: covers must be [lower, upper] label pairs");
    spec.covers.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  return spec;
}

inline Json poset_spec_to_json(const PosetSpec& spec) {
  Json j;
  j["elements"] = spec.elements;
  Json covers = Json::array();
  for (const auto& [lo, hi] : spec.covers) covers.push_back(Json::array({lo, hi}));
  j["covers"] = std::move(covers);
  return j;
}

struct CarrierSpec {
  PosetSpec observers;
  PosetSpec situations;
};

inline CarrierSpec carrier_spec_from_json(const Json& j) {
  return CarrierSpec{
      poset_spec_from_json(jsonutil::require(j, "observers", "carrier spec")),
      poset_spec_from_json(jsonutil::require(j, "situations", "carrier spec"))};
}

inline Json carrier_spec_to_json(const CarrierSpec& spec) {
  Json j;
  j["observers"] = poset_spec_to_json(spec.observers);
  j["situations"] = poset_spec_to_json(spec.situations);
  return j;
}

inline OslCarrier build_carrier(const CarrierSpec& spec) {
  return OslCarrier(build_lattice(spec.observers), build_lattice(spec.situations));
}

// -- nodes and belief statements ----------------------------------------------

inline NodeId resolve_node(const OslCarrier& carrier, const std::string& observer,
                           const std::string& situation) {
  return carrier.pack(carrier.observers().index_of(observer),
                      carrier.situations().index_of(situation));
}

inline Json node_to_json(const OslCarrier& carrier, NodeId e) {
  auto [o, s] = carrier.unpack(e);
  Json j;
  j["observer"] = carrier.observers().label(o);
  j["situation"] = carrier.situations().label(s);
  return j;
}

// One line of a belief stream: a literal at a labeled node with a weight.
struct BeliefStmt {
  Literal literal;
  std::string observer;
  std::string situation;
  double weight = 0.0;
};

inline BeliefStmt belief_from_json(const Json& j) {
  BeliefStmt stmt;
  stmt.literal.atom = jsonutil::require_string(j, "atom", "belief");
  stmt.literal.negated = jsonutil::optional_bool(j, "negated", false);
  stmt.observer = jsonutil::require_string(j, "observer", "belief");
  stmt.situation = jsonutil::require_string(j, "situation", "belief");
  stmt.weight = jsonutil::require_number(j, "weight", "belief");
  return stmt;
}

inline Json belief_to_json(const BeliefStmt& stmt) {
  Json j;
  j["atom"] = stmt.literal.atom;
  j["negated"] = stmt.literal.negated;
  j["observer"] = stmt.observer;
  j["situation"] = stmt.situation;
  j["weight"] = stmt.weight;
  return j;
}

// A carrier plus an ordered belief stream; replaying it reconstructs a base.
struct Session {
  CarrierSpec spec;
  std::vector<BeliefStmt> beliefs;
};

inline Session session_from_json(const Json& j) {
  Session s;
  s.spec = carrier_spec_from_json(jsonutil::require(j, "carrier", "session"));
  if (j.contains("beliefs")) {
    const Json& beliefs = j.at("beliefs");
    if (!beliefs.is_array()) throw ParseError("session: \"beliefs\" must be an array");
    for (const Json& b : beliefs) s.beliefs.push_back(belief_from_json(b));
  }
  return s;
}

inline Json session_to_json(const Session& s) {
  Json j;
  j["carrier"] = carrier_spec_to_json(s.spec);
  Json beliefs = Json::array();
  for (const BeliefStmt& b : s.beliefs) beliefs.push_back(belief_to_json(b));
  j["beliefs"] = std::move(beliefs);
  return j;
}

// -- reports --------------------------------------------------------------------

inline Json record_to_json(const OslCarrier& carrier, const BeliefRecord& r) {
  Json j;
  j["id"] = r.id;
  j["atom"] = r.literal.atom;
  j["negated"] = r.literal.negated;
  j["node"] = node_to_json(carrier, r.node);
  j["weight"] = r.weight;
  j["live"] = r.live;
  return j;
}

inline Json components_to_json(
    const std::vector<ContradictionComponent>& components,
    const std::vector<std::vector<std::pair<RecordId, RecordId>>>& edges) {
  Json out = Json::array();
  for (std::size_t i = 0; i < components.size(); ++i) {
    Json c;
    c["members"] = components[i].record_ids;
    Json es = Json::array();
    if (i < edges.size())
      for (const auto& [a, b] : edges[i]) es.push_back(Json::array({a, b}));
    c["edges"] = std::move(es);
    out.push_back(std::move(c));
  }
  return out;
}

inline Json sweep_report_to_json(const SweepReport& r) {
  Json j;
  j["iterations"] = r.iterations;
  j["deltas"] = r.deltas;
  return j;
}

inline Json update_report_to_json(const OslCarrier& carrier, const UpdateReport& r,
                                  bool verbose = true) {
  Json j;
  j["record"] = record_to_json(carrier, r.record);
  j["affected_count"] = r.affected.nodes.size();
  if (verbose) {
    Json affected = Json::array();
    for (NodeId e : r.affected.nodes) affected.push_back(node_to_json(carrier, e));
    j["affected"] = std::move(affected);
  }
  j["components"] = components_to_json(r.components, r.component_edges);
  if (r.resolved()) {
    Json res;
    res["removed"] = r.resolution.removed;
    res["survivors"] = r.resolution.survivors;
    j["resolution"] = std::move(res);
    j["resweep"] = sweep_report_to_json(r.resweep);
  } else {
    j["resolution"] = nullptr;
    j["resweep"] = nullptr;
  }
  return j;
}

inline Json sat_report_to_json(const SatReport& r) {
  Json j;
  j["satisfiable"] = r.satisfiable;
  if (r.satisfiable) {
    Json w = Json::object();
    for (const auto& [atom, value] : r.witness) w[atom] = value;
    j["witness"] = std::move(w);
  } else {
    j["conflict_atom"] = r.conflict_atom;
  }
  return j;
}

}  // namespace osl
