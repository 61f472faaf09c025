#include "extrilab/scenario.hpp"

#include <fstream>

namespace extrilab {

const char* kToolVersion = "extrilab 0.1.0";

Scenario Scenario::from_json(const json& j) {
  Scenario sc;
  sc.echo = j;
  if (j.value("schema", "") != "extrilab-scenario/1")
    throw EngineError("scenario: missing or unsupported schema field");
  const json& alg = j.at("algebra");
  std::string shape = alg.at("shape").get<std::string>();
  if (shape == "cyclic")
    sc.algebra.shape = Shape::Cyclic;
  else if (shape == "linear")
    sc.algebra.shape = Shape::Linear;
  else
    throw EngineError("scenario: algebra.shape must be cyclic or linear");
  sc.algebra.vertices = alg.at("vertices").get<int>();
  sc.algebra.loewy = alg.at("loewy").get<int>();
  if (sc.algebra.vertices < 1 || sc.algebra.loewy < 1)
    throw EngineError("scenario: vertices and loewy must be positive");
  if (j.contains("field")) {
    const json& f = j.at("field");
    if (f.is_string() && f.get<std::string>() == "Q")
      sc.field.prime = 0;
    else if (f.is_object() && f.contains("Fp"))
      sc.field.prime = f.at("Fp").get<unsigned long>();
    else
      throw EngineError("scenario: field must be \"Q\" or {\"Fp\": p}");
  }
  std::string model = j.at("model").get<std::string>();
  if (model == "mod")
    sc.model = ModelKind::ExactMod;
  else if (model == "stable")
    sc.model = ModelKind::StableMod;
  else if (model == "stable-subcat")
    sc.model = ModelKind::StableSubcat;
  else
    throw EngineError("scenario: model must be mod, stable or stable-subcat");
  if (sc.model == ModelKind::StableSubcat) {
    if (!j.contains("subcat_C")) throw EngineError("scenario: stable-subcat needs subcat_C");
    for (const auto& s : j.at("subcat_C")) sc.subcat.push_back(parse_label(s.get<std::string>()));
  } else if (j.contains("subcat_C")) {
    throw EngineError("scenario: subcat_C only applies to the stable-subcat model");
  }
  for (const auto& s : j.at("X")) sc.x.push_back(parse_label(s.get<std::string>()));
  sc.n = j.at("n").get<int>();
  if (sc.n < 0) throw EngineError("scenario: n must be nonnegative");
  if (j.contains("caps")) {
    const json& c = j.at("caps");
    sc.caps.coresdim_cap = c.value("coresdim_cap", sc.caps.coresdim_cap);
    sc.caps.mult_bound = c.value("multiplicity_bound", sc.caps.mult_bound);
    sc.caps.dim_cap = c.value("dim_cap", sc.caps.dim_cap);
    sc.caps.orbit_cap = c.value("orbit_cap", sc.caps.orbit_cap);
    sc.caps.pattern_cap = c.value("pattern_cap", sc.caps.pattern_cap);
  }
  sc.caps.seed = j.value("seed", 1);
  return sc;
}

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EngineError("cannot open scenario file " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw EngineError(std::string("scenario parse error: ") + e.what());
  }
  return from_json(j);
}

bool Report::has_fail() const {
  for (const auto& c : checks)
    if (c.verdict == "fail") return true;
  return false;
}

json Report::to_json() const {
  json j;
  j["schema"] = "extrilab-report/1";
  j["tool_version"] = kToolVersion;
  j["scenario"] = scenario_echo;
  json arr = json::array();
  int pass = 0, fail = 0, na = 0, capped = 0;
  for (const auto& c : checks) {
    json rec;
    rec["name"] = c.name;
    rec["verdict"] = c.verdict;
    rec["details"] = c.details;
    if (c.timing_ms)
      rec["timing_ms"] = *c.timing_ms;
    else
      rec["timing_ms"] = nullptr;
    arr.push_back(rec);
    if (c.verdict == "pass")
      ++pass;
    else if (c.verdict == "fail")
      ++fail;
    else if (c.verdict == "not-applicable")
      ++na;
    else if (c.verdict == "capped")
      ++capped;
  }
  j["checks"] = arr;
  j["summary"] =
      json{{"pass", pass}, {"fail", fail}, {"not_applicable", na}, {"capped", capped}};
  return j;
}

std::string Report::to_string() const { return to_json().dump(2) + "\n"; }

}  // namespace extrilab
