#pragma once
// Scenario files, report records, and their JSON serialization.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "extrilab/homdim.hpp"

namespace extrilab {

using json = nlohmann::json;

struct Scenario {
  AlgebraSpec algebra;
  Field field;
  ModelKind model = ModelKind::StableMod;
  std::vector<Indec> subcat;  // stable-subcat only
  std::vector<Indec> x;
  int n = 0;
  SearchCaps caps;
  json echo;  // the parsed scenario document, echoed into reports

  static Scenario from_json(const json& j);
  static Scenario from_file(const std::string& path);
};

struct CheckRecord {
  std::string name;
  std::string verdict;  // pass | fail | not-applicable | capped
  json details = json::object();
  std::optional<double> timing_ms;
};

struct Report {
  json scenario_echo;
  std::vector<CheckRecord> checks;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  bool has_fail() const;
  json to_json() const;
  std::string to_string() const;  // canonical serialization (sorted keys)
};

extern const char* kToolVersion;

}  // namespace extrilab
