#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "extrilab/engine.hpp"

using namespace extrilab;

namespace {

json small_doc() {
  return json{{"schema", "extrilab-scenario/1"},
              {"algebra", {{"shape", "cyclic"}, {"vertices", 4}, {"loewy", 2}}},
              {"field", "Q"},
              {"model", "stable"},
              {"X", {"M[2,1]", "M[4,1]"}},
              {"n", 0},
              {"caps",
               {{"coresdim_cap", 4},
                {"multiplicity_bound", 3},
                {"dim_cap", 8},
                {"orbit_cap", 200}}},
              {"seed", 1}};
}

}  // namespace

TEST_CASE("scenario parsing and validation") {
  Scenario sc = Scenario::from_json(small_doc());
  CHECK(sc.model == ModelKind::StableMod);
  CHECK(sc.x == std::vector<Indec>{{2, 1}, {4, 1}});
  CHECK(sc.caps.seed == 1);
  // bad label
  json bad = small_doc();
  bad["X"] = {"M[0,1]"};
  CHECK_THROWS_AS((void)Scenario::from_json(bad), std::exception);
  // missing schema
  bad = small_doc();
  bad.erase("schema");
  CHECK_THROWS_AS((void)Scenario::from_json(bad), EngineError);
  // stable model over a linear shape is rejected at model build
  bad = small_doc();
  bad["algebra"]["shape"] = "linear";
  Scenario sc2 = Scenario::from_json(bad);
  CHECK_THROWS_AS(Engine{sc2}, EngineError);
  // subcat_C outside the stable-subcat model is rejected
  bad = small_doc();
  bad["subcat_C"] = {"M[1,1]"};
  CHECK_THROWS_AS((void)Scenario::from_json(bad), EngineError);
}

TEST_CASE("check-rigid command on the small scenario") {
  Engine eng(Scenario::from_json(small_doc()));
  Report rep = eng.run("check-rigid");
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].name == "rigidity");
  CHECK(rep.checks[0].verdict == "pass");
  CHECK(!rep.has_fail());
}

TEST_CASE("check-ct fails for a non-cluster-tilting X") {
  json doc = small_doc();
  doc["X"] = {"M[1,1]", "M[2,1]"};
  Engine eng(Scenario::from_json(doc));
  Report rep = eng.run("check-ct");
  CHECK(rep.has_fail());
}

TEST_CASE("reports are byte-stable for a fixed scenario and seed") {
  Engine a(Scenario::from_json(small_doc()));
  Engine b(Scenario::from_json(small_doc()));
  Report ra = a.run("report-all");
  Report rb = b.run("report-all");
  CHECK(ra.to_string() == rb.to_string());
  // parallel dispatch does not change the bytes
  Engine c(Scenario::from_json(small_doc()));
  Report rc = c.run("report-all", 3);
  CHECK(ra.to_string() == rc.to_string());
}

TEST_CASE("search ct finds exactly the two 2-cluster-tilting candidates") {
  Engine eng(Scenario::from_json(small_doc()));
  json hits = eng.search_ct(4);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0] == json({"M[1,1]", "M[3,1]"}));
  CHECK(hits[1] == json({"M[2,1]", "M[4,1]"}));
}

TEST_CASE("prime-field scenarios produce dimension checks but skip the radical ones") {
  json doc = small_doc();
  doc["field"] = {{"Fp", 5}};
  Engine eng(Scenario::from_json(doc));
  Report rep = eng.run("quotient-ks");
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].verdict == "not-applicable");
  Report rig = eng.run("check-rigid");
  CHECK(rig.checks[0].verdict == "pass");
}

TEST_CASE("exact-model scenario runs the core checks") {
  json doc = small_doc();
  doc["model"] = "mod";
  doc["X"] = {"M[1,2]", "M[2,2]", "M[3,2]", "M[4,2]"};  // the projectives
  Engine eng(Scenario::from_json(doc));
  Report rep = eng.run("check-rigid");
  CHECK(rep.checks[0].verdict == "pass");  // P_E is rigid at every level
}

TEST_CASE("exact-model 2-cluster-tilting scenario passes the full battery") {
  // mod of the 2-vertex cycle with radical square zero; X = add(P (+) S_1)
  json doc = {{"schema", "extrilab-scenario/1"},
              {"algebra", {{"shape", "cyclic"}, {"vertices", 2}, {"loewy", 2}}},
              {"field", "Q"},
              {"model", "mod"},
              {"X", {"M[1,1]", "M[1,2]", "M[2,2]"}},
              {"n", 0},
              {"seed", 1}};
  Engine eng(Scenario::from_json(doc));
  Report rep = eng.run("report-all");
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.verdict, " ", c.details.dump());
    CHECK(c.verdict != "fail");
  }
  CHECK(!rep.has_fail());
  // the lone survivor of the quotient is the second simple
  for (const auto& c : rep.checks)
    if (c.name == "quotient-ks") CHECK(c.details["ind"] == json({"M[2,1]"}));
}
