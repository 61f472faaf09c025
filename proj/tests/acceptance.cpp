// Acceptance suite: runs the full verification battery on the two shipped
// scenarios and checks every acceptance criterion at its stated tolerance
// (all equalities are exact).  Prints one line per criterion.

#include <chrono>
#include <iostream>
#include <map>
#include <string>

#include "extrilab/engine.hpp"

using namespace extrilab;

namespace {

int failures = 0;

void criterion(const std::string& name, bool pass, const std::string& note = "") {
  std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
  if (!note.empty()) std::cout << "  [" << note << "]";
  std::cout << std::endl;
  if (!pass) ++failures;
}

std::map<std::string, CheckRecord> by_name(const Report& rep) {
  std::map<std::string, CheckRecord> out;
  for (const auto& c : rep.checks) out[c.name] = c;
  return out;
}

json labels(std::vector<std::string> v) { return json(v); }

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;

  // ---- scenario 1: the small 2-cluster-tilting instance -------------------
  auto t0 = clock::now();
  Scenario s1 = Scenario::from_file("scenarios/small_2ct.json");
  Engine e1(s1);
  Report r1 = e1.run("report-all");
  auto s1_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  auto m1 = by_name(r1);

  {
    bool ct = m1["cluster-tilting"].verdict == "pass";
    bool ks = m1["quotient-ks"].verdict == "pass" &&
              m1["quotient-ks"].details["ind"] == labels({"M[1,1]", "M[3,1]"});
    bool table = m1["quotient-table"].verdict == "pass";
    // End_D one-dimensional on the survivors, cross homs zero
    const json& tbl = m1["quotient-table"].details["table"];
    bool dims = tbl["M[1,1]"]["M[1,1]"]["quotient"] == 1 &&
                tbl["M[3,1]"]["M[3,1]"]["quotient"] == 1 &&
                tbl["M[1,1]"]["M[3,1]"]["quotient"] == 0 &&
                tbl["M[3,1]"]["M[1,1]"]["quotient"] == 0 &&
                tbl["M[2,1]"]["M[2,1]"]["quotient"] == 0;
    bool equivalence = m1["functor-full-faithful-kernel"].verdict == "pass" &&
                       m1["functor-density"].verdict == "capped" &&
                       m1["abelian-case"].verdict == "pass";
    bool projinj = m1["proj-inj-quotient"].verdict == "pass" &&
                   m1["proj-inj-quotient"].details["projectives"] ==
                       labels({"M[1,1]", "M[3,1]"}) &&
                   m1["proj-inj-quotient"].details["injectives"] ==
                       labels({"M[1,1]", "M[3,1]"}) &&
                   m1["proj-inj-quotient"].details["omega_X"] == labels({"M[1,1]", "M[3,1]"}) &&
                   m1["proj-inj-quotient"].details["sigma_X"] == labels({"M[1,1]", "M[3,1]"});
    bool timely = s1_seconds < 5.0;
    criterion("AC1 small 2-cluster-tilting instance",
              ct && ks && table && dims && equivalence && projinj && timely,
              "runtime " + std::to_string(s1_seconds) + "s");
  }

  // ---- scenario 2: the ten-vertex instance with the marked subcategory ----
  auto t1 = clock::now();
  Scenario s2 = Scenario::from_file("scenarios/cycle10_4ct.json");
  Engine e2(s2);
  Report r2 = e2.run("report-all");
  auto s2_seconds = std::chrono::duration<double>(clock::now() - t1).count();
  auto m2 = by_name(r2);

  {
    bool rigid = m2["rigidity"].verdict == "pass";
    bool ct = m2["cluster-tilting"].verdict == "pass";
    bool coverage = m2["coresolution-coverage"].verdict == "pass";
    bool pe = m2["model-load"].details["e_projectives"] ==
              labels({"M[1,1]", "M[2,2]", "M[3,3]"});
    bool ie = m2["model-load"].details["e_injectives"] ==
              labels({"M[9,1]", "M[9,2]", "M[9,3]"});
    bool timely = s2_seconds < 600.0;
    criterion("AC2 ten-vertex 4-cluster-tilting instance",
              rigid && ct && coverage && pe && ie && timely,
              "runtime " + std::to_string(s2_seconds) + "s");
  }

  criterion("AC3 full/faithful/kernel suites",
            m1["functor-full-faithful-kernel"].verdict == "pass" &&
                m2["functor-full-faithful-kernel"].verdict == "pass");

  {
    auto full = [&](std::map<std::string, CheckRecord>& m) {
      const json& d = m["functor-density"].details;
      return m["functor-density"].verdict == "capped" &&
             d["F"]["enumerated"].get<int>() > 0 &&
             d["F"]["hits"] == d["F"]["enumerated"] && d["K"]["hits"] == d["K"]["enumerated"];
    };
    criterion("AC4 density within caps", full(m1) && full(m2));
  }

  {
    auto les = [&](std::map<std::string, CheckRecord>& m) {
      return m["les-random"].verdict == "pass" &&
             m["les-random"].details["conflations"].get<int>() >= 200;
    };
    criterion("AC5 long-exact-sequence invariant", les(m1) && les(m2));
  }

  {
    auto wic = [&](std::map<std::string, CheckRecord>& m) {
      return m["wic-witnesses"].verdict == "pass" &&
             m["wic-witnesses"].details["samples"].get<int>() >= 100;
    };
    criterion("AC6 weak-idempotent-completeness witnesses", wic(m1) && wic(m2));
  }

  criterion("AC7 Krull-Schmidt structure",
            m1["quotient-ks"].verdict == "pass" && m2["quotient-ks"].verdict == "pass");

  criterion("AC8 vanishing grid",
            m1["vanishing-grid"].verdict == "pass" && m2["vanishing-grid"].verdict == "pass");

  {
    auto confl = [&](std::map<std::string, CheckRecord>& m) {
      return m["conflations-pseudo-ct"].verdict == "pass" &&
             m["conflations-characterization"].verdict == "pass" &&
             m["conflations-split-sets"].verdict == "pass" &&
             m["conflations-abelian-probe"].verdict == "pass";
    };
    criterion("AC9 conflation suite", confl(m1) && confl(m2));
  }

  criterion("AC10 oracle cross-checks",
            m1["oracle-cross-checks"].verdict == "pass" &&
                m2["oracle-cross-checks"].verdict == "pass");

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
