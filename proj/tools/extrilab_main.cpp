// extrilab: checks the structure theory of rigid and cluster-tilting
// subcategories on concretely presented module and stable module categories,
// and emits certificate reports.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "extrilab/engine.hpp"

using namespace extrilab;

namespace {

struct Options {
  std::string scenario_path;
  std::string out_path;
  long seed = -1;
  int cap_coresdim = -1;
  int cap_dim = -1;
  int jobs = 1;
  bool timings = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("scenario", opt.scenario_path, "scenario JSON file")->required();
  cmd->add_option("--out", opt.out_path, "write the report JSON here (default: stdout)");
  cmd->add_option("--seed", opt.seed, "override the scenario seed");
  cmd->add_option("--cap-coresdim", opt.cap_coresdim, "override caps.coresdim_cap");
  cmd->add_option("--cap-dim", opt.cap_dim, "override caps.dim_cap");
  cmd->add_option("--jobs", opt.jobs, "parallel checks (default 1, env EXTRILAB_JOBS)");
  cmd->add_flag("--timings", opt.timings, "include wall-clock timings in the report");
}

int run_command(const Options& opt, const std::string& command, int max_generators = 0) {
  Scenario sc = Scenario::from_file(opt.scenario_path);
  if (opt.seed >= 0) sc.caps.seed = (unsigned long)opt.seed;
  if (opt.cap_coresdim >= 0) sc.caps.coresdim_cap = opt.cap_coresdim;
  if (opt.cap_dim >= 0) sc.caps.dim_cap = opt.cap_dim;
  int jobs = opt.jobs;
  if (const char* env = std::getenv("EXTRILAB_JOBS"))
    if (jobs <= 1) jobs = std::max(1, std::atoi(env));

  Engine engine(std::move(sc));
  Report rep;
  rep.scenario_echo = engine.scenario().echo;
  if (command == "search-ct") {
    CheckRecord rec;
    rec.name = "search-ct";
    rec.verdict = "pass";
    rec.details["max_generators"] = max_generators;
    rec.details["hits"] = engine.search_ct(max_generators);
    rep.add(std::move(rec));
  } else {
    rep = engine.run(command, jobs, opt.timings);
  }
  std::string text = rep.to_string();
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path);
    out << text;
  }
  for (const auto& c : rep.checks)
    std::cerr << c.name << ": " << c.verdict << "\n";
  return rep.has_fail() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extrilab: verification engine for quotients of extension-closed categories"};
  app.require_subcommand(1);

  Options opt;
  std::string what;
  int max_generators = 4;

  auto* check = app.add_subcommand("check", "run a single structural check");
  check->add_option("what", what, "rigid | ct | cotorsion-cut")->required();
  add_common(check, opt);

  auto* quotient = app.add_subcommand("quotient", "quotient-category checks");
  quotient->add_option("what", what, "table | ks")->required();
  add_common(quotient, opt);

  auto* functor = app.add_subcommand("functor", "functor-category checks");
  functor->add_option("what", what, "verify")->required();
  add_common(functor, opt);

  auto* confl = app.add_subcommand("conflations", "conflation-category checks");
  confl->add_option("what", what, "verify")->required();
  add_common(confl, opt);

  auto* search = app.add_subcommand("search", "sweep for cluster-tilting subcategories");
  search->add_option("what", what, "ct")->required();
  search->add_option("--max-generators", max_generators, "generator-count bound");
  add_common(search, opt);

  auto* report = app.add_subcommand("report", "the full verification suite");
  report->add_option("what", what, "all")->required();
  add_common(report, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    std::string command;
    if (check->parsed())
      command = "check-" + what;
    else if (quotient->parsed())
      command = "quotient-" + what;
    else if (functor->parsed())
      command = "functor-" + what;
    else if (confl->parsed())
      command = "conflations-" + what;
    else if (search->parsed())
      command = "search-" + what;
    else if (report->parsed())
      command = "report-" + what;
    return run_command(opt, command, max_generators);
  } catch (const std::exception& e) {
    json err;
    err["schema"] = "extrilab-report/1";
    err["error"] = e.what();
    if (opt.out_path.empty()) {
      std::cout << err.dump(2) << "\n";
    } else {
      std::ofstream out(opt.out_path);
      out << err.dump(2) << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
