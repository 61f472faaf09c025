#pragma once
// Command dispatch: builds the model and all derived structures for one
// scenario and produces the per-check report records.

#include <functional>
#include <memory>

#include "extrilab/conflations.hpp"
#include "extrilab/scenario.hpp"

namespace extrilab {

class Engine {
 public:
  explicit Engine(Scenario sc);

  // commands: check-rigid, check-ct, check-cotorsion-cut, quotient-table,
  // quotient-ks, functor-verify, conflations-verify, report-all
  Report run(const std::string& command, int jobs = 1, bool timings = false);

  // sweep over add-closed generator sets containing the E-projectives and
  // E-injectives, up to the generator-count bound
  json search_ct(int max_generators);

  const Model& model() const { return *model_; }
  const Scenario& scenario() const { return sc_; }

 private:
  Scenario sc_;
  std::unique_ptr<Model> model_;
  Subcat x_;
  std::unique_ptr<HomdimEngine> hd_;
  std::unique_ptr<QuotientCat> q_;
  std::unique_ptr<FunCat> ff_, fk_;
  std::unique_ptr<ConflCat> ccf_, cck_;
  std::vector<ConflObj> universe_f_, universe_k_;
  std::vector<std::tuple<Obj, Vec, Obj, Vec, Obj>> confl_tuples_f_, confl_tuples_k_;

  void prepare();

  CheckRecord chk_model_load();
  CheckRecord chk_oracle_crosschecks();
  CheckRecord chk_rigidity();
  CheckRecord chk_cluster_tilting();
  CheckRecord chk_coverage();
  CheckRecord chk_vanishing_grid();
  CheckRecord chk_cotorsion_cuts();
  CheckRecord chk_closure();
  CheckRecord chk_quotient_table();
  CheckRecord chk_quotient_ks();
  CheckRecord chk_wic();
  CheckRecord chk_les_random();
  CheckRecord chk_ffk();
  CheckRecord chk_density();
  CheckRecord chk_presentations();
  CheckRecord chk_exact_structure();
  CheckRecord chk_abelian_case();
  CheckRecord chk_proj_inj();
  CheckRecord chk_confl_pseudo_ct();
  CheckRecord chk_confl_characterization();
  CheckRecord chk_confl_split_sets();
  CheckRecord chk_confl_abelian_probe();
  CheckRecord chk_higher_compare();
  CheckRecord chk_e4();
};

}  // namespace extrilab
