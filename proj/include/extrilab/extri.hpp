#pragma once
// The extriangulated calculus over a concrete model.  Three models share one
// interface:
//   ExactMod     - mod(Lambda) with E = Ext^1, conflations = short exact
//                  sequences of representations;
//   StableMod    - the stable category of a self-injective Nakayama algebra,
//                  E(C,A) = stHom(C, Sigma A), conflations = triangles;
//   StableSubcat - an extension-closed subcategory of StableMod with the
//                  restricted structure; higher E-groups use cosyzygies
//                  relative to the subcategory's own E-injectives.
//
// Every conflation carries a module-level certificate (an exact sequence of
// representations); extension classes are coordinate vectors in fixed bases.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "extrilab/algebra.hpp"

namespace extrilab {

enum class ModelKind { ExactMod, StableMod, StableSubcat };

std::string kind_name(ModelKind k);

// morphism between formal sums of model objects; block (i,j) holds the
// coordinates of the component src[i] -> dst[j] in the model's hom basis
struct Mor {
  Obj src, dst;
  std::vector<Vec> block;  // size src.size()*dst.size(), index i*dst.size()+j
};

// an extension class delta in E(c, a), as coordinates in the cached basis
struct ExtClass {
  Obj c, a;
  Vec coords;
};

// module-level certificate: an exact sequence 0 -> a -> e -> c -> 0 of
// representations of the canonical reps of the listed objects (which may
// include projective padding in the stable models)
struct SesCert {
  Obj a_full, e_full, c_full;
  RepMap u;  // rep(a_full) -> rep(e_full)
  RepMap v;  // rep(e_full) -> rep(c_full)
};

struct ETriangle {
  Mor x;           // inflation A -> B
  Mor y;           // deflation B -> C
  ExtClass delta;  // in E(C, A)
  SesCert cert;
};

struct EngineError : std::runtime_error {
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

class Model {
 public:
  Model(ModelKind kind, AlgebraSpec alg, Field field, std::vector<Indec> subcat = {});
  Model(const Model& o) : Model(o.kind_, o.alg_.spec(), o.alg_.field(), o.objects_) {}
  Model& operator=(const Model&) = delete;

  ModelKind kind() const { return kind_; }
  const Nakayama& alg() const { return alg_; }
  const Field& field() const { return alg_.field(); }
  const std::vector<Indec>& objects() const { return objects_; }
  bool is_object(const Indec& x) const;
  bool is_object(const Obj& o) const;
  void require_object(const Obj& o, const std::string& where) const;
  // drop summands that vanish in the model (projectives, for stable kinds)
  Obj strip(const Obj& o) const;

  // ---- morphism spaces ----
  int hom_dim(const Indec& a, const Indec& b) const;
  int mor_dim(const Obj& a, const Obj& b) const;
  Mor zero_mor(const Obj& a, const Obj& b) const;
  Mor identity(const Obj& a) const;
  Mor mor_add(const Mor& f, const Mor& g) const;
  Mor mor_sub(const Mor& f, const Mor& g) const;
  Mor mor_scale(const Rat& c, const Mor& f) const;
  Mor compose(const Mor& f, const Mor& g) const;  // g after f
  bool mor_equal(const Mor& f, const Mor& g) const;
  bool mor_is_zero(const Mor& f) const;
  Vec mor_flat(const Mor& f) const;
  Mor mor_from_flat(const Obj& a, const Obj& b, const Vec& v) const;
  Mor basis_mor(const Obj& a, const Obj& b, int k) const;
  // direct-sum structure maps A -> A(+)B etc. (sorted concatenation)
  Mor inj_first(const Obj& a, const Obj& b) const;
  Mor inj_second(const Obj& a, const Obj& b) const;
  Mor proj_first(const Obj& a, const Obj& b) const;
  Mor proj_second(const Obj& a, const Obj& b) const;
  // rep-level bridges
  RepMap mor_to_rep(const Mor& f) const;
  Mor rep_to_mor(const Obj& a, const Obj& b, const RepMap& f) const;
  // composition operators as matrices on flat coordinates
  Mat postcompose_matrix(const Mor& g, const Obj& x) const;  // Mor(x,g.src)->Mor(x,g.dst)
  Mat precompose_matrix(const Mor& f, const Obj& y) const;   // Mor(f.dst,y)->Mor(f.src,y)
  // subspace of Mor(a,b) spanned by morphisms factoring through gens
  Subspace through_span(const std::vector<Indec>& gens, const Obj& a, const Obj& b) const;

  // ---- E-groups ----
  int e_dim(const Obj& c, const Obj& a) const;           // E^1
  int e_dim_i(int i, const Obj& c, const Obj& a) const;  // higher groups
  // model cosyzygy / syzygy on objects (one step)
  Obj sigma_obj(const Obj& a) const;
  Obj omega_obj(const Obj& a) const;
  Obj sigma_pow(int k, const Obj& a) const;
  // ambient cosyzygy functor on morphisms (stable kinds: ambient shift)
  Mor sigma_ambient_mor(const Mor& f) const;
  // model cosyzygy on morphisms (internal one for StableSubcat)
  Mor sigma_model_mor(const Mor& f) const;

  ExtClass zero_class(const Obj& c, const Obj& a) const;
  ExtClass class_add(const ExtClass& d1, const ExtClass& d2) const;
  ExtClass class_scale(const Rat& r, const ExtClass& d) const;
  bool class_equal(const ExtClass& d1, const ExtClass& d2) const;
  bool class_is_zero(const ExtClass& d) const;
  ExtClass basis_class(const Obj& c, const Obj& a, int k) const;

  ExtClass act_right(const ExtClass& d, const Mor& f) const;  // d . f, f: X -> C
  ExtClass act_left(const Mor& g, const ExtClass& d) const;   // g . d, g: A -> A'
  // E(f, a): E(f.dst, a) -> E(f.src, a), and E^i via the model cosyzygy chain
  Mat e_contra_matrix(const Mor& f, const Obj& a) const;
  Mat e_contra_matrix_i(int i, const Mor& f, const Obj& a) const;
  Mat e_cov_matrix(const Obj& c, const Mor& g) const;  // E(c,g)
  Mat delta_lower_matrix(const ExtClass& d, const Obj& x) const;  // C(x,C)->E(x,A)
  Mat delta_upper_matrix(const ExtClass& d, const Obj& x) const;  // C(A,x)->E(C,x)

  // ---- conflations ----
  ETriangle realize(const ExtClass& d) const;
  ETriangle split_triangle(const Obj& a, const Obj& c) const;
  ExtClass class_of_cert(const SesCert& cert) const;
  ETriangle triangle_from_cert(const SesCert& cert) const;
  void verify_triangle(const ETriangle& t) const;  // throws on broken invariants

  bool is_inflation(const Mor& f) const;
  bool is_deflation(const Mor& g) const;
  // complete an inflation/deflation to a conflation (cone / cocone)
  std::optional<ETriangle> cone_of(const Mor& f) const;
  std::optional<ETriangle> cocone_of(const Mor& g) const;

  // the canonical witness conflation  a -> I(a) -> Sigma_model(a)
  const ETriangle& sigma_witness(const Indec& a) const;
  // dual witness  Omega_model(a) -> P(a) -> a
  const ETriangle& omega_witness(const Indec& a) const;
  // direct sums of the cached witnesses over the summands of an object
  ETriangle sigma_witness_sum(const Obj& o) const;
  ETriangle omega_witness_sum(const Obj& o) const;

  // ---- E-projectives / injectives ----
  const std::vector<Indec>& e_projectives() const;
  const std::vector<Indec>& e_injectives() const;
  bool has_enough_e_projectives() const;
  bool has_enough_e_injectives() const;
  bool e_proj_object_test(const Indec& p) const;  // E(p, -) = 0 definitional
  bool e_inj_object_test(const Indec& p) const;
  bool e_proj_morphism_def(const Mor& f) const;     // E(f,-) = 0 on all objects
  bool e_proj_morphism_factor(const Mor& f) const;  // factors through add(P_E)
  bool e_inj_morphism_def(const Mor& f) const;
  bool e_inj_morphism_factor(const Mor& f) const;

  // ---- structure results ----
  std::optional<Mor> complete_morphism(const ETriangle& t1, const ETriangle& t2, const Mor& a,
                                       const Mor& c) const;

  struct LesReport {
    bool ok = true;
    std::string failure_site;
  };
  // exactness of both six-term Hom/E sequences at every internal node, plus
  // the first higher connecting step when the model provides it
  LesReport les_check(const ETriangle& t, const Obj& test, bool extend_higher = true) const;

  struct Et4Result {
    ETriangle ace;   // A -> C -> E
    ETriangle def;   // D -> E -> F
    Mor d, e;        // D -> E and E -> F
  };
  Et4Result et4_compose(const ETriangle& t_ab, const ETriangle& t_bc) const;

  // the two-conflations-over-one-base diagram: for t1: A1->B1->C, t2: A2->B2->C
  // produces M with conflations A1 -> M -> B2 and A2 -> M -> B1
  struct PullbackPair {
    ETriangle t1m;  // A1 -> M -> B2, realizing delta1 . y2
    ETriangle t2m;  // A2 -> M -> B1, realizing delta2 . y1
  };
  PullbackPair pullback_pair(const ETriangle& t1, const ETriangle& t2) const;

  // internal-vs-ambient higher-group comparison (StableSubcat diagnostics)
  struct HigherCompare {
    bool applicable = false;
    bool agree = true;
    std::vector<std::string> disagreements;
  };
  HigherCompare compare_higher_groups(int max_i) const;

  // extension-closure spot check for StableSubcat (bounded verification)
  struct ClosureReport {
    bool ok = true;
    std::string counterexample;
    int checked = 0;
  };
  ClosureReport extension_closure_check(int patterns_cap = 2000) const;

 private:
  ModelKind kind_;
  Nakayama alg_;
  std::vector<Indec> objects_;
  mutable std::map<std::pair<Indec, Indec>, Mat> sigma_mor_table_;  // stable shift on homs
  // composition structure constants per indec triple: entry (l*d2+m) holds
  // the coordinates of (basis_m ∘ basis_l) in hom(a, c)
  mutable std::map<std::tuple<Indec, Indec, Indec>, std::vector<Vec>> comp_table_;
  const std::vector<Vec>& compose_table(const Indec& a, const Indec& b, const Indec& c) const;
  struct ExactEPair {
    int dim = 0;
    Obj omega;          // syzygy of c (empty if c projective)
    QuotientBasis qb;   // over Hom(omega, a) coordinates
  };
  mutable std::map<std::pair<Indec, Indec>, ExactEPair> exact_e_cache_;
  mutable std::map<Indec, ETriangle> sigma_witness_cache_;
  mutable std::map<Indec, ETriangle> omega_witness_cache_;
  mutable std::optional<std::vector<Indec>> e_proj_cache_;
  mutable std::optional<std::vector<Indec>> e_inj_cache_;
  mutable std::recursive_mutex cache_mu_;

  bool stable() const { return kind_ != ModelKind::ExactMod; }
  const ExactEPair& exact_e_pair(const Indec& c, const Indec& a) const;
  int e_dim_pair(const Indec& c, const Indec& a) const;
  // stable hom coordinates of a rep-level map between objects of the model
  Vec stable_block_coords(const Indec& a, const Indec& b, const RepMap& f) const;
  RepMap block_section(const Indec& a, const Indec& b, const Vec& coords) const;
  ETriangle make_triangle(SesCert cert, const ExtClass* expected = nullptr) const;
  Obj sigma_internal(const Indec& a) const;  // with witness caching
  Obj omega_internal(const Indec& a) const;
  // rebuild a triangle over a padding-free certificate (same x, y, delta)
  ETriangle align_to(const ETriangle& t) const;
  ETriangle realize_ambient_for_closure(const ExtClass& d) const;
};

}  // namespace extrilab
