#pragma once
// The concrete module-category layer: Nakayama algebras (cyclic or linear
// quiver with nilpotency degree N), their interval modules M[t,l], explicit
// quiver representations, Hom spaces by intertwiner solving, syzygies and
// cosyzygies, Ext groups via projective resolutions, and stable Hom spaces.
//
// Conventions: vertices are labelled 1..m; the arrow at vertex t maps t -> t-1
// (cyclically for the cyclic shape, and vertex 1 is the sink for the linear
// shape).  M[t,l] is the interval module with top S_t and length l; its layer
// j (0-based) sits at vertex t-j.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "extrilab/exactlin.hpp"

namespace extrilab {

enum class Shape { Cyclic, Linear };

struct AlgebraSpec {
  Shape shape = Shape::Cyclic;
  int vertices = 1;  // m >= 1
  int loewy = 1;     // N >= 1: all paths of length N vanish
};

struct Indec {
  int top = 1;  // 1..m
  int len = 1;  // 1..N
  auto operator<=>(const Indec&) const = default;
};

// formal direct sum, canonically sorted; the empty vector is the zero object
using Obj = std::vector<Indec>;

std::string label(const Indec& x);             // "M[t,l]"
Indec parse_label(const std::string& s);       // throws on bad syntax
std::string label(const Obj& o);               // "0" or "M[..] + M[..]"
Obj sorted_obj(std::vector<Indec> xs);
Obj obj_concat(const Obj& a, const Obj& b);
int obj_total_len(const Obj& o);

// quiver representation: dim[v] per 0-based vertex, arrow[v]: V_v -> V_{v-1}
struct Rep {
  std::vector<int> dim;
  std::vector<Mat> arrow;  // arrow[v] has shape dim[tgt(v)] x dim[v]
  int total_dim() const;
};

// map of representations, one matrix per vertex: f[v]: V_v -> W_v
struct RepMap {
  std::vector<Mat> f;
};

struct HomSpace {
  int dim = 0;
  std::vector<RepMap> basis;
  Mat basis_flat;  // dim x flat_len, rows are flattened basis maps
};

struct SubRepResult {
  Rep sub;
  RepMap incl;  // sub -> V
};

struct QuotRepResult {
  Rep quot;
  RepMap proj;  // V -> quot
};

struct DecompResult {
  Obj obj;           // canonical sorted list of indecomposable summands
  RepMap from_canon; // rep_of(obj) -> V, an isomorphism
  RepMap to_canon;   // V -> rep_of(obj), its inverse
};

struct CoverData {            // projective cover  ker -> P ->> x
  Obj proj;                   // P (indecomposable for indecomposable x)
  Obj ker;                    // syzygy
  RepMap cover;               // rep_of(proj) -> rep_of(x)
  RepMap ker_incl;            // rep_of(ker) -> rep_of(proj)
  std::vector<int> ker_owner; // x-summand owning each ker summand
  std::vector<int> proj_owner;
};

struct EnvelopeData {         // injective envelope  x -> I ->> cok
  Obj inj;
  Obj cok;                    // cosyzygy
  RepMap env;                 // rep_of(x) -> rep_of(inj)
  RepMap cok_proj;            // rep_of(inj) -> rep_of(cok)
  std::vector<int> cok_owner; // x-summand owning each cok summand
  std::vector<int> inj_owner;
};

struct StHom {                // Hom(a,b) / (maps factoring through projectives)
  int dim = 0;
  QuotientBasis qb;           // over Hom-space coordinates
  Subspace through_proj;      // the ideal subspace in Hom coordinates
};

class Nakayama {
 public:
  Nakayama(AlgebraSpec spec, Field field);
  Nakayama(const Nakayama& o) : Nakayama(o.spec_, o.field_) {}
  Nakayama& operator=(const Nakayama&) = delete;

  const AlgebraSpec& spec() const { return spec_; }
  const Field& field() const { return field_; }
  int m() const { return spec_.vertices; }
  int loewy() const { return spec_.loewy; }

  bool valid(const Indec& x) const;
  void require_valid(const Indec& x) const;
  std::vector<Indec> indecomposables() const;

  std::vector<Indec> projectives() const;
  std::vector<Indec> injectives() const;
  bool is_projective(const Indec& x) const;
  bool is_injective(const Indec& x) const;

  // vertex arithmetic (1-based labels)
  int wrap(int t) const;

  Rep rep_of(const Indec& x) const;
  Rep rep_of(const Obj& o) const;

  // hom space between indecomposables, computed by intertwiner solving; cached
  const HomSpace& hom(const Indec& a, const Indec& b) const;
  int hom_dim(const Indec& a, const Indec& b) const { return hom(a, b).dim; }
  // combinatorial interval-overlap count (independent cross-check oracle)
  int hom_dim_overlap(const Indec& a, const Indec& b) const;

  // generic rep-level machinery
  HomSpace solve_hom(const Rep& A, const Rep& B) const;
  RepMap compose(const RepMap& f, const RepMap& g) const;  // g after f
  RepMap rep_map_add(const RepMap& f, const RepMap& g) const;
  RepMap rep_map_scale(const Rat& c, const RepMap& f) const;
  RepMap identity_map(const Rep& V) const;
  RepMap zero_map(const Rep& A, const Rep& B) const;
  Vec flatten(const RepMap& f) const;
  RepMap unflatten(const Vec& v, const Rep& A, const Rep& B) const;
  Vec hom_coords(const Indec& a, const Indec& b, const RepMap& f) const;
  RepMap hom_from_coords(const Indec& a, const Indec& b, const Vec& coords) const;
  bool rep_map_equal(const RepMap& f, const RepMap& g) const;
  bool rep_map_is_zero(const RepMap& f) const;
  bool is_mono(const RepMap& f) const;
  bool is_epi(const RepMap& f) const;

  // basis bookkeeping of rep_of: at each 0-based vertex the (summand, layer)
  // pairs in basis order (works for arbitrary summand lists, sorted or not)
  const std::vector<std::vector<std::pair<int, int>>>& obj_basis(
      const std::vector<Indec>& o) const;
  // extract the (i -> j) component of f: rep(src) -> rep(dst)
  RepMap block_of(const RepMap& f, const std::vector<Indec>& src, int i,
                  const std::vector<Indec>& dst, int j) const;
  // add a single-summand block into f at position (i -> j)
  void add_block(RepMap& f, const std::vector<Indec>& src, int i, const std::vector<Indec>& dst,
                 int j, const RepMap& blk) const;
  // the map rep(src) -> rep(dst) sending layer (s,j) to (to_dst[s], j); a
  // value of -1 kills the summand
  RepMap summand_relabel(const std::vector<Indec>& src, const std::vector<Indec>& dst,
                         const std::vector<int>& to_dst) const;

  // find an intertwiner g: U -> W with g∘pre = want for each right constraint
  // and post∘g = want for each left constraint; canonical solution or nullopt
  std::optional<RepMap> constrained_hom(
      const Rep& U, const Rep& W,
      const std::vector<std::pair<const RepMap*, const RepMap*>>& right_cons,
      const std::vector<std::pair<const RepMap*, const RepMap*>>& left_cons) const;

  SubRepResult kernel_rep(const RepMap& f, const Rep& A, const Rep& B) const;
  QuotRepResult cokernel_rep(const RepMap& f, const Rep& A, const Rep& B) const;
  Rep direct_sum(const Rep& A, const Rep& B, RepMap* injA = nullptr, RepMap* injB = nullptr,
                 RepMap* projA = nullptr, RepMap* projB = nullptr) const;

  // split V into interval modules with an explicit isomorphism
  DecompResult decompose(const Rep& V) const;

  CoverData projective_cover(const Indec& x) const;
  CoverData projective_cover(const Obj& o) const;
  EnvelopeData injective_envelope(const Indec& x) const;
  EnvelopeData injective_envelope(const Obj& o) const;

  Obj syzygy(const Indec& x) const;     // top of the cover kernel (0 -> empty)
  Obj cosyzygy(const Indec& x) const;
  Obj syzygy(const Obj& o) const;
  Obj cosyzygy(const Obj& o) const;

  // dim Ext^i(a,b) with a canonical basis of cocycles, via the projective
  // resolution ... -> P_1 -> P_0 -> a (each syzygy is again indecomposable)
  int ext_dim(int i, const Indec& a, const Indec& b) const;

  // stable Hom: Hom(a,b) modulo maps factoring through projectives; cached
  const StHom& st_hom(const Indec& a, const Indec& b) const;
  // closed-form count for the stable dimension (cross-check oracle)
  int st_hom_dim_overlap(const Indec& a, const Indec& b) const;

 private:
  AlgebraSpec spec_;
  Field field_;
  mutable std::map<std::pair<Indec, Indec>, HomSpace> hom_cache_;
  mutable std::map<std::pair<Indec, Indec>, StHom> st_cache_;
  mutable std::map<std::vector<Indec>, std::vector<std::vector<std::pair<int, int>>>>
      basis_cache_;
  mutable std::recursive_mutex cache_mu_;

  int arrow_tgt(int v) const;  // 0-based; -1 when absent (linear sink)
};

}  // namespace extrilab
