#pragma once
// Ideal quotients by [X] (morphisms factoring through an add-closed X): the
// quotient category on a chosen object inventory with canonical projections,
// weak-idempotent-completeness witnesses, endomorphism-ring analysis through
// the trace-form radical, and the Krull-Schmidt structure of the quotient.

#include <map>
#include <mutex>
#include <string>

#include "extrilab/extri.hpp"
#include "extrilab/fdalgebra.hpp"
#include "extrilab/homdim.hpp"

namespace extrilab {

struct IdealSpan {
  Obj src, dst;
  Subspace subspace;  // inside the Mor(src,dst) coordinate space
};

class QuotientCat {
 public:
  QuotientCat(const Model& model, std::vector<Indec> objects, Subcat x);

  const Model& model() const { return model_; }
  const std::vector<Indec>& objects() const { return objects_; }
  const Subcat& x() const { return x_; }
  bool object_in_x(const Indec& t) const;

  IdealSpan ideal_span(const Obj& a, const Obj& b) const;
  int qhom_dim(const Obj& a, const Obj& b) const;
  // class of a morphism, and a canonical representative of a class
  Vec project(const Mor& f) const;
  Mor section(const Obj& a, const Obj& b, const Vec& coords) const;
  Vec qcompose(const Vec& f, const Obj& a, const Obj& b, const Vec& g, const Obj& c) const;
  Vec qidentity(const Obj& a) const;
  bool qzero(const Mor& f) const;  // [f] = 0
  // matrices of quotient-level composition operators
  Mat qpost_matrix(const Obj& x, const Obj& a, const Obj& b, const Vec& g) const;  // [h]->[g∘h]
  Mat qpre_matrix(const Vec& f, const Obj& a, const Obj& b, const Obj& y) const;   // [h]->[h∘f]

  struct WicWitness {
    Obj x0;          // the padding object from X
    Mor g0;          // X0 -> A
    ETriangle confl; // K -> B (+) X0 -> A, split
    Mor mu1, mu2, pi1, pi2;
  };
  // for [g][f] = [1_A] produce the splitting conflation and biproduct data
  WicWitness split_retraction_witness(const Mor& f, const Mor& g) const;

  struct LocalReport {
    int end_dim = 0;
    int rad_dim = 0;
    LocalVerdict verdict = LocalVerdict::Unknown;
  };
  LocalReport radical_and_local(const Obj& y) const;  // refuses F_p mode

  // exact containment [X](Y,Y) <= rad End(Y) in the ambient category
  bool ideal_in_radical(const Indec& y) const;

  struct KsReport {
    std::vector<Indec> ind;  // surviving indecomposables
    bool all_local = true;
    std::vector<std::string> notes;
  };
  KsReport ks_structure() const;

 private:
  const Model& model_;
  std::vector<Indec> objects_;
  Subcat x_;
  struct PairData {
    Subspace ideal;
    QuotientBasis qb;
    int dim = 0;
  };
  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<Indec, Indec>, PairData> pairs_;
  const PairData& pair(const Indec& a, const Indec& b) const;
};

}  // namespace extrilab
