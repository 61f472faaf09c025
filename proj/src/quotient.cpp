#include "extrilab/quotient.hpp"

#include <algorithm>
#include <sstream>

namespace extrilab {

QuotientCat::QuotientCat(const Model& model, std::vector<Indec> objects, Subcat x)
    : model_(model), objects_(sorted_obj(std::move(objects))), x_(std::move(x)) {
  objects_.erase(std::unique(objects_.begin(), objects_.end()), objects_.end());
  for (const auto& t : objects_) model_.require_object(Obj{t}, "quotient");
}

bool QuotientCat::object_in_x(const Indec& t) const {
  return std::binary_search(x_.gens.begin(), x_.gens.end(), t);
}

const QuotientCat::PairData& QuotientCat::pair(const Indec& a, const Indec& b) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(a, b);
  auto it = pairs_.find(key);
  if (it != pairs_.end()) return it->second;
  PairData p;
  p.ideal = model_.through_span(x_.gens, Obj{a}, Obj{b});
  p.qb = quotient_basis(model_.hom_dim(a, b), p.ideal, model_.field());
  p.dim = p.qb.projection.rows;
  return pairs_.emplace(key, std::move(p)).first->second;
}

IdealSpan QuotientCat::ideal_span(const Obj& a, const Obj& b) const {
  // blockwise: a morphism factors through add(X) iff each component does
  IdealSpan out{a, b, zero_subspace(model_.mor_dim(a, b))};
  std::vector<Vec> gens;
  int off_i = 0;
  std::vector<int> offsets;
  int total = model_.mor_dim(a, b);
  offsets.push_back(0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      offsets.push_back(offsets.back() + model_.hom_dim(a[i], b[j]));
  int blk = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j, ++blk) {
      const PairData& p = pair(a[i], b[j]);
      for (int r = 0; r < p.ideal.dim(); ++r) {
        Vec v(total, Rat(0));
        Vec row = p.ideal.basis.row(r);
        for (size_t k = 0; k < row.size(); ++k) v[offsets[blk] + (int)k] = row[k];
        gens.push_back(std::move(v));
      }
    }
  (void)off_i;
  out.subspace = span_of_vectors(gens, total, model_.field());
  return out;
}

int QuotientCat::qhom_dim(const Obj& a, const Obj& b) const {
  int d = 0;
  for (const auto& s : a)
    for (const auto& t : b) d += pair(s, t).dim;
  return d;
}

Vec QuotientCat::project(const Mor& f) const {
  Vec out;
  for (size_t i = 0; i < f.src.size(); ++i)
    for (size_t j = 0; j < f.dst.size(); ++j) {
      const PairData& p = pair(f.src[i], f.dst[j]);
      Vec blk = apply(p.qb.projection, f.block[i * f.dst.size() + j], model_.field());
      out.insert(out.end(), blk.begin(), blk.end());
    }
  return out;
}

Mor QuotientCat::section(const Obj& a, const Obj& b, const Vec& coords) const {
  if ((int)coords.size() != qhom_dim(a, b))
    throw EngineError("quotient section: coordinate length mismatch");
  Mor f = model_.zero_mor(a, b);
  size_t pos = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      const PairData& p = pair(a[i], b[j]);
      Vec blk(coords.begin() + pos, coords.begin() + pos + p.dim);
      pos += p.dim;
      f.block[i * b.size() + j] = apply(p.qb.section, blk, model_.field());
    }
  if (pos != coords.size()) throw EngineError("quotient section: length mismatch");
  return f;
}

Vec QuotientCat::qcompose(const Vec& f, const Obj& a, const Obj& b, const Vec& g,
                          const Obj& c) const {
  Mor fm = section(a, b, f);
  Mor gm = section(b, c, g);
  return project(model_.compose(fm, gm));
}

Vec QuotientCat::qidentity(const Obj& a) const { return project(model_.identity(a)); }

bool QuotientCat::qzero(const Mor& f) const { return vec_is_zero(project(f)); }

Mat QuotientCat::qpost_matrix(const Obj& x, const Obj& a, const Obj& b, const Vec& g) const {
  int d1 = qhom_dim(x, a), d2 = qhom_dim(x, b);
  Mat M(d2, d1);
  for (int k = 0; k < d1; ++k) {
    Vec e(d1, Rat(0));
    e[k] = Rat(1);
    Vec col = qcompose(e, x, a, g, b);
    for (int r = 0; r < d2; ++r) M.at(r, k) = col[r];
  }
  return M;
}

Mat QuotientCat::qpre_matrix(const Vec& f, const Obj& a, const Obj& b, const Obj& y) const {
  int d1 = qhom_dim(b, y), d2 = qhom_dim(a, y);
  Mat M(d2, d1);
  for (int k = 0; k < d1; ++k) {
    Vec e(d1, Rat(0));
    e[k] = Rat(1);
    Vec col = qcompose(f, a, b, e, y);
    for (int r = 0; r < d2; ++r) M.at(r, k) = col[r];
  }
  return M;
}

QuotientCat::WicWitness QuotientCat::split_retraction_witness(const Mor& f, const Mor& g) const {
  const Obj& A = f.src;
  const Obj& B = f.dst;
  if (g.src != B || g.dst != A) throw EngineError("wic witness: shape mismatch");
  Mor gf = model_.compose(f, g);
  Mor defect = model_.mor_sub(gf, model_.identity(A));
  if (!qzero(defect)) throw EngineError("wic witness: [g][f] != [1]");
  // decompose the defect through the generators: gf - 1 = t ∘ s
  std::vector<std::pair<Mor, Mor>> comps;  // (s: A->Xk, t: Xk->A)
  std::vector<Vec> spanvecs;
  for (const Indec& xg : x_.gens) {
    Obj mid{xg};
    int d1 = model_.mor_dim(A, mid), d2 = model_.mor_dim(mid, A);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d2; ++j) {
        Mor s = model_.basis_mor(A, mid, i);
        Mor t = model_.basis_mor(mid, A, j);
        comps.push_back({s, t});
        spanvecs.push_back(model_.mor_flat(model_.compose(s, t)));
      }
  }
  Vec target = model_.mor_flat(defect);
  std::optional<Vec> lambda;
  if (!spanvecs.empty()) {
    Mat S = transpose(Mat::from_rows(spanvecs, (int)target.size()));
    lambda = solve_vec(S, target, model_.field());
  } else if (vec_is_zero(target)) {
    lambda = Vec{};
  }
  if (!lambda) throw EngineError("wic witness: defect is not in the ideal span");
  // assemble X0 and s, t with t∘s = gf - 1
  std::vector<Indec> xparts;
  std::vector<std::pair<Mor, Mor>> used;
  for (size_t k = 0; k < lambda->size(); ++k) {
    if ((*lambda)[k].is_zero()) continue;
    Mor s = model_.mor_scale((*lambda)[k], comps[k].first);
    used.push_back({s, comps[k].second});
    xparts.push_back(comps[k].first.dst[0]);
  }
  // a deflation from X onto A for the padding: the omega witnesses if the
  // model has enough E-projectives inside X, else the zero deflation (always
  // a deflation in the stable kinds)
  Obj x1;
  Mor p = model_.zero_mor(Obj{}, A);
  if (model_.kind() == ModelKind::ExactMod) {
    // need an epimorphism from add(X): try the approximation bundle
    HomdimEngine H(model_, x_, SearchCaps{});
    bool found = false;
    for (const ETriangle& t : H.deflation_candidates(A)) {
      if (!H.in_add(t.x.dst)) continue;
      x1 = t.x.dst;
      p = t.y;
      found = true;
      break;
    }
    if (!found) throw EngineError("wic witness: no deflation from X onto " + label(A));
  }
  Obj x0 = x1;
  for (const auto& t : xparts) x0.push_back(t);
  x0 = sorted_obj(x0);
  // g0 = (t_1, ..., t_k, p): X0 -> A and r = (-s_1; ...; -s_k; 0): A -> X0
  Mor g0 = model_.zero_mor(x0, A);
  Mor r = model_.zero_mor(A, x0);
  {
    // place used blocks into x0 positions (multiset matching)
    std::vector<bool> taken(x0.size(), false);
    auto place = [&](const Indec& t) {
      for (size_t i = 0; i < x0.size(); ++i)
        if (!taken[i] && x0[i] == t) {
          taken[i] = true;
          return (int)i;
        }
      throw EngineError("wic witness: placement failed");
    };
    for (auto& [s, t] : used) {
      int at = place(s.dst[0]);
      for (size_t i = 0; i < A.size(); ++i) {
        g0.block[at * A.size() + i] = t.block[0 * A.size() + i];
        r.block[i * x0.size() + at] =
            vec_scale(Rat(-1), s.block[i * 1 + 0], model_.field());
      }
    }
    if (model_.kind() == ModelKind::ExactMod) {
      // place the padding deflation blocks
      for (size_t ii = 0; ii < x1.size(); ++ii) {
        int at = place(x1[ii]);
        for (size_t j = 0; j < A.size(); ++j)
          g0.block[at * A.size() + j] = p.block[ii * A.size() + j];
      }
    }
  }
  // the combined deflation (g g0): B (+) X0 -> A
  auto ci_obj = obj_concat(B, x0);
  Mor big = model_.mor_add(model_.compose(model_.proj_first(B, x0), g),
                           model_.compose(model_.proj_second(B, x0), g0));
  auto tri = model_.cocone_of(big);
  if (!tri) throw EngineError("wic witness: combined map is not a deflation");
  // mu2 = (f; r): A -> B (+) X0 is a section of (g g0)
  Mor mu2 = model_.mor_add(model_.compose(f, model_.inj_first(B, x0)),
                           model_.compose(r, model_.inj_second(B, x0)));
  if (!model_.mor_equal(model_.compose(mu2, big), model_.identity(A)))
    throw EngineError("wic witness: section identity fails");
  if (!model_.class_is_zero(tri->delta))
    throw EngineError("wic witness: conflation class does not vanish");
  WicWitness out;
  out.x0 = x0;
  out.g0 = g0;
  out.confl = *tri;
  out.mu1 = tri->x;
  out.mu2 = mu2;
  out.pi2 = big;
  // pi1: B (+) X0 -> K with pi1∘mu1 = 1, pi1∘mu2 = 0, mu1∘pi1 = 1 - mu2∘pi2
  const Obj& K = tri->x.src;
  Mat M1 = model_.precompose_matrix(tri->x, K);
  Mat M2 = model_.precompose_matrix(mu2, K);
  Mat M3 = model_.postcompose_matrix(tri->x, ci_obj);
  Mat M = vstack(vstack(M1, M2), M3);
  Vec rhs = model_.mor_flat(model_.identity(K));
  Vec r2 = model_.mor_flat(model_.zero_mor(A, K));
  Vec r3 = model_.mor_flat(model_.mor_sub(
      model_.identity(ci_obj), model_.compose(out.pi2, mu2)));
  rhs.insert(rhs.end(), r2.begin(), r2.end());
  rhs.insert(rhs.end(), r3.begin(), r3.end());
  auto sol = solve_vec(M, rhs, model_.field());
  if (!sol) throw EngineError("wic witness: no biproduct projection");
  out.pi1 = model_.mor_from_flat(ci_obj, K, *sol);
  return out;
}

QuotientCat::LocalReport QuotientCat::radical_and_local(const Obj& y) const {
  if (!model_.field().is_rational())
    throw EngineError("radical analysis is refused in prime-field mode");
  LocalReport rep;
  int d = qhom_dim(y, y);
  rep.end_dim = d;
  if (d == 0) {
    rep.verdict = LocalVerdict::NotLocal;
    return rep;
  }
  FDAlgebra A;
  A.dim = d;
  A.unit = qidentity(y);
  A.mult.resize((size_t)d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec ei(d, Rat(0)), ej(d, Rat(0));
      ei[i] = Rat(1);
      ej[j] = Rat(1);
      // e_i * e_j is composition e_j then... use composition order f then g
      A.mult[(size_t)i * d + j] = qcompose(ej, y, y, ei, y);
    }
  Subspace rad = fd_radical(A, model_.field());
  rep.rad_dim = rad.dim();
  rep.verdict = fd_is_local(A, model_.field());
  return rep;
}

bool QuotientCat::ideal_in_radical(const Indec& y) const {
  // ambient End algebra of y in the model
  int d = model_.hom_dim(y, y);
  FDAlgebra A;
  A.dim = d;
  Mor id = model_.identity(Obj{y});
  A.unit = id.block[0];
  A.mult.resize((size_t)d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mor f = model_.basis_mor(Obj{y}, Obj{y}, j);
      Mor g = model_.basis_mor(Obj{y}, Obj{y}, i);
      A.mult[(size_t)i * d + j] = model_.compose(f, g).block[0];
    }
  Subspace rad = fd_radical(A, model_.field());
  const PairData& p = pair(y, y);
  return subspace_leq(p.ideal, rad, model_.field());
}

QuotientCat::KsReport QuotientCat::ks_structure() const {
  KsReport rep;
  for (const auto& t : objects_) {
    if (object_in_x(t)) continue;
    rep.ind.push_back(t);
    LocalReport lr = radical_and_local(Obj{t});
    if (lr.verdict != LocalVerdict::Local) {
      rep.all_local = false;
      rep.notes.push_back("survivor " + label(t) + " not certified split-local");
    }
  }
  return rep;
}

}  // namespace extrilab
