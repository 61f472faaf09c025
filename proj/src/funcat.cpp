#include "extrilab/funcat.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace extrilab {

namespace {

Vec unit_vec(int dim, int k) {
  Vec v(dim, Rat(0));
  v[k] = Rat(1);
  return v;
}

// canonical inclusion of the s-th summand and projection onto it
Mor component_in(const Model& M, const Obj& o, int s) {
  Mor f = M.zero_mor(Obj{o[s]}, o);
  RepMap id = M.alg().identity_map(M.alg().rep_of(o[s]));
  Mor idm = M.rep_to_mor(Obj{o[s]}, Obj{o[s]}, id);
  f.block[0 * o.size() + s] = idm.block[0];
  return f;
}

Mor component_out(const Model& M, const Obj& o, int s) {
  Mor f = M.zero_mor(o, Obj{o[s]});
  RepMap id = M.alg().identity_map(M.alg().rep_of(o[s]));
  Mor idm = M.rep_to_mor(Obj{o[s]}, Obj{o[s]}, id);
  f.block[s * 1 + 0] = idm.block[0];
  return f;
}

}  // namespace

// ----------------------------------------------------------- FiniteLinCat

FiniteLinCat::FiniteLinCat(const Model& model, Subcat x, int n, Side side, HomdimEngine& hd)
    : model_(model), x_(std::move(x)), n_(n), side_(side) {
  objects_ = (side == Side::F) ? hd.xvee_members(n) : hd.xwedge_members(n);
}

int FiniteLinCat::index_of(const Indec& t) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), t);
  if (it == objects_.end() || !(*it == t)) return -1;
  return (int)(it - objects_.begin());
}

const FiniteLinCat::PairData& FiniteLinCat::pair(int i, int j) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(i, j);
  auto it = pairs_.find(key);
  if (it != pairs_.end()) return it->second;
  PairData p;
  Obj a{objects_[i]}, b{objects_[j]};
  int d = model_.mor_dim(a, b);
  // the ideal: P_1 (E(f,-) = 0) on side F, I_1 (E(-,f) = 0) on side K;
  // kernel of the linear map f |-> (all action entries)
  std::vector<Vec> cols;
  int out_len = 0;
  for (int k = 0; k < d; ++k) {
    Mor f = model_.basis_mor(a, b, k);
    Vec col;
    for (const auto& t : model_.objects()) {
      Mat act = (side_ == Side::F) ? model_.e_contra_matrix(f, Obj{t})
                                   : model_.e_cov_matrix(Obj{t}, f);
      col.insert(col.end(), act.a.begin(), act.a.end());
    }
    out_len = (int)col.size();
    cols.push_back(std::move(col));
  }
  Mat M(out_len, d);
  for (int k = 0; k < d; ++k)
    for (int r = 0; r < out_len; ++r) M.at(r, k) = cols[k][r];
  p.ideal = kernel_basis(M, model_.field());
  p.qb = quotient_basis(d, p.ideal, model_.field());
  p.dim = p.qb.projection.rows;
  return pairs_.emplace(key, std::move(p)).first->second;
}

int FiniteLinCat::shom_dim(int i, int j) const { return pair(i, j).dim; }

Vec FiniteLinCat::sproject(int i, int j, const Vec& model_coords) const {
  return apply(pair(i, j).qb.projection, model_coords, model_.field());
}

Vec FiniteLinCat::ssection(int i, int j, const Vec& scoords) const {
  return apply(pair(i, j).qb.section, scoords, model_.field());
}

Vec FiniteLinCat::scompose(int i, int j, int k, const Vec& f, const Vec& g) const {
  Mor fm = model_.mor_from_flat(Obj{objects_[i]}, Obj{objects_[j]}, ssection(i, j, f));
  Mor gm = model_.mor_from_flat(Obj{objects_[j]}, Obj{objects_[k]}, ssection(j, k, g));
  Mor c = model_.compose(fm, gm);
  return sproject(i, k, model_.mor_flat(c));
}

Vec FiniteLinCat::sidentity(int i) const {
  return sproject(i, i, model_.mor_flat(model_.identity(Obj{objects_[i]})));
}

const Subspace& FiniteLinCat::ideal(int i, int j) const { return pair(i, j).ideal; }

bool FiniteLinCat::ideal_matches_bracket(std::string* note) const {
  bool enough = (side_ == Side::F) ? model_.has_enough_e_projectives()
                                   : model_.has_enough_e_injectives();
  if (!enough) {
    if (note) *note = "model lacks enough E-projective/injective objects; comparison skipped";
    return true;
  }
  const auto& gens = (side_ == Side::F) ? model_.e_projectives() : model_.e_injectives();
  for (size_t i = 0; i < objects_.size(); ++i)
    for (size_t j = 0; j < objects_.size(); ++j) {
      Subspace bracket = model_.through_span(gens, Obj{objects_[i]}, Obj{objects_[j]});
      if (!(bracket == pair((int)i, (int)j).ideal)) {
        if (note)
          *note = "ideal mismatch at (" + label(objects_[i]) + "," + label(objects_[j]) + ")";
        return false;
      }
    }
  return true;
}

// ----------------------------------------------------------------- FunCat

int FpFunctor::total_dim() const {
  int s = 0;
  for (int v : val) s += v;
  return s;
}

bool FpFunctor::is_zero() const { return total_dim() == 0; }

FunCat::FunCat(const Model& model, Subcat x, int n, Side side, HomdimEngine& hd, SearchCaps caps)
    : model_(model),
      x_(std::move(x)),
      n_(n),
      side_(side),
      hd_(hd),
      caps_(caps),
      cat_(model, x_, n, side, hd) {
  domain_ = (side == Side::F) ? hd.xvee_members(n + 1) : hd.xwedge_members(n + 1);
}

Mat FunCat::value_action(const Obj& m, int i, int j, const Vec& scoords) const {
  Mor rep = model_.mor_from_flat(Obj{cat_.objects()[i]}, Obj{cat_.objects()[j]},
                                 cat_.ssection(i, j, scoords));
  if (side_ == Side::F) return model_.e_contra_matrix(rep, m);  // val[j] -> val[i]
  return model_.e_cov_matrix(m, rep);                           // val[i] -> val[j]
}

FpFunctor FunCat::functor_of(const Obj& m) const {
  FpFunctor f;
  f.base = &cat_;
  int K = (int)cat_.objects().size();
  f.val.resize(K);
  for (int i = 0; i < K; ++i)
    f.val[i] = (side_ == Side::F) ? model_.e_dim(Obj{cat_.objects()[i]}, m)
                                  : model_.e_dim(m, Obj{cat_.objects()[i]});
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      int d = cat_.shom_dim(i, j);
      for (int k = 0; k < d; ++k) {
        Vec unit(d, Rat(0));
        unit[k] = Rat(1);
        f.action[{i, j, k}] = value_action(m, i, j, unit);
      }
    }
  return f;
}

std::vector<Mat> FunCat::functor_on(const Mor& h) const {
  std::vector<Mat> out;
  for (const auto& z : cat_.objects()) {
    if (side_ == Side::F)
      out.push_back(model_.e_cov_matrix(Obj{z}, h));  // E(z, h.src) -> E(z, h.dst)
    else
      out.push_back(model_.e_contra_matrix(h, Obj{z}));  // E(h.dst, z) -> E(h.src, z)
  }
  return out;
}

bool FunCat::values_well_defined(const Obj& m) const {
  int K = (int)cat_.objects().size();
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      const Subspace& ideal = cat_.ideal(i, j);
      for (int r = 0; r < ideal.dim(); ++r) {
        Mor f = model_.mor_from_flat(Obj{cat_.objects()[i]}, Obj{cat_.objects()[j]},
                                     ideal.basis.row(r));
        Mat act = (side_ == Side::F) ? model_.e_contra_matrix(f, m) : model_.e_cov_matrix(m, f);
        if (!act.is_zero()) return false;
      }
    }
  return true;
}

NatSpace FunCat::nat_space(const FpFunctor& f, const FpFunctor& g) const {
  int K = (int)cat_.objects().size();
  std::vector<int> off(K + 1, 0);
  for (int i = 0; i < K; ++i) off[i + 1] = off[i] + g.val[i] * f.val[i];
  int nunk = off[K];
  std::vector<Vec> eqs;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      int d = cat_.shom_dim(i, j);
      for (int k = 0; k < d; ++k) {
        const Mat& Fa = f.action.at({i, j, k});
        const Mat& Ga = g.action.at({i, j, k});
        if (side_ == Side::F) {
          // eta_i (g.val_i x f.val_i): eta_i * Fa = Ga * eta_j
          for (int r = 0; r < g.val[i]; ++r)
            for (int c = 0; c < f.val[j]; ++c) {
              Vec eq(nunk, Rat(0));
              for (int t = 0; t < f.val[i]; ++t)
                if (!Fa.at(t, c).is_zero()) eq[off[i] + r * f.val[i] + t] += Fa.at(t, c);
              for (int t = 0; t < g.val[j]; ++t)
                if (!Ga.at(r, t).is_zero()) eq[off[j] + t * f.val[j] + c] -= Ga.at(r, t);
              for (auto& xx : eq) xx = model_.field().reduce(xx);
              if (!vec_is_zero(eq)) eqs.push_back(std::move(eq));
            }
        } else {
          // covariant: eta_j * Fa = Ga * eta_i   (Fa: val_i -> val_j)
          for (int r = 0; r < g.val[j]; ++r)
            for (int c = 0; c < f.val[i]; ++c) {
              Vec eq(nunk, Rat(0));
              for (int t = 0; t < f.val[j]; ++t)
                if (!Fa.at(t, c).is_zero()) eq[off[j] + r * f.val[j] + t] += Fa.at(t, c);
              for (int t = 0; t < g.val[i]; ++t)
                if (!Ga.at(r, t).is_zero()) eq[off[i] + t * f.val[i] + c] -= Ga.at(r, t);
              for (auto& xx : eq) xx = model_.field().reduce(xx);
              if (!vec_is_zero(eq)) eqs.push_back(std::move(eq));
            }
        }
      }
    }
  Subspace sol = eqs.empty() ? full_subspace(nunk)
                             : kernel_basis(Mat::from_rows(eqs, nunk), model_.field());
  NatSpace ns;
  ns.dim = sol.dim();
  for (int r = 0; r < ns.dim; ++r) {
    Vec flat = sol.basis.row(r);
    std::vector<Mat> mats;
    for (int i = 0; i < K; ++i) {
      Mat m(g.val[i], f.val[i]);
      for (int a = 0; a < g.val[i]; ++a)
        for (int b = 0; b < f.val[i]; ++b) m.at(a, b) = flat[off[i] + a * f.val[i] + b];
      mats.push_back(std::move(m));
    }
    ns.basis.push_back(std::move(mats));
  }
  return ns;
}

std::vector<Mat> FunCat::find_invertible_nat(const FpFunctor& f, const FpFunctor& g,
                                             const NatSpace& ns) const {
  auto invertible = [&](const std::vector<Mat>& eta) {
    for (size_t i = 0; i < eta.size(); ++i) {
      if (eta[i].rows != eta[i].cols) return false;
      if (!inverse(eta[i], model_.field())) return false;
    }
    return true;
  };
  auto combine = [&](const Vec& coef) {
    std::vector<Mat> eta;
    for (size_t i = 0; i < f.val.size(); ++i) {
      Mat m(g.val[i], f.val[i]);
      for (int r = 0; r < ns.dim; ++r)
        if (!coef[r].is_zero()) m = add(m, scale(coef[r], ns.basis[r][i], model_.field()),
                                        model_.field());
      eta.push_back(std::move(m));
    }
    return eta;
  };
  for (int r = 0; r < ns.dim; ++r) {
    Vec c(ns.dim, Rat(0));
    c[r] = Rat(1);
    auto eta = combine(c);
    if (invertible(eta)) return eta;
  }
  // exhaustive small grid when feasible, else seeded random probes
  long total = 1;
  for (int r = 0; r < ns.dim && total <= 4000; ++r) total *= 5;
  if (ns.dim > 0 && total <= 4000) {
    Vec c(ns.dim, Rat(0));
    std::function<std::vector<Mat>(int)> rec = [&](int k) -> std::vector<Mat> {
      if (k == ns.dim) {
        auto eta = combine(c);
        if (invertible(eta)) return eta;
        return {};
      }
      for (long s : {0L, 1L, -1L, 2L, -2L}) {
        c[k] = Rat(s);
        auto got = rec(k + 1);
        if (!got.empty()) return got;
      }
      c[k] = Rat(0);
      return {};
    };
    auto got = rec(0);
    if (!got.empty()) return got;
    return {};
  }
  std::mt19937_64 rng(caps_.seed * 977 + 5);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int it = 0; it < 64 && ns.dim > 0; ++it) {
    Vec c(ns.dim);
    for (auto& x : c) x = Rat(coef(rng));
    auto eta = combine(c);
    if (invertible(eta)) return eta;
  }
  return {};
}

bool FunCat::isomorphic(const FpFunctor& f, const FpFunctor& g) const {
  if (f.val != g.val) return false;
  if (f.total_dim() == 0) return true;
  NatSpace ns = nat_space(f, g);
  if (ns.dim == 0) return false;
  return !find_invertible_nat(f, g, ns).empty();
}

FunCat::FfkReport FunCat::verify_fully_faithful(const QuotientCat& q) const {
  FfkReport rep;
  for (const auto& a : q.objects())
    for (const auto& b : q.objects()) {
      Obj A{a}, B{b};
      FpFunctor FA = functor_of(A), FB = functor_of(B);
      NatSpace ns = (side_ == Side::F) ? nat_space(FA, FB) : nat_space(FB, FA);
      int dq = q.qhom_dim(A, B);
      if (dq != ns.dim) {
        rep.pass = false;
        rep.failures.push_back("dim mismatch at (" + label(a) + "," + label(b) + "): Hom_D " +
                               std::to_string(dq) + " vs Nat " + std::to_string(ns.dim));
        continue;
      }
      // kernel of Hom(A,B) -> Nat equals the [X]-span
      int dm = model_.mor_dim(A, B);
      std::vector<Vec> cols;
      int out_len = -1;
      for (int k = 0; k < dm; ++k) {
        auto mats = functor_on(model_.basis_mor(A, B, k));
        Vec col;
        for (const Mat& m : mats) col.insert(col.end(), m.a.begin(), m.a.end());
        out_len = (int)col.size();
        cols.push_back(std::move(col));
      }
      Mat Phi(std::max(out_len, 0), dm);
      for (int k = 0; k < dm; ++k)
        for (int r = 0; r < out_len; ++r) Phi.at(r, k) = cols[k][r];
      Subspace ker = kernel_basis(Phi, model_.field());
      Subspace ideal = q.ideal_span(A, B).subspace;
      if (!(ker == ideal)) {
        rep.pass = false;
        rep.failures.push_back("kernel differs from the [X]-span at (" + label(a) + "," +
                               label(b) + ")");
      }
      // fullness: the image of Phi must have the dimension of the Nat space
      if (rank(Phi, model_.field()) != ns.dim) {
        rep.pass = false;
        rep.failures.push_back("image of Hom -> Nat is a proper subspace at (" + label(a) + "," +
                               label(b) + ")");
      }
    }
  return rep;
}

FpFunctor FunCat::representable(const Obj& z) const {
  FpFunctor f;
  f.base = &cat_;
  int K = (int)cat_.objects().size();
  std::vector<int> zidx;
  for (const auto& s : z) {
    int i = cat_.index_of(s);
    if (i < 0) throw EngineError("representable: object outside the category");
    zidx.push_back(i);
  }
  f.val.resize(K);
  for (int i = 0; i < K; ++i) {
    int d = 0;
    for (int zi : zidx)
      d += (side_ == Side::F) ? cat_.shom_dim(i, zi) : cat_.shom_dim(zi, i);
    f.val[i] = d;
  }
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      int d = cat_.shom_dim(i, j);
      for (int k = 0; k < d; ++k) {
        Vec unit(d, Rat(0));
        unit[k] = Rat(1);
        // side F: precompose: Hom(j, z) -> Hom(i, z); side K: postcompose
        Mat m(f.val[side_ == Side::F ? i : j], f.val[side_ == Side::F ? j : i]);
        int roff = 0, coff = 0;
        for (int zi : zidx) {
          if (side_ == Side::F) {
            int dc = cat_.shom_dim(j, zi), dr = cat_.shom_dim(i, zi);
            for (int c = 0; c < dc; ++c) {
              Vec e(dc, Rat(0));
              e[c] = Rat(1);
              Vec out = cat_.scompose(i, j, zi, unit, e);
              for (int r = 0; r < dr; ++r) m.at(roff + r, coff + c) = out[r];
            }
            roff += dr;
            coff += dc;
          } else {
            int dc = cat_.shom_dim(zi, i), dr = cat_.shom_dim(zi, j);
            for (int c = 0; c < dc; ++c) {
              Vec e(dc, Rat(0));
              e[c] = Rat(1);
              Vec out = cat_.scompose(zi, i, j, e, unit);
              for (int r = 0; r < dr; ++r) m.at(roff + r, coff + c) = out[r];
            }
            roff += dr;
            coff += dc;
          }
        }
        f.action[{i, j, k}] = std::move(m);
      }
    }
  return f;
}

FunCat::PresentationReport FunCat::presentation_of(const ETriangle& t) const {
  PresentationReport rep;
  // side F: conflation C -> X0 -> X1 with X0 in add(X), X1 in the category
  // side K: conflation X1 -> X0 -> C
  Obj C = (side_ == Side::F) ? t.x.src : t.y.dst;
  Obj X0 = t.x.dst;
  Obj X1 = (side_ == Side::F) ? t.y.dst : t.x.src;
  for (const auto& s : X0)
    if (!std::binary_search(x_.gens.begin(), x_.gens.end(), s)) {
      rep.note = "middle object is not in add(X)";
      return rep;
    }
  for (const auto& s : X1)
    if (cat_.index_of(s) < 0) {
      rep.note = "third object is not in the linear category";
      return rep;
    }
  FpFunctor R0 = representable(X0), R1 = representable(X1);
  FpFunctor FC = functor_of(C);
  const Mor& d1 = (side_ == Side::F) ? t.y : t.x;
  for (size_t zi = 0; zi < cat_.objects().size(); ++zi) {
    Obj Z{cat_.objects()[zi]};
    // alpha: R0(Z) -> R1(Z) by composing with d1; beta: R1(Z) -> FC(Z) by delta
    int d0 = R0.val[zi], dd1 = R1.val[zi], d2 = FC.val[zi];
    Mat alpha(dd1, d0), beta(d2, dd1);
    if (side_ == Side::F) {
      // basis of sHom(Z, X0): model Mor(Z, X0) coords projected blockwise?
      // use the model-level spaces directly: columns over basis of Mor(Z,X0)
      // would not match R0's stable basis; instead build through the stable
      // basis of each block
      int c = 0;
      for (size_t s = 0; s < X0.size(); ++s) {
        int bi = cat_.index_of(X0[s]);
        for (int k = 0; k < cat_.shom_dim((int)zi, bi); ++k, ++c) {
          // lift, compose with d1 component, project into R1 coordinates
          Vec lift = cat_.ssection((int)zi, bi, unit_vec(cat_.shom_dim((int)zi, bi), k));
          Mor zm = model_.mor_from_flat(Z, Obj{X0[s]}, lift);
          // include into X0 then compose with d1
          Mor into = model_.compose(zm, component_in(model_, X0, (int)s));
          Mor comp = model_.compose(into, d1);
          int r = 0;
          for (size_t s2 = 0; s2 < X1.size(); ++s2) {
            int bj = cat_.index_of(X1[s2]);
            Mor part = model_.compose(comp, component_out(model_, X1, (int)s2));
            Vec sc = cat_.sproject((int)zi, bj, model_.mor_flat(part));
            for (size_t rr = 0; rr < sc.size(); ++rr) alpha.at(r + (int)rr, c) = sc[rr];
            r += cat_.shom_dim((int)zi, bj);
          }
        }
      }
      // beta via the class action
      c = 0;
      for (size_t s2 = 0; s2 < X1.size(); ++s2) {
        int bj = cat_.index_of(X1[s2]);
        for (int k = 0; k < cat_.shom_dim((int)zi, bj); ++k, ++c) {
          Vec lift = cat_.ssection((int)zi, bj, unit_vec(cat_.shom_dim((int)zi, bj), k));
          Mor zm = model_.mor_from_flat(Z, Obj{X1[s2]}, lift);
          Mor into = model_.compose(zm, component_in(model_, X1, (int)s2));
          ExtClass img = model_.act_right(t.delta, into);
          for (size_t rr = 0; rr < img.coords.size(); ++rr) beta.at((int)rr, c) = img.coords[rr];
        }
      }
    } else {
      int c = 0;
      for (size_t s = 0; s < X0.size(); ++s) {
        int bi = cat_.index_of(X0[s]);
        for (int k = 0; k < cat_.shom_dim(bi, (int)zi); ++k, ++c) {
          Vec lift = cat_.ssection(bi, (int)zi, unit_vec(cat_.shom_dim(bi, (int)zi), k));
          Mor zm = model_.mor_from_flat(Obj{X0[s]}, Z, lift);
          Mor from = model_.compose(component_out(model_, X0, (int)s), zm);
          Mor comp = model_.compose(d1, from);
          int r = 0;
          for (size_t s2 = 0; s2 < X1.size(); ++s2) {
            int bj = cat_.index_of(X1[s2]);
            Mor part = model_.compose(component_in(model_, X1, (int)s2), comp);
            Vec sc = cat_.sproject(bj, (int)zi, model_.mor_flat(part));
            for (size_t rr = 0; rr < sc.size(); ++rr) alpha.at(r + (int)rr, c) = sc[rr];
            r += cat_.shom_dim(bj, (int)zi);
          }
        }
      }
      c = 0;
      for (size_t s2 = 0; s2 < X1.size(); ++s2) {
        int bj = cat_.index_of(X1[s2]);
        for (int k = 0; k < cat_.shom_dim(bj, (int)zi); ++k, ++c) {
          Vec lift = cat_.ssection(bj, (int)zi, unit_vec(cat_.shom_dim(bj, (int)zi), k));
          Mor zm = model_.mor_from_flat(Obj{X1[s2]}, Z, lift);
          Mor from = model_.compose(component_out(model_, X1, (int)s2), zm);
          ExtClass img = model_.act_left(from, t.delta);
          for (size_t rr = 0; rr < img.coords.size(); ++rr) beta.at((int)rr, c) = img.coords[rr];
        }
      }
    }
    // exactness at R1(Z) and surjectivity onto FC(Z)
    if (!mul(beta, alpha, model_.field()).is_zero()) {
      rep.note = "composite nonzero at " + label(cat_.objects()[zi]);
      return rep;
    }
    if (rank(alpha, model_.field()) + rank(beta, model_.field()) != dd1) {
      rep.note = "homology nonzero at " + label(cat_.objects()[zi]);
      return rep;
    }
    if (rank(beta, model_.field()) != d2) {
      rep.note = "presentation not surjective at " + label(cat_.objects()[zi]);
      return rep;
    }
    (void)d0;
  }
  rep.pass = true;
  return rep;
}

namespace {

// the category algebra of a FiniteLinCat with its Pierce-block offsets
struct CatAlgebra {
  FDAlgebra alg;
  std::vector<std::vector<int>> off;  // off[i][j]: start of block (i,j)
  int K = 0;
};

CatAlgebra build_cat_algebra(const FiniteLinCat& cat, const Field& F) {
  CatAlgebra out;
  int K = (int)cat.objects().size();
  out.K = K;
  out.off.assign(K, std::vector<int>(K, 0));
  int dim = 0;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      out.off[i][j] = dim;
      dim += cat.shom_dim(i, j);
    }
  out.alg.dim = dim;
  out.alg.unit = Vec(dim, Rat(0));
  for (int i = 0; i < K; ++i) {
    Vec idc = cat.sidentity(i);
    for (size_t k = 0; k < idc.size(); ++k) out.alg.unit[out.off[i][i] + (int)k] = idc[k];
  }
  out.alg.mult.assign((size_t)dim * dim, Vec(dim, Rat(0)));
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      for (int k = 0; k < cat.shom_dim(i, j); ++k)
        for (int j2 = 0; j2 < K; ++j2)
          for (int k2 = 0; k2 < cat.shom_dim(j2, i); ++k2) {
            // e_a * e_b with a: i -> j, b: j2 -> i composes to j2 -> j
            Vec comp = cat.scompose(j2, i, j, unit_vec(cat.shom_dim(j2, i), k2),
                                    unit_vec(cat.shom_dim(i, j), k));
            Vec& cell = out.alg.mult[(size_t)(out.off[i][j] + k) * dim + (out.off[j2][i] + k2)];
            for (size_t t = 0; t < comp.size(); ++t) cell[out.off[j2][j] + (int)t] = comp[t];
          }
  (void)F;
  return out;
}

}  // namespace

FunCat::InRReport FunCat::in_r(const FpFunctor& g) const {
  InRReport rep;
  int K = (int)cat_.objects().size();
  CatAlgebra CA = build_cat_algebra(cat_, model_.field());
  Subspace rad = fd_radical(CA.alg, model_.field());
  // Pierce blocks of the radical
  std::vector<std::vector<Subspace>> J(K, std::vector<Subspace>(K));
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      std::vector<Vec> vs;
      for (int r = 0; r < rad.dim(); ++r) {
        Vec row = rad.basis.row(r);
        Vec blk(cat_.shom_dim(i, j));
        bool nz = false;
        for (size_t k = 0; k < blk.size(); ++k) {
          blk[k] = row[CA.off[i][j] + (int)k];
          if (!blk[k].is_zero()) nz = true;
        }
        if (nz) vs.push_back(std::move(blk));
      }
      J[i][j] = span_of_vectors(vs, cat_.shom_dim(i, j), model_.field());
    }
  auto g_act = [&](int i, int j, const Vec& scoords) {
    // the action of a stable morphism i -> j on g
    Mat m = (side_ == Side::F) ? Mat(g.val[i], g.val[j]) : Mat(g.val[j], g.val[i]);
    for (size_t k = 0; k < scoords.size(); ++k)
      if (!scoords[k].is_zero())
        m = add(m, scale(scoords[k], g.action.at({i, j, (int)k}), model_.field()),
                model_.field());
    return m;
  };
  // radical subfunctor and the top of g
  std::vector<Subspace> radsub(K);
  for (int z = 0; z < K; ++z) {
    std::vector<Vec> vs;
    for (int w = 0; w < K; ++w) {
      int i = (side_ == Side::F) ? z : w;  // maps i -> j acting toward z
      int j = (side_ == Side::F) ? w : z;
      const Subspace& rr = J[i][j];
      for (int r = 0; r < rr.dim(); ++r) {
        Mat act = g_act(i, j, rr.basis.row(r));
        for (int c = 0; c < act.cols; ++c) {
          Vec col = act.col(c);
          if (!vec_is_zero(col)) vs.push_back(col);
        }
      }
    }
    radsub[z] = span_of_vectors(vs, g.val[z], model_.field());
  }
  // cover: generators lifting a basis of the top at every object
  std::vector<std::vector<Vec>> gens(K);
  for (int z = 0; z < K; ++z) {
    QuotientBasis qb = quotient_basis(g.val[z], radsub[z], model_.field());
    rep.cover_multiplicity.push_back(qb.projection.rows);
    for (int c = 0; c < qb.section.cols; ++c) gens[z].push_back(qb.section.col(c));
  }
  // P(W) = (+)_Z sHom(W,Z)^{m_Z} (side F); kernel of the cover at each object
  std::vector<Subspace> ker(K);
  std::vector<std::vector<int>> poff(K);  // offsets of (Z,copy) blocks at W... same for all W
  for (int w = 0; w < K; ++w) {
    int pdim = 0;
    std::vector<Vec> cols;
    for (int z = 0; z < K; ++z) {
      int d = (side_ == Side::F) ? cat_.shom_dim(w, z) : cat_.shom_dim(z, w);
      for (size_t c = 0; c < gens[z].size(); ++c)
        for (int k = 0; k < d; ++k) {
          int i = (side_ == Side::F) ? w : z;
          int j = (side_ == Side::F) ? z : w;
          Mat act = g_act(i, j, unit_vec(cat_.shom_dim(i, j), k));
          // g(alpha)(v): side F: act: g(z) -> g(w); side K: g(z) -> g(w) too
          cols.push_back(apply(act, gens[z][c], model_.field()));
          ++pdim;
        }
    }
    Mat M(g.val[w], pdim);
    for (int c = 0; c < pdim; ++c)
      for (int r = 0; r < g.val[w]; ++r) M.at(r, c) = cols[c][r];
    if (rank(M, model_.field()) != g.val[w] - 0) {
      // cover must be surjective onto g(w) (it is, by the top construction)
      if (rank(M, model_.field()) < g.val[w]) {
        rep.note = "cover not surjective at " + label(cat_.objects()[w]);
        return rep;
      }
    }
    ker[w] = kernel_basis(M, model_.field());
    (void)poff;
  }
  // trace of the kernel over the X-objects: spans of K(beta)(K(X))
  // K lives inside P; the P-action on the (Z,copy,k) coordinates is by
  // composition in the category on the k-index
  auto p_offsets = [&](int w) {
    std::vector<std::tuple<int, int, int>> idx;  // (Z, copy, k)
    for (int z = 0; z < K; ++z) {
      int d = (side_ == Side::F) ? cat_.shom_dim(w, z) : cat_.shom_dim(z, w);
      for (size_t c = 0; c < gens[z].size(); ++c)
        for (int k = 0; k < d; ++k) idx.push_back({z, (int)c, k});
    }
    return idx;
  };
  auto p_action = [&](int wfrom, int wto, const Vec& beta) {
    // side F: beta: wto -> wfrom induces P(wfrom) -> P(wto)
    auto from_idx = p_offsets(wfrom);
    auto to_idx = p_offsets(wto);
    Mat M((int)to_idx.size(), (int)from_idx.size());
    for (size_t c = 0; c < from_idx.size(); ++c) {
      auto [z, cp, k] = from_idx[c];
      Vec comp;
      if (side_ == Side::F)
        comp = cat_.scompose(wto, wfrom, z, beta, unit_vec(cat_.shom_dim(wfrom, z), k));
      else
        comp = cat_.scompose(z, wfrom, wto, unit_vec(cat_.shom_dim(z, wfrom), k), beta);
      for (size_t r = 0; r < to_idx.size(); ++r) {
        auto [z2, cp2, k2] = to_idx[r];
        if (z2 == z && cp2 == cp) M.at((int)r, (int)c) = comp[k2];
      }
    }
    return M;
  };
  for (int w = 0; w < K; ++w) {
    std::vector<Vec> vs;
    for (const auto& xg : x_.gens) {
      int xi = cat_.index_of(xg);
      if (xi < 0) continue;
      int d = (side_ == Side::F) ? cat_.shom_dim(w, xi) : cat_.shom_dim(xi, w);
      for (int k = 0; k < d; ++k) {
        Mat act = p_action(xi, w, unit_vec(d, k));
        for (int r = 0; r < ker[xi].dim(); ++r) {
          Vec img = apply(act, ker[xi].basis.row(r), model_.field());
          if (!vec_is_zero(img)) vs.push_back(img);
        }
      }
    }
    Subspace trace = span_of_vectors(vs, ker[w].ambient_dim, model_.field());
    // trace must fill the kernel (and is contained in it by naturality)
    if (!(subspace_leq(trace, ker[w], model_.field()))) {
      rep.note = "trace leaves the kernel at " + label(cat_.objects()[w]);
      return rep;
    }
    if (trace.dim() != ker[w].dim()) {
      rep.note = "kernel not X-generated at " + label(cat_.objects()[w]);
      return rep;
    }
  }
  rep.member = true;
  return rep;
}

FunCat::DensityReport FunCat::verify_dense() const {
  DensityReport rep;
  std::vector<FpFunctor> family;
  std::vector<std::string> names;
  auto push_unique = [&](FpFunctor f, const std::string& name) {
    if (f.total_dim() > caps_.dim_cap) return;
    for (const auto& g : family)
      if (isomorphic(f, g)) return;
    family.push_back(std::move(f));
    names.push_back(name);
  };
  // functors of the domain objects (hit trivially), their pairs, and
  // presentation cokernels realized through the cocone construction
  for (const auto& m : domain_) push_unique(functor_of(Obj{m}), "F(" + label(m) + ")");
  std::mt19937_64 rng(caps_.seed * 131 + 17);
  std::uniform_int_distribution<size_t> pick(0, domain_.empty() ? 0 : domain_.size() - 1);
  for (int it = 0; it < 12 && !domain_.empty(); ++it) {
    Obj m = sorted_obj({domain_[pick(rng)], domain_[pick(rng)]});
    push_unique(functor_of(m), "F(" + label(m) + ")");
  }
  // presentation-built members of R (or L): maps from add(X) objects into
  // category objects in stable coordinates
  int built = 0;
  for (const auto& x0 : x_.gens) {
    for (const auto& z : cat_.objects()) {
      if (built >= caps_.orbit_cap) break;
      int i0 = cat_.index_of(x0);
      int zi = cat_.index_of(z);
      if (i0 < 0 || zi < 0) continue;
      int d = (side_ == Side::F) ? cat_.shom_dim(i0, zi) : cat_.shom_dim(zi, i0);
      for (int k = 0; k < d && built < caps_.orbit_cap; ++k, ++built) {
        // cokernel of the map induced by the k-th basis morphism
        Vec sc = unit_vec(d, k);
        Mor f = (side_ == Side::F)
                    ? model_.mor_from_flat(Obj{x0}, Obj{z},
                                           cat_.ssection(i0, zi, sc))
                    : model_.mor_from_flat(Obj{z}, Obj{x0}, cat_.ssection(zi, i0, sc));
        // the quotient functor: coker( rep(x0) -> rep(z) ) built objectwise
        FpFunctor R1 = representable(Obj{z});
        FpFunctor R0 = representable(Obj{x0});
        // alpha: R0 -> R1 (side F: composition with f)
        std::vector<Mat> alpha;
        int KK = (int)cat_.objects().size();
        for (int w = 0; w < KK; ++w) {
          Mat m(R1.val[w], R0.val[w]);
          int dc = R0.val[w];
          for (int c = 0; c < dc; ++c) {
            Vec comp;
            if (side_ == Side::F)
              comp = cat_.scompose(w, i0, zi, unit_vec(dc, c), sc);
            else
              comp = cat_.scompose(zi, i0, w, sc, unit_vec(dc, c));
            for (size_t r = 0; r < comp.size(); ++r) m.at((int)r, c) = comp[r];
          }
          alpha.push_back(std::move(m));
        }
        // coker functor
        FpFunctor G;
        G.base = &cat_;
        G.val.resize(KK);
        std::vector<QuotientBasis> qb(KK);
        for (int w = 0; w < KK; ++w) {
          Subspace im = span_of_rows(transpose(alpha[w]), model_.field());
          qb[w] = quotient_basis(R1.val[w], im, model_.field());
          G.val[w] = qb[w].projection.rows;
        }
        for (int i = 0; i < KK; ++i)
          for (int j = 0; j < KK; ++j)
            for (int kk = 0; kk < cat_.shom_dim(i, j); ++kk) {
              const Mat& act = R1.action.at({i, j, kk});
              Mat ind = (side_ == Side::F)
                            ? mul(qb[i].projection, mul(act, qb[j].section, model_.field()),
                                  model_.field())
                            : mul(qb[j].projection, mul(act, qb[i].section, model_.field()),
                                  model_.field());
              G.action[{i, j, kk}] = ind;
            }
        push_unique(std::move(G), "coker(" + label(x0) + "->" + label(z) + ":" +
                                      std::to_string(k) + ")");
      }
    }
  }
  rep.enumerated = (int)family.size();
  // every member must be hit by some F(M); use the inventory scan
  std::vector<Obj> candidates;
  for (const auto& m : domain_) candidates.push_back(Obj{m});
  for (size_t a = 0; a < domain_.size(); ++a)
    for (size_t b = a; b < domain_.size(); ++b)
      candidates.push_back(sorted_obj({domain_[a], domain_[b]}));
  for (size_t idx = 0; idx < family.size(); ++idx) {
    const FpFunctor& g = family[idx];
    // in_r must certify membership in R (or L)
    auto irr = in_r(g);
    if (!irr.member) {
      rep.misses.push_back(names[idx] + ": not in the representable class (" + irr.note + ")");
      continue;
    }
    bool hit = false;
    for (const Obj& m : candidates) {
      FpFunctor fm = functor_of(m);
      if (fm.val != g.val) continue;
      if (isomorphic(fm, g)) {
        hit = true;
        break;
      }
    }
    if (hit)
      ++rep.hits;
    else
      rep.misses.push_back(names[idx]);
  }
  return rep;
}

bool FunCat::eps_is_conflation(const QuotientCat& q, const Obj& a1, const Vec& i_cls,
                               const Obj& a2, const Vec& p_cls, const Obj& a3) const {
  Mor im = q.section(a1, a2, i_cls);
  Mor pm = q.section(a2, a3, p_cls);
  if (!q.qzero(model_.compose(im, pm))) return false;
  auto Ti = functor_on(im);
  auto Tp = functor_on(pm);
  FpFunctor F1 = functor_of(a1), F2 = functor_of(a2), F3 = functor_of(a3);
  for (size_t z = 0; z < cat_.objects().size(); ++z) {
    Mat first = (side_ == Side::F) ? Ti[z] : Tp[z];
    Mat second = (side_ == Side::F) ? Tp[z] : Ti[z];
    int d1 = (side_ == Side::F) ? F1.val[z] : F3.val[z];
    int d2 = F2.val[z];
    int d3 = (side_ == Side::F) ? F3.val[z] : F1.val[z];
    if (rank(first, model_.field()) != d1) return false;                    // mono
    if (rank(second, model_.field()) != d3) return false;                   // epi
    if (!mul(second, first, model_.field()).is_zero()) return false;        // composite
    if (rank(first, model_.field()) + rank(second, model_.field()) != d2) return false;
  }
  return true;
}

FunCat::AbelianReport FunCat::abelian_case_check(const QuotientCat& q) const {
  AbelianReport rep;
  // gate: X_n-vee (resp wedge) equals X
  std::vector<Indec> members = cat_.objects();
  if (members != x_.gens) {
    rep.notes.push_back("gate fails: the level-n class differs from X");
    return rep;
  }
  rep.applicable = true;
  rep.pass = true;
  std::vector<Obj> inventory;
  for (const auto& m : q.objects()) inventory.push_back(Obj{m});
  for (size_t a = 0; a < q.objects().size(); ++a)
    for (size_t b = a; b < q.objects().size(); ++b)
      inventory.push_back(sorted_obj({q.objects()[a], q.objects()[b]}));
  inventory.push_back(Obj{});
  auto find_object_for = [&](const FpFunctor& g, Obj* out) {
    for (const Obj& m : inventory) {
      FpFunctor fm = functor_of(m);
      if (fm.val != g.val) continue;
      if (isomorphic(fm, g)) {
        *out = m;
        return true;
      }
    }
    return false;
  };
  for (const auto& a : q.objects())
    for (const auto& b : q.objects()) {
      Obj A{a}, B{b};
      int d = q.qhom_dim(A, B);
      for (int k = 0; k < d; ++k) {
        Mor h = q.section(A, B, unit_vec(d, k));
        auto T = functor_on(h);
        FpFunctor FA = functor_of(A), FB = functor_of(B);
        // kernel functor of T (objectwise kernels with restricted actions)
        FpFunctor KF;
        KF.base = &cat_;
        int KK = (int)cat_.objects().size();
        std::vector<Subspace> ks(KK);
        for (int z = 0; z < KK; ++z) {
          ks[z] = kernel_basis(T[z], model_.field());
          KF.val.push_back(ks[z].dim());
        }
        for (int i = 0; i < KK; ++i)
          for (int j = 0; j < KK; ++j)
            for (int kk = 0; kk < cat_.shom_dim(i, j); ++kk) {
              const Mat& act = FA.action.at({i, j, kk});
              int from = (side_ == Side::F) ? j : i;
              int to = (side_ == Side::F) ? i : j;
              Mat big = mul(act, transpose(ks[from].basis), model_.field());
              auto sol = solve(transpose(ks[to].basis), big, model_.field());
              if (!sol) throw EngineError("abelian check: kernel not action-stable");
              KF.action[{i, j, kk}] = *sol;
            }
        ++rep.checked;
        Obj M;
        if (!find_object_for(KF, &M)) {
          rep.pass = false;
          rep.notes.push_back("no kernel object for a morphism " + label(a) + " -> " + label(b));
          continue;
        }
        // universal property against every test object of the quotient
        // (rank bookkeeping: Hom_D(T,M) = ker(Hom_D(T,A) -> Hom_D(T,B)))
        for (const auto& t : q.objects()) {
          Obj T1{t};
          Mat comp = q.qpost_matrix(T1, A, B, unit_vec(d, k));
          int kdim = q.qhom_dim(T1, A) - rank(comp, model_.field());
          if (kdim != q.qhom_dim(T1, M)) {
            rep.pass = false;
            rep.notes.push_back("kernel universal property fails numerically at " + label(t));
          }
        }
        // cokernel: dual construction
        FpFunctor CF;
        CF.base = &cat_;
        std::vector<QuotientBasis> cq(KK);
        for (int z = 0; z < KK; ++z) {
          Subspace im = span_of_rows(transpose(T[z]), model_.field());
          cq[z] = quotient_basis((side_ == Side::F) ? FB.val[z] : FA.val[z], im, model_.field());
          CF.val.push_back(cq[z].projection.rows);
        }
        const FpFunctor& tgt = (side_ == Side::F) ? FB : FA;
        for (int i = 0; i < KK; ++i)
          for (int j = 0; j < KK; ++j)
            for (int kk = 0; kk < cat_.shom_dim(i, j); ++kk) {
              const Mat& act = tgt.action.at({i, j, kk});
              int from = (side_ == Side::F) ? j : i;
              int to = (side_ == Side::F) ? i : j;
              CF.action[{i, j, kk}] =
                  mul(cq[to].projection, mul(act, cq[from].section, model_.field()),
                      model_.field());
            }
        Obj M2;
        if (!find_object_for(CF, &M2)) {
          rep.pass = false;
          rep.notes.push_back("no cokernel object for a morphism " + label(a) + " -> " +
                              label(b));
          continue;
        }
        for (const auto& t : q.objects()) {
          Obj T1{t};
          Mat comp = q.qpre_matrix(unit_vec(d, k), A, B, T1);
          int cdim = q.qhom_dim(B, T1) - rank(comp, model_.field());
          if (cdim != q.qhom_dim(M2, T1)) {
            rep.pass = false;
            rep.notes.push_back("cokernel universal property fails numerically at " + label(t));
          }
        }
      }
    }
  return rep;
}

FunCat::ProjInjReport FunCat::proj_inj_of_quotient(
    const QuotientCat& q,
    const std::vector<std::tuple<Obj, Vec, Obj, Vec, Obj>>& conflations) const {
  ProjInjReport rep;
  bool enough = (side_ == Side::F) ? model_.has_enough_e_projectives()
                                   : model_.has_enough_e_injectives();
  const auto& pe = (side_ == Side::F) ? model_.e_projectives() : model_.e_injectives();
  bool contained = true;
  for (const auto& p : pe)
    if (!std::binary_search(x_.gens.begin(), x_.gens.end(), p)) contained = false;
  if (!enough || !contained) {
    rep.notes.push_back("hypotheses fail: enough projectives/injectives inside X required");
    return rep;
  }
  rep.applicable = true;
  // Omega(X) (resp Sigma(X)) and the syzygy class of the level-n members
  std::set<Indec> omega, omega_level;
  for (const auto& g : x_.gens) {
    const ETriangle& w =
        (side_ == Side::F) ? model_.omega_witness(g) : model_.sigma_witness(g);
    Obj o = (side_ == Side::F) ? w.x.src : w.y.dst;
    for (const auto& s : o) omega.insert(s);
  }
  for (const auto& g : cat_.objects()) {
    const ETriangle& w =
        (side_ == Side::F) ? model_.omega_witness(g) : model_.sigma_witness(g);
    Obj o = (side_ == Side::F) ? w.x.src : w.y.dst;
    for (const auto& s : o) omega_level.insert(s);
  }
  for (const auto& s : omega) rep.omega_x.push_back(s);
  // certify projectivity (injectivity) against the conflation universe
  for (const auto& t : q.objects()) {
    if (q.object_in_x(t)) continue;
    bool proj = true;
    for (const auto& [A, icls, B, pcls, C] : conflations) {
      if (side_ == Side::F) {
        Mat m = q.qpost_matrix(Obj{t}, B, C, pcls);
        if (rank(m, model_.field()) != q.qhom_dim(Obj{t}, C)) proj = false;
      } else {
        Mat m = q.qpre_matrix(icls, A, B, Obj{t});
        if (rank(m, model_.field()) != q.qhom_dim(A, Obj{t})) proj = false;
      }
      if (!proj) break;
    }
    if (proj) rep.projs.push_back(t);
  }
  // the image of the syzygy class of the level-n members consists of
  // projectives (containment, always); the equality with Omega(X) survivors
  // is the Krull-Schmidt statement of the abelian case
  for (const auto& s : omega_level) {
    if (q.object_in_x(s)) continue;
    if (!std::binary_search(rep.projs.begin(), rep.projs.end(), s)) {
      rep.pass = false;
      rep.notes.push_back(label(s) + " from the syzygy class fails the projectivity test");
    }
  }
  bool abelian_gate = (cat_.objects() == x_.gens);
  if (abelian_gate) {
    std::vector<Indec> omega_survivors;
    for (const auto& s : rep.omega_x)
      if (!q.object_in_x(s)) omega_survivors.push_back(s);
    if (rep.projs != omega_survivors) {
      rep.pass = false;
      rep.notes.push_back("projectives do not coincide with the syzygy survivors");
    }
  } else {
    rep.notes.push_back(
        "equality with the syzygy survivors applies only in the abelian case; "
        "containment certified against the bounded universe");
  }
  return rep;
}

FunCat::EpiWitness FunCat::epi_witness(const Obj& c, const QuotientCat& qc) const {
  EpiWitness out;
  if (side_ == Side::F) {
    auto chain = hd_.coresdim(c, n_ + 1);
    if (!chain.n.has_value() || chain.witness.steps.empty()) return out;
    if (*chain.n == 0) {
      out.found = true;
      out.y0 = Obj{};
      out.y = c;
      out.beta = model_.identity(c);
      return out;
    }
    const ETriangle& step = chain.witness.steps[0];  // C -> X0 -> X1
    const Obj& X0 = step.x.dst;
    // an E-projective deflation onto X0 through the omega witnesses
    ETriangle wit = model_.omega_witness_sum(X0);
    Mor p = wit.y;                         // P -> X0 with E(p,-) = 0
    Mor qmor = model_.compose(p, step.y);  // P -> X1, again E-projective
    auto ytri = model_.cocone_of(qmor);
    if (!ytri) return out;
    Obj Y = ytri->x.src;
    // beta: Y -> C with step.x∘beta = p∘ytri.x and beta . delta_Y = delta_C
    Mat A1 = model_.postcompose_matrix(step.x, Y);  // Mor(Y,c) -> Mor(Y,X0)
    Vec r1 = model_.mor_flat(model_.compose(ytri->x, p));
    int dm = model_.mor_dim(Y, c);
    Mat A2(model_.e_dim(ytri->delta.c, c), dm);
    for (int k = 0; k < dm; ++k) {
      ExtClass col = model_.act_left(model_.basis_mor(Y, c, k), ytri->delta);
      for (int r = 0; r < A2.rows; ++r) A2.at(r, k) = col.coords[r];
    }
    Vec rhs = r1;
    rhs.insert(rhs.end(), step.delta.coords.begin(), step.delta.coords.end());
    auto beta = solve_vec(vstack(A1, A2), rhs, model_.field());
    if (!beta) return out;
    Mor betam = model_.mor_from_flat(Y, c, *beta);
    for (const auto& t : qc.objects()) {
      Mat pre = qc.qpre_matrix(qc.project(betam), Y, c, Obj{t});
      if (rank(pre, model_.field()) != qc.qhom_dim(c, Obj{t})) return out;
    }
    auto cz = model_.cocone_of(betam);
    if (!cz) return out;
    if (!hd_.in_xvee(cz->x.src, 1)) return out;
    out.found = true;
    out.y0 = cz->x.src;
    out.y = Y;
    out.beta = betam;
    return out;
  }
  // K side: the dual mono witness C -> Y -> Y0
  auto chain = hd_.resdim(c, n_ + 1);
  if (!chain.n.has_value() || chain.witness.steps.empty()) return out;
  if (*chain.n == 0) {
    out.found = true;
    out.y0 = Obj{};
    out.y = c;
    out.beta = model_.identity(c);
    return out;
  }
  const ETriangle& step = chain.witness.steps[0];  // X1 -> X0 -> C
  const Obj& X0 = step.x.dst;
  ETriangle wit = model_.sigma_witness_sum(X0);
  Mor iota = wit.x;                          // X0 -> I with E(-,iota) = 0
  Mor qmor = model_.compose(step.x, iota);   // X1 -> I, E-injective morphism
  auto ytri = model_.cone_of(qmor);
  if (!ytri) return out;
  Obj Y = ytri->y.dst;
  // alpha: C -> Y with alpha∘step.y = ytri.y∘iota and delta_Y . alpha = delta_C
  Mat A1 = model_.precompose_matrix(step.y, Y);  // Mor(c,Y) -> Mor(X0,Y)
  Vec r1 = model_.mor_flat(model_.compose(iota, ytri->y));
  int dm = model_.mor_dim(c, Y);
  Mat A2(model_.e_dim(c, ytri->delta.a), dm);
  for (int k = 0; k < dm; ++k) {
    ExtClass col = model_.act_right(ytri->delta, model_.basis_mor(c, Y, k));
    for (int r = 0; r < A2.rows; ++r) A2.at(r, k) = col.coords[r];
  }
  Vec rhs = r1;
  rhs.insert(rhs.end(), step.delta.coords.begin(), step.delta.coords.end());
  auto alpha = solve_vec(vstack(A1, A2), rhs, model_.field());
  if (!alpha) return out;
  Mor alpham = model_.mor_from_flat(c, Y, *alpha);
  for (const auto& t : qc.objects()) {
    Mat post = qc.qpost_matrix(Obj{t}, c, Y, qc.project(alpham));
    if (rank(post, model_.field()) != qc.qhom_dim(Obj{t}, c)) return out;
  }
  auto cz = model_.cone_of(alpham);
  if (!cz) return out;
  if (!hd_.in_xwedge(cz->y.dst, 1)) return out;
  out.found = true;
  out.y0 = cz->y.dst;
  out.y = Y;
  out.beta = alpham;
  return out;
}

bool FunCat::pseudokernel_exists(int i, int j, const Vec& scoords) const {
  if (side_ != Side::F) return true;  // the statement concerns the stable side
  Obj oi{cat_.objects()[i]}, oj{cat_.objects()[j]};
  Mor f = model_.mor_from_flat(oi, oj, cat_.ssection(i, j, scoords));
  // deflation from add(X) onto oj
  HomdimEngine sub(model_, x_, caps_);
  std::optional<ETriangle> defl;
  for (const ETriangle& t : sub.deflation_candidates(oj)) {
    if (sub.in_add(t.x.dst)) {
      defl = t;
      break;
    }
  }
  if (!defl) return false;
  // combined deflation (f d1): oi (+) X0 -> oj and its cocone
  const Obj& X0 = defl->x.dst;
  Mor big = model_.mor_add(model_.compose(model_.proj_first(oi, X0), f),
                           model_.compose(model_.proj_second(oi, X0), defl->y));
  auto kk = model_.cocone_of(big);
  if (!kk) return false;
  Obj Kobj = kk->x.src;
  // L: the category precover of K; pseudokernel = (L -> K -> oi)
  Mor g = model_.compose(kk->x, model_.proj_first(oi, X0));
  for (size_t w = 0; w < cat_.objects().size(); ++w) {
    Obj W{cat_.objects()[w]};
    // kernel of [f]∘- on sHom(W, oi) must be covered by maps through L
    int dwi = cat_.shom_dim((int)w, i);
    Mat comp(cat_.shom_dim((int)w, j), dwi);
    for (int k = 0; k < dwi; ++k) {
      Vec col = cat_.scompose((int)w, i, j, unit_vec(dwi, k), scoords);
      for (size_t r = 0; r < col.size(); ++r) comp.at((int)r, k) = col[r];
    }
    Subspace kerw = kernel_basis(comp, model_.field());
    // image: compose basis maps W -> (category objects) -> K -> oi... the
    // pseudokernel factors through the model-level precover of K; test the
    // image of Mor(W, K)∘g projected to stable coordinates
    int dk = model_.mor_dim(W, Kobj);
    std::vector<Vec> img;
    for (int k = 0; k < dk; ++k) {
      Mor through = model_.compose(model_.basis_mor(W, Kobj, k), g);
      img.push_back(cat_.sproject((int)w, i, model_.mor_flat(through)));
    }
    Subspace imgs = span_of_vectors(img, dwi, model_.field());
    if (!subspace_leq(kerw, imgs, model_.field())) return false;
  }
  return true;
}

}  // namespace extrilab
