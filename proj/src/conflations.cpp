#include "extrilab/conflations.hpp"

#include <algorithm>
#include <random>

namespace extrilab {

namespace {
Vec unit_vec(int dim, int k) {
  Vec v(dim, Rat(0));
  v[k] = Rat(1);
  return v;
}
}  // namespace

ConflCat::ConflCat(const Model& model, const QuotientCat& q, const FunCat& fc, SearchCaps caps)
    : model_(model), q_(q), fc_(fc), caps_(caps) {}

Obj ConflCat::qstrip(const Obj& o) const {
  Obj out;
  for (const auto& s : o)
    if (!q_.object_in_x(s)) out.push_back(s);
  return out;
}

ConflObj ConflCat::canonicalize(const Obj& a, const Mor& i, const Obj& b, const Mor& p,
                                const Obj& c) const {
  // pass to the X-stripped objects through the canonical inclusion/projection
  auto strip_maps = [&](const Obj& o) {
    Obj s = qstrip(o);
    Mor incl = model_.zero_mor(s, o);
    Mor proj = model_.zero_mor(o, s);
    size_t at = 0;
    for (size_t k = 0; k < o.size(); ++k) {
      if (q_.object_in_x(o[k])) continue;
      Mor id = model_.identity(Obj{o[k]});
      incl.block[at * o.size() + k] = id.block[0];
      proj.block[k * s.size() + at] = id.block[0];
      ++at;
    }
    return std::make_tuple(s, incl, proj);
  };
  auto [sa, ia, pa] = strip_maps(a);
  auto [sb, ib, pb] = strip_maps(b);
  auto [sc, ic, pc] = strip_maps(c);
  Mor i2 = model_.compose(model_.compose(ia, i), pb);
  Mor p2 = model_.compose(model_.compose(ib, p), pc);
  ConflObj out;
  out.a = sa;
  out.b = sb;
  out.c = sc;
  out.i_cls = q_.project(i2);
  out.p_cls = q_.project(p2);
  return out;
}

bool ConflCat::is_conflation(const ConflObj& m) const {
  return fc_.eps_is_conflation(q_, m.a, m.i_cls, m.b, m.p_cls, m.c);
}

std::vector<ConflObj> ConflCat::generating_splits() const {
  std::vector<ConflObj> out;
  std::vector<Obj> survivors;
  for (const auto& t : q_.objects())
    if (!q_.object_in_x(t)) survivors.push_back(Obj{t});
  for (const Obj& u : survivors) {
    // (U, U, 0) and (0, U, U)
    ConflObj left;
    left.a = u;
    left.b = u;
    left.c = {};
    left.i_cls = q_.qidentity(u);
    left.p_cls = q_.project(model_.zero_mor(u, Obj{}));
    out.push_back(left);
    ConflObj right;
    right.a = {};
    right.b = u;
    right.c = u;
    right.i_cls = q_.project(model_.zero_mor(Obj{}, u));
    right.p_cls = q_.qidentity(u);
    out.push_back(right);
  }
  for (const Obj& u : survivors)
    for (const Obj& v : survivors) {
      ConflObj s;
      s.a = u;
      s.b = obj_concat(u, v);
      s.c = v;
      s.i_cls = q_.project(model_.inj_first(u, v));
      s.p_cls = q_.project(model_.proj_second(u, v));
      out.push_back(s);
    }
  return out;
}

std::vector<ConflObj> ConflCat::enumerate_universe() const {
  std::vector<ConflObj> out;
  auto push_unique = [&](const ConflObj& m) {
    if ((int)out.size() >= caps_.orbit_cap) return;
    if (!is_conflation(m)) return;
    for (const auto& n : out)
      if (isomorphic_confl(m, n)) return;
    out.push_back(m);
  };
  {
    ConflObj zero;
    zero.i_cls = {};
    zero.p_cls = {};
    push_unique(zero);
  }
  for (const auto& s : generating_splits()) push_unique(s);
  // images of realized ambient classes between survivors
  std::vector<Obj> ends;
  for (const auto& t : q_.objects())
    if (!q_.object_in_x(t)) ends.push_back(Obj{t});
  for (const Obj& cc : ends)
    for (const Obj& aa : ends) {
      int d = model_.e_dim(cc, aa);
      for (int k = 0; k < d && (int)out.size() < caps_.orbit_cap; ++k) {
        ETriangle t = model_.realize(model_.basis_class(cc, aa, k));
        push_unique(canonicalize(t.x.src, t.x, t.x.dst, t.y, t.y.dst));
      }
    }
  return out;
}

ConflCat::CMorSpace ConflCat::cmor(const ConflObj& m, const ConflObj& n) const {
  int d1 = q_.qhom_dim(m.a, n.a), d2 = q_.qhom_dim(m.b, n.b), d3 = q_.qhom_dim(m.c, n.c);
  int nunk = d1 + d2 + d3;
  std::vector<Vec> eqs;
  // square 1: f2 ∘ i_m = i_n ∘ f1
  {
    Mat L = q_.qpre_matrix(m.i_cls, m.a, m.b, n.b);   // f2 -> f2∘i_m
    Mat R = q_.qpost_matrix(m.a, n.a, n.b, n.i_cls);  // f1 -> i_n∘f1
    for (int r = 0; r < L.rows; ++r) {
      Vec eq(nunk, Rat(0));
      for (int c = 0; c < d2; ++c) eq[d1 + c] = L.at(r, c);
      for (int c = 0; c < d1; ++c) eq[c] = model_.field().neg(R.at(r, c));
      if (!vec_is_zero(eq)) eqs.push_back(std::move(eq));
    }
  }
  // square 2: f3 ∘ p_m = p_n ∘ f2
  {
    Mat L = q_.qpre_matrix(m.p_cls, m.b, m.c, n.c);
    Mat R = q_.qpost_matrix(m.b, n.b, n.c, n.p_cls);
    for (int r = 0; r < L.rows; ++r) {
      Vec eq(nunk, Rat(0));
      for (int c = 0; c < d3; ++c) eq[d1 + d2 + c] = L.at(r, c);
      for (int c = 0; c < d2; ++c) eq[d1 + c] = model_.field().neg(R.at(r, c));
      if (!vec_is_zero(eq)) eqs.push_back(std::move(eq));
    }
  }
  Subspace sol = eqs.empty() ? full_subspace(nunk)
                             : kernel_basis(Mat::from_rows(eqs, nunk), model_.field());
  CMorSpace out;
  out.dim = sol.dim();
  for (int r = 0; r < out.dim; ++r) {
    Vec row = sol.basis.row(r);
    std::array<Vec, 3> tri;
    tri[0] = Vec(row.begin(), row.begin() + d1);
    tri[1] = Vec(row.begin() + d1, row.begin() + d1 + d2);
    tri[2] = Vec(row.begin() + d1 + d2, row.end());
    out.basis.push_back(std::move(tri));
  }
  return out;
}

bool ConflCat::isomorphic_confl(const ConflObj& m, const ConflObj& n) const {
  if (m.a != n.a || m.b != n.b || m.c != n.c) return false;
  CMorSpace ns = cmor(m, n);
  if (ns.dim == 0) return m.a.empty() && m.b.empty() && m.c.empty();
  auto invertible = [&](const std::array<Vec, 3>& tri) {
    // each component must be invertible in the quotient; decide by the
    // rep-level invertibility of a section representative composed with the
    // padding-free structure: on canonical survivor objects the quotient of
    // an iso lifts to an iso, so test rank of the quotient composition map
    const Obj* objs[3] = {&m.a, &m.b, &m.c};
    for (int t = 0; t < 3; ++t) {
      int d = q_.qhom_dim(*objs[t], *objs[t]);
      if (d == 0) continue;
      Mat op = q_.qpost_matrix(*objs[t], *objs[t], *objs[t], tri[t]);
      if (rank(op, model_.field()) != d) return false;
    }
    return true;
  };
  for (const auto& b : ns.basis)
    if (invertible(b)) return true;
  // small combinations
  std::mt19937_64 rng(caps_.seed * 401 + 3);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int it = 0; it < 40; ++it) {
    std::array<Vec, 3> tri;
    for (int t = 0; t < 3; ++t) tri[t] = Vec(ns.basis[0][t].size(), Rat(0));
    for (int r = 0; r < ns.dim; ++r) {
      Rat c(coef(rng));
      if (c.is_zero()) continue;
      for (int t = 0; t < 3; ++t)
        tri[t] = vec_add(tri[t], vec_scale(c, ns.basis[r][t], model_.field()), model_.field());
    }
    if (invertible(tri)) return true;
  }
  return false;
}

ConflCat::SplitResult ConflCat::is_split_confl(const ConflObj& m) const {
  SplitResult out;
  Mat M = q_.qpost_matrix(m.c, m.b, m.c, m.p_cls);  // [s] -> [p][s]
  auto s = solve_vec(M, q_.qidentity(m.c), model_.field());
  if (s) {
    out.split = true;
    out.section = *s;
  }
  return out;
}

ConflCat::PseudoCtReport ConflCat::pseudo_ct_witness(const ConflObj& m) const {
  PseudoCtReport rep;
  const Obj &A = m.a, &B = m.b, &C = m.c;
  Obj BC = obj_concat(B, C), AB = obj_concat(A, B);
  Mor imor = q_.section(A, B, m.i_cls);
  Mor pmor = q_.section(B, C, m.p_cls);
  // S0 = (B >-> B(+)C ->> C) with j = (1, p)^T and qd = (-p, 1)
  ConflObj s0;
  s0.a = B;
  s0.b = BC;
  s0.c = C;
  Mor j = model_.mor_add(model_.inj_first(B, C),
                         model_.compose(pmor, model_.inj_second(B, C)));
  Mor qd = model_.mor_sub(model_.compose(model_.proj_second(B, C), model_.identity(C)),
                          model_.compose(model_.proj_first(B, C), pmor));
  s0.i_cls = q_.project(j);
  s0.p_cls = q_.project(qd);
  // S1 = (C = C -> 0)
  ConflObj s1;
  s1.a = C;
  s1.b = C;
  s1.c = {};
  s1.i_cls = q_.qidentity(C);
  s1.p_cls = q_.project(model_.zero_mor(C, Obj{}));
  // u: M -> S0 with components (i, (1,0)^T, -1) and v: S0 -> S1 with
  // components (p, (0,1), 0)
  std::array<Vec, 3> u, v;
  u[0] = m.i_cls;
  u[1] = q_.project(model_.inj_first(B, C));
  u[2] = q_.project(model_.mor_scale(Rat(-1), model_.identity(C)));
  v[0] = m.p_cls;
  v[1] = q_.project(model_.proj_second(B, C));
  v[2] = q_.project(model_.zero_mor(C, Obj{}));
  // chain-map square: high∘src_map = dst_map∘low, where low: lsrc -> ldst and
  // high: hsrc -> hdst are consecutive components, src_map: lsrc -> hsrc and
  // dst_map: ldst -> hdst the structure maps
  auto square_ok = [&](const Vec& low, const Obj& lsrc, const Obj& ldst, const Vec& high,
                       const Obj& hsrc, const Obj& hdst, const Vec& src_map,
                       const Vec& dst_map) {
    Vec lhs = q_.qcompose(src_map, lsrc, hsrc, high, hdst);
    Vec rhs = q_.qcompose(low, lsrc, ldst, dst_map, hdst);
    return lhs == rhs;
  };
  bool ok = true;
  ok &= square_ok(u[0], A, B, u[1], B, BC, m.i_cls, s0.i_cls);
  ok &= square_ok(u[1], B, BC, u[2], C, C, m.p_cls, s0.p_cls);
  ok &= square_ok(v[0], B, C, v[1], BC, C, s0.i_cls, s1.i_cls);
  ok &= square_ok(v[1], BC, C, v[2], C, Obj{}, s0.p_cls, s1.p_cls);
  if (!ok) {
    rep.notes.push_back("chain-map squares fail for the canonical witnesses");
    return rep;
  }
  // S-objects are split conflations
  if (!is_conflation(s0) || !is_split_confl(s0).split) {
    rep.notes.push_back("S0 is not a split conflation");
    return rep;
  }
  if (!is_conflation(s1) || !is_split_confl(s1).split) {
    rep.notes.push_back("S1 is not a split conflation");
    return rep;
  }
  // degree-wise conflations of M >-> S0 ->> S1
  if (!fc_.eps_is_conflation(q_, A, u[0], B, v[0], C)) {
    rep.notes.push_back("degree -1 column is not a conflation");
    return rep;
  }
  if (!fc_.eps_is_conflation(q_, B, u[1], BC, v[1], C)) {
    rep.notes.push_back("degree 0 column is not a conflation");
    return rep;
  }
  // degree 1: C -> C -> 0 with the (-1) inflation
  if (!fc_.eps_is_conflation(q_, C, u[2], C, v[2], Obj{})) {
    rep.notes.push_back("degree 1 column is not a conflation");
    return rep;
  }
  // dual witnesses: S1' >-> S0' ->> M
  ConflObj s0p;
  s0p.a = A;
  s0p.b = AB;
  s0p.c = B;
  Mor jp = model_.mor_add(model_.inj_first(A, B),
                          model_.compose(imor, model_.inj_second(A, B)));
  Mor qp = model_.mor_sub(model_.compose(model_.proj_second(A, B), model_.identity(B)),
                          model_.compose(model_.proj_first(A, B), imor));
  s0p.i_cls = q_.project(jp);
  s0p.p_cls = q_.project(qp);
  ConflObj s1p;
  s1p.a = {};
  s1p.b = A;
  s1p.c = A;
  s1p.i_cls = q_.project(model_.zero_mor(Obj{}, A));
  s1p.p_cls = q_.qidentity(A);
  std::array<Vec, 3> up, vp;
  up[0] = q_.project(model_.zero_mor(Obj{}, A));
  up[1] = q_.project(model_.inj_first(A, B));
  up[2] = q_.project(model_.mor_scale(Rat(-1), imor));
  vp[0] = q_.qidentity(A);
  vp[1] = q_.project(model_.proj_second(A, B));
  vp[2] = m.p_cls;
  ok = true;
  ok &= square_ok(up[0], Obj{}, A, up[1], A, AB, s1p.i_cls, s0p.i_cls);
  ok &= square_ok(up[1], A, AB, up[2], A, B, s1p.p_cls, s0p.p_cls);
  ok &= square_ok(vp[0], A, A, vp[1], AB, B, s0p.i_cls, m.i_cls);
  ok &= square_ok(vp[1], AB, B, vp[2], B, C, s0p.p_cls, m.p_cls);
  if (!ok) {
    rep.notes.push_back("dual chain-map squares fail");
    return rep;
  }
  if (!is_conflation(s0p) || !is_split_confl(s0p).split || !is_conflation(s1p) ||
      !is_split_confl(s1p).split) {
    rep.notes.push_back("dual S-objects are not split conflations");
    return rep;
  }
  if (!fc_.eps_is_conflation(q_, Obj{}, up[0], A, vp[0], A) ||
      !fc_.eps_is_conflation(q_, A, up[1], AB, vp[1], B) ||
      !fc_.eps_is_conflation(q_, A, up[2], B, vp[2], C)) {
    rep.notes.push_back("dual degree-wise conflations fail");
    return rep;
  }
  // preenvelope/precover property against the generating family
  auto gens = generating_splits();
  for (const auto& t : gens) {
    // every M -> T factors through u: the composition map cmor(S0,T) ->
    // cmor(M,T) must be surjective
    CMorSpace from_s0 = cmor(s0, t);
    CMorSpace from_m = cmor(m, t);
    std::vector<Vec> image;
    for (const auto& eta : from_s0.basis) {
      std::array<Vec, 3> comp;
      comp[0] = q_.qcompose(u[0], A, B, eta[0], t.a);
      comp[1] = q_.qcompose(u[1], B, BC, eta[1], t.b);
      comp[2] = q_.qcompose(u[2], C, C, eta[2], t.c);
      Vec flat = comp[0];
      flat.insert(flat.end(), comp[1].begin(), comp[1].end());
      flat.insert(flat.end(), comp[2].begin(), comp[2].end());
      image.push_back(std::move(flat));
    }
    int total = (int)(q_.qhom_dim(A, t.a) + q_.qhom_dim(B, t.b) + q_.qhom_dim(C, t.c));
    Subspace img = span_of_vectors(image, total, model_.field());
    // the full morphism space cmor(M, t) as a subspace
    std::vector<Vec> all;
    for (const auto& eta : from_m.basis) {
      Vec flat = eta[0];
      flat.insert(flat.end(), eta[1].begin(), eta[1].end());
      flat.insert(flat.end(), eta[2].begin(), eta[2].end());
      all.push_back(std::move(flat));
    }
    Subspace full = span_of_vectors(all, total, model_.field());
    if (!subspace_leq(full, img, model_.field())) {
      rep.notes.push_back("preenvelope property fails against " + t.name());
      return rep;
    }
    // dually every T -> M factors through v'
    CMorSpace to_s0 = cmor(t, s0p);
    CMorSpace to_m = cmor(t, m);
    std::vector<Vec> image2;
    for (const auto& eta : to_s0.basis) {
      std::array<Vec, 3> comp;
      comp[0] = q_.qcompose(eta[0], t.a, A, vp[0], A);
      comp[1] = q_.qcompose(eta[1], t.b, AB, vp[1], B);
      comp[2] = q_.qcompose(eta[2], t.c, B, vp[2], C);
      Vec flat = comp[0];
      flat.insert(flat.end(), comp[1].begin(), comp[1].end());
      flat.insert(flat.end(), comp[2].begin(), comp[2].end());
      image2.push_back(std::move(flat));
    }
    int total2 = (int)(q_.qhom_dim(t.a, A) + q_.qhom_dim(t.b, B) + q_.qhom_dim(t.c, C));
    Subspace img2 = span_of_vectors(image2, total2, model_.field());
    std::vector<Vec> all2;
    for (const auto& eta : to_m.basis) {
      Vec flat = eta[0];
      flat.insert(flat.end(), eta[1].begin(), eta[1].end());
      flat.insert(flat.end(), eta[2].begin(), eta[2].end());
      all2.push_back(std::move(flat));
    }
    Subspace full2 = span_of_vectors(all2, total2, model_.field());
    if (!subspace_leq(full2, img2, model_.field())) {
      rep.notes.push_back("precover property fails against " + t.name());
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

ConflCat::CharReport ConflCat::split_characterization_check(const ConflObj& m) const {
  CharReport rep;
  bool enough = (fc_.cat().side() == Side::F) ? model_.has_enough_e_projectives()
                                              : model_.has_enough_e_injectives();
  const auto& pe = (fc_.cat().side() == Side::F) ? model_.e_projectives() : model_.e_injectives();
  bool contained = true;
  for (const auto& p : pe)
    if (!std::binary_search(q_.x().gens.begin(), q_.x().gens.end(), p)) contained = false;
  if (!enough || !contained) {
    rep.note = "hypotheses fail (enough E-projectives inside X required)";
    return rep;
  }
  rep.applicable = true;
  rep.direct_split = is_split_confl(m).split;
  // the padded criterion reduces to solvability of [p][s] = [1] modulo the
  // ideal of maps through X and the E-projectives, i.e. to quotient-level
  // splitness; build the witness when it succeeds
  if (fc_.cat().side() == Side::F) {
    Mor pm = q_.section(m.b, m.c, m.p_cls);
    int d = model_.mor_dim(m.c, m.b);
    // 1 - p∘s must land in [X + P_E](C, C)
    std::vector<Indec> gens = q_.x().gens;
    for (const auto& p : pe) gens.push_back(p);
    gens = sorted_obj(gens);
    Subspace ideal = model_.through_span(gens, m.c, m.c);
    QuotientBasis qb = quotient_basis(model_.mor_dim(m.c, m.c), ideal, model_.field());
    Mat M(qb.projection.rows, d);
    for (int k = 0; k < d; ++k) {
      Mor comp = model_.compose(model_.basis_mor(m.c, m.b, k), pm);
      Vec red = apply(qb.projection, model_.mor_flat(comp), model_.field());
      for (int r = 0; r < M.rows; ++r) M.at(r, k) = red[r];
    }
    Vec target = apply(qb.projection, model_.mor_flat(model_.identity(m.c)), model_.field());
    auto s = solve_vec(M, target, model_.field());
    rep.criterion_split = s.has_value();
    if (s) {
      // build and verify the padded split conflation in the ambient model
      Mor smor = model_.mor_from_flat(m.c, m.b, *s);
      Mor defect = model_.mor_sub(model_.identity(m.c), model_.compose(smor, pm));
      // defect factors through gens; the padded deflation (p, pieces) splits
      if (!subspace_contains(ideal, model_.mor_flat(defect), model_.field()))
        rep.note = "internal: defect escapes the ideal";
    }
  } else {
    // dual criterion on the K side through sections of [i]
    Mor im = q_.section(m.a, m.b, m.i_cls);
    int d = model_.mor_dim(m.b, m.a);
    std::vector<Indec> gens = q_.x().gens;
    for (const auto& p : pe) gens.push_back(p);
    gens = sorted_obj(gens);
    Subspace ideal = model_.through_span(gens, m.a, m.a);
    QuotientBasis qb = quotient_basis(model_.mor_dim(m.a, m.a), ideal, model_.field());
    Mat M(qb.projection.rows, d);
    for (int k = 0; k < d; ++k) {
      Mor comp = model_.compose(im, model_.basis_mor(m.b, m.a, k));
      Vec red = apply(qb.projection, model_.mor_flat(comp), model_.field());
      for (int r = 0; r < M.rows; ++r) M.at(r, k) = red[r];
    }
    Vec target = apply(qb.projection, model_.mor_flat(model_.identity(m.a)), model_.field());
    auto r = solve_vec(M, target, model_.field());
    rep.criterion_split = r.has_value();
  }
  rep.agree = (rep.direct_split == rep.criterion_split);
  return rep;
}

namespace {
Vec flatten3(const std::array<Vec, 3>& f) {
  Vec v = f[0];
  v.insert(v.end(), f[1].begin(), f[1].end());
  v.insert(v.end(), f[2].begin(), f[2].end());
  return v;
}
}  // namespace

// Hom space between conflation objects modulo the split-conflation ideal:
// coordinates are taken in the cmor basis, the ideal is expressed there
struct HomBar {
  ConflCat::CMorSpace ms;
  Mat basisflat;      // columns: flattened cmor basis
  QuotientBasis qb;   // over the ms-coordinates
  int dim = 0;
};

static HomBar hombar_of(const ConflCat& cc, const QuotientCat& q, const Field& F,
                        const ConflObj& s, const ConflObj& t,
                        const std::vector<ConflObj>& gens) {
  HomBar out;
  out.ms = cc.cmor(s, t);
  int total = q.qhom_dim(s.a, t.a) + q.qhom_dim(s.b, t.b) + q.qhom_dim(s.c, t.c);
  out.basisflat = Mat(total, out.ms.dim);
  for (int c = 0; c < out.ms.dim; ++c) {
    Vec v = flatten3(out.ms.basis[c]);
    for (int r = 0; r < total; ++r) out.basisflat.at(r, c) = v[r];
  }
  // the split ideal in ms-coordinates (composites through splits are chain
  // maps, so they lie in the column space)
  Subspace ideal_flat = [&] {
    std::vector<Vec> vs;
    for (const auto& g : gens) {
      ConflCat::CMorSpace in = cc.cmor(s, g);
      ConflCat::CMorSpace outm = cc.cmor(g, t);
      for (const auto& f1 : in.basis)
        for (const auto& f2 : outm.basis) {
          std::array<Vec, 3> comp;
          comp[0] = q.qcompose(f1[0], s.a, g.a, f2[0], t.a);
          comp[1] = q.qcompose(f1[1], s.b, g.b, f2[1], t.b);
          comp[2] = q.qcompose(f1[2], s.c, g.c, f2[2], t.c);
          Vec v = flatten3(comp);
          if (!vec_is_zero(v)) vs.push_back(std::move(v));
        }
    }
    return span_of_vectors(vs, total, F);
  }();
  std::vector<Vec> coords;
  for (int r = 0; r < ideal_flat.dim(); ++r) {
    auto c = solve_vec(out.basisflat, ideal_flat.basis.row(r), F);
    if (c) coords.push_back(*c);
  }
  Subspace ideal_coords = span_of_vectors(coords, out.ms.dim, F);
  out.qb = quotient_basis(out.ms.dim, ideal_coords, F);
  out.dim = out.qb.projection.rows;
  return out;
}

ConflCat::ProbeReport ConflCat::abelian_quotient_probe(const std::vector<ConflObj>& universe,
                                                       int samples) const {
  ProbeReport rep;
  auto gens = generating_splits();
  const Field& F = model_.field();
  std::map<std::pair<const ConflObj*, const ConflObj*>, HomBar> hb_cache;
  auto hombar = [&](const ConflObj& s, const ConflObj& t) -> const HomBar& {
    auto key = std::make_pair(&s, &t);
    auto it = hb_cache.find(key);
    if (it != hb_cache.end()) return it->second;
    return hb_cache.emplace(key, hombar_of(*this, q_, F, s, t, gens)).first->second;
  };
  // composition with a fixed morphism phi: M -> N as a map of ms-coordinates
  auto post_matrix = [&](const ConflObj& T, const ConflObj& M, const ConflObj& N,
                         const std::array<Vec, 3>& phi, const HomBar& tm, const HomBar& tn) {
    Mat out(tn.ms.dim, tm.ms.dim);
    for (int c = 0; c < tm.ms.dim; ++c) {
      std::array<Vec, 3> comp;
      comp[0] = q_.qcompose(tm.ms.basis[c][0], T.a, M.a, phi[0], N.a);
      comp[1] = q_.qcompose(tm.ms.basis[c][1], T.b, M.b, phi[1], N.b);
      comp[2] = q_.qcompose(tm.ms.basis[c][2], T.c, M.c, phi[2], N.c);
      auto coords = solve_vec(tn.basisflat, flatten3(comp), F);
      if (!coords) throw EngineError("probe: composite leaves the chain-map space");
      for (int r = 0; r < (int)coords->size(); ++r) out.at(r, c) = (*coords)[r];
    }
    return out;
  };
  auto pre_matrix = [&](const ConflObj& M, const ConflObj& N, const ConflObj& T,
                        const std::array<Vec, 3>& phi, const HomBar& nt, const HomBar& mt) {
    Mat out(mt.ms.dim, nt.ms.dim);
    for (int c = 0; c < nt.ms.dim; ++c) {
      std::array<Vec, 3> comp;
      comp[0] = q_.qcompose(phi[0], M.a, N.a, nt.ms.basis[c][0], T.a);
      comp[1] = q_.qcompose(phi[1], M.b, N.b, nt.ms.basis[c][1], T.b);
      comp[2] = q_.qcompose(phi[2], M.c, N.c, nt.ms.basis[c][2], T.c);
      auto coords = solve_vec(mt.basisflat, flatten3(comp), F);
      if (!coords) throw EngineError("probe: composite leaves the chain-map space");
      for (int r = 0; r < (int)coords->size(); ++r) out.at(r, c) = (*coords)[r];
    }
    return out;
  };
  // reduced matrix of a quotient-level map from ms-coordinate data
  auto barred = [&](const Mat& raw, const HomBar& from, const HomBar& to) {
    return mul(to.qb.projection, mul(raw, from.qb.section, F), F);
  };
  std::mt19937_64 rng(caps_.seed * 773 + 9);
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < universe.size(); ++i)
    for (size_t j = 0; j < universe.size(); ++j) pairs.push_back({(int)i, (int)j});
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (size_t pi = 0; pi < pairs.size() && rep.checked < samples; ++pi) {
    const ConflObj& M = universe[pairs[pi].first];
    const ConflObj& N = universe[pairs[pi].second];
    CMorSpace ms = cmor(M, N);
    if (ms.dim == 0) continue;
    const auto& phi = ms.basis[rng() % ms.dim];
    ++rep.checked;
    bool kfound = false, cfound = false;
    // kernel: candidate K with an arrow iota: K -> M such that phi∘iota = 0
    // and Hombar(T,K) -> ker(Hombar(T,M) -> Hombar(T,N)) is an isomorphism
    for (const ConflObj& K : universe) {
      const HomBar& km = hombar(K, M);
      const HomBar& kn = hombar(K, N);
      Mat post_k = barred(post_matrix(K, M, N, phi, km, kn), km, kn);
      // candidate classes [iota] in the kernel of phi∘- (the zero map is
      // always a candidate, needed when the kernel object is zero)
      Subspace cand = kernel_basis(post_k, F);
      bool ok = false;
      for (int ci = -1; ci < cand.dim() && !ok; ++ci) {
        // lift the class to an actual triple
        Vec mscoords = (ci < 0) ? Vec(km.ms.dim, Rat(0))
                                : apply(km.qb.section, cand.basis.row(ci), F);
        std::array<Vec, 3> iota;
        iota[0] = Vec(q_.qhom_dim(K.a, M.a), Rat(0));
        iota[1] = Vec(q_.qhom_dim(K.b, M.b), Rat(0));
        iota[2] = Vec(q_.qhom_dim(K.c, M.c), Rat(0));
        for (int t2 = 0; t2 < km.ms.dim; ++t2)
          if (!mscoords[t2].is_zero())
            for (int comp = 0; comp < 3; ++comp)
              iota[comp] = vec_add(iota[comp],
                                   vec_scale(mscoords[t2], km.ms.basis[t2][comp], F), F);
        bool good = true;
        for (const ConflObj& T : universe) {
          const HomBar& tk = hombar(T, K);
          const HomBar& tm = hombar(T, M);
          const HomBar& tn = hombar(T, N);
          Mat incl = barred(post_matrix(T, K, M, iota, tk, tm), tk, tm);
          Mat comp = barred(post_matrix(T, M, N, phi, tm, tn), tm, tn);
          // exactness: iota∘- injective, phi∘iota∘- = 0, image = kernel
          if (rank(incl, F) != tk.dim) {
            good = false;
            break;
          }
          if (!mul(comp, incl, F).is_zero()) {
            good = false;
            break;
          }
          if (rank(incl, F) + rank(comp, F) != tm.dim) {
            good = false;
            break;
          }
        }
        ok = good;
      }
      if (ok) {
        kfound = true;
        break;
      }
    }
    // cokernel: dual search
    for (const ConflObj& Ck : universe) {
      const HomBar& nc = hombar(N, Ck);
      const HomBar& mc = hombar(M, Ck);
      Mat pre_c = barred(pre_matrix(M, N, Ck, phi, nc, mc), nc, mc);
      Subspace cand = kernel_basis(pre_c, F);
      bool ok = false;
      for (int ci = -1; ci < cand.dim() && !ok; ++ci) {
        Vec mscoords = (ci < 0) ? Vec(nc.ms.dim, Rat(0))
                                : apply(nc.qb.section, cand.basis.row(ci), F);
        std::array<Vec, 3> piq;
        piq[0] = Vec(q_.qhom_dim(N.a, Ck.a), Rat(0));
        piq[1] = Vec(q_.qhom_dim(N.b, Ck.b), Rat(0));
        piq[2] = Vec(q_.qhom_dim(N.c, Ck.c), Rat(0));
        for (int t2 = 0; t2 < nc.ms.dim; ++t2)
          if (!mscoords[t2].is_zero())
            for (int comp = 0; comp < 3; ++comp)
              piq[comp] = vec_add(piq[comp],
                                  vec_scale(mscoords[t2], nc.ms.basis[t2][comp], F), F);
        bool good = true;
        for (const ConflObj& T : universe) {
          const HomBar& ct = hombar(Ck, T);
          const HomBar& nt = hombar(N, T);
          const HomBar& mt = hombar(M, T);
          Mat proj = barred(pre_matrix(N, Ck, T, piq, ct, nt), ct, nt);
          Mat comp = barred(pre_matrix(M, N, T, phi, nt, mt), nt, mt);
          if (rank(proj, F) != ct.dim) {
            good = false;
            break;
          }
          if (!mul(comp, proj, F).is_zero()) {
            good = false;
            break;
          }
          if (rank(proj, F) + rank(comp, F) != nt.dim) {
            good = false;
            break;
          }
        }
        ok = good;
      }
      if (ok) {
        cfound = true;
        break;
      }
    }
    if (kfound) ++rep.kernels_found;
    if (cfound) ++rep.cokernels_found;
    if (!kfound || !cfound) {
      rep.pass = false;
      rep.notes.push_back("kernel/cokernel missing for a morphism " + M.name() + " -> " +
                          N.name());
    }
  }
  return rep;
}

}  // namespace extrilab
