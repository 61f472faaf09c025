#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "extrilab/quotient.hpp"

using namespace extrilab;

namespace {

Model stable42() { return Model(ModelKind::StableMod, {Shape::Cyclic, 4, 2}, Field{}); }

std::vector<Indec> big_subcat() {
  std::vector<Indec> xs;
  for (int t = 1; t <= 9; ++t) xs.push_back({t, 1});
  for (int t = 2; t <= 9; ++t) xs.push_back({t, 2});
  for (int t = 3; t <= 9; ++t) xs.push_back({t, 3});
  return xs;
}

Model subcat_model() {
  return Model(ModelKind::StableSubcat, {Shape::Cyclic, 10, 4}, Field{}, big_subcat());
}

std::vector<Indec> big_x() { return {{1, 1}, {2, 2}, {3, 3}, {9, 1}, {9, 2}, {9, 3}}; }

Mor random_ideal_mor(const Model& M, const QuotientCat& Q, std::mt19937_64& rng, const Obj& a,
                     const Obj& b) {
  // a random morphism lying in [X](a,b)
  IdealSpan span = Q.ideal_span(a, b);
  Mor f = M.zero_mor(a, b);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int i = 0; i < span.subspace.dim(); ++i) {
    Vec row = span.subspace.basis.row(i);
    f = M.mor_add(f, M.mor_scale(Rat(coef(rng)), M.mor_from_flat(a, b, row)));
  }
  return f;
}

}  // namespace

TEST_CASE("ideal span examples") {
  auto M = stable42();
  QuotientCat Q(M, M.objects(), make_subcat(M, {{2, 1}, {4, 1}}));
  // a in X: the whole hom space factors through a itself
  IdealSpan s = Q.ideal_span(Obj{{2, 1}}, Obj{{2, 1}});
  CHECK(s.subspace.dim() == M.mor_dim(Obj{{2, 1}}, Obj{{2, 1}}));
  // no nonzero maps S1 -> S2/S4 -> S1, so the endo ideal of S1 is zero
  CHECK(Q.ideal_span(Obj{{1, 1}}, Obj{{1, 1}}).subspace.dim() == 0);
  // X = 0 gives the zero ideal
  QuotientCat Q0(M, M.objects(), Subcat{});
  CHECK(Q0.ideal_span(Obj{{1, 1}}, Obj{{1, 1}}).subspace.dim() == 0);
}

TEST_CASE("quotient hom dimensions") {
  auto M = stable42();
  QuotientCat Q(M, M.objects(), make_subcat(M, {{2, 1}, {4, 1}}));
  // objects of X die
  CHECK(Q.qhom_dim(Obj{{2, 1}}, Obj{{2, 1}}) == 0);
  // survivors keep their endomorphisms, cross homs vanish
  CHECK(Q.qhom_dim(Obj{{1, 1}}, Obj{{1, 1}}) == 1);
  CHECK(Q.qhom_dim(Obj{{3, 1}}, Obj{{3, 1}}) == 1);
  CHECK(Q.qhom_dim(Obj{{1, 1}}, Obj{{3, 1}}) == 0);
}

TEST_CASE("dimension bookkeeping: hom = quotient + ideal, all pairs") {
  for (auto M : {stable42(), subcat_model()}) {
    Subcat X = (M.kind() == ModelKind::StableMod) ? make_subcat(M, {{2, 1}, {4, 1}})
                                                  : make_subcat(M, big_x());
    QuotientCat Q(M, M.objects(), X);
    for (const auto& a : M.objects())
      for (const auto& b : M.objects()) {
        int full = M.mor_dim(Obj{a}, Obj{b});
        CHECK(full == Q.qhom_dim(Obj{a}, Obj{b}) + Q.ideal_span(Obj{a}, Obj{b}).subspace.dim());
      }
  }
}

TEST_CASE("ideal absorption under composition") {
  std::mt19937_64 rng(3);
  auto M = subcat_model();
  QuotientCat Q(M, M.objects(), make_subcat(M, big_x()));
  std::uniform_int_distribution<size_t> pick(0, M.objects().size() - 1);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int it = 0; it < 25; ++it) {
    Obj a{M.objects()[pick(rng)]}, b{M.objects()[pick(rng)]}, c{M.objects()[pick(rng)]};
    Mor ideal = random_ideal_mor(M, Q, rng, a, b);
    int d = M.mor_dim(b, c);
    Vec v(d);
    for (auto& x : v) x = Rat(coef(rng));
    Mor any = M.mor_from_flat(b, c, v);
    Mor comp = M.compose(ideal, any);
    CHECK(subspace_contains(Q.ideal_span(a, c).subspace, M.mor_flat(comp), M.field()));
    // and on the other side
    int d2 = M.mor_dim(c, a);
    Vec v2(d2);
    for (auto& x : v2) x = Rat(coef(rng));
    Mor pre = M.mor_from_flat(c, a, v2);
    Mor comp2 = M.compose(pre, ideal);
    CHECK(subspace_contains(Q.ideal_span(c, b).subspace, M.mor_flat(comp2), M.field()));
  }
}

TEST_CASE("wic witness: identity perturbed by ideal elements") {
  std::mt19937_64 rng(5);
  for (auto M : {stable42(), subcat_model()}) {
    Subcat X = (M.kind() == ModelKind::StableMod) ? make_subcat(M, {{2, 1}, {4, 1}})
                                                  : make_subcat(M, big_x());
    QuotientCat Q(M, M.objects(), X);
    std::uniform_int_distribution<size_t> pick(0, M.objects().size() - 1);
    int done = 0;
    for (int it = 0; it < 30 && done < 10; ++it) {
      Obj a{M.objects()[pick(rng)]};
      if (Q.qhom_dim(a, a) == 0) continue;
      Mor f = M.mor_add(M.identity(a), random_ideal_mor(M, Q, rng, a, a));
      Mor g = M.mor_add(M.identity(a), random_ideal_mor(M, Q, rng, a, a));
      auto w = Q.split_retraction_witness(f, g);
      // verified biproduct identities
      CHECK(M.mor_equal(M.compose(w.mu2, w.pi2), M.identity(a)));
      CHECK(M.mor_equal(M.compose(w.mu1, w.pi1), M.identity(w.confl.x.src)));
      CHECK(M.mor_is_zero(M.compose(w.mu2, w.pi1)));
      CHECK(M.mor_is_zero(M.compose(w.mu1, w.pi2)));
      Obj bx = w.pi2.src;
      Mor idem = M.mor_add(M.compose(w.pi1, w.mu1), M.compose(w.pi2, w.mu2));
      CHECK(M.mor_equal(idem, M.identity(bx)));
      ++done;
    }
    CHECK(done > 0);
  }
}

TEST_CASE("wic witness: honest mutual inverses give a trivial padding") {
  auto M = stable42();
  QuotientCat Q(M, M.objects(), make_subcat(M, {{2, 1}, {4, 1}}));
  Obj a{{1, 1}};
  auto w = Q.split_retraction_witness(M.identity(a), M.identity(a));
  CHECK(w.x0.empty());
  CHECK(M.strip(w.confl.cert.a_full).empty());  // kernel vanishes stably
}

TEST_CASE("radical and locality in the small quotient") {
  auto M = stable42();
  QuotientCat Q(M, M.objects(), make_subcat(M, {{2, 1}, {4, 1}}));
  // objects of X give the zero ring
  auto r = Q.radical_and_local(Obj{{2, 1}});
  CHECK(r.end_dim == 0);
  CHECK(r.verdict == LocalVerdict::NotLocal);
  // survivors have End = k
  r = Q.radical_and_local(Obj{{1, 1}});
  CHECK(r.end_dim == 1);
  CHECK(r.rad_dim == 0);
  CHECK(r.verdict == LocalVerdict::Local);
  // a decomposable object is detected as non-local
  r = Q.radical_and_local(Obj{{1, 1}, {3, 1}});
  CHECK(r.end_dim == 2);
  CHECK(r.verdict == LocalVerdict::NotLocal);
}

TEST_CASE("prime field mode refuses the radical analysis") {
  Model M(ModelKind::StableMod, {Shape::Cyclic, 4, 2}, Field{5});
  QuotientCat Q(M, M.objects(), make_subcat(M, {{2, 1}, {4, 1}}));
  CHECK_THROWS_AS((void)Q.radical_and_local(Obj{{1, 1}}), EngineError);
}

TEST_CASE("ks structure of the small scenario") {
  auto M = stable42();
  QuotientCat Q(M, M.objects(), make_subcat(M, {{2, 1}, {4, 1}}));
  auto ks = Q.ks_structure();
  CHECK(ks.ind == std::vector<Indec>{{1, 1}, {3, 1}});
  CHECK(ks.all_local);
  // X = everything kills the category
  QuotientCat Qall(M, M.objects(), make_subcat(M, M.objects()));
  CHECK(Qall.ks_structure().ind.empty());
}

TEST_CASE("ks structure of the big scenario") {
  auto M = subcat_model();
  QuotientCat Q(M, M.objects(), make_subcat(M, big_x()));
  auto ks = Q.ks_structure();
  CHECK(ks.ind.size() == M.objects().size() - 6);
  CHECK(ks.all_local);
  // the ideal sits inside the ambient radical for every survivor
  for (const auto& t : ks.ind) CHECK(Q.ideal_in_radical(t));
}
