#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "extrilab/extri.hpp"

using namespace extrilab;

namespace {

Model exact_mod(int m, int N) { return Model(ModelKind::ExactMod, {Shape::Cyclic, m, N}, Field{}); }
Model stable_mod(int m, int N) {
  return Model(ModelKind::StableMod, {Shape::Cyclic, m, N}, Field{});
}

// the Nakayama-cycle subcategory used as the running larger example:
// tops 1..9 in length 1, 2..9 in length 2, 3..9 in length 3 (m=10, N=4)
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

ExtClass random_class(const Model& M, std::mt19937_64& rng, const Obj& c, const Obj& a) {
  std::uniform_int_distribution<long> coef(-2, 2);
  ExtClass d = M.zero_class(c, a);
  for (auto& x : d.coords) x = Rat(coef(rng));
  return d;
}

Obj random_obj(const Model& M, std::mt19937_64& rng, int max_summands) {
  std::uniform_int_distribution<size_t> pick(0, M.objects().size() - 1);
  std::uniform_int_distribution<int> cnt(1, max_summands);
  std::vector<Indec> parts;
  int n = cnt(rng);
  for (int i = 0; i < n; ++i) parts.push_back(M.objects()[pick(rng)]);
  return sorted_obj(parts);
}

}  // namespace

TEST_CASE("e_dim examples") {
  // E^i(c, 0) = 0
  auto M = exact_mod(1, 2);
  CHECK(M.e_dim(Obj{{1, 1}}, Obj{}) == 0);
  CHECK(M.e_dim_i(3, Obj{{1, 1}}, Obj{}) == 0);
  // E^1(M[1,1], M[1,1]) in mod (m=1,N=2) has dim 1 (equals Ext^1)
  CHECK(M.e_dim(Obj{{1, 1}}, Obj{{1, 1}}) == 1);
  CHECK(M.e_dim(Obj{{1, 1}}, Obj{{1, 1}}) == M.alg().ext_dim(1, {1, 1}, {1, 1}));
  // stable (m=4,N=2): E(S_i,S_j) = 1 iff j is the cyclic predecessor of i
  auto S = stable_mod(4, 2);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      int expect = (j == (i == 1 ? 4 : i - 1)) ? 1 : 0;
      CHECK(S.e_dim(Obj{{i, 1}}, Obj{{j, 1}}) == expect);
    }
}

TEST_CASE("e_dim agrees with Ext for the exact model") {
  auto M = exact_mod(4, 3);
  for (const auto& c : M.objects())
    for (const auto& a : M.objects()) {
      CHECK(M.e_dim(Obj{c}, Obj{a}) == M.alg().ext_dim(1, c, a));
      CHECK(M.e_dim_i(2, Obj{c}, Obj{a}) == M.alg().ext_dim(2, c, a));
      CHECK(M.e_dim_i(3, Obj{c}, Obj{a}) == M.alg().ext_dim(3, c, a));
    }
}

TEST_CASE("realize: split case") {
  auto M = stable_mod(4, 2);
  Obj a{{1, 1}}, c{{2, 1}, {3, 1}};
  ETriangle t = M.realize(M.zero_class(c, a));
  M.verify_triangle(t);
  CHECK(t.x.dst == sorted_obj({{1, 1}, {2, 1}, {3, 1}}));
  // split triangle admits a retraction of x and a section of y
  Mat pre = M.precompose_matrix(t.x, a);
  CHECK(solve_vec(pre, M.mor_flat(M.identity(a)), M.field()).has_value());
}

TEST_CASE("realize then re-extract is the identity on classes") {
  std::mt19937_64 rng(21);
  for (auto M : {exact_mod(1, 2), exact_mod(4, 2), stable_mod(4, 2), stable_mod(10, 4)}) {
    for (int it = 0; it < 12; ++it) {
      Obj c = random_obj(M, rng, 2), a = random_obj(M, rng, 2);
      int d = M.e_dim(c, a);
      if (d == 0) continue;
      // every basis class and a random class
      for (int k = 0; k < d; ++k) {
        ETriangle t = M.realize(M.basis_class(c, a, k));
        M.verify_triangle(t);
      }
      ETriangle t = M.realize(random_class(M, rng, c, a));
      M.verify_triangle(t);
    }
  }
}

TEST_CASE("realize: the generator of E(M[1,1],M[1,1]) over (m=1,N=2) has middle M[1,2]") {
  auto M = exact_mod(1, 2);
  ETriangle t = M.realize(M.basis_class(Obj{{1, 1}}, Obj{{1, 1}}, 0));
  CHECK(t.x.dst == Obj{{1, 2}});
  M.verify_triangle(t);
}

TEST_CASE("realize: stable generator is carried by the length-2 module") {
  auto M = stable_mod(4, 2);
  // E(S_2, S_1) is one-dimensional; the nonsplit triangle is carried by the
  // length-2 module M[2,2] at the module level (stably zero, as M[2,2] is
  // projective, so the triangle reads S_1 -> 0 -> S_2 with S_2 = Sigma S_1)
  REQUIRE(M.e_dim(Obj{{2, 1}}, Obj{{1, 1}}) == 1);
  ETriangle t = M.realize(M.basis_class(Obj{{2, 1}}, Obj{{1, 1}}, 0));
  M.verify_triangle(t);
  CHECK(t.cert.e_full == Obj{{2, 2}});
  CHECK(M.strip(t.cert.e_full).empty());
}

TEST_CASE("additivity: direct sums of classes realize to direct sums of middles") {
  std::mt19937_64 rng(31);
  auto M = stable_mod(10, 4);
  for (int it = 0; it < 8; ++it) {
    Obj c1 = random_obj(M, rng, 1), a1 = random_obj(M, rng, 1);
    Obj c2 = random_obj(M, rng, 1), a2 = random_obj(M, rng, 1);
    ExtClass d1 = random_class(M, rng, c1, a1), d2 = random_class(M, rng, c2, a2);
    ETriangle t1 = M.realize(d1), t2 = M.realize(d2);
    // assemble the block-diagonal class on the sums
    Obj c = obj_concat(c1, c2), a = obj_concat(a1, a2);
    ExtClass dsum = M.zero_class(c, a);
    // fill via action of the canonical injections/projections
    ExtClass part1 = M.act_left(M.inj_first(a1, a2), M.act_right(d1, M.proj_first(c1, c2)));
    ExtClass part2 = M.act_left(M.inj_second(a1, a2), M.act_right(d2, M.proj_second(c1, c2)));
    dsum = M.class_add(part1, part2);
    ETriangle ts = M.realize(dsum);
    CHECK(M.strip(ts.cert.e_full) ==
          obj_concat(M.strip(t1.cert.e_full), M.strip(t2.cert.e_full)));
  }
}

TEST_CASE("action examples") {
  auto M = exact_mod(1, 2);
  Obj s{{1, 1}};
  ExtClass d = M.basis_class(s, s, 0);
  // identity leaves the class unchanged, zero kills it
  CHECK(M.class_equal(M.act_right(d, M.identity(s)), d));
  CHECK(M.class_is_zero(M.act_right(d, M.zero_mor(s, s))));
  CHECK(M.class_equal(M.act_left(M.identity(s), d), d));
  // (a.delta).c = a.(delta.c) on random data
  std::mt19937_64 rng(41);
  auto S = stable_mod(10, 4);
  for (int it = 0; it < 10; ++it) {
    Obj c = random_obj(S, rng, 2), a = random_obj(S, rng, 2);
    Obj x = random_obj(S, rng, 2), b = random_obj(S, rng, 2);
    ExtClass delta = random_class(S, rng, c, a);
    int dmf = S.mor_dim(x, c), dmg = S.mor_dim(a, b);
    if (dmf == 0 || dmg == 0) continue;
    std::uniform_int_distribution<long> coef(-2, 2);
    Vec fv(dmf), gv(dmg);
    for (auto& t : fv) t = Rat(coef(rng));
    for (auto& t : gv) t = Rat(coef(rng));
    Mor f = S.mor_from_flat(x, c, fv);
    Mor g = S.mor_from_flat(a, b, gv);
    CHECK(S.class_equal(S.act_right(S.act_left(g, delta), f),
                        S.act_left(g, S.act_right(delta, f))));
  }
}

TEST_CASE("pulling classes back along the nilpotent endomorphism kills part of Ext") {
  auto M = exact_mod(1, 4);
  // Ext^1(M[1,2], M[1,2]) over k[x]/x^4 is 2-dimensional; precomposition with
  // the multiplication-by-x endomorphism is nilpotent and kills the x-cocycle
  Obj o{{1, 2}};
  REQUIRE(M.e_dim(o, o) == 2);
  const HomSpace& H = M.alg().hom({1, 2}, {1, 2});
  for (const RepMap& h : H.basis) {
    if (!M.alg().rep_map_is_zero(M.alg().compose(h, h))) continue;
    if (M.alg().rep_map_is_zero(h)) continue;
    Mor f = M.rep_to_mor(o, o, h);
    Mat act = M.e_contra_matrix(f, o);
    CHECK(mul(act, act, M.field()).is_zero());  // x^2 = 0 functorially
    CHECK(rank(act, M.field()) < 2);            // some class is killed
    bool killed = false;
    for (int k = 0; k < 2; ++k)
      if (M.class_is_zero(M.act_right(M.basis_class(o, o, k), f))) killed = true;
    CHECK(killed);
  }
}

TEST_CASE("les_check on split and random conflations") {
  std::mt19937_64 rng(51);
  for (auto M : {exact_mod(4, 2), stable_mod(4, 2), stable_mod(10, 4)}) {
    // split triangles are exact everywhere
    Obj a = random_obj(M, rng, 2), c = random_obj(M, rng, 2);
    ETriangle s = M.split_triangle(a, c);
    for (int k = 0; k < 4; ++k) {
      Obj t = random_obj(M, rng, 1);
      auto rep = M.les_check(s, t);
      INFO(rep.failure_site);
      CHECK(rep.ok);
    }
    for (int it = 0; it < 15; ++it) {
      Obj cc = random_obj(M, rng, 2), aa = random_obj(M, rng, 2);
      ETriangle t = M.realize(random_class(M, rng, cc, aa));
      Obj test = random_obj(M, rng, 1);
      auto rep = M.les_check(t, test);
      INFO(kind_name(M.kind()), " ", rep.failure_site);
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("les_check on the nonsplit (m=1,N=2) conflation matches brute-force dims") {
  auto M = exact_mod(1, 2);
  Obj s{{1, 1}};
  ETriangle t = M.realize(M.basis_class(s, s, 0));
  auto rep = M.les_check(t, s);
  CHECK(rep.ok);
}

TEST_CASE("complete_morphism") {
  auto M = exact_mod(1, 2);
  Obj s{{1, 1}};
  ETriangle t = M.realize(M.basis_class(s, s, 0));
  // (id, id) completes to the identity-compatible middle map
  auto b = M.complete_morphism(t, t, M.identity(s), M.identity(s));
  REQUIRE(b.has_value());
  CHECK(M.mor_equal(M.compose(t.x, *b), M.compose(M.identity(s), t.x)));
  CHECK(M.mor_equal(M.compose(*b, t.y), M.compose(t.y, M.identity(s))));
  // (0,0) admits the zero completion
  auto z = M.complete_morphism(t, t, M.zero_mor(s, s), M.zero_mor(s, s));
  REQUIRE(z.has_value());
  // a pair violating the extension condition is rejected
  ETriangle sp = M.split_triangle(s, s);
  CHECK_THROWS_AS((void)M.complete_morphism(t, sp, M.identity(s), M.identity(s)), EngineError);
  // but (0 -> split, id on C) is a legal morphism of extensions
  auto ok = M.complete_morphism(sp, t, M.zero_mor(s, s), M.zero_mor(s, s));
  CHECK(ok.has_value());
}

TEST_CASE("E-projectives per model") {
  // mod: projectives and injectives of the algebra
  auto M = exact_mod(4, 2);
  CHECK(M.e_projectives() == M.alg().projectives());
  CHECK(M.e_injectives() == M.alg().injectives());
  // plain stable: none
  auto S = stable_mod(4, 2);
  CHECK(S.e_projectives().empty());
  CHECK(S.e_injectives().empty());
  // the big subcategory: three E-projectives and three E-injectives
  auto C = subcat_model();
  CHECK(C.e_projectives() == std::vector<Indec>{{1, 1}, {2, 2}, {3, 3}});
  CHECK(C.e_injectives() == std::vector<Indec>{{9, 1}, {9, 2}, {9, 3}});
  CHECK(C.has_enough_e_projectives());
  CHECK(C.has_enough_e_injectives());
}

TEST_CASE("E-projective morphism tests agree (definitional vs factorization)") {
  std::mt19937_64 rng(61);
  for (auto M : {exact_mod(4, 2), stable_mod(4, 2)}) {
    for (int it = 0; it < 20; ++it) {
      Obj a = random_obj(M, rng, 2), b = random_obj(M, rng, 2);
      int d = M.mor_dim(a, b);
      if (d == 0) continue;
      std::uniform_int_distribution<long> coef(-2, 2);
      Vec v(d);
      for (auto& x : v) x = Rat(coef(rng));
      Mor f = M.mor_from_flat(a, b, v);
      CHECK(M.e_proj_morphism_def(f) == M.e_proj_morphism_factor(f));
      CHECK(M.e_inj_morphism_def(f) == M.e_inj_morphism_factor(f));
    }
  }
  // identity of a non-E-projective object fails the test
  auto M = exact_mod(4, 2);
  Obj s{{1, 1}};
  CHECK(!M.e_proj_morphism_def(M.identity(s)));
}

TEST_CASE("(E4): E-projective morphisms act as zero in all degrees") {
  auto C = subcat_model();
  // any morphism through an E-projective object
  Obj a{{4, 1}}, p{{1, 1}}, b{{1, 1}};
  int d1 = C.mor_dim(a, p);
  int d2 = C.mor_dim(p, b);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) {
      Mor f = C.compose(C.basis_mor(a, p, i), C.basis_mor(p, b, j));
      if (C.mor_is_zero(f)) continue;
      for (int deg = 1; deg <= 3; ++deg)
        for (const auto& t : C.objects())
          CHECK(C.e_contra_matrix_i(deg, f, Obj{t}).is_zero());
    }
}

TEST_CASE("ET4 composition") {
  std::mt19937_64 rng(71);
  for (auto M : {exact_mod(1, 4), stable_mod(10, 4)}) {
    int done = 0;
    for (int it = 0; it < 60 && done < 8; ++it) {
      Obj a = random_obj(M, rng, 1), b = random_obj(M, rng, 1);
      ExtClass d1 = random_class(M, rng, b, a);  // conflation A -> B' -> D? build from delta
      // build first triangle A -> B -> D with B the middle
      ETriangle t1 = M.realize(random_class(M, rng, random_obj(M, rng, 1), a));
      Obj B = t1.x.dst;
      if (B.empty()) continue;
      ETriangle t2 = M.realize(random_class(M, rng, random_obj(M, rng, 1), B));
      // t2 has inflation B -> C; compose
      auto res = M.et4_compose(t1, t2);
      M.verify_triangle(res.ace);
      M.verify_triangle(res.def);
      ++done;
    }
    CHECK(done > 0);
  }
}

TEST_CASE("ET4 with split second triangle gives direct-sum third object") {
  auto M = stable_mod(4, 2);
  Obj a{{1, 1}};
  ETriangle t1 = M.realize(M.basis_class(Obj{{2, 1}}, a, 0));
  Obj B = t1.x.dst;
  Obj f{{3, 1}};
  ETriangle t2 = M.split_triangle(B, f);
  auto res = M.et4_compose(t1, t2);
  // E contains D (+) F up to the verified diagram
  CHECK(M.strip(res.def.cert.e_full) == obj_concat(t1.y.dst, f));
}

TEST_CASE("pullback pair") {
  std::mt19937_64 rng(81);
  auto M = stable_mod(10, 4);
  int done = 0;
  for (int it = 0; it < 40 && done < 6; ++it) {
    Obj c = random_obj(M, rng, 1);
    ETriangle t1 = M.realize(random_class(M, rng, c, random_obj(M, rng, 1)));
    ETriangle t2 = M.realize(random_class(M, rng, c, random_obj(M, rng, 1)));
    auto pp = M.pullback_pair(t1, t2);
    M.verify_triangle(pp.t1m);
    M.verify_triangle(pp.t2m);
    ++done;
  }
  CHECK(done > 0);
}

TEST_CASE("naturality of the connecting maps (E3-style squares)") {
  std::mt19937_64 rng(91);
  for (auto M : {stable_mod(4, 2), stable_mod(10, 4), exact_mod(4, 3)}) {
    int done = 0;
    for (int it = 0; it < 30 && done < 8; ++it) {
      Obj c1 = random_obj(M, rng, 1), a1 = random_obj(M, rng, 1);
      Obj a2 = random_obj(M, rng, 1);
      ExtClass d1 = random_class(M, rng, c1, a1);
      // morphism of extensions (g, id): d1 -> g.d1
      int dg = M.mor_dim(a1, a2);
      if (dg == 0) continue;
      std::uniform_int_distribution<long> coef(-2, 2);
      Vec gv(dg);
      for (auto& x : gv) x = Rat(coef(rng));
      Mor g = M.mor_from_flat(a1, a2, gv);
      ExtClass d2 = M.act_left(g, d1);
      // classifying maps: sigma_A . w = delta
      auto classify = [&](const ExtClass& d, const Obj& ao) -> std::optional<Mor> {
        ETriangle w = M.sigma_witness_sum(ao);
        Mat lower = M.delta_lower_matrix(w.delta, d.c);
        auto sol = solve_vec(lower, d.coords, M.field());
        if (!sol) return std::nullopt;
        return M.mor_from_flat(d.c, w.y.dst, *sol);
      };
      auto w1 = classify(d1, a1);
      auto w2 = classify(d2, a2);
      REQUIRE(w1.has_value());
      REQUIRE(w2.has_value());
      ++done;
      // covariant square: for every basis class eps in E(T, c1):
      //   w2 . eps  ==  Sigma(g) . (w1 . eps)
      Obj T = random_obj(M, rng, 1);
      Mor sg = M.sigma_model_mor(g);
      int de = M.e_dim(T, c1);
      for (int k = 0; k < de; ++k) {
        ExtClass eps = M.basis_class(T, c1, k);
        ExtClass lhs = M.act_left(*w2, eps);
        ExtClass rhs = M.act_left(sg, M.act_left(*w1, eps));
        CHECK(lhs.coords == rhs.coords);
      }
      // contravariant square with the splice construction: for eps in
      // E(a1, T): lift through sigma_T, act, compare with the g-pullback
      ETriangle wt = M.sigma_witness_sum(T);
      Mat lower = M.delta_lower_matrix(wt.delta, a2);
      int de2 = M.e_dim(a2, T);
      for (int k = 0; k < de2; ++k) {
        ExtClass eps = M.basis_class(a2, T, k);
        auto lift = solve_vec(lower, eps.coords, M.field());
        REQUIRE(lift.has_value());
        Mor epst = M.mor_from_flat(a2, wt.y.dst, *lift);
        // splice against d2 directly, or pull eps back along g first
        ExtClass lhs = M.act_left(epst, d2);
        ExtClass rhs = M.act_left(M.compose(g, epst), d1);
        CHECK(lhs.coords == rhs.coords);
      }
    }
    CHECK(done > 0);
  }
}

TEST_CASE("subcategory model: internal cosyzygies and higher groups") {
  auto C = subcat_model();
  // Sigma_int of S_7 is M[9,2] (the ambient cosyzygy M[10,3] leaves the
  // subcategory, so the left approximation into M[9,3] is used)
  CHECK(C.sigma_obj(Obj{{7, 1}}) == Obj{{9, 2}});
  // the ambient cosyzygy of S_1 stays inside, so it is reused
  CHECK(C.sigma_obj(Obj{{1, 1}}) == Obj{{4, 3}});
  // internal higher groups differ from the ambient formula somewhere
  auto cmp = C.compare_higher_groups(2);
  CHECK(cmp.applicable);
  CHECK(!cmp.agree);
  // extension closure of the marked subcategory holds (bounded check)
  auto cl = C.extension_closure_check();
  INFO(cl.counterexample);
  CHECK(cl.ok);
  CHECK(cl.checked > 0);
}

TEST_CASE("subcategory rejects non-closed object sets") {
  // {S_1, M[8,3]} is not extension closed: E(M[8,3]->..., S_1...) produces
  // middles outside; the load-time check reports it
  std::vector<Indec> bad = {{1, 1}, {5, 2}};
  Model B(ModelKind::StableSubcat, {Shape::Cyclic, 10, 4}, Field{}, bad);
  auto cl = B.extension_closure_check();
  // E(S_1, M[5,2]) or the like: verify the checker runs; closure may fail
  // for this ad-hoc pair, in which case a counterexample is named
  if (!cl.ok) CHECK(!cl.counterexample.empty());
}

TEST_CASE("les_check with higher extension on the subcategory model") {
  std::mt19937_64 rng(101);
  auto C = subcat_model();
  for (int it = 0; it < 10; ++it) {
    Obj c = random_obj(C, rng, 1), a = random_obj(C, rng, 1);
    ETriangle t = C.realize(random_class(C, rng, c, a));
    Obj test = random_obj(C, rng, 1);
    auto rep = C.les_check(t, test);
    INFO(rep.failure_site);
    CHECK(rep.ok);
  }
}
