#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "extrilab/conflations.hpp"

using namespace extrilab;

namespace {

struct Setup {
  Model model{ModelKind::StableMod, {Shape::Cyclic, 4, 2}, Field{}};
  Subcat x;
  HomdimEngine hd;
  FunCat fc;
  QuotientCat q;
  ConflCat cc;
  Setup()
      : x(make_subcat(model, {{2, 1}, {4, 1}})),
        hd(model, x, SearchCaps{}),
        fc(model, x, 0, Side::F, hd, SearchCaps{}),
        q(model, model.objects(), x),
        cc(model, q, fc, SearchCaps{}) {}
};

}  // namespace

TEST_CASE("generating splits and the universe") {
  Setup s;
  auto gens = s.cc.generating_splits();
  CHECK(gens.size() == 8);  // (U,U,0), (0,U,U) for two survivors, plus 4 sums
  for (const auto& g : gens) {
    CHECK(s.cc.is_conflation(g));
    CHECK(s.cc.is_split_confl(g).split);
  }
  auto universe = s.cc.enumerate_universe();
  CHECK(universe.size() >= 4);
  for (const auto& m : universe) CHECK(s.cc.is_conflation(m));
}

TEST_CASE("splitness examples") {
  Setup s;
  Obj a{{1, 1}}, c{{3, 1}};
  ConflObj split;
  split.a = a;
  split.b = obj_concat(a, c);
  split.c = c;
  split.i_cls = s.q.project(s.model.inj_first(a, c));
  split.p_cls = s.q.project(s.model.proj_second(a, c));
  CHECK(s.cc.is_split_confl(split).split);
  // C = 0 splits trivially
  ConflObj degenerate;
  degenerate.a = a;
  degenerate.b = a;
  degenerate.c = {};
  degenerate.i_cls = s.q.qidentity(a);
  degenerate.p_cls = s.q.project(s.model.zero_mor(a, Obj{}));
  CHECK(s.cc.is_split_confl(degenerate).split);
}

TEST_CASE("pseudo cluster tilting witnesses on the whole universe") {
  Setup s;
  auto universe = s.cc.enumerate_universe();
  for (const auto& m : universe) {
    auto rep = s.cc.pseudo_ct_witness(m);
    for (auto& n : rep.notes) INFO(m.name(), ": ", n);
    CHECK(rep.pass);
  }
}

TEST_CASE("split characterization agrees with direct splitness") {
  Setup s;
  auto universe = s.cc.enumerate_universe();
  for (const auto& m : universe) {
    auto rep = s.cc.split_characterization_check(m);
    CHECK(rep.applicable);
    CHECK(rep.agree);
  }
}

TEST_CASE("abelian quotient probe finds kernels and cokernels") {
  Setup s;
  auto universe = s.cc.enumerate_universe();
  auto rep = s.cc.abelian_quotient_probe(universe, 12);
  for (auto& n : rep.notes) INFO(n);
  CHECK(rep.checked > 0);
  CHECK(rep.pass);
  CHECK(rep.kernels_found == rep.checked);
  CHECK(rep.cokernels_found == rep.checked);
}

TEST_CASE("the two exact structures have the same split conflations (small)") {
  Setup s;
  FunCat fk(s.model, s.x, 0, Side::K, s.hd, SearchCaps{});
  ConflCat cck(s.model, s.q, fk, SearchCaps{});
  auto u1 = s.cc.enumerate_universe();
  auto u2 = cck.enumerate_universe();
  std::set<std::string> s1, s2;
  for (const auto& m : u1)
    if (s.cc.is_split_confl(m).split) s1.insert(m.name());
  for (const auto& m : u2)
    if (cck.is_split_confl(m).split) s2.insert(m.name());
  CHECK(s1 == s2);
}

TEST_CASE("additivity: sums of universe conflations are conflations") {
  Setup s;
  auto universe = s.cc.enumerate_universe();
  REQUIRE(universe.size() >= 2);
  const ConflObj& m = universe[0];
  const ConflObj& n = universe[1];
  ConflObj sum;
  sum.a = obj_concat(m.a, n.a);
  sum.b = obj_concat(m.b, n.b);
  sum.c = obj_concat(m.c, n.c);
  // assemble the block-diagonal classes
  Mor mi = s.q.section(m.a, m.b, m.i_cls);
  Mor ni = s.q.section(n.a, n.b, n.i_cls);
  Mor mp = s.q.section(m.b, m.c, m.p_cls);
  Mor np = s.q.section(n.b, n.c, n.p_cls);
  Mor isum = s.model.mor_add(
      s.model.compose(s.model.compose(s.model.proj_first(m.a, n.a), mi),
                      s.model.inj_first(m.b, n.b)),
      s.model.compose(s.model.compose(s.model.proj_second(m.a, n.a), ni),
                      s.model.inj_second(m.b, n.b)));
  Mor psum = s.model.mor_add(
      s.model.compose(s.model.compose(s.model.proj_first(m.b, n.b), mp),
                      s.model.inj_first(m.c, n.c)),
      s.model.compose(s.model.compose(s.model.proj_second(m.b, n.b), np),
                      s.model.inj_second(m.c, n.c)));
  sum.i_cls = s.q.project(isum);
  sum.p_cls = s.q.project(psum);
  CHECK(s.cc.is_conflation(sum));
  // sums of splits split
  if (s.cc.is_split_confl(m).split && s.cc.is_split_confl(n).split)
    CHECK(s.cc.is_split_confl(sum).split);
}
