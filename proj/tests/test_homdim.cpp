#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "extrilab/homdim.hpp"

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

std::vector<Indec> big_x() {
  return {{1, 1}, {2, 2}, {3, 3}, {9, 1}, {9, 2}, {9, 3}};
}

}  // namespace

TEST_CASE("coresdim: object of X has dimension 0 with the trivial witness") {
  auto M = stable42();
  HomdimEngine H(M, make_subcat(M, {{2, 1}, {4, 1}}), SearchCaps{});
  auto r = H.coresdim(Obj{{2, 1}}, 3);
  REQUIRE(r.n.has_value());
  CHECK(*r.n == 0);
  H.verify_coresolution(Obj{{2, 1}}, r.witness);
}

TEST_CASE("coresdim 1 in the small 2-cluster-tilting scenario") {
  auto M = stable42();
  HomdimEngine H(M, make_subcat(M, {{2, 1}, {4, 1}}), SearchCaps{});
  // S_1 and S_3 have coresolution dimension exactly... at most 1 (found 1)
  for (int t : {1, 3}) {
    auto r = H.coresdim(Obj{{t, 1}}, 3);
    REQUIRE(r.n.has_value());
    CHECK(*r.n == 1);
    H.verify_coresolution(Obj{{t, 1}}, r.witness);
    auto rr = H.resdim(Obj{{t, 1}}, 3);
    REQUIRE(rr.n.has_value());
    CHECK(*rr.n == 1);
  }
  CHECK(H.xvee_members(1) == M.objects());
  CHECK(H.xwedge_members(1) == M.objects());
}

TEST_CASE("rigidity") {
  auto M = stable42();
  HomdimEngine H(M, make_subcat(M, {{2, 1}, {4, 1}}), SearchCaps{});
  CHECK(H.is_rigid(0).rigid);
  // the full object set is not rigid
  HomdimEngine Hall(M, make_subcat(M, {{1, 1}, {2, 1}, {3, 1}, {4, 1}}), SearchCaps{});
  auto rep = Hall.is_rigid(0);
  CHECK(!rep.rigid);
  CHECK(!rep.violations.empty());
}

TEST_CASE("perp example: {S2,S4} is its own first complement") {
  auto M = stable42();
  HomdimEngine H(M, make_subcat(M, {{2, 1}, {4, 1}}), SearchCaps{});
  CHECK(H.perp_right(1) == std::vector<Indec>{{2, 1}, {4, 1}});
  CHECK(H.perp_left(1) == std::vector<Indec>{{2, 1}, {4, 1}});
}

TEST_CASE("perp of the zero subcategory is everything") {
  auto M = stable42();
  HomdimEngine H(M, Subcat{}, SearchCaps{});
  CHECK(H.perp_right(1) == M.objects());
}

TEST_CASE("cluster tilting: {S2,S4} at n=0, and {S1,S3}") {
  auto M = stable42();
  HomdimEngine H(M, make_subcat(M, {{2, 1}, {4, 1}}), SearchCaps{});
  auto rep = H.is_cluster_tilting(0);
  CHECK(rep.ct);
  HomdimEngine H2(M, make_subcat(M, {{1, 1}, {3, 1}}), SearchCaps{});
  CHECK(H2.is_cluster_tilting(0).ct);
  // a pair with a nonzero extension between its members is not 2-cluster-tilting
  HomdimEngine H3(M, make_subcat(M, {{1, 1}, {2, 1}}), SearchCaps{});
  CHECK(!H3.is_cluster_tilting(0).ct);
}

TEST_CASE("vanishing grid at n=0 restates rigidity") {
  auto M = stable42();
  HomdimEngine H(M, make_subcat(M, {{2, 1}, {4, 1}}), SearchCaps{});
  auto rep = H.vanishing_grid(0);
  CHECK(rep.pass);
  REQUIRE(rep.cells.size() == 1);
  CHECK(rep.cells[0].k == 1);
}

TEST_CASE("cut cotorsion: the corollary instances for the small scenario") {
  auto M = stable42();
  Subcat X = make_subcat(M, {{2, 1}, {4, 1}});
  HomdimEngine H(M, X, SearchCaps{});
  // (X, X_0-wedge) is a left 1-cotorsion pair cut on X_1-wedge
  Subcat X0w = make_subcat(M, H.xwedge_members(0));
  auto rep = H.cut_cotorsion_check(X, X0w, H.xwedge_members(1), 0);
  CHECK(rep.left);
  // (X_0-vee, X) is a right 1-cotorsion pair cut on X_1-vee
  Subcat X0v = make_subcat(M, H.xvee_members(0));
  auto rep2 = H.cut_cotorsion_check(X0v, X, H.xvee_members(1), 0);
  CHECK(rep2.right);
  // degenerate: A = B = S = zero object set is trivially a cut pair
  auto rep3 = H.cut_cotorsion_check(Subcat{}, Subcat{}, {}, 0);
  CHECK(rep3.left);
  CHECK(rep3.right);
}

TEST_CASE("S-minus membership matches direct search") {
  auto M = stable42();
  Subcat X = make_subcat(M, {{2, 1}, {4, 1}});
  HomdimEngine H(M, X, SearchCaps{});
  Subcat X0w = make_subcat(M, H.xwedge_members(0));
  for (const auto& t : M.objects()) {
    bool member = H.s_minus_member(X, X0w, Obj{t}, 0);
    CHECK(member == H.in_xwedge(Obj{t}, 1));  // here the classes coincide
  }
}

TEST_CASE("closure checks on the small scenario") {
  auto M = stable42();
  HomdimEngine H(M, make_subcat(M, {{2, 1}, {4, 1}}), SearchCaps{});
  auto rep = H.closure_checks(0);
  for (const auto& f : rep.failures) INFO(f);
  CHECK(rep.pass);
  CHECK(rep.checked_extensions > 0);
}

TEST_CASE("the big subcategory example: rigidity, cluster tilting, coverage") {
  auto C = subcat_model();
  HomdimEngine H(C, make_subcat(C, big_x()), SearchCaps{});
  CHECK(H.is_rigid(2).rigid);
  auto ct = H.is_cluster_tilting(2);
  for (const auto& n : ct.notes) INFO(n);
  CHECK(ct.ct);
  // every object acquires a coresolution and a resolution of length <= 3
  CHECK(H.xvee_members(3) == C.objects());
  CHECK(H.xwedge_members(3) == C.objects());
}

TEST_CASE("big example vanishing grid at n=2") {
  auto C = subcat_model();
  HomdimEngine H(C, make_subcat(C, big_x()), SearchCaps{});
  auto rep = H.vanishing_grid(2);
  for (const auto& cell : rep.cells)
    for (const auto& p : cell.nonzero_pairs) INFO(p);
  CHECK(rep.pass);
  CHECK(rep.cells.size() == 6);  // (k,i,j) with k+i+j=3, k>=1
}
