#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "extrilab/exactlin.hpp"

using namespace extrilab;

namespace {

const Field Q{};  // rationals

Mat mat(int r, int c, std::vector<long> entries) {
  Mat m(r, c);
  for (int i = 0; i < r * c; ++i) m.a[i] = Rat(entries[i]);
  return m;
}

Mat random_mat(std::mt19937_64& rng, int r, int c) {
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  Mat m(r, c);
  for (auto& x : m.a) x = Rat(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
  Rat a(2, 4);
  CHECK(a == Rat(1, 2));
  CHECK(a.str() == "1/2");
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK((Rat(-6, 4)).str() == "-3/2");
  CHECK(Rat::from_string("-14/21") == Rat(-2, 3));
  CHECK_THROWS(Rat(1, 0));
  CHECK_THROWS(Rat(1) / Rat(0));
}

TEST_CASE("rational properties randomized") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 30);
  for (int it = 0; it < 300; ++it) {
    Rat a(num(rng), den(rng)), b(num(rng), den(rng));
    CHECK((a + b) - b == a);
    CHECK(a + b == b + a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
    // canonical: equal values print identically
    CHECK((a + b).str() == (b + a).str());
  }
}

TEST_CASE("prime field mode") {
  Field F5{5};
  CHECK(F5.reduce(Rat(7)) == Rat(2));
  CHECK(F5.reduce(Rat(1, 2)) == Rat(3));  // 2^{-1} = 3 mod 5
  CHECK(F5.div(Rat(1), Rat(3)) == Rat(2));
  CHECK_THROWS(F5.reduce(Rat(1, 5)));
}

TEST_CASE("rref examples") {
  // identity
  auto r = rref(Mat::identity(2), Q);
  CHECK(r.rank == 2);
  CHECK(r.reduced == Mat::identity(2));
  CHECK(r.pivot_cols == std::vector<int>{0, 1});
  // zero 3x2
  r = rref(Mat::zeros(3, 2), Q);
  CHECK(r.rank == 0);
  CHECK(r.reduced == Mat::zeros(3, 2));
  CHECK(r.pivot_cols.empty());
  // [[1,2],[2,4]] -> rank 1, [[1,2]], pivots [0]   (hand row-reduction)
  r = rref(mat(2, 2, {1, 2, 2, 4}), Q);
  CHECK(r.rank == 1);
  CHECK(r.reduced == mat(2, 2, {1, 2, 0, 0}));
  CHECK(r.pivot_cols == std::vector<int>{0});
}

TEST_CASE("rref idempotence and determinism") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    Mat m = random_mat(rng, 1 + (int)(rng() % 5), 1 + (int)(rng() % 5));
    auto r1 = rref(m, Q);
    auto r2 = rref(r1.reduced, Q);
    CHECK(r1.reduced == r2.reduced);
    CHECK(r1.rank == r2.rank);
    auto again = rref(m, Q);
    CHECK(again.reduced.str() == r1.reduced.str());  // bit-identical output
  }
}

TEST_CASE("kernel examples") {
  // identity n x n -> zero subspace
  auto s = kernel_basis(Mat::identity(3), Q);
  CHECK(s.dim() == 0);
  CHECK(s.ambient_dim == 3);
  // zero map 2 -> 3 as a 3x2 matrix: kernel is the full 2-dim space
  s = kernel_basis(Mat::zeros(3, 2), Q);
  CHECK(s.dim() == 2);
  CHECK(s == full_subspace(2));
  // [[1,1]] -> span{(1,-1)} in echelon form   (solve x + y = 0 by hand)
  s = kernel_basis(mat(1, 2, {1, 1}), Q);
  CHECK(s.dim() == 1);
  CHECK(s.basis == mat(1, 2, {1, -1}));
}

TEST_CASE("rank-nullity randomized") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 80; ++it) {
    int rows = 1 + (int)(rng() % 6), cols = 1 + (int)(rng() % 6);
    Mat m = random_mat(rng, rows, cols);
    auto r = rref(m, Q);
    auto k = kernel_basis(m, Q);
    CHECK(r.rank + k.dim() == cols);
    for (int i = 0; i < k.dim(); ++i) CHECK(vec_is_zero(apply(m, k.basis.row(i), Q)));
  }
}

TEST_CASE("quotient basis examples") {
  // sub = full space -> projection has 0 rows
  auto qb = quotient_basis(2, full_subspace(2), Q);
  CHECK(qb.projection.rows == 0);
  // sub = 0 -> projection = identity
  qb = quotient_basis(2, zero_subspace(2), Q);
  CHECK(qb.projection == Mat::identity(2));
  // ambient 2, sub = span{(1,0)} -> projection [[0,1]]  (complement = non-pivot coord)
  Subspace s = span_of_vectors({{Rat(1), Rat(0)}}, 2, Q);
  qb = quotient_basis(2, s, Q);
  CHECK(qb.projection == mat(1, 2, {0, 1}));
}

TEST_CASE("quotient projection-section identities randomized") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 60; ++it) {
    int amb = 1 + (int)(rng() % 6);
    Mat gens = random_mat(rng, (int)(rng() % (amb + 1)), amb);
    Subspace s = span_of_rows(gens, Q);
    auto qb = quotient_basis(amb, s, Q);
    int q = amb - s.dim();
    CHECK(qb.projection.rows == q);
    CHECK(mul(qb.projection, qb.section, Q) == Mat::identity(q));
    // projection kills the subspace
    for (int i = 0; i < s.dim(); ++i)
      CHECK(vec_is_zero(apply(qb.projection, s.basis.row(i), Q)));
  }
}

TEST_CASE("solve examples") {
  // a = identity -> x = b
  Mat b = mat(2, 1, {3, -5});
  auto x = solve(Mat::identity(2), b, Q);
  REQUIRE(x.has_value());
  CHECK(*x == b);
  // a = zero 2x2, b nonzero -> absent
  CHECK(!solve(Mat::zeros(2, 2), b, Q).has_value());
  // a=[[1,1]], b=[[3]] -> x=(3,0)^T  (free variable set to 0)
  x = solve(mat(1, 2, {1, 1}), mat(1, 1, {3}), Q);
  REQUIRE(x.has_value());
  CHECK(*x == mat(2, 1, {3, 0}));
}

TEST_CASE("solve randomized consistency") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 60; ++it) {
    int rows = 1 + (int)(rng() % 5), cols = 1 + (int)(rng() % 5);
    Mat a = random_mat(rng, rows, cols);
    Mat x0 = random_mat(rng, cols, 2);
    Mat b = mul(a, x0, Q);
    auto x = solve(a, b, Q);
    REQUIRE(x.has_value());
    CHECK(mul(a, *x, Q) == b);
  }
}

TEST_CASE("subspace lattice operations") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 40; ++it) {
    int amb = 2 + (int)(rng() % 5);
    Subspace a = span_of_rows(random_mat(rng, 1 + (int)(rng() % amb), amb), Q);
    Subspace b = span_of_rows(random_mat(rng, 1 + (int)(rng() % amb), amb), Q);
    Subspace s = subspace_sum(a, b, Q);
    Subspace i = subspace_intersect(a, b, Q);
    CHECK(subspace_leq(a, s, Q));
    CHECK(subspace_leq(b, s, Q));
    CHECK(subspace_leq(i, a, Q));
    CHECK(subspace_leq(i, b, Q));
    CHECK(s.dim() + i.dim() == a.dim() + b.dim());  // modular law for dimensions
  }
}

TEST_CASE("inverse") {
  Mat m = mat(2, 2, {1, 2, 3, 4});
  auto inv = inverse(m, Q);
  REQUIRE(inv.has_value());
  CHECK(mul(m, *inv, Q) == Mat::identity(2));
  CHECK(mul(*inv, m, Q) == Mat::identity(2));
  CHECK(!inverse(mat(2, 2, {1, 2, 2, 4}), Q).has_value());
}
