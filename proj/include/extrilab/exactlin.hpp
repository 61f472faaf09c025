#pragma once
// Exact dense linear algebra over Q (or F_p): RREF, kernels, quotients,
// canonical subspaces.  Everything is deterministic; canonical forms (reduced
// echelon bases) make subspace equality an exact comparison.

#include <optional>
#include <string>
#include <vector>

#include "extrilab/rational.hpp"

namespace extrilab {

using Vec = std::vector<Rat>;

struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;  // row-major, size rows*cols

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}

  Rat& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const Rat& at(int i, int j) const { return a[(size_t)i * cols + j]; }

  static Mat identity(int n);
  static Mat zeros(int r, int c) { return Mat(r, c); }
  static Mat from_rows(const std::vector<Vec>& rows_in, int cols);

  Vec row(int i) const;
  Vec col(int j) const;
  bool is_zero() const;
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  std::string str() const;
};

Mat mul(const Mat& A, const Mat& B, const Field& F);
Mat add(const Mat& A, const Mat& B, const Field& F);
Mat sub(const Mat& A, const Mat& B, const Field& F);
Mat scale(const Rat& c, const Mat& A, const Field& F);
Mat transpose(const Mat& A);
Mat hstack(const Mat& A, const Mat& B);
Mat vstack(const Mat& A, const Mat& B);
Vec apply(const Mat& A, const Vec& x, const Field& F);
Vec vec_add(const Vec& x, const Vec& y, const Field& F);
Vec vec_sub(const Vec& x, const Vec& y, const Field& F);
Vec vec_scale(const Rat& c, const Vec& x, const Field& F);
bool vec_is_zero(const Vec& x);

struct RrefResult {
  int rank = 0;
  Mat reduced;
  std::vector<int> pivot_cols;
};

// unique reduced row echelon form
RrefResult rref(const Mat& m, const Field& F);

int rank(const Mat& m, const Field& F);

// A linear subspace of k^ambient_dim in canonical form: basis rows are the
// RREF of any spanning set, so two subspaces are equal iff their bases match.
struct Subspace {
  int ambient_dim = 0;
  Mat basis;  // dim x ambient_dim, reduced echelon rows

  int dim() const { return basis.rows; }
  bool operator==(const Subspace& o) const {
    return ambient_dim == o.ambient_dim && basis == o.basis;
  }
};

Subspace span_of_rows(const Mat& rows, const Field& F);       // canonicalize a spanning set
Subspace span_of_vectors(const std::vector<Vec>& vecs, int ambient, const Field& F);
Subspace zero_subspace(int ambient);
Subspace full_subspace(int ambient);

// right null space {x : m x = 0}, canonical
Subspace kernel_basis(const Mat& m, const Field& F);

bool subspace_contains(const Subspace& s, const Vec& v, const Field& F);
bool subspace_leq(const Subspace& a, const Subspace& b, const Field& F);  // a <= b
Subspace subspace_sum(const Subspace& a, const Subspace& b, const Field& F);
Subspace subspace_intersect(const Subspace& a, const Subspace& b, const Field& F);

struct QuotientBasis {
  Mat projection;  // (ambient - dim sub) x ambient
  Mat section;     // ambient x (ambient - dim sub), projection*section = I
};

// canonical projection/section for ambient/sub (pre: sub.ambient_dim == ambient_dim)
QuotientBasis quotient_basis(int ambient_dim, const Subspace& sub, const Field& F);

// one solution x of a x = b (canonical: free variables 0) or nullopt
std::optional<Mat> solve(const Mat& a, const Mat& b, const Field& F);
std::optional<Vec> solve_vec(const Mat& a, const Vec& b, const Field& F);

// coordinates of v in the row space of `basis_rows` (pre: v lies in it)
Vec coords_in_rowspace(const Mat& basis_rows, const Vec& v, const Field& F);

std::optional<Mat> inverse(const Mat& m, const Field& F);

Rat trace(const Mat& m, const Field& F);

}  // namespace extrilab
