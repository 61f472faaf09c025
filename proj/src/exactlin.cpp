#include "extrilab/exactlin.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace extrilab {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows_in, int cols) {
  Mat m((int)rows_in.size(), cols);
  for (int i = 0; i < m.rows; ++i) {
    if ((int)rows_in[i].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
    for (int j = 0; j < cols; ++j) m.at(i, j) = rows_in[i][j];
  }
  return m;
}

Vec Mat::row(int i) const {
  Vec v(cols);
  for (int j = 0; j < cols; ++j) v[j] = at(i, j);
  return v;
}

Vec Mat::col(int j) const {
  Vec v(rows);
  for (int i = 0; i < rows; ++i) v[i] = at(i, j);
  return v;
}

bool Mat::is_zero() const {
  for (const Rat& x : a)
    if (!x.is_zero()) return false;
  return true;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << rows << "x" << cols << "[";
  for (int i = 0; i < rows; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols; ++j) {
      if (j) os << ",";
      os << at(i, j).str();
    }
  }
  os << "]";
  return os.str();
}

Mat mul(const Mat& A, const Mat& B, const Field& F) {
  if (A.cols != B.rows) throw std::invalid_argument("mul: shape mismatch");
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Rat& aik = A.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < B.cols; ++j) {
        const Rat& bkj = B.at(k, j);
        if (bkj.is_zero()) continue;
        C.at(i, j) = F.add(C.at(i, j), aik * bkj);
      }
    }
  return C;
}

Mat add(const Mat& A, const Mat& B, const Field& F) {
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("add: shape mismatch");
  Mat C(A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
  return C;
}

Mat sub(const Mat& A, const Mat& B, const Field& F) {
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("sub: shape mismatch");
  Mat C(A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
  return C;
}

Mat scale(const Rat& c, const Mat& A, const Field& F) {
  Mat C(A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.mul(c, A.a[i]);
  return C;
}

Mat transpose(const Mat& A) {
  Mat C(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(j, i) = A.at(i, j);
  return C;
}

Mat hstack(const Mat& A, const Mat& B) {
  if (A.rows != B.rows) throw std::invalid_argument("hstack: row mismatch");
  Mat C(A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
  }
  return C;
}

Mat vstack(const Mat& A, const Mat& B) {
  if (A.cols != B.cols) throw std::invalid_argument("vstack: col mismatch");
  Mat C(A.rows + B.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
  return C;
}

Vec apply(const Mat& A, const Vec& x, const Field& F) {
  if ((int)x.size() != A.cols) throw std::invalid_argument("apply: shape mismatch");
  Vec y(A.rows);
  for (int i = 0; i < A.rows; ++i) {
    Rat s(0);
    for (int j = 0; j < A.cols; ++j)
      if (!A.at(i, j).is_zero() && !x[j].is_zero()) s += A.at(i, j) * x[j];
    y[i] = F.reduce(s);
  }
  return y;
}

Vec vec_add(const Vec& x, const Vec& y, const Field& F) {
  Vec z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = F.add(x[i], y[i]);
  return z;
}

Vec vec_sub(const Vec& x, const Vec& y, const Field& F) {
  Vec z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = F.sub(x[i], y[i]);
  return z;
}

Vec vec_scale(const Rat& c, const Vec& x, const Field& F) {
  Vec z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = F.mul(c, x[i]);
  return z;
}

bool vec_is_zero(const Vec& x) {
  for (const Rat& v : x)
    if (!v.is_zero()) return false;
  return true;
}

RrefResult rref(const Mat& m, const Field& F) {
  RrefResult res;
  res.reduced = m;
  Mat& A = res.reduced;
  int r = 0;
  for (int c = 0; c < A.cols && r < A.rows; ++c) {
    int piv = -1;
    for (int i = r; i < A.rows; ++i)
      if (!A.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < A.cols; ++j) std::swap(A.at(piv, j), A.at(r, j));
    Rat inv = F.div(Rat(1), A.at(r, c));
    for (int j = c; j < A.cols; ++j) A.at(r, j) = F.mul(inv, A.at(r, j));
    for (int i = 0; i < A.rows; ++i) {
      if (i == r || A.at(i, c).is_zero()) continue;
      Rat f = A.at(i, c);
      for (int j = c; j < A.cols; ++j) A.at(i, j) = F.sub(A.at(i, j), f * A.at(r, j));
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  // zero out the (numerically already zero) tail rows for exact canonical form
  for (int i = r; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) A.at(i, j) = Rat(0);
  return res;
}

int rank(const Mat& m, const Field& F) { return rref(m, F).rank; }

Subspace span_of_rows(const Mat& rows, const Field& F) {
  RrefResult r = rref(rows, F);
  Subspace s;
  s.ambient_dim = rows.cols;
  s.basis = Mat(r.rank, rows.cols);
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < rows.cols; ++j) s.basis.at(i, j) = r.reduced.at(i, j);
  return s;
}

Subspace span_of_vectors(const std::vector<Vec>& vecs, int ambient, const Field& F) {
  if (vecs.empty()) return zero_subspace(ambient);
  return span_of_rows(Mat::from_rows(vecs, ambient), F);
}

Subspace zero_subspace(int ambient) {
  Subspace s;
  s.ambient_dim = ambient;
  s.basis = Mat(0, ambient);
  return s;
}

Subspace full_subspace(int ambient) {
  Subspace s;
  s.ambient_dim = ambient;
  s.basis = Mat::identity(ambient);
  return s;
}

Subspace kernel_basis(const Mat& m, const Field& F) {
  RrefResult r = rref(m, F);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> gens;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    Vec v(m.cols, Rat(0));
    v[c] = Rat(1);
    for (int i = 0; i < r.rank; ++i) v[r.pivot_cols[i]] = F.neg(r.reduced.at(i, c));
    gens.push_back(std::move(v));
  }
  return span_of_vectors(gens, m.cols, F);
}

bool subspace_contains(const Subspace& s, const Vec& v, const Field& F) {
  if ((int)v.size() != s.ambient_dim) throw std::invalid_argument("subspace_contains: dim");
  Vec w = v;
  for (int i = 0; i < s.basis.rows; ++i) {
    int p = -1;
    for (int j = 0; j < s.ambient_dim; ++j)
      if (!s.basis.at(i, j).is_zero()) {
        p = j;
        break;
      }
    if (p < 0) continue;
    if (!w[p].is_zero()) {
      Rat f = w[p];  // pivot entries are 1 in canonical form
      for (int j = 0; j < s.ambient_dim; ++j) w[j] = F.sub(w[j], f * s.basis.at(i, j));
    }
  }
  return vec_is_zero(w);
}

bool subspace_leq(const Subspace& a, const Subspace& b, const Field& F) {
  for (int i = 0; i < a.basis.rows; ++i)
    if (!subspace_contains(b, a.basis.row(i), F)) return false;
  return true;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b, const Field& F) {
  if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("subspace_sum: dim");
  return span_of_rows(vstack(a.basis, b.basis), F);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b, const Field& F) {
  if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("subspace_intersect: dim");
  // rows of [A; B] with kernel of [A^T B^T] describing relations:
  // x in both spans  <=>  x = u A = -v B for (u,v) in ker [A^T | B^T]
  Mat M = hstack(transpose(a.basis), transpose(b.basis));
  Subspace rel = kernel_basis(M, F);
  std::vector<Vec> gens;
  for (int i = 0; i < rel.dim(); ++i) {
    Vec uv = rel.basis.row(i);
    Vec x(a.ambient_dim, Rat(0));
    for (int r = 0; r < a.basis.rows; ++r)
      for (int j = 0; j < a.ambient_dim; ++j) x[j] = F.add(x[j], uv[r] * a.basis.at(r, j));
    gens.push_back(std::move(x));
  }
  return span_of_vectors(gens, a.ambient_dim, F);
}

QuotientBasis quotient_basis(int ambient_dim, const Subspace& sub, const Field& F) {
  if (sub.ambient_dim != ambient_dim) throw std::invalid_argument("quotient_basis: dim");
  std::vector<int> pivots;
  std::vector<bool> is_pivot(ambient_dim, false);
  for (int i = 0; i < sub.basis.rows; ++i) {
    int p = -1;
    for (int j = 0; j < ambient_dim; ++j)
      if (!sub.basis.at(i, j).is_zero()) {
        p = j;
        break;
      }
    pivots.push_back(p);
    is_pivot[p] = true;
  }
  std::vector<int> free_cols;
  for (int j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  int q = (int)free_cols.size();

  QuotientBasis out;
  out.projection = Mat(q, ambient_dim);
  out.section = Mat(ambient_dim, q);
  // projection: reduce by basis rows (kill pivot coords), then read free coords
  for (int col = 0; col < ambient_dim; ++col) {
    Vec e(ambient_dim, Rat(0));
    e[col] = Rat(1);
    for (int i = 0; i < sub.basis.rows; ++i) {
      int p = pivots[i];
      if (!e[p].is_zero()) {
        Rat f = e[p];
        for (int j = 0; j < ambient_dim; ++j) e[j] = F.sub(e[j], f * sub.basis.at(i, j));
      }
    }
    for (int k = 0; k < q; ++k) out.projection.at(k, col) = e[free_cols[k]];
  }
  for (int k = 0; k < q; ++k) out.section.at(free_cols[k], k) = Rat(1);
  return out;
}

std::optional<Mat> solve(const Mat& a, const Mat& b, const Field& F) {
  if (a.rows != b.rows) throw std::invalid_argument("solve: row mismatch");
  RrefResult r = rref(hstack(a, b), F);
  // inconsistent iff some pivot lies in the b-part
  for (int c : r.pivot_cols)
    if (c >= a.cols) return std::nullopt;
  Mat x(a.cols, b.cols);
  for (int i = 0; i < (int)r.pivot_cols.size(); ++i) {
    int pc = r.pivot_cols[i];
    for (int j = 0; j < b.cols; ++j) x.at(pc, j) = r.reduced.at(i, a.cols + j);
  }
  return x;
}

std::optional<Vec> solve_vec(const Mat& a, const Vec& b, const Field& F) {
  Mat B((int)b.size(), 1);
  for (size_t i = 0; i < b.size(); ++i) B.at((int)i, 0) = b[i];
  auto x = solve(a, B, F);
  if (!x) return std::nullopt;
  return x->col(0);
}

Vec coords_in_rowspace(const Mat& basis_rows, const Vec& v, const Field& F) {
  auto x = solve_vec(transpose(basis_rows), v, F);
  if (!x) throw std::logic_error("coords_in_rowspace: vector not in span");
  return *x;
}

std::optional<Mat> inverse(const Mat& m, const Field& F) {
  if (m.rows != m.cols) return std::nullopt;
  auto x = solve(m, Mat::identity(m.rows), F);
  if (!x) return std::nullopt;
  // solve() finds some preimage; for square m it is the inverse iff m is regular
  if (!(mul(m, *x, F) == Mat::identity(m.rows))) return std::nullopt;
  return x;
}

Rat trace(const Mat& m, const Field& F) {
  Rat t(0);
  for (int i = 0; i < std::min(m.rows, m.cols); ++i) t = F.add(t, m.at(i, i));
  return t;
}

}  // namespace extrilab
