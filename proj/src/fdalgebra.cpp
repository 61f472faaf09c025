#include "extrilab/fdalgebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace extrilab {

Vec FDAlgebra::multiply(const Vec& a, const Vec& b, const Field& F) const {
  Vec out(dim, Rat(0));
  for (int i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (b[j].is_zero()) continue;
      const Vec& m = mult[(size_t)i * dim + j];
      Rat c = a[i] * b[j];
      for (int k = 0; k < dim; ++k)
        if (!m[k].is_zero()) out[k] = F.add(out[k], c * m[k]);
    }
  }
  return out;
}

Mat FDAlgebra::left_mult(const Vec& a, const Field& F) const {
  Mat L(dim, dim);
  for (int j = 0; j < dim; ++j) {
    Vec e(dim, Rat(0));
    e[j] = Rat(1);
    Vec col = multiply(a, e, F);
    for (int i = 0; i < dim; ++i) L.at(i, j) = col[i];
  }
  return L;
}

Subspace fd_radical(const FDAlgebra& A, const Field& F) {
  if (!F.is_rational())
    throw std::domain_error("fd_radical: the trace-form criterion needs characteristic zero");
  if (A.dim == 0) return zero_subspace(0);
  std::vector<Mat> L(A.dim);
  for (int i = 0; i < A.dim; ++i) {
    Vec e(A.dim, Rat(0));
    e[i] = Rat(1);
    L[i] = A.left_mult(e, F);
  }
  Mat G(A.dim, A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) G.at(i, j) = trace(mul(L[i], L[j], F), F);
  return kernel_basis(G, F);
}

int fd_top_dim(const FDAlgebra& A, const Field& F) { return A.dim - fd_radical(A, F).dim(); }

namespace {

// minimal polynomial of z acting by left multiplication, as a coefficient
// vector c_0 + c_1 x + ... + x^d
Vec min_poly(const FDAlgebra& A, const Vec& z, const Field& F) {
  std::vector<Vec> powers;
  Vec cur = A.unit;
  powers.push_back(cur);
  for (int d = 1; d <= A.dim; ++d) {
    cur = A.multiply(cur, z, F);
    // is cur in the span of the previous powers?
    Mat M((int)powers.size(), A.dim);
    for (size_t i = 0; i < powers.size(); ++i)
      for (int j = 0; j < A.dim; ++j) M.at((int)i, j) = powers[i][j];
    auto sol = solve_vec(transpose(M), cur, F);
    if (sol) {
      Vec poly(powers.size() + 1, Rat(0));
      for (size_t i = 0; i < powers.size(); ++i) poly[i] = F.neg((*sol)[i]);
      poly[powers.size()] = Rat(1);
      return poly;
    }
    powers.push_back(cur);
  }
  throw std::logic_error("min_poly: no relation found");
}

std::vector<long> divisors(long n) {
  n = std::abs(n);
  std::vector<long> out;
  for (long d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  return out;
}

// distinct rational roots via the rational-root theorem on an integerized copy
std::vector<Rat> rational_roots(const Vec& poly, const Field& F) {
  std::vector<Rat> roots;
  auto eval = [&](const Rat& x) {
    Rat v(0), p(1);
    for (const Rat& c : poly) {
      v = F.add(v, c * p);
      p = p * x;
    }
    return v;
  };
  Vec ip = poly;
  Rat L(1);
  for (const Rat& c : ip) L = L * c.denominator();
  for (auto& c : ip) c = c * L;
  int low = 0;
  while (low < (int)ip.size() && ip[low].is_zero()) ++low;
  if (low == (int)ip.size()) return {Rat(0)};
  if (low > 0) roots.push_back(Rat(0));
  long a0 = ip[low].to_long();
  long an = ip.back().to_long();
  for (long p : divisors(a0))
    for (long q : divisors(an))
      for (int sgn : {1, -1}) {
        Rat cand(sgn * p, q);
        if (eval(cand).is_zero() &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  return roots;
}

}  // namespace

LocalVerdict fd_is_local(const FDAlgebra& A, const Field& F) {
  if (A.dim == 0) return LocalVerdict::NotLocal;  // the zero ring is not local
  Subspace rad = fd_radical(A, F);
  int top = A.dim - rad.dim();
  if (top == 1) return LocalVerdict::Local;
  if (top == 0) return LocalVerdict::NotLocal;  // nonzero radical-only algebra cannot happen (unital)
  // look for a decomposition of the semisimple quotient through central
  // elements: a central element of the quotient with two coprime factors of
  // its minimal polynomial splits the algebra
  // work in the quotient S = A/rad
  QuotientBasis qb = quotient_basis(A.dim, rad, F);
  FDAlgebra S;
  S.dim = top;
  S.unit = apply(qb.projection, A.unit, F);
  S.mult.resize((size_t)top * top);
  for (int i = 0; i < top; ++i)
    for (int j = 0; j < top; ++j) {
      Vec a = qb.section.col(i), b = qb.section.col(j);
      S.mult[(size_t)i * top + j] = apply(qb.projection, A.multiply(a, b, F), F);
    }
  // central elements: z with z*e_k = e_k*z for all k
  std::vector<Vec> eqs;
  for (int k = 0; k < top; ++k) {
    Vec e(top, Rat(0));
    e[k] = Rat(1);
    // rows of (L_e - R_e) acting on z
    for (int r = 0; r < top; ++r) {
      Vec eq(top, Rat(0));
      for (int z = 0; z < top; ++z) {
        Vec ez(top, Rat(0));
        ez[z] = Rat(1);
        Vec lhs = S.multiply(e, ez, F);
        Vec rhs = S.multiply(ez, e, F);
        eq[z] = F.sub(lhs[r], rhs[r]);
      }
      if (!vec_is_zero(eq)) eqs.push_back(eq);
    }
  }
  Subspace center = eqs.empty() ? full_subspace(top)
                                : kernel_basis(Mat::from_rows(eqs, top), F);
  for (int i = 0; i < center.dim(); ++i) {
    Vec z = center.basis.row(i);
    Vec mp = min_poly(S, z, F);
    auto roots = rational_roots(mp, F);
    if ((int)roots.size() >= 2) return LocalVerdict::NotLocal;
    if (roots.size() == 1 && (int)mp.size() - 1 >= 2) {
      // check whether (x - r) divides with coprime cofactor: evaluate the
      // cofactor at r; nonzero means coprime factors exist
      Rat r = roots[0];
      // synthetic division of mp by (x - r)
      Vec quo(mp.size() - 1, Rat(0));
      Rat carry = mp.back();
      for (int k = (int)mp.size() - 2; k >= 0; --k) {
        quo[k] = carry;
        carry = F.add(mp[k], r * carry);
      }
      // carry is the remainder, zero since r is a root
      Rat at = Rat(0), pw(1);
      for (const Rat& c : quo) {
        at = F.add(at, c * pw);
        pw = pw * r;
      }
      if (!at.is_zero()) return LocalVerdict::NotLocal;  // coprime split
    }
  }
  return LocalVerdict::Unknown;
}

}  // namespace extrilab
