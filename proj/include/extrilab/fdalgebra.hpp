#pragma once
// Finite-dimensional associative algebras presented by structure constants:
// Jacobson radical via the trace bilinear form of the regular representation
// (characteristic zero), and a split-locality test.

#include <string>
#include <vector>

#include "extrilab/exactlin.hpp"

namespace extrilab {

struct FDAlgebra {
  int dim = 0;
  // mult[i*dim + j] = coordinates of e_i * e_j in the basis
  std::vector<Vec> mult;
  Vec unit;

  Vec multiply(const Vec& a, const Vec& b, const Field& F) const;
  Mat left_mult(const Vec& a, const Field& F) const;
};

// radical of the trace form tr(L_a L_b); equals the Jacobson radical in
// characteristic zero
Subspace fd_radical(const FDAlgebra& A, const Field& F);

enum class LocalVerdict { Local, NotLocal, Unknown };

// decides split-locality: dim(A/rad) == 1 gives Local; a decomposition of the
// semisimple quotient detected through rational roots of central minimal
// polynomials gives NotLocal; otherwise Unknown (division-algebra analysis is
// out of scope).  The zero algebra is NotLocal.
LocalVerdict fd_is_local(const FDAlgebra& A, const Field& F);

// semisimple quotient dimension
int fd_top_dim(const FDAlgebra& A, const Field& F);

}  // namespace extrilab
