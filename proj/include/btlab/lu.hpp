#pragma once

#include "btlab/sparse.hpp"

namespace btlab {

/// Sparse LU of a square matrix: P_r A P_c = L U with unit-lower L.
/// Left-looking Gilbert-Peierls factorization, threshold partial pivoting,
/// approximate-minimum-degree column ordering on the symmetrized pattern.
struct LUFactors {
  int n = 0;
  std::vector<int> row_perm;  // P_r: pivot row of elimination step k
  std::vector<int> col_perm;  // P_c: column order (fill-reducing)
  SparseCS lower;             // unit diagonal stored explicitly
  SparseCS upper;
  long nnz_l = 0;
  long nnz_u = 0;
  double fill_ratio = 0.0;  // (nnz_l + nnz_u) / nnz(A)

  /// Solve A x = b.
  std::vector<Cplx> solve(std::span<const Cplx> b) const;
  /// One step of iterative refinement against the original matrix.
  std::vector<Cplx> solve_refined(const SparseCS& a, std::span<const Cplx> b) const;
};

struct LUOptions {
  double pivot_threshold = 0.1;  // diagonal kept when >= threshold * column max
  bool use_amd = true;
};

LUFactors sparse_lu(const SparseCS& a, const LUOptions& opt = {});

/// Fill-reducing ordering (approximate minimum degree on pattern(A + A^T)).
std::vector<int> amd_ordering(const SparseCS& a);

}  // namespace btlab
