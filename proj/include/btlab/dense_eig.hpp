#pragma once

#include "btlab/common.hpp"

namespace btlab {

/// All eigenvalues of a dense complex matrix (row-major n*n, n <= 2000),
/// complex-Schur based. Test oracle for the sparse path.
std::vector<Cplx> dense_eig(const std::vector<Cplx>& a, int n);

struct DenseEigenPairs {
  std::vector<Cplx> values;
  std::vector<std::vector<Cplx>> vectors;  // unit 2-norm right eigenvectors
};

/// Eigenvalues plus eigenvectors; vectors are refined by inverse iteration
/// when the backward error exceeds 1e-9 * ||A||_F.
DenseEigenPairs dense_eig_pairs(const std::vector<Cplx>& a, int n);

}  // namespace btlab
