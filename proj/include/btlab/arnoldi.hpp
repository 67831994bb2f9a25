#pragma once

#include <optional>

#include "btlab/lu.hpp"
#include "btlab/sparse.hpp"

namespace btlab {

/// Converged eigenpair of a sparse operator. The vector has unit 2-norm in
/// whatever basis the matrix acts on (for assembled operators that is the
/// sqrt(w) sample basis, i.e. the mesh-weighted discrete L2 norm).
struct EigenPair {
  Cplx value;
  std::vector<Cplx> vector;
  double residual = 0.0;  // ||M v - value v|| / ||v||, recomputed on M
};

struct ArnoldiOptions {
  int k = 1;                       // how many eigenpairs
  double tol = 1e-10;              // residual tolerance (>= 1e-12)
  int max_restarts = 10;
  int subspace = 0;                // 0 = max(20, 4k)
  std::uint64_t seed = 42;
  std::optional<std::vector<Cplx>> start;  // starting vector, e.g. a quasimode
  double pivot_threshold = 0.1;
};

/// Shift-invert Arnoldi: the k eigenpairs of m nearest `shift`, each with
/// residual <= tol. Modified Gram-Schmidt with one reorthogonalization pass;
/// explicit restart from the span of the wanted Ritz vectors. If the LU of
/// (m - shift I) is singular the shift is nudged by (1 + 1e-8) and retried.
std::vector<EigenPair> shift_invert_arnoldi(const SparseCS& m, Cplx shift,
                                            const ArnoldiOptions& opt = {});

}  // namespace btlab
