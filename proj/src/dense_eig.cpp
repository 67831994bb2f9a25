#include "btlab/dense_eig.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace btlab {

namespace {

using EMat = Eigen::MatrixXcd;
using EVec = Eigen::VectorXcd;

EMat to_eigen(const std::vector<Cplx>& a, int n) {
  if (n < 1 || n > 2000) throw std::domain_error("dense_eig: n must be in [1, 2000]");
  if (a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("dense_eig: size mismatch (row-major n*n)");
  }
  EMat m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = a[static_cast<std::size_t>(r) * n + c];
  }
  return m;
}

}  // namespace

std::vector<Cplx> dense_eig(const std::vector<Cplx>& a, int n) {
  const EMat m = to_eigen(a, n);
  Eigen::ComplexEigenSolver<EMat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_eig: QR did not converge");
  std::vector<Cplx> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

DenseEigenPairs dense_eig_pairs(const std::vector<Cplx>& a, int n) {
  const EMat m = to_eigen(a, n);
  Eigen::ComplexEigenSolver<EMat> es(m, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_eig: QR did not converge");
  const double scale = m.norm();
  DenseEigenPairs out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Cplx lambda = es.eigenvalues()(i);
    EVec v = es.eigenvectors().col(i);
    double backward = (m * v - lambda * v).norm() / v.norm();
    if (backward > 1e-9 * scale) {
      // One inverse-iteration pass from a slightly displaced shift.
      const Cplx shift = lambda * (1.0 + 1e-10) + Cplx{1e-300, 0.0};
      Eigen::PartialPivLU<EMat> lu(m - shift * EMat::Identity(n, n));
      for (int it = 0; it < 3; ++it) {
        v = lu.solve(v);
        v.normalize();
        backward = (m * v - lambda * v).norm();
        if (backward <= 1e-9 * scale) break;
      }
    }
    v.normalize();
    out.values[static_cast<std::size_t>(i)] = lambda;
    out.vectors[static_cast<std::size_t>(i)].assign(v.data(), v.data() + n);
  }
  return out;
}

}  // namespace btlab
