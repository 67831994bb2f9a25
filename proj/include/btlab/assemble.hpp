#pragma once

#include <functional>
#include <optional>

#include "btlab/grid.hpp"
#include "btlab/model.hpp"
#include "btlab/sparse.hpp"

namespace btlab {

/// Discrete -d^2/dx^2 with Dirichlet conditions by node elimination.
///
/// The matrix is the symmetrized finite-volume form: it acts on sqrt(w)-scaled
/// samples (w = cell_weights), where it is complex symmetric on any grid and
/// reduces to the (-1, 2, -1)/delta^2 stencil on uniform ones. Eigenvalues
/// equal those of the raw FV operator (exact similarity); a function's
/// mesh-weighted L2 norm equals the plain 2-norm of its scaled sample vector.
SparseCS second_derivative_matrix(const Grid1D& g);

/// Raw finite-volume action of -d^2/dx^2 on plain nodal samples (the
/// similarity-transformed action of second_derivative_matrix). Exact on
/// quadratics at interior nodes away from the boundary.
std::vector<double> apply_neg_second_derivative(const Grid1D& g, std::span<const double> u);

/// Scale plain nodal samples into the sqrt(w) basis used by the matrices.
std::vector<Cplx> to_scaled(const Grid1D& g, std::span<const Cplx> raw);
std::vector<Cplx> from_scaled(const Grid1D& g, std::span<const Cplx> scaled);
std::vector<Cplx> to_scaled(const Grid2D& g, std::span<const Cplx> raw);
std::vector<Cplx> from_scaled(const Grid2D& g, std::span<const Cplx> scaled);

/// Complex Airy operator D_y^2 + i*omega*y on (0, Y).
SparseCS assemble_airy_1d(double omega, const Grid1D& g);

/// Optional exponential weight for the conjugated Schrodinger operator
/// (h D + i Phi')^2 + iV; phi_prime is evaluated at the nodes.
struct ConjugationWeight {
  std::function<double(double)> phi_prime;
};

/// h^2 (-d^2/dx^2) + i V(x), plus the first-order terms of (hD + i Phi')^2
/// when a weight is given: + h(Phi' d + d Phi') - diag(Phi'^2), centered
/// first differences.
SparseCS assemble_schrodinger_1d(double h, const Potential& potential,
                                 const std::optional<ConjugationWeight>& weight,
                                 const Grid1D& g);

/// L_h = h^{2/3}(D_y^2 + i alpha(x) y) + (h D_x)^2 + i V(x) on
/// [-X, X] x (0, Y), Dirichlet on all sides, x-major flattening.
SparseCS assemble_L2d(const ModelConfig& cfg, const Grid2D& g);

/// T_h = -h^2(d_s^2 + d_t^2) + i alpha(s) t + i V(s) on [-X, X] x (0, T).
SparseCS assemble_T2d(const ModelConfig& cfg, const Grid2D& g);

/// Exact similarity M' = E M E^{-1} with E = diag(e^{phi_i}); only neighbor
/// differences phi_i - phi_j enter, so no overflow for smooth phi. Used to
/// evaluate Agmon-weighted quantities of eigenvectors in a well-scaled basis.
SparseCS conjugate_by_weight(const SparseCS& m, std::span<const double> phi);

/// Default grids for a model config (graded x toward 0, graded y toward 0).
Grid2D make_model_grids(const ModelConfig& cfg);
/// Grids for the unscaled T_h operator; the t-extent follows t ~ h^{2/3}.
Grid2D make_T_grids(const ModelConfig& cfg);

}  // namespace btlab
