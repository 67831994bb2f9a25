#pragma once

#include "btlab/arnoldi.hpp"
#include "btlab/assemble.hpp"
#include "btlab/fiber.hpp"
#include "btlab/grid.hpp"
#include "btlab/model.hpp"

namespace btlab {

struct WidthReport {
  double h = 0.0;
  double width_x = 0.0;  // 5%-95% mass quantile interval of the x-marginal
  double width_y = 0.0;  // same in the transverse coordinate (y or t)
  double mass_outside_box = 0.0;
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (log h, log q)
};

/// Least squares on (log h, log q); needs >= 3 points, all q > 0.
ScalingFit scaling_fit(std::span<const std::pair<double, double>> h_and_q);

/// Quantile widths of the mass marginals of an eigenvector given in the
/// sqrt(w) sample basis (|v_i|^2 already carries the mesh weight).
WidthReport localization_widths(std::span<const Cplx> scaled_vector, const Grid2D& grid,
                                double h);

/// Agmon ratio ||e^{phi_mu/h} psi|| / ||psi|| in the log domain.
struct AgmonRatio {
  double log_value = 0.0;
  double max_exponent = 0.0;  // largest 2 phi/h + log(w |psi|^2) term seen
  double value() const;       // exp(log_value), +inf if not representable
};

/// Direct evaluation on an eigenvector in the sqrt(w) basis, log-sum-exp
/// accumulation. Meaningful only while e^{2 phi/h} stays below the inverse
/// square of the eigenvector's accuracy; the sweep drivers use the conjugated
/// route instead (see experiments.hpp) and cross-check against this one.
AgmonRatio agmon_ratio(std::span<const Cplx> scaled_vector, const Potential& potential,
                       double mu, const Grid2D& grid, double h);

/// Same quantity from the conjugated eigenvector chi = e^{Phi/h} v of
/// M^Phi = E M E^{-1}: ratio = ||chi|| / ||e^{-Phi/h} chi||, stable for any
/// exponent size. phi holds Phi(x_i)/h per 2-D node.
AgmonRatio agmon_ratio_conjugated(std::span<const Cplx> chi, std::span<const double> phi_over_h);

/// Relative residual of the discrete quasimode psi = u_Ai(y) f_h(x),
/// f_h = h^{-1/4} e^{-c x^2 / h}, c = e^{i pi/4} kappa / 2, against mu_1(h).
/// Evaluated through the Kronecker factors of the assembly (no 2-D
/// materialization), auto-refining the 1-D grids until stable to 5%.
double quasimode_residual(const ModelConfig& cfg);

/// The same residual on pinned 1-D factor grids (no refinement loop).
double quasimode_residual_on_grids(const ModelConfig& cfg, const Grid1D& gx, const Grid1D& gy);

/// Same residual on explicit grids through the materialized 2-D matrix;
/// cross-validation path for the factorized evaluation.
double quasimode_residual_materialized(const ModelConfig& cfg, const Grid2D& grid);

/// || psi - Pi psi || / || psi || for an eigenvector in the sqrt(w) basis.
double projection_deficit(std::span<const Cplx> scaled_vector, const AlphaProfile& alpha,
                          const Grid2D& grid);

/// Discrete quasimode on a tensor grid, returned in the sqrt(w) basis
/// (normalized). Also used as the Arnoldi starting vector.
std::vector<Cplx> quasimode_vector(const ModelConfig& cfg, const Grid2D& grid);

}  // namespace btlab
