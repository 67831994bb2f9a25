#pragma once

#include <optional>
#include <string>
#include <vector>

#include "btlab/common.hpp"

namespace btlab {

/// Potential V(x). Catalog: polynomials (coefficient grammar) plus the
/// plateau potential used by the sharpness experiment: a smooth blend
/// x^2 * chi + (1 - chi) with chi a C^inf step equal to 1 for |x| <= 0.3
/// and 0 for |x| >= 0.5, so V == 1 outside (-1/2, 1/2).
class Potential {
 public:
  enum class Kind { polynomial, plateau };

  static Potential polynomial(std::vector<double> coeffs, std::string name);
  static Potential quadratic();                 // x^2
  static Potential quadratic_cubic(double a3);  // x^2 + a3*x^3
  static Potential plateau();                   // sharpness potential
  static Potential from_name(const std::string& name, const std::vector<double>& params);

  double operator()(double x) const;
  double second_deriv_at_0() const { return second_deriv_at_0_; }
  /// kappa = sqrt(V''(0)/2), the oscillator constant of the quadratic model.
  double kappa() const;
  const std::string& name() const { return name_; }
  /// Declared lower bound: V(x) >= liminf_floor for |x| >= floor_radius.
  double liminf_floor() const { return liminf_floor_; }
  double floor_radius() const { return floor_radius_; }

 private:
  Kind kind_ = Kind::polynomial;
  std::vector<double> coeffs_;
  std::string name_;
  double second_deriv_at_0_ = 0.0;
  double liminf_floor_ = 0.0;
  double floor_radius_ = 0.0;
};

/// alpha(x) with a declared positive lower bound. The assumptions require
/// alpha >= alpha0 > 0 globally; the literal 1 - c x^2 of the Figure-2
/// caption turns negative for |x| > 1/sqrt(c), so the catalog provides both
/// the literal polynomial (for validation exercises) and a clamped variant
/// that follows 1 - c x^2 exactly on |x| <= 1 and levels off smoothly to the
/// floor 1 - c beyond |x| = 2.
class AlphaProfile {
 public:
  enum class Kind { polynomial, clamped_dip };

  static AlphaProfile polynomial(std::vector<double> coeffs, std::string name, double alpha0);
  static AlphaProfile constant(double value = 1.0);
  static AlphaProfile quadratic_dip(double c);  // literal 1 - c*x^2
  static AlphaProfile dip_with_floor(double c);
  static AlphaProfile from_name(const std::string& name, const std::vector<double>& params);

  double operator()(double x) const;
  double alpha0() const { return alpha0_; }
  const std::string& name() const { return name_; }

 private:
  Kind kind_ = Kind::polynomial;
  std::vector<double> coeffs_;
  double dip_ = 0.0;
  std::string name_;
  double alpha0_ = 0.0;
};

struct GridControls {
  int nx = 400;
  int ny = 200;
  /// Target minimum x-spacing near x = 0 as a multiple of sqrt(h); 0 = uniform.
  double x_min_spacing_over_sqrt_h = 1.0 / 32.0;
  /// Target minimum y-spacing near y = 0; 0 = uniform.
  double y_min_spacing = 0.015;
};

struct ModelConfig {
  double h = 1.0 / 16.0;
  Potential potential = Potential::quadratic();
  AlphaProfile alpha = AlphaProfile::constant();
  double x_extent = 4.0;  // X: domain [-X, X]
  double y_extent = 7.0;  // Y: domain (0, Y) for L_h
  GridControls grid;
  std::size_t max_unknowns = 40'000'000;

  /// t-extent for the unscaled operator T_h; the boundary layer lives at
  /// t ~ h^{2/3}, so the extent follows the scaling t = h^{2/3} y.
  double t_extent() const { return std::max(0.5, 8.0 * std::pow(h, 2.0 / 3.0)); }

  void validate() const;  // throws std::invalid_argument on bad fields
};

/// lambda_{1,alpha}(x) = alpha(x)^{2/3} |z_1| e^{i pi/3}.
Cplx lambda1(const AlphaProfile& alpha, double x);

/// Agmon distance phi_mu(x) = (1-mu)/sqrt(2) * |int_0^x sqrt(V)|,
/// adaptive quadrature at abs tol 1e-10. mu = 0 is allowed (sharpness runs).
double agmon_phi(const Potential& potential, double mu, double x);

/// mu_1(h) = lambda_{1,alpha}(0) h^{2/3} + e^{i pi/4} kappa h.
Cplx quasimode_eigenvalue(const ModelConfig& cfg);

/// First n_max points of S_h = { e^{i pi/4} (2n-1) kappa h }, by magnitude.
std::vector<Cplx> oscillator_spectrum(double kappa, double h, int n_max);

struct AssumptionCheck {
  std::string name;
  bool pass = false;
  std::optional<double> witness_x;  // a violating sample point, when failed
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;
  bool all_pass() const;
  std::string first_failure() const;
};

/// Samples the window on 10^4 points; smoothness itself is not checked.
AssumptionReport validate_assumptions(const Potential& potential, const AlphaProfile& alpha,
                                      double window_lo, double window_hi);

}  // namespace btlab
