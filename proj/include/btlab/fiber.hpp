#pragma once

#include "btlab/grid.hpp"
#include "btlab/model.hpp"

namespace btlab {

/// Transverse Airy eigenfunction sampled on a y-grid. u1 is normalized in the
/// bilinear (non-conjugated) sense against the grid quadrature weights:
/// sum_j w_j u(y_j)^2 = 1. The rescaled family u_{alpha,x} is produced by the
/// unitary rule u_{alpha,x}(y) = alpha(x)^{1/6} u1(alpha(x)^{1/3} y), so its
/// own grid norm deviates from 1 only by quadrature error.
struct FiberEigenfunction {
  std::vector<Cplx> samples;
  Cplx c;          // normalization constant in u1(y) = c * Ai(e^{i pi/6} y + z1)
  double x = 0.0;  // where alpha was evaluated
  double alpha_x = 1.0;
};

/// Bilinear pairing <f, g-bar> = sum w_j f_j g_j (no conjugation). This is
/// the pairing of the transpose calculus; the conjugated inner product is a
/// separate function on purpose.
Cplx pair_bilinear(std::span<const Cplx> f, std::span<const Cplx> g, std::span<const double> w);
Cplx inner_hermitian(std::span<const Cplx> f, std::span<const Cplx> g, std::span<const double> w);

/// Ground state of the reference operator A = D_y^2 + i y, u1 = c Ai(e^{i pi/6} y + z1).
FiberEigenfunction build_u1(const Grid1D& ygrid);

FiberEigenfunction build_u_alpha_x(const AlphaProfile& alpha, double x, const Grid1D& ygrid);

/// Column-wise rank-one projection: for each x-column,
///   (Pi psi)(x, .) = [<psi(x,.), u_{a,x}> / <u_{a,x}, u_{a,x}>] u_{a,x}(.)
/// with bilinear pairings. The norm division makes idempotency exact on the
/// grid. psi holds raw samples, x-major.
std::vector<Cplx> project_pi1(std::span<const Cplx> psi, const AlphaProfile& alpha,
                              const Grid2D& grid);

/// Kinetic and moment integrals of the L2-normalized real ground state of the
/// self-adjoint Airy operator D_y^2 + y:  a = ||u'||^2, b = <y u, u>.
/// Quadrature truncated where the y-grid ends.
std::pair<double, double> virial_checks(const Grid1D& ygrid);

/// Rayleigh quotients z(gamma) = |z1|/(3 gamma^2) + 2 i gamma |z1| / 3 of the
/// scaled trial states u_1(gamma y) in the complex Airy numerical range.
std::vector<Cplx> numerical_range_curve(std::span<const double> gammas);

/// Strict containment of |z1| e^{i pi/3} in the triangle {z(g), z(1/g), z(1)}.
bool numerical_range_triangle_contains(double gamma);

}  // namespace btlab
