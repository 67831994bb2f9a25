#include "btlab/fiber.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "btlab/quadrature.hpp"
#include "btlab/specfn.hpp"

namespace btlab {

namespace {

const Cplx kRot = std::polar(1.0, kPi / 6.0);  // e^{i pi/6}

struct U1Cache {
  std::mutex mu;
  // Keyed by (grid endpoints, size, first node) -> c; good enough to reuse
  // across the column loop of the projection.
  std::map<std::tuple<double, double, std::size_t, double>, Cplx> c_by_grid;
};

U1Cache& u1_cache() {
  static U1Cache c;
  return c;
}

// Unnormalized rescaled fiber alpha^{1/6} Ai(e^{i pi/6} alpha^{1/3} y + z1).
// No extent check: the projection normalizes by the grid pairing itself, so
// it stays valid on truncated model grids.
std::vector<Cplx> fiber_samples(double alpha_val, const Grid1D& ygrid) {
  const double z1 = specfn::airy_zero(1);
  const double a16 = std::pow(alpha_val, 1.0 / 6.0);
  const double a13 = std::pow(alpha_val, 1.0 / 3.0);
  std::vector<Cplx> s(ygrid.nodes.size());
  for (std::size_t j = 0; j < ygrid.nodes.size(); ++j) {
    s[j] = a16 * specfn::detail::airy_both(kRot * (a13 * ygrid.nodes[j]) + z1).ai;
  }
  return s;
}

}  // namespace

Cplx pair_bilinear(std::span<const Cplx> f, std::span<const Cplx> g, std::span<const double> w) {
  if (f.size() != g.size() || f.size() != w.size()) {
    throw std::invalid_argument("pair_bilinear: size mismatch");
  }
  Cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * g[i];
  return s;
}

Cplx inner_hermitian(std::span<const Cplx> f, std::span<const Cplx> g, std::span<const double> w) {
  if (f.size() != g.size() || f.size() != w.size()) {
    throw std::invalid_argument("inner_hermitian: size mismatch");
  }
  Cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * std::conj(g[i]);
  return s;
}

FiberEigenfunction build_u1(const Grid1D& ygrid) {
  if (ygrid.b < 20.0) throw std::invalid_argument("build_u1: y-grid must reach Y >= 20");

  FiberEigenfunction u;
  u.x = 0.0;
  u.alpha_x = 1.0;
  u.samples = fiber_samples(1.0, ygrid);

  const auto key = std::make_tuple(ygrid.a, ygrid.b, ygrid.nodes.size(),
                                   ygrid.nodes.empty() ? 0.0 : ygrid.nodes.front());
  {
    U1Cache& cache = u1_cache();
    std::scoped_lock lock(cache.mu);
    auto it = cache.c_by_grid.find(key);
    if (it != cache.c_by_grid.end()) {
      u.c = it->second;
      for (Cplx& s : u.samples) s *= u.c;
      return u;
    }
  }

  const std::vector<double> w = ygrid.quad_weights();
  const Cplx norm2_bilinear = pair_bilinear(u.samples, u.samples, w);
  // c^2 * <Ai-samples, Ai-samples> = 1; the principal square root fixes the
  // sign convention (any square root is admissible).
  u.c = 1.0 / std::sqrt(norm2_bilinear);
  for (Cplx& s : u.samples) s *= u.c;
  {
    U1Cache& cache = u1_cache();
    std::scoped_lock lock(cache.mu);
    cache.c_by_grid.emplace(key, u.c);
  }
  return u;
}

FiberEigenfunction build_u_alpha_x(const AlphaProfile& alpha, double x, const Grid1D& ygrid) {
  const double a = alpha(x);
  if (!(a > 0.0)) throw std::invalid_argument("build_u_alpha_x: alpha(x) must be positive");
  FiberEigenfunction base = build_u1(ygrid);  // for its normalization constant

  FiberEigenfunction u;
  u.x = x;
  u.alpha_x = a;
  u.c = base.c;
  u.samples = fiber_samples(a, ygrid);
  for (Cplx& s : u.samples) s *= base.c;
  return u;
}

std::vector<Cplx> project_pi1(std::span<const Cplx> psi, const AlphaProfile& alpha,
                              const Grid2D& grid) {
  if (psi.size() != grid.unknowns()) throw std::invalid_argument("project_pi1: size mismatch");
  const int nx = grid.gx.n();
  const int ny = grid.gy.n();
  const std::vector<double> wy = grid.gy.quad_weights();

  // Memoize the fiber per alpha value; symmetric profiles hit the cache for
  // mirrored columns.
  std::map<double, std::pair<std::vector<Cplx>, Cplx>> fibers;  // alpha -> (samples, <u,u>)
  std::vector<Cplx> out(psi.size());
  std::vector<Cplx> col(static_cast<std::size_t>(ny));
  for (int ix = 0; ix < nx; ++ix) {
    const double a = alpha(grid.gx.nodes[static_cast<std::size_t>(ix)]);
    if (!(a > 0.0)) throw std::invalid_argument("project_pi1: alpha must be positive");
    auto it = fibers.find(a);
    if (it == fibers.end()) {
      std::vector<Cplx> samples = fiber_samples(a, grid.gy);
      const Cplx uu = pair_bilinear(samples, samples, wy);
      it = fibers.emplace(a, std::make_pair(std::move(samples), uu)).first;
    }
    const std::vector<Cplx>& u = it->second.first;
    const Cplx uu = it->second.second;
    for (int iy = 0; iy < ny; ++iy) col[static_cast<std::size_t>(iy)] = psi[grid.index(ix, iy)];
    const Cplx coef = pair_bilinear(col, u, wy) / uu;
    for (int iy = 0; iy < ny; ++iy) out[grid.index(ix, iy)] = coef * u[static_cast<std::size_t>(iy)];
  }
  return out;
}

std::pair<double, double> virial_checks(const Grid1D& ygrid) {
  if (ygrid.b < 20.0) throw std::invalid_argument("virial_checks: y-grid must reach Y >= 20");
  const double z1 = specfn::airy_zero(1);
  quad::Options opt;
  opt.abs_tol = 1e-12;
  // L2 normalization of Ai(y + z1) on (0, inf): equals Ai'(z1)^2 exactly.
  const double nrm = quad::integrate_or_throw(
      [z1](double y) { return sq(specfn::detail::airy_both({y + z1, 0.0}).ai.real()); }, 0.0,
      ygrid.b, opt);
  const double kinetic = quad::integrate_or_throw(
      [z1](double y) { return sq(specfn::detail::airy_both({y + z1, 0.0}).aip.real()); }, 0.0,
      ygrid.b, opt);
  const double moment = quad::integrate_or_throw(
      [z1](double y) { return y * sq(specfn::detail::airy_both({y + z1, 0.0}).ai.real()); }, 0.0,
      ygrid.b, opt);
  return {kinetic / nrm, moment / nrm};
}

std::vector<Cplx> numerical_range_curve(std::span<const double> gammas) {
  const double z1 = std::abs(specfn::airy_zero(1));
  std::vector<Cplx> out;
  out.reserve(gammas.size());
  for (const double g : gammas) {
    if (!(g > 0.0)) throw std::invalid_argument("numerical_range_curve: gamma > 0");
    out.push_back(Cplx{z1 / (3.0 * g * g), 2.0 * g * z1 / 3.0});
  }
  return out;
}

bool numerical_range_triangle_contains(double gamma) {
  const double gs[3] = {gamma, 1.0 / gamma, 1.0};
  const std::vector<Cplx> v = numerical_range_curve(std::span<const double>(gs, 3));
  const Cplx target = std::abs(specfn::airy_zero(1)) * std::polar(1.0, kPi / 3.0);
  auto cross = [](Cplx a, Cplx b, Cplx p) {
    const Cplx ab = b - a;
    const Cplx ap = p - a;
    return ab.real() * ap.imag() - ab.imag() * ap.real();
  };
  const double c0 = cross(v[0], v[1], target);
  const double c1 = cross(v[1], v[2], target);
  const double c2 = cross(v[2], v[0], target);
  return (c0 > 0 && c1 > 0 && c2 > 0) || (c0 < 0 && c1 < 0 && c2 < 0);
}

}  // namespace btlab
