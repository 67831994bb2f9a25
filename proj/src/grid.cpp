#include "btlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace btlab {

namespace {

// Solve sinh(beta)/beta = target (>= 1) by bisection.
double solve_stretch(double target) {
  if (target <= 1.0 + 1e-12) return 0.0;
  double lo = 1e-8, hi = 1.0;
  auto f = [](double beta) { return std::sinh(beta) / beta; };
  while (f(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> Grid1D::with_boundary() const {
  std::vector<double> full;
  full.reserve(nodes.size() + 2);
  full.push_back(a);
  full.insert(full.end(), nodes.begin(), nodes.end());
  full.push_back(b);
  return full;
}

std::vector<double> Grid1D::cell_weights() const {
  const std::vector<double> full = with_boundary();
  std::vector<double> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) w[i] = 0.5 * (full[i + 2] - full[i]);
  return w;
}

std::vector<double> Grid1D::quad_weights() const {
  if (kind != Kind::uniform || nodes.size() < 4) return cell_weights();
  // Composite Simpson over the full point set [a, x_1, ..., x_n, b]; the
  // boundary values vanish (Dirichlet), so only interior weights are kept.
  const std::size_t cells = nodes.size() + 1;
  const double dx = (b - a) / static_cast<double>(cells);
  std::vector<double> w(nodes.size(), 0.0);
  if (cells % 2 == 0) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      w[i] = (i % 2 == 0) ? 4.0 * dx / 3.0 : 2.0 * dx / 3.0;
    }
  } else {
    // Odd cell count: Simpson up to the third-last full point, Simpson-3/8 on
    // the final three cells; the junction point carries both endpoint weights.
    const std::size_t junction = nodes.size() - 3;
    for (std::size_t i = 0; i < junction; ++i) {
      w[i] = (i % 2 == 0) ? 4.0 * dx / 3.0 : 2.0 * dx / 3.0;
    }
    w[junction] = dx / 3.0 + 3.0 * dx / 8.0;
    w[junction + 1] = 9.0 * dx / 8.0;
    w[junction + 2] = 9.0 * dx / 8.0;
  }
  return w;
}

double Grid1D::max_spacing_ratio() const {
  const std::vector<double> full = with_boundary();
  double r = 1.0;
  for (std::size_t i = 0; i + 2 < full.size(); ++i) {
    const double h1 = full[i + 1] - full[i];
    const double h2 = full[i + 2] - full[i + 1];
    r = std::max(r, std::max(h1 / h2, h2 / h1));
  }
  return r;
}

Grid1D make_uniform_grid(double a, double b, int n_interior) {
  if (!(b > a) || n_interior < 1) throw std::invalid_argument("make_uniform_grid: bad arguments");
  Grid1D g;
  g.a = a;
  g.b = b;
  g.kind = Grid1D::Kind::uniform;
  g.nodes.resize(static_cast<std::size_t>(n_interior));
  const double dx = (b - a) / (n_interior + 1.0);
  for (int i = 0; i < n_interior; ++i) g.nodes[static_cast<std::size_t>(i)] = a + dx * (i + 1);
  return g;
}

Grid1D make_center_graded_grid(double a, double b, int n_interior, double min_spacing,
                               double center) {
  if (!(b > a) || n_interior < 1) throw std::invalid_argument("make_center_graded_grid");
  if (!(center > a && center < b)) throw std::invalid_argument("grading center not inside");
  const double half = std::max(center - a, b - center);
  const double ds = 2.0 / (n_interior + 1.0);
  // Uniform parameter s in [-1, 1], x = center + half * sinh(beta s)/sinh(beta),
  // clipped to the domain. Spacing at the center ~ half * beta * ds / sinh(beta).
  const double target = half * ds / std::max(min_spacing, 1e-300);
  const double beta = min_spacing > 0.0 ? solve_stretch(target) : 0.0;
  if (beta == 0.0) return make_uniform_grid(a, b, n_interior);

  Grid1D g;
  g.a = a;
  g.b = b;
  g.kind = Grid1D::Kind::graded;
  g.stretch = beta;
  const double sb = std::sinh(beta);
  // Map parameters of the two boundaries, then place nodes uniformly in s.
  auto inv = [&](double x) { return std::asinh((x - center) / half * sb) / beta; };
  const double sa = inv(a), sbb = inv(b);
  g.nodes.resize(static_cast<std::size_t>(n_interior));
  for (int i = 1; i <= n_interior; ++i) {
    const double s = sa + (sbb - sa) * i / (n_interior + 1.0);
    g.nodes[static_cast<std::size_t>(i - 1)] = center + half * std::sinh(beta * s) / sb;
  }
  return g;
}

Grid1D make_left_graded_grid(double a, double b, int n_interior, double min_spacing) {
  if (!(b > a) || n_interior < 1) throw std::invalid_argument("make_left_graded_grid");
  const double len = b - a;
  const double ds = 1.0 / (n_interior + 1.0);
  const double target = len * ds / std::max(min_spacing, 1e-300);
  const double beta = min_spacing > 0.0 ? solve_stretch(target) : 0.0;
  if (beta == 0.0) return make_uniform_grid(a, b, n_interior);

  Grid1D g;
  g.a = a;
  g.b = b;
  g.kind = Grid1D::Kind::graded;
  g.stretch = beta;
  const double sb = std::sinh(beta);
  g.nodes.resize(static_cast<std::size_t>(n_interior));
  for (int i = 1; i <= n_interior; ++i) {
    const double s = ds * i;
    g.nodes[static_cast<std::size_t>(i - 1)] = a + len * std::sinh(beta * s) / sb;
  }
  return g;
}

std::vector<double> Grid2D::cell_weights() const {
  const std::vector<double> wx = gx.cell_weights();
  const std::vector<double> wy = gy.cell_weights();
  std::vector<double> w(unknowns());
  for (int ix = 0; ix < gx.n(); ++ix) {
    for (int iy = 0; iy < gy.n(); ++iy) {
      w[index(ix, iy)] = wx[static_cast<std::size_t>(ix)] * wy[static_cast<std::size_t>(iy)];
    }
  }
  return w;
}

}  // namespace btlab
