#include "btlab/assemble.hpp"

#include <cmath>
#include <stdexcept>

namespace btlab {

namespace {

// Symmetrized FV entries of -d2/dx2: K_ij / sqrt(w_i w_j) with
// K_{i,i+1} = -1/h_{i+1}, K_{ii} = 1/h_i + 1/h_{i+1}.
void second_derivative_triplets(const Grid1D& g, std::vector<Triplet>& out, Cplx scale,
                                int stride, int offset) {
  const std::vector<double> full = g.with_boundary();
  const std::vector<double> w = g.cell_weights();
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const double hl = full[static_cast<std::size_t>(i) + 1] - full[static_cast<std::size_t>(i)];
    const double hr = full[static_cast<std::size_t>(i) + 2] - full[static_cast<std::size_t>(i) + 1];
    const double diag = (1.0 / hl + 1.0 / hr) / w[static_cast<std::size_t>(i)];
    out.push_back({offset + i * stride, offset + i * stride, scale * diag});
    if (i + 1 < n) {
      const double off =
          -1.0 / (hr * std::sqrt(w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i) + 1]));
      out.push_back({offset + i * stride, offset + (i + 1) * stride, scale * off});
      out.push_back({offset + (i + 1) * stride, offset + i * stride, scale * off});
    }
  }
}

}  // namespace

SparseCS second_derivative_matrix(const Grid1D& g) {
  if (g.n() < 3) throw std::invalid_argument("second_derivative_matrix: need >= 3 interior nodes");
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(3 * g.n()));
  second_derivative_triplets(g, t, 1.0, 1, 0);
  return SparseCS::from_triplets(g.n(), std::move(t));
}

std::vector<double> apply_neg_second_derivative(const Grid1D& g, std::span<const double> u) {
  const std::vector<double> full = g.with_boundary();
  const std::vector<double> w = g.cell_weights();
  const int n = g.n();
  if (static_cast<int>(u.size()) != n) throw std::invalid_argument("sample size mismatch");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double hl = full[static_cast<std::size_t>(i) + 1] - full[static_cast<std::size_t>(i)];
    const double hr = full[static_cast<std::size_t>(i) + 2] - full[static_cast<std::size_t>(i) + 1];
    const double ul = i > 0 ? u[static_cast<std::size_t>(i) - 1] : 0.0;
    const double ur = i + 1 < n ? u[static_cast<std::size_t>(i) + 1] : 0.0;
    const double flux_r = (ur - u[static_cast<std::size_t>(i)]) / hr;
    const double flux_l = (u[static_cast<std::size_t>(i)] - ul) / hl;
    out[static_cast<std::size_t>(i)] = -(flux_r - flux_l) / w[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Cplx> to_scaled(const Grid1D& g, std::span<const Cplx> raw) {
  const std::vector<double> w = g.cell_weights();
  std::vector<Cplx> v(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) v[i] = raw[i] * std::sqrt(w[i]);
  return v;
}

std::vector<Cplx> from_scaled(const Grid1D& g, std::span<const Cplx> scaled) {
  const std::vector<double> w = g.cell_weights();
  std::vector<Cplx> v(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) v[i] = scaled[i] / std::sqrt(w[i]);
  return v;
}

std::vector<Cplx> to_scaled(const Grid2D& g, std::span<const Cplx> raw) {
  const std::vector<double> w = g.cell_weights();
  std::vector<Cplx> v(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) v[i] = raw[i] * std::sqrt(w[i]);
  return v;
}

std::vector<Cplx> from_scaled(const Grid2D& g, std::span<const Cplx> scaled) {
  const std::vector<double> w = g.cell_weights();
  std::vector<Cplx> v(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) v[i] = scaled[i] / std::sqrt(w[i]);
  return v;
}

SparseCS assemble_airy_1d(double omega, const Grid1D& g) {
  if (!(omega > 0.0)) throw std::invalid_argument("assemble_airy_1d: omega > 0");
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(4 * g.n()));
  second_derivative_triplets(g, t, 1.0, 1, 0);
  for (int i = 0; i < g.n(); ++i) {
    t.push_back({i, i, Cplx{0.0, omega * g.nodes[static_cast<std::size_t>(i)]}});
  }
  return SparseCS::from_triplets(g.n(), std::move(t));
}

SparseCS assemble_schrodinger_1d(double h, const Potential& potential,
                                 const std::optional<ConjugationWeight>& weight,
                                 const Grid1D& g) {
  if (!(h > 0.0)) throw std::invalid_argument("assemble_schrodinger_1d: h > 0");
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(5 * g.n()));
  second_derivative_triplets(g, t, h * h, 1, 0);
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, Cplx{0.0, potential(g.nodes[static_cast<std::size_t>(i)])}});
  }
  if (weight) {
    // (hD + i Phi')^2 = h^2 D^2 + h(Phi' d/dx + d/dx Phi') - Phi'^2.
    // Centered first differences over the neighbor span, in the sqrt(w) basis.
    const std::vector<double> full = g.with_boundary();
    const std::vector<double> w = g.cell_weights();
    std::vector<double> pp(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pp[static_cast<std::size_t>(i)] = weight->phi_prime(g.nodes[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n; ++i) {
      t.push_back({i, i, -pp[static_cast<std::size_t>(i)] * pp[static_cast<std::size_t>(i)]});
      const double span = full[static_cast<std::size_t>(i) + 2] - full[static_cast<std::size_t>(i)];
      if (i + 1 < n) {
        const double c = h * (pp[static_cast<std::size_t>(i)] + pp[static_cast<std::size_t>(i) + 1]) / span;
        const double s = std::sqrt(w[static_cast<std::size_t>(i)] / w[static_cast<std::size_t>(i) + 1]);
        t.push_back({i, i + 1, c * s});
      }
      if (i > 0) {
        const double c = -h * (pp[static_cast<std::size_t>(i)] + pp[static_cast<std::size_t>(i) - 1]) / span;
        const double s = std::sqrt(w[static_cast<std::size_t>(i)] / w[static_cast<std::size_t>(i) - 1]);
        t.push_back({i, i - 1, c * s});
      }
    }
  }
  return SparseCS::from_triplets(n, std::move(t));
}

namespace {

SparseCS assemble_2d_impl(const ModelConfig& cfg, const Grid2D& g, double dy2_scale,
                          double dx2_scale, double alpha_y_scale) {
  if (g.unknowns() > cfg.max_unknowns) {
    throw std::runtime_error("assemble: unknown count exceeds the configured memory cap");
  }
  const int nx = g.gx.n();
  const int ny = g.gy.n();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(5) * g.unknowns());
  // y-part: block diagonal, one copy per x-node.
  for (int ix = 0; ix < nx; ++ix) {
    second_derivative_triplets(g.gy, t, dy2_scale, 1, static_cast<int>(g.index(ix, 0)));
  }
  // x-part: stride ny within each fixed iy.
  for (int iy = 0; iy < ny; ++iy) {
    second_derivative_triplets(g.gx, t, dx2_scale, ny, iy);
  }
  // i (alpha_y_scale * alpha(x) y + V(x)) diagonal.
  for (int ix = 0; ix < nx; ++ix) {
    const double x = g.gx.nodes[static_cast<std::size_t>(ix)];
    const double ax = cfg.alpha(x);
    const double vx = cfg.potential(x);
    for (int iy = 0; iy < ny; ++iy) {
      const double y = g.gy.nodes[static_cast<std::size_t>(iy)];
      t.push_back({static_cast<int>(g.index(ix, iy)), static_cast<int>(g.index(ix, iy)),
                   Cplx{0.0, alpha_y_scale * ax * y + vx}});
    }
  }
  return SparseCS::from_triplets(static_cast<int>(g.unknowns()), std::move(t));
}

}  // namespace

SparseCS assemble_L2d(const ModelConfig& cfg, const Grid2D& g) {
  const double h23 = std::pow(cfg.h, 2.0 / 3.0);
  return assemble_2d_impl(cfg, g, h23, cfg.h * cfg.h, h23);
}

SparseCS assemble_T2d(const ModelConfig& cfg, const Grid2D& g) {
  const double h2 = cfg.h * cfg.h;
  return assemble_2d_impl(cfg, g, h2, h2, 1.0);
}

SparseCS conjugate_by_weight(const SparseCS& m, std::span<const double> phi) {
  if (static_cast<int>(phi.size()) != m.n) {
    throw std::invalid_argument("conjugate_by_weight: size mismatch");
  }
  SparseCS out = m;
  for (int c = 0; c < m.n; ++c) {
    for (int p = m.col_ptr[static_cast<std::size_t>(c)]; p < m.col_ptr[static_cast<std::size_t>(c) + 1]; ++p) {
      const int r = m.row_idx[static_cast<std::size_t>(p)];
      out.values[static_cast<std::size_t>(p)] *=
          std::exp(phi[static_cast<std::size_t>(r)] - phi[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

Grid2D make_model_grids(const ModelConfig& cfg) {
  Grid2D g;
  const double min_dx = cfg.grid.x_min_spacing_over_sqrt_h * std::sqrt(cfg.h);
  g.gx = cfg.grid.x_min_spacing_over_sqrt_h > 0.0
             ? make_center_graded_grid(-cfg.x_extent, cfg.x_extent, cfg.grid.nx, min_dx)
             : make_uniform_grid(-cfg.x_extent, cfg.x_extent, cfg.grid.nx);
  g.gy = cfg.grid.y_min_spacing > 0.0
             ? make_left_graded_grid(0.0, cfg.y_extent, cfg.grid.ny, cfg.grid.y_min_spacing)
             : make_uniform_grid(0.0, cfg.y_extent, cfg.grid.ny);
  return g;
}

Grid2D make_T_grids(const ModelConfig& cfg) {
  Grid2D g;
  const double min_dx = cfg.grid.x_min_spacing_over_sqrt_h * std::sqrt(cfg.h);
  g.gx = cfg.grid.x_min_spacing_over_sqrt_h > 0.0
             ? make_center_graded_grid(-cfg.x_extent, cfg.x_extent, cfg.grid.nx, min_dx)
             : make_uniform_grid(-cfg.x_extent, cfg.x_extent, cfg.grid.nx);
  const double T = cfg.t_extent();
  // Same relative clustering in t as the model grid uses in y.
  const double min_dt = cfg.grid.y_min_spacing * T / cfg.y_extent;
  g.gy = cfg.grid.y_min_spacing > 0.0 ? make_left_graded_grid(0.0, T, cfg.grid.ny, min_dt)
                                      : make_uniform_grid(0.0, T, cfg.grid.ny);
  return g;
}

}  // namespace btlab
