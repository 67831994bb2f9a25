#include "btlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "btlab/specfn.hpp"

namespace btlab {

namespace {

ModelConfig base_config(int n) {
  if (n < 0 || n > 12) throw std::invalid_argument("config: n must be in [0, 12]");
  ModelConfig cfg;
  cfg.h = std::pow(2.0, -n);
  cfg.x_extent = 4.0;
  cfg.y_extent = 7.0;
  cfg.grid.nx = 400;
  cfg.grid.ny = 200;
  cfg.grid.x_min_spacing_over_sqrt_h = 1.0 / 32.0;
  cfg.grid.y_min_spacing = 0.015;
  return cfg;
}

template <typename Row, typename Fn>
std::vector<Row> map_over_n(const std::vector<int>& n_list, bool parallel, Fn&& fn) {
  std::vector<Row> rows(n_list.size());
  if (parallel && n_list.size() > 1) {
    std::vector<std::future<Row>> futs;
    futs.reserve(n_list.size());
    for (const int n : n_list) {
      futs.push_back(std::async(std::launch::async, fn, n));
    }
    for (std::size_t i = 0; i < futs.size(); ++i) rows[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < n_list.size(); ++i) rows[i] = fn(n_list[i]);
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.n < b.n; });
  return rows;
}

EigenPair pick_smallest_magnitude(std::vector<EigenPair> pairs) {
  if (pairs.empty()) throw std::runtime_error("solver returned no eigenpairs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (std::abs(pairs[i].value) < std::abs(pairs[best].value)) best = i;
  }
  return std::move(pairs[best]);
}

}  // namespace

ModelConfig figure2_config(int n) {
  ModelConfig cfg = base_config(n);
  cfg.potential = Potential::quadratic();
  cfg.alpha = AlphaProfile::dip_with_floor(0.1);
  return cfg;
}

ModelConfig separable_config(int n) {
  ModelConfig cfg = base_config(n);
  cfg.potential = Potential::quadratic();
  cfg.alpha = AlphaProfile::constant();
  return cfg;
}

ModelConfig cubic_config(int n) {
  ModelConfig cfg = base_config(n);
  cfg.potential = Potential::quadratic_cubic(0.2);
  cfg.alpha = AlphaProfile::constant();
  return cfg;
}

ModelConfig sharpness_config(int n) {
  ModelConfig cfg = base_config(n);
  cfg.potential = Potential::plateau();
  cfg.alpha = AlphaProfile::constant();
  return cfg;
}

SolveResult solve_L(const ModelConfig& cfg, int n, const SolverControls& sc) {
  cfg.validate();
  SolveResult out;
  out.n = n;
  out.h = cfg.h;
  out.grid = make_model_grids(cfg);
  out.mu1 = quasimode_eigenvalue(cfg);
  const SparseCS m = assemble_L2d(cfg, out.grid);
  ArnoldiOptions opt;
  opt.k = sc.k;
  opt.tol = sc.tol;
  opt.seed = sc.seed;
  if (sc.quasimode_start) opt.start = quasimode_vector(cfg, out.grid);
  out.pair = pick_smallest_magnitude(shift_invert_arnoldi(m, out.mu1, opt));
  return out;
}

SolveResult solve_T(const ModelConfig& cfg, int n, const SolverControls& sc) {
  cfg.validate();
  SolveResult out;
  out.n = n;
  out.h = cfg.h;
  out.grid = make_T_grids(cfg);
  out.mu1 = quasimode_eigenvalue(cfg);
  const SparseCS m = assemble_T2d(cfg, out.grid);
  ArnoldiOptions opt;
  opt.k = sc.k;
  opt.tol = sc.tol;
  opt.seed = sc.seed;
  // The T-grid carries the t coordinate; the quasimode helper builds the
  // y-profile, so rescale through a temporary y-view of the same nodes.
  if (sc.quasimode_start) {
    Grid2D yview = out.grid;
    const double h23 = std::pow(cfg.h, 2.0 / 3.0);
    yview.gy.a /= h23;
    yview.gy.b /= h23;
    for (double& t : yview.gy.nodes) t /= h23;
    opt.start = quasimode_vector(cfg, yview);
  }
  out.pair = pick_smallest_magnitude(shift_invert_arnoldi(m, out.mu1, opt));
  return out;
}

LSweep run_L_sweep(const std::vector<int>& n_list, const SolverControls& sc, bool parallel,
                   const ConfigFactory& config_factory) {
  LSweep sweep;
  const ConfigFactory factory = config_factory ? config_factory : ConfigFactory(figure2_config);
  sweep.rows = map_over_n<SweepRow>(n_list, parallel, [&sc, &factory](int n) {
    const ModelConfig cfg = factory(n);
    const SolveResult sol = solve_L(cfg, n, sc);
    SweepRow row;
    row.n = n;
    row.h = cfg.h;
    row.lambda = sol.pair.value;
    row.residual = sol.pair.residual;
    row.mu1 = sol.mu1;
    row.dist_mu1 = std::abs(sol.pair.value - sol.mu1);
    row.dist_disk =
        std::abs(sol.pair.value - lambda1(cfg.alpha, 0.0) * std::pow(cfg.h, 2.0 / 3.0));
    row.widths = localization_widths(sol.pair.vector, sol.grid, cfg.h);
    row.deficit = projection_deficit(sol.pair.vector, cfg.alpha, sol.grid);
    return row;
  });
  std::vector<std::pair<double, double>> pts;
  for (const SweepRow& r : sweep.rows) pts.emplace_back(r.h, r.dist_mu1);
  sweep.fit_dist_mu1 = scaling_fit(pts);
  pts.clear();
  for (const SweepRow& r : sweep.rows) pts.emplace_back(r.h, r.widths.width_x);
  sweep.fit_width_x = scaling_fit(pts);
  pts.clear();
  for (const SweepRow& r : sweep.rows) pts.emplace_back(r.h, r.deficit);
  sweep.fit_deficit = scaling_fit(pts);
  return sweep;
}

LSweep eigenvalue_asymptotics(const std::vector<int>& n_list, const SolverControls& sc,
                              bool parallel) {
  return run_L_sweep(n_list, sc, parallel);
}

TSweep run_T_sweep(const std::vector<int>& n_list, const SolverControls& sc, bool parallel) {
  TSweep sweep;
  sweep.rows = map_over_n<TSweepRow>(n_list, parallel, [&sc](int n) {
    const ModelConfig cfg = figure2_config(n);
    const SolveResult sol = solve_T(cfg, n, sc);
    TSweepRow row;
    row.n = n;
    row.h = cfg.h;
    row.lambda = sol.pair.value;
    row.residual = sol.pair.residual;
    row.widths = localization_widths(sol.pair.vector, sol.grid, cfg.h);
    return row;
  });
  std::vector<std::pair<double, double>> pts;
  for (const TSweepRow& r : sweep.rows) pts.emplace_back(r.h, r.widths.width_y);
  sweep.fit_width_t = scaling_fit(pts);
  return sweep;
}

AgmonSweep run_agmon_check(double mu, const std::vector<int>& n_list, const SolverControls& sc,
                           bool parallel, double phi_cap_over_h) {
  AgmonSweep sweep;
  sweep.mu = mu;
  sweep.rows = map_over_n<AgmonRow>(n_list, parallel, [&sc, mu, phi_cap_over_h](int n) {
    const ModelConfig cfg = figure2_config(n);
    const Grid2D grid = make_model_grids(cfg);
    const SparseCS m = assemble_L2d(cfg, grid);
    // Capped weight Phi(x_i)/h per 2-D node (y-independent).
    std::vector<double> phi_x(static_cast<std::size_t>(grid.gx.n()));
    for (int ix = 0; ix < grid.gx.n(); ++ix) {
      phi_x[static_cast<std::size_t>(ix)] = std::min(
          agmon_phi(cfg.potential, mu, grid.gx.nodes[static_cast<std::size_t>(ix)]) / cfg.h,
          phi_cap_over_h);
    }
    std::vector<double> phi(grid.unknowns());
    for (int ix = 0; ix < grid.gx.n(); ++ix) {
      for (int iy = 0; iy < grid.gy.n(); ++iy) {
        phi[grid.index(ix, iy)] = phi_x[static_cast<std::size_t>(ix)];
      }
    }
    const SparseCS mc = conjugate_by_weight(m, phi);
    ArnoldiOptions opt;
    opt.k = 1;
    opt.tol = sc.tol;
    opt.seed = sc.seed;
    const EigenPair pair =
        pick_smallest_magnitude(shift_invert_arnoldi(mc, quasimode_eigenvalue(cfg), opt));
    AgmonRow row;
    row.n = n;
    row.h = cfg.h;
    row.lambda = pair.value;
    row.log_ratio = agmon_ratio_conjugated(pair.vector, phi).log_value;
    return row;
  });
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const AgmonRow& r : sweep.rows) {
    lo = std::min(lo, r.log_ratio);
    hi = std::max(hi, r.log_ratio);
  }
  sweep.max_over_min = std::exp(hi - lo);
  return sweep;
}

SharpnessReport run_sharpness(const std::vector<int>& n_list, const SolverControls& sc) {
  SharpnessReport rep;
  rep.rows = map_over_n<SharpnessRow>(n_list, true, [&sc](int n) {
    const ModelConfig cfg = sharpness_config(n);
    const double kappa = cfg.potential.kappa();
    // 1-D factor of the tensor counter-example; the Airy y-factor cancels in
    // every ratio, so the x-solve carries all the content.
    //
    // The window [-Xs, Xs] keeps a full plateau stretch beyond the blend; the
    // spacing must follow h^{3/2}: the weighted tail exponent is the O(h)
    // difference Re[e^{i pi/4} - sqrt(i - mu)], and the stencil's dispersion
    // error shifts it by ~delta^2/(34 h^2), which needs delta^2 << kappa h^3.
    const double x_half = 1.5;
    const double delta = std::min(2e-3, 0.8 * std::sqrt(kappa) * std::pow(cfg.h, 1.5));
    const int nx1d = std::max(4096, static_cast<int>(std::ceil(2.0 * x_half / delta)));
    const Grid1D gx = make_uniform_grid(-x_half, x_half, nx1d);
    const SparseCS m = assemble_schrodinger_1d(cfg.h, cfg.potential, std::nullopt, gx);
    const Cplx shift = std::polar(1.0, kPi / 4.0) * kappa * cfg.h;

    SharpnessRow row;
    row.n = n;
    row.h = cfg.h;
    const double mus[3] = {0.0, 0.25, 0.5};
    double* logs[3] = {&row.log_ratio_mu0, &row.log_ratio_mu025, &row.log_ratio_mu05};
    for (int t = 0; t < 3; ++t) {
      std::vector<double> phi(gx.nodes.size());
      for (std::size_t i = 0; i < gx.nodes.size(); ++i) {
        phi[i] = agmon_phi(cfg.potential, mus[t], gx.nodes[i]) / cfg.h;
      }
      const SparseCS mc = conjugate_by_weight(m, phi);
      ArnoldiOptions opt;
      opt.k = 1;
      opt.tol = sc.tol;
      opt.seed = sc.seed;
      const EigenPair pair = pick_smallest_magnitude(shift_invert_arnoldi(mc, shift, opt));
      *logs[t] = agmon_ratio_conjugated(pair.vector, phi).log_value;
      if (t == 0) {
        row.mu_1d = pair.value;
        row.re_positive = pair.value.real() > 0.0;
      }
    }
    return row;
  });
  rep.mu0_strictly_increasing = rep.rows.size() >= 2;
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    if (!(rep.rows[i + 1].log_ratio_mu0 > rep.rows[i].log_ratio_mu0)) {
      rep.mu0_strictly_increasing = false;
    }
  }
  auto spread = [&rep](double SharpnessRow::* member) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const SharpnessRow& r : rep.rows) {
      lo = std::min(lo, r.*member);
      hi = std::max(hi, r.*member);
    }
    return std::exp(hi - lo);
  };
  rep.mu05_max_over_min = spread(&SharpnessRow::log_ratio_mu05);
  rep.mu025_max_over_min = spread(&SharpnessRow::log_ratio_mu025);
  return rep;
}

QuasimodeSweep run_quasimode_check(const std::vector<int>& n_list, bool parallel) {
  QuasimodeSweep sweep;
  sweep.rows = map_over_n<QuasimodeRow>(n_list, parallel, [](int n) {
    const ModelConfig cfg = cubic_config(n);
    QuasimodeRow row;
    row.n = n;
    row.h = cfg.h;
    row.residual = quasimode_residual(cfg);
    return row;
  });
  std::vector<std::pair<double, double>> pts;
  for (const QuasimodeRow& r : sweep.rows) pts.emplace_back(r.h, r.residual);
  sweep.fit = scaling_fit(pts);
  return sweep;
}

namespace {

Spectrum1DResult compare_spectrum(const SparseCS& m, Cplx shift, std::vector<Cplx> exact,
                                  double tol, std::uint64_t seed = 42) {
  ArnoldiOptions opt;
  opt.k = static_cast<int>(exact.size());
  opt.tol = tol;
  opt.seed = seed;
  std::vector<EigenPair> pairs = shift_invert_arnoldi(m, shift, opt);
  // Match computed to exact by magnitude order.
  std::sort(pairs.begin(), pairs.end(),
            [](const EigenPair& a, const EigenPair& b) { return std::abs(a.value) < std::abs(b.value); });
  std::sort(exact.begin(), exact.end(),
            [](Cplx a, Cplx b) { return std::abs(a) < std::abs(b); });
  Spectrum1DResult out;
  out.exact = exact;
  for (std::size_t i = 0; i < exact.size() && i < pairs.size(); ++i) {
    out.computed.push_back(pairs[i].value);
    out.abs_err.push_back(std::abs(pairs[i].value - exact[i]));
    out.rel_err.push_back(std::abs(pairs[i].value - exact[i]) / std::abs(exact[i]));
  }
  return out;
}

}  // namespace

Spectrum1DResult airy_spectrum_1d(double omega, double Y, int N, int k, double tol) {
  const Grid1D g = make_uniform_grid(0.0, Y, N);
  const SparseCS m = assemble_airy_1d(omega, g);
  const double w23 = std::pow(omega, 2.0 / 3.0);
  std::vector<Cplx> exact;
  for (int n = 1; n <= k; ++n) {
    exact.push_back(w23 * std::abs(specfn::airy_zero(n)) * std::polar(1.0, kPi / 3.0));
  }
  const Cplx shift = exact.front();
  return compare_spectrum(m, shift, std::move(exact), tol);
}

Spectrum1DResult oscillator_spectrum_1d(double kappa_value, double h, double X, int N, int k,
                                        double tol) {
  const Grid1D g = make_uniform_grid(-X, X, N);
  const Potential v = Potential::polynomial({0.0, 0.0, kappa_value * kappa_value}, "oscillator");
  const SparseCS m = assemble_schrodinger_1d(h, v, std::nullopt, g);
  std::vector<Cplx> exact = oscillator_spectrum(kappa_value, h, k);
  const Cplx shift = exact.front();
  return compare_spectrum(m, shift, std::move(exact), tol);
}

Spectrum1DResult dirichlet_laplacian_1d(double h, double L, int N, int k, double tol) {
  const Grid1D g = make_uniform_grid(0.0, L, N);
  const Potential zero = Potential::polynomial({0.0}, "zero");
  const SparseCS m = assemble_schrodinger_1d(h, zero, std::nullopt, g);
  std::vector<Cplx> exact;
  for (int n = 1; n <= k; ++n) exact.push_back(h * h * sq(n * kPi / L));
  const Cplx shift = exact.front();
  return compare_spectrum(m, shift, std::move(exact), tol);
}

}  // namespace btlab
