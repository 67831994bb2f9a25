// Acceptance suite: runs every quantitative criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "btlab/dense_eig.hpp"
#include "btlab/experiments.hpp"
#include "btlab/specfn.hpp"

using btlab::Cplx;
using btlab::kPi;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& label, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const std::vector<int> kSweepN{4, 5, 6, 7, 8};

void criterion_1_airy_zeros() {
  const auto t0 = std::chrono::steady_clock::now();
  const double expected[3] = {-2.33811, -4.08795, -5.52056};
  bool pass = true;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double d = std::abs(btlab::specfn::airy_zero(n) - expected[n - 1]);
    worst = std::max(worst, d);
    pass = pass && d <= 1e-5;
  }
  const double dt = seconds_since(t0);
  pass = pass && dt < 1.0;
  report(1, pass, "Airy zeros z1..z3 at 1e-5",
         "max |dz| = " + fmt(worst) + ", " + fmt(dt) + " s");
}

void criterion_2_airy_spectrum() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fine = btlab::airy_spectrum_1d(1.0, 40.0, 4000, 3);
  const double dt = seconds_since(t0);
  const auto half = btlab::airy_spectrum_1d(1.0, 40.0, 2000, 3);
  bool pass = true;
  double worst_err = 0.0;
  double worst_ratio_lo = 1e300, worst_ratio_hi = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst_err = std::max(worst_err, fine.abs_err[static_cast<std::size_t>(i)]);
    pass = pass && fine.abs_err[static_cast<std::size_t>(i)] <= 1e-4;
    const double ratio =
        half.abs_err[static_cast<std::size_t>(i)] / fine.abs_err[static_cast<std::size_t>(i)];
    worst_ratio_lo = std::min(worst_ratio_lo, ratio);
    worst_ratio_hi = std::max(worst_ratio_hi, ratio);
    pass = pass && ratio >= 3.5 && ratio <= 4.5;
  }
  pass = pass && dt < 5.0;
  report(2, pass, "1-D complex Airy spectrum, 2nd-order convergence",
         "max err " + fmt(worst_err) + ", ratio [" + fmt(worst_ratio_lo) + ", " +
             fmt(worst_ratio_hi) + "], " + fmt(dt) + " s");
}

void criterion_3_oscillator() {
  const auto res = btlab::oscillator_spectrum_1d(1.0, 0.01, 4.0, 4000, 3);
  bool pass = true;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst = std::max(worst, res.rel_err[static_cast<std::size_t>(i)]);
    pass = pass && res.rel_err[static_cast<std::size_t>(i)] <= 1e-3;
  }
  report(3, pass, "complex harmonic oscillator spectrum at 1e-3", "max rel err " + fmt(worst));
}

void criterion_8_deficit() {
  // The deficit decays below two transverse artifacts of the pinned 400x200
  // grid: the Dirichlet-wall layer at Y = 7 (the fiber still carries ~1% of
  // its peak there) and the O(dy^2) fiber mismatch. Criterion 8 pins no
  // resolution, so it runs with Y = 12 and an n-scaled transverse grid that
  // keeps both floors under the shrinking signal.
  btlab::SolverControls sc;
  sc.k = 1;
  // Sequential: the larger factorizations would contend for memory in
  // parallel.
  const btlab::LSweep sweep = btlab::run_L_sweep(kSweepN, sc, false, [](int n) {
    btlab::ModelConfig cfg = btlab::figure2_config(n);
    cfg.y_extent = 12.0;
    cfg.grid.ny = 400 + 200 * (n - 4);
    cfg.grid.y_min_spacing = 0.008;
    return cfg;
  });
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < sweep.rows.size(); ++i) {
    decreasing = decreasing && sweep.rows[i + 1].deficit < sweep.rows[i].deficit;
  }
  const bool slope_ok = sweep.fit_deficit.slope >= 0.25;
  report(8, decreasing && slope_ok, "projection deficit strictly decreasing, slope >= 0.25",
         "slope " + fmt(sweep.fit_deficit.slope) + (decreasing ? ", monotone" : ", NOT monotone"));
}

void criteria_4_5_L_sweep(const btlab::LSweep& sweep, double sweep_seconds) {
  // 4: disk membership and eigenvalue-asymptotics fit.
  bool disk_ok = true;
  for (const btlab::SweepRow& r : sweep.rows) {
    disk_ok = disk_ok && r.dist_disk <= 5.0 * r.h;
  }
  const bool fit_ok = sweep.fit_dist_mu1.slope >= 1.2 && sweep.fit_dist_mu1.r_squared >= 0.95;
  const bool time_ok = sweep_seconds <= 600.0;
  report(4, disk_ok && fit_ok && time_ok, "eigenvalue asymptotics: disk membership and slope",
         "slope " + fmt(sweep.fit_dist_mu1.slope) + ", R^2 " + fmt(sweep.fit_dist_mu1.r_squared) +
             ", max |l - l1 h^{2/3}|/h " +
             fmt([&sweep] {
               double m = 0.0;
               for (const auto& r : sweep.rows) m = std::max(m, r.dist_disk / r.h);
               return m;
             }()) +
             ", " + fmt(sweep_seconds) + " s");

  // 5: x-localization scaling, with the width staying an order-one multiple
  // of sqrt(h) pointwise.
  const bool slope_x_ok = sweep.fit_width_x.slope >= 0.44 && sweep.fit_width_x.slope <= 0.56;
  bool band_ok = true;
  for (const btlab::SweepRow& r : sweep.rows) {
    const double m = r.widths.width_x / std::sqrt(r.h);
    band_ok = band_ok && m >= 1.0 && m <= 6.0;
  }
  report(5, slope_x_ok && band_ok, "x-localization width ~ h^{1/2}",
         "slope " + fmt(sweep.fit_width_x.slope) + ", R^2 " + fmt(sweep.fit_width_x.r_squared) +
             ", width/sqrt(h) in [1, 6]: " + (band_ok ? "yes" : "no"));
}

void criterion_6_T_sweep() {
  btlab::SolverControls sc;
  sc.k = 1;
  const btlab::TSweep sweep = btlab::run_T_sweep({4, 5, 6, 7}, sc);
  const bool ok = sweep.fit_width_t.slope >= 0.60 && sweep.fit_width_t.slope <= 0.74;
  report(6, ok, "t-localization width ~ h^{2/3} (T_h surrogate)",
         "slope " + fmt(sweep.fit_width_t.slope) + ", R^2 " + fmt(sweep.fit_width_t.r_squared));
}

void criterion_7_agmon(const btlab::SharpnessReport& sharp) {
  btlab::SolverControls sc;
  sc.k = 1;
  const btlab::AgmonSweep bounded = btlab::run_agmon_check(0.5, kSweepN, sc);
  const bool bounded_ok = bounded.max_over_min < 3.0;
  const bool mu0_ok = sharp.mu0_strictly_increasing;
  bool re_pos = true;
  for (const btlab::SharpnessRow& r : sharp.rows) re_pos = re_pos && r.re_positive;
  report(7, bounded_ok && mu0_ok && re_pos, "Agmon boundedness (mu=0.5) and sharpness (mu=0)",
         "variation " + fmt(bounded.max_over_min) + "x; mu0 ratios " +
             (mu0_ok ? "strictly increasing" : "NOT increasing") + "; Re(mu) > 0: " +
             (re_pos ? "yes" : "no"));
}

void criterion_9_quasimode() {
  const btlab::QuasimodeSweep sweep = btlab::run_quasimode_check(kSweepN);
  const bool slope_ok = sweep.fit.slope >= 1.35 && sweep.fit.slope <= 1.65;

  const btlab::ModelConfig cfg = btlab::separable_config(6);
  double residual = 1.0;
  for (int npts = 8000; npts <= 128000; npts *= 2) {
    const btlab::Grid1D gx = btlab::make_uniform_grid(-8.0, 8.0, npts);
    const btlab::Grid1D gy = btlab::make_uniform_grid(0.0, 20.0, npts);
    residual = btlab::quasimode_residual_on_grids(cfg, gx, gy);
    if (residual < 1e-6) break;
  }
  const bool sep_ok = residual < 1e-6;
  report(9, slope_ok && sep_ok, "quasimode residual ~ h^{3/2}; separable limit < 1e-6",
         "slope " + fmt(sweep.fit.slope) + ", R^2 " + fmt(sweep.fit.r_squared) +
             ", separable residual " + fmt(residual));
}

void criterion_10_virial() {
  const btlab::Grid1D gy = btlab::make_uniform_grid(0.0, 40.0, 4000);
  const auto [a, b] = btlab::virial_checks(gy);
  const double z1 = std::abs(btlab::specfn::airy_zero(1));
  const bool ok = std::abs(a - z1 / 3.0) <= 1e-6 && std::abs(b - 2.0 * z1 / 3.0) <= 1e-6 &&
                  std::abs(a + b - z1) <= 1e-6;
  report(10, ok, "virial identities a = |z1|/3, b = 2|z1|/3",
         "a " + fmt(a) + ", b " + fmt(b) + ", a+b-|z1| " + fmt(a + b - z1));
}

void criterion_11_numerical_range() {
  const bool contains = btlab::numerical_range_triangle_contains(3.0);
  const double z1 = std::abs(btlab::specfn::airy_zero(1));
  const Cplx lam = z1 * std::polar(1.0, kPi / 3.0);
  const Cplx rot = std::polar(1.0, -kPi / 4.0);
  bool pos = false, neg = false;
  for (double g = 1.0 / 3.0; g <= 3.0 + 1e-12; g += 1.0 / 48.0) {
    const double gg[1] = {g};
    const Cplx z = btlab::numerical_range_curve(std::span<const double>(gg, 1))[0];
    const double s = (rot * (z - lam)).real();
    pos = pos || s > 0.0;
    neg = neg || s < 0.0;
  }
  report(11, contains && pos && neg, "numerical-range pollution around lambda_1",
         std::string("containment ") + (contains ? "true" : "false") + ", signs " +
             (pos && neg ? "both" : "one"));
}

void criterion_12_solver_oracle() {
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 200;
    btlab::SplitMix64 rng(1000 + static_cast<std::uint64_t>(trial));
    std::vector<Cplx> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      for (int c = r; c < n; ++c) {
        const Cplx v = rng.next_cplx();
        a[static_cast<std::size_t>(r) * n + c] = v;
        a[static_cast<std::size_t>(c) * n + r] = v;
      }
    }
    const btlab::SparseCS m = btlab::SparseCS::from_dense(a, n);
    const Cplx shift{0.25, -0.15};
    btlab::ArnoldiOptions opt;
    opt.k = 5;
    opt.tol = 1e-10;
    opt.seed = 42 + static_cast<std::uint64_t>(trial);
    const auto pairs = btlab::shift_invert_arnoldi(m, shift, opt);
    std::vector<Cplx> oracle = btlab::dense_eig(a, n);
    std::sort(oracle.begin(), oracle.end(), [shift](Cplx x, Cplx y) {
      return std::abs(x - shift) < std::abs(y - shift);
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double d = std::abs(pairs[i].value - oracle[i]);
      worst = std::max(worst, d);
      pass = pass && d <= 1e-8;
    }
    pass = pass && pairs.size() == 5;
  }
  report(12, pass, "shift-invert matches the dense oracle on 20 random matrices",
         "worst |dl| = " + fmt(worst));
}

}  // namespace

int main() {
  std::printf("btlab acceptance suite\n");
  criterion_1_airy_zeros();
  criterion_2_airy_spectrum();
  criterion_3_oscillator();
  criterion_10_virial();
  criterion_11_numerical_range();
  criterion_12_solver_oracle();
  criterion_9_quasimode();

  btlab::SolverControls sc;
  sc.k = 3;
  const auto t0 = std::chrono::steady_clock::now();
  const btlab::LSweep sweep = btlab::run_L_sweep(kSweepN, sc);
  const double sweep_seconds = seconds_since(t0);
  criteria_4_5_L_sweep(sweep, sweep_seconds);
  criterion_8_deficit();
  criterion_6_T_sweep();

  btlab::SolverControls sharp_sc;
  sharp_sc.k = 1;
  const btlab::SharpnessReport sharp = btlab::run_sharpness(kSweepN, sharp_sc);
  criterion_7_agmon(sharp);

  if (failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion/criteria FAILED\n", failures);
  }
  return failures;
}
