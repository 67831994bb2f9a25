#include <doctest.h>

#include <cmath>

#include "btlab/model.hpp"
#include "btlab/specfn.hpp"

using btlab::AlphaProfile;
using btlab::Cplx;
using btlab::kPi;
using btlab::Potential;

TEST_CASE("lambda1 at alpha == 1 is |z1| e^{i pi/3}") {
  const Cplx v = btlab::lambda1(AlphaProfile::constant(), 0.0);
  // 5-decimal reference arithmetic: 2.33811 (cos pi/3, sin pi/3)
  CHECK(std::abs(v - Cplx{1.16906, 2.02485}) < 2e-5);
}

TEST_CASE("lambda1 homogeneity: alpha scaled by 8 scales the value by 4") {
  const Cplx base = btlab::lambda1(AlphaProfile::constant(1.0), 0.7);
  const Cplx scaled = btlab::lambda1(AlphaProfile::constant(8.0), 0.7);
  CHECK(std::abs(scaled - 4.0 * base) < 1e-13);
}

TEST_CASE("lambda1 of the Figure-2 profile at x = 0 equals the constant case") {
  const Cplx a = btlab::lambda1(AlphaProfile::dip_with_floor(0.1), 0.0);
  const Cplx b = btlab::lambda1(AlphaProfile::constant(), 0.0);
  CHECK(std::abs(a - b) < 1e-15);
}

TEST_CASE("agmon_phi closed forms for V = x^2") {
  const Potential v = Potential::quadratic();
  // int_0^x s ds = x^2/2.
  CHECK(btlab::agmon_phi(v, 0.5, 1.0) == doctest::Approx(0.5 / (2.0 * std::sqrt(2.0))).epsilon(1e-9));
  CHECK(btlab::agmon_phi(v, 1.0, 3.7) == 0.0);
  CHECK(btlab::agmon_phi(v, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("agmon_phi is even, nondecreasing in |x|, monotone in mu") {
  const Potential v = Potential::plateau();
  double prev = 0.0;
  for (double x = 0.25; x <= 4.0; x += 0.25) {
    const double p = btlab::agmon_phi(v, 0.3, x);
    CHECK(p >= prev);
    CHECK(btlab::agmon_phi(v, 0.3, -x) == doctest::Approx(p).epsilon(1e-12));
    CHECK(btlab::agmon_phi(v, 0.1, x) >= p);  // phi_mu grows as mu decreases
    prev = p;
  }
}

TEST_CASE("quasimode eigenvalue: V = x^2, alpha == 1, h = 2^-10") {
  btlab::ModelConfig cfg;
  cfg.h = std::pow(2.0, -10.0);
  cfg.potential = Potential::quadratic();
  cfg.alpha = AlphaProfile::constant();
  const Cplx mu = btlab::quasimode_eigenvalue(cfg);
  CHECK(std::abs(mu.real() - 0.012198) < 1e-6);
  CHECK(std::abs(mu.imag() - 0.020621) < 2e-6);
}

TEST_CASE("quasimode eigenvalue: leading term |mu|/h^{2/3} -> |z1|") {
  btlab::ModelConfig cfg;
  cfg.potential = Potential::quadratic();
  cfg.alpha = AlphaProfile::constant();
  const double z1 = std::abs(btlab::specfn::airy_zero(1));
  cfg.h = std::pow(2.0, -12.0);
  const double r1 = std::abs(btlab::quasimode_eigenvalue(cfg)) / std::pow(cfg.h, 2.0 / 3.0);
  cfg.h = std::pow(2.0, -6.0);
  const double r2 = std::abs(btlab::quasimode_eigenvalue(cfg)) / std::pow(cfg.h, 2.0 / 3.0);
  CHECK(std::abs(r1 - z1) < std::abs(r2 - z1));
  CHECK(std::abs(r1 - z1) < 0.07);
}

TEST_CASE("quasimode eigenvalue: V'' doubled gives sqrt(2) h-linear term") {
  btlab::ModelConfig cfg;
  cfg.h = std::pow(2.0, -10.0);
  cfg.potential = Potential::polynomial({0.0, 0.0, 2.0}, "two_x2");  // V = 2 x^2
  cfg.alpha = AlphaProfile::constant();
  const Cplx linear = btlab::quasimode_eigenvalue(cfg) -
                      btlab::lambda1(cfg.alpha, 0.0) * std::pow(cfg.h, 2.0 / 3.0);
  CHECK(std::abs(linear) == doctest::Approx(std::sqrt(2.0) * cfg.h).epsilon(1e-12));
}

TEST_CASE("oscillator spectrum arithmetic") {
  const auto s = btlab::oscillator_spectrum(1.0, 0.01, 3);
  REQUIRE(s.size() == 3);
  CHECK(std::abs(s[0].real() - 0.0070711) < 1e-7);
  CHECK(std::abs(s[0].imag() - 0.0070711) < 1e-7);
  const Cplx gap = std::polar(1.0, kPi / 4.0) * 0.02;
  CHECK(std::abs((s[1] - s[0]) - gap) < 1e-15);
  CHECK(std::abs((s[2] - s[1]) - gap) < 1e-15);
  CHECK(std::abs(s[2] - 5.0 * s[0]) < 1e-15);
}

TEST_CASE("kappa consistency: quadratic Taylor model matches V near 0") {
  for (const Potential& v :
       {Potential::quadratic(), Potential::quadratic_cubic(0.2), Potential::plateau()}) {
    const double x = 1e-3;
    CHECK(std::abs(v(x) - v.second_deriv_at_0() * x * x / 2.0) <= 1e-6);
  }
}

TEST_CASE("validate_assumptions: Figure-2 configuration passes") {
  // the catalog realization of alpha = 1 - 0.1 x^2 levels off to a positive
  // floor outside the localization region, as the global assumptions require
  const auto rep = btlab::validate_assumptions(Potential::quadratic(),
                                               AlphaProfile::dip_with_floor(0.1), -4.0, 4.0);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
  CHECK(rep.all_pass());
}

TEST_CASE("validate_assumptions: alpha = 1 - 0.4 x^2 fails positivity on [-4, 4]") {
  const auto rep = btlab::validate_assumptions(Potential::quadratic(),
                                               AlphaProfile::quadratic_dip(0.4), -4.0, 4.0);
  CHECK(!rep.all_pass());
  bool alpha_failed = false;
  for (const auto& c : rep.checks) {
    if (c.name == "alpha >= alpha0 > 0" && !c.pass) alpha_failed = true;
  }
  CHECK(alpha_failed);
}

TEST_CASE("validate_assumptions: V = x^2 - 0.01 fails nonnegativity") {
  const auto rep = btlab::validate_assumptions(Potential::polynomial({-0.01, 0.0, 1.0}, "bad"),
                                               AlphaProfile::constant(), -4.0, 4.0);
  CHECK(!rep.all_pass());
  bool v_failed = false;
  for (const auto& c : rep.checks) {
    if ((c.name == "V(0) == 0" || c.name == "V(x) > 0 for x != 0") && !c.pass) v_failed = true;
  }
  CHECK(v_failed);
}

TEST_CASE("condition (iii) margin for the built-in profiles") {
  const double z1 = std::abs(btlab::specfn::airy_zero(1));
  const double z2 = std::abs(btlab::specfn::airy_zero(2));
  // Figure-2 profile on [-4, 4]: inf = 1 - 1.6 = ... alpha stays positive and
  // the margin is ample because |z2|/|z1| ~ 1.7484.
  CHECK(z2 / z1 == doctest::Approx(1.7484).epsilon(1e-4));
  const AlphaProfile a = AlphaProfile::dip_with_floor(0.1);
  double inf_a = 1e300, sup_a = -1e300;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -4.0 + 8.0 * i / 1000.0;
    inf_a = std::min(inf_a, a(x));
    sup_a = std::max(sup_a, a(x));
  }
  CHECK(std::pow(inf_a, 2.0 / 3.0) * z2 > std::pow(sup_a, 2.0 / 3.0) * z1);
}

TEST_CASE("plateau potential: V == 1 outside (-1/2, 1/2), quadratic near 0") {
  const Potential v = Potential::plateau();
  CHECK(v(0.0) == 0.0);
  CHECK(v(0.25) == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(v(0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v(2.0) == 1.0);
  CHECK(v(-3.0) == 1.0);
}
