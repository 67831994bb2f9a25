#include "btlab/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "btlab/quadrature.hpp"
#include "btlab/specfn.hpp"

namespace btlab {

namespace {

double eval_poly(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

// C^inf step: 1 for u >= 1, 0 for u <= 0, strictly monotone in between.
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

// chi(x): 1 for |x| <= 0.3, 0 for |x| >= 0.5.
double plateau_chi(double x) { return smooth_step((0.5 - std::abs(x)) / 0.2); }

}  // namespace

Potential Potential::polynomial(std::vector<double> coeffs, std::string name) {
  Potential p;
  p.kind_ = Kind::polynomial;
  p.coeffs_ = std::move(coeffs);
  p.name_ = std::move(name);
  p.second_deriv_at_0_ = p.coeffs_.size() > 2 ? 2.0 * p.coeffs_[2] : 0.0;
  return p;
}

Potential Potential::quadratic() {
  Potential p = polynomial({0.0, 0.0, 1.0}, "quadratic");
  p.liminf_floor_ = 1.0;
  p.floor_radius_ = 1.0;
  return p;
}

Potential Potential::quadratic_cubic(double a3) {
  Potential p = polynomial({0.0, 0.0, 1.0, a3}, "quadratic_cubic");
  p.liminf_floor_ = 0.5;
  p.floor_radius_ = 1.0;
  return p;
}

Potential Potential::plateau() {
  Potential p;
  p.kind_ = Kind::plateau;
  p.name_ = "plateau";
  p.second_deriv_at_0_ = 2.0;  // V = x^2 near 0
  p.liminf_floor_ = 1.0;
  p.floor_radius_ = 0.5;
  return p;
}

Potential Potential::from_name(const std::string& name, const std::vector<double>& params) {
  if (name == "quadratic") return quadratic();
  if (name == "quadratic_cubic") return quadratic_cubic(params.empty() ? 0.2 : params[0]);
  if (name == "plateau") return plateau();
  if (name == "polynomial") {
    if (params.empty()) throw std::invalid_argument("polynomial potential needs coefficients");
    return polynomial(params, "polynomial");
  }
  throw std::invalid_argument("unknown potential: " + name);
}

double Potential::operator()(double x) const {
  if (kind_ == Kind::polynomial) return eval_poly(coeffs_, x);
  const double chi = plateau_chi(x);
  return x * x * chi + (1.0 - chi);
}

double Potential::kappa() const {
  if (second_deriv_at_0_ <= 0.0) {
    throw std::invalid_argument("kappa: potential must have V''(0) > 0");
  }
  return std::sqrt(second_deriv_at_0_ / 2.0);
}

AlphaProfile AlphaProfile::polynomial(std::vector<double> coeffs, std::string name,
                                      double alpha0) {
  AlphaProfile a;
  a.kind_ = Kind::polynomial;
  a.coeffs_ = std::move(coeffs);
  a.name_ = std::move(name);
  a.alpha0_ = alpha0;
  return a;
}

AlphaProfile AlphaProfile::constant(double value) {
  return polynomial({value}, "constant", value);
}

AlphaProfile AlphaProfile::quadratic_dip(double c) {
  // On the default window [-4, 4]: min = 1 - 16 c (declared bound).
  return polynomial({1.0, 0.0, -c}, "quadratic_dip", 1.0 - 16.0 * c);
}

AlphaProfile AlphaProfile::dip_with_floor(double c) {
  AlphaProfile a;
  a.kind_ = Kind::clamped_dip;
  a.dip_ = c;
  a.name_ = "dip_with_floor";
  // The minimum sits in the blend band; declare a slightly generous bound so
  // finer samplings stay above it.
  double lo = 1.0;
  for (int i = 0; i <= 40000; ++i) {
    const double x = 4.0 * i / 40000.0;
    lo = std::min(lo, a(x));
  }
  a.alpha0_ = lo - 1e-6;
  return a;
}

AlphaProfile AlphaProfile::from_name(const std::string& name,
                                     const std::vector<double>& params) {
  if (name == "constant") return constant(params.empty() ? 1.0 : params[0]);
  if (name == "quadratic_dip") return quadratic_dip(params.empty() ? 0.1 : params[0]);
  if (name == "dip_with_floor") return dip_with_floor(params.empty() ? 0.1 : params[0]);
  if (name == "polynomial") {
    if (params.empty()) throw std::invalid_argument("polynomial alpha needs coefficients");
    return polynomial(params, "polynomial", 1e-6);
  }
  throw std::invalid_argument("unknown alpha profile: " + name);
}

double AlphaProfile::operator()(double x) const {
  if (kind_ == Kind::polynomial) return eval_poly(coeffs_, x);
  // Clamped dip: exactly 1 - c x^2 inside |x| <= 1, C^inf blend on [1, 2],
  // constant floor 1 - c beyond.
  const double chi = smooth_step(2.0 - std::abs(x));
  return chi * (1.0 - dip_ * x * x) + (1.0 - chi) * (1.0 - dip_);
}

void ModelConfig::validate() const {
  if (!(h >= std::pow(2.0, -12.0) && h <= 1.0)) {
    throw std::invalid_argument("ModelConfig: h must lie in [2^-12, 1]");
  }
  if (!(x_extent >= 4.0)) throw std::invalid_argument("ModelConfig: X >= 4 required");
  const double z1 = specfn::airy_zero(1);
  if (!(y_extent >= 2.0 * std::abs(z1))) {
    throw std::invalid_argument("ModelConfig: Y >= 2|z1| required");
  }
  if (grid.nx < 3 || grid.ny < 3) throw std::invalid_argument("ModelConfig: grid too small");
}

Cplx lambda1(const AlphaProfile& alpha, double x) {
  const double a = alpha(x);
  if (!(a > 0.0)) throw std::invalid_argument("lambda1: alpha(x) must be positive");
  const double z1 = specfn::airy_zero(1);
  return std::pow(a, 2.0 / 3.0) * std::abs(z1) * std::polar(1.0, kPi / 3.0);
}

double agmon_phi(const Potential& potential, double mu, double x) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("agmon_phi: mu in [0, 1]");
  if (x == 0.0 || mu == 1.0) return 0.0;
  quad::Options opt;
  opt.abs_tol = 1e-10;
  const double integral = quad::integrate_or_throw(
      [&potential](double s) { return std::sqrt(std::max(0.0, potential(s))); }, 0.0, x, opt);
  return (1.0 - mu) / std::sqrt(2.0) * std::abs(integral);
}

Cplx quasimode_eigenvalue(const ModelConfig& cfg) {
  const double kappa = cfg.potential.kappa();
  const double a0 = cfg.alpha(0.0);
  if (!(a0 > 0.0)) throw std::invalid_argument("quasimode_eigenvalue: alpha(0) > 0 required");
  return lambda1(cfg.alpha, 0.0) * std::pow(cfg.h, 2.0 / 3.0) +
         std::polar(1.0, kPi / 4.0) * kappa * cfg.h;
}

std::vector<Cplx> oscillator_spectrum(double kappa, double h, int n_max) {
  if (!(kappa > 0.0 && h > 0.0 && n_max >= 1)) {
    throw std::invalid_argument("oscillator_spectrum: kappa, h > 0 and n_max >= 1");
  }
  std::vector<Cplx> s;
  s.reserve(static_cast<std::size_t>(n_max));
  const Cplx phase = std::polar(1.0, kPi / 4.0);
  for (int n = 1; n <= n_max; ++n) s.push_back(phase * ((2.0 * n - 1.0) * kappa * h));
  return s;
}

bool AssumptionReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string AssumptionReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.pass) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
  }
  return {};
}

AssumptionReport validate_assumptions(const Potential& potential, const AlphaProfile& alpha,
                                      double window_lo, double window_hi) {
  if (!(window_lo < 0.0 && window_hi > 0.0)) {
    throw std::invalid_argument("validate_assumptions: window must contain 0");
  }
  constexpr int kSamples = 10'000;
  AssumptionReport rep;
  auto add = [&rep](std::string name, bool pass, std::optional<double> witness,
                    std::string detail) {
    rep.checks.push_back({std::move(name), pass, witness, std::move(detail)});
  };

  // V(0) = 0.
  {
    const double v0 = potential(0.0);
    std::ostringstream os;
    os << "V(0) = " << v0;
    add("V(0) == 0", std::abs(v0) <= 1e-12, std::abs(v0) <= 1e-12 ? std::nullopt
                                                                  : std::optional<double>(0.0),
        os.str());
  }
  // V > 0 away from 0 on the window.
  {
    bool pass = true;
    std::optional<double> witness;
    for (int i = 0; i <= kSamples; ++i) {
      const double x = window_lo + (window_hi - window_lo) * i / kSamples;
      if (std::abs(x) < 1e-9) continue;
      if (!(potential(x) > 0.0)) {
        pass = false;
        witness = x;
        break;
      }
    }
    add("V(x) > 0 for x != 0", pass, witness, "sampled on the window");
  }
  // V''(0) > 0 (central difference) and consistency with the declared value.
  {
    const double d = 1e-4;
    const double vpp = (potential(d) - 2.0 * potential(0.0) + potential(-d)) / (d * d);
    const bool pos = vpp > 0.0;
    const bool consistent =
        std::abs(vpp - potential.second_deriv_at_0()) <= 1e-4 * std::max(1.0, std::abs(vpp));
    std::ostringstream os;
    os << "central difference V''(0) = " << vpp;
    add("V''(0) > 0", pos && consistent,
        pos && consistent ? std::nullopt : std::optional<double>(0.0), os.str());
  }
  // Bounded below at infinity (window proxy): V >= floor for |x| >= radius.
  {
    bool pass = true;
    std::optional<double> witness;
    for (int i = 0; i <= kSamples; ++i) {
      const double x = window_lo + (window_hi - window_lo) * i / kSamples;
      if (std::abs(x) < potential.floor_radius()) continue;
      if (potential(x) < potential.liminf_floor()) {
        pass = false;
        witness = x;
        break;
      }
    }
    std::ostringstream os;
    os << "V >= " << potential.liminf_floor() << " for |x| >= " << potential.floor_radius();
    add("liminf V > 0 (window proxy)", pass, witness, os.str());
  }
  // alpha >= alpha0 > 0.
  {
    bool pass = alpha.alpha0() > 0.0;
    std::optional<double> witness;
    for (int i = 0; i <= kSamples; ++i) {
      const double x = window_lo + (window_hi - window_lo) * i / kSamples;
      if (alpha(x) < std::max(alpha.alpha0(), 0.0) || !(alpha(x) > 0.0)) {
        pass = false;
        witness = x;
        break;
      }
    }
    std::ostringstream os;
    os << "alpha0 = " << alpha.alpha0();
    if (witness) os << ", alpha(" << *witness << ") = " << alpha(*witness);
    add("alpha >= alpha0 > 0", pass, witness, os.str());
  }
  // alpha'(0) = 0 by central difference.
  {
    const double d = 1e-5;
    const double ap = (alpha(d) - alpha(-d)) / (2.0 * d);
    add("alpha'(0) == 0", std::abs(ap) <= 1e-8,
        std::abs(ap) <= 1e-8 ? std::nullopt : std::optional<double>(0.0), "central difference");
  }
  // Condition (iii): (inf alpha)^{2/3} |z2| - (sup alpha)^{2/3} |z1| > 0.
  {
    double inf_a = std::numeric_limits<double>::infinity();
    double sup_a = -inf_a;
    for (int i = 0; i <= kSamples; ++i) {
      const double x = window_lo + (window_hi - window_lo) * i / kSamples;
      const double a = alpha(x);
      inf_a = std::min(inf_a, a);
      sup_a = std::max(sup_a, a);
    }
    bool pass = false;
    std::ostringstream os;
    if (inf_a > 0.0) {
      const double z1 = std::abs(specfn::airy_zero(1));
      const double z2 = std::abs(specfn::airy_zero(2));
      const double margin = std::pow(inf_a, 2.0 / 3.0) * z2 - std::pow(sup_a, 2.0 / 3.0) * z1;
      pass = margin > 0.0;
      os << "margin = " << margin << " (inf = " << inf_a << ", sup = " << sup_a << ")";
    } else {
      os << "alpha not positive on the window";
    }
    add("condition (iii)", pass, std::nullopt, os.str());
  }
  return rep;
}

}  // namespace btlab
