#include "btlab/specfn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace btlab::specfn {

namespace {

// ---------------------------------------------------------------------------
// Double-double arithmetic (Dekker/Knuth error-free transforms).
//
// The Maclaurin series for Ai on the right half plane cancels like e^{2*zeta},
// zeta = (2/3)|z|^{3/2}; at the series/asymptotics crossover |z| = 9 this is
// ~e^{36}, which wipes out plain doubles but leaves ~16 digits in
// double-double. Only the series summation and its two connection constants
// run in this type.
// ---------------------------------------------------------------------------

struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
  double s = a + b;
  double v = s - a;
  return {s, (a - (s - v)) + (b - v)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  dd t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd mul(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = a - mul(b, q1);
  double q2 = r.hi / b.hi;
  r = r - mul(b, q2);
  double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return q + dd{q3, 0.0};
}

inline dd dd_from(double x) { return {x, 0.0}; }

inline dd dd_sqrt(dd a) {
  double x = std::sqrt(a.hi);
  dd err = a - two_prod(x, x);
  return quick_two_sum(x, err.hi / (2.0 * x));
}

inline dd pow_int(dd a, int n) {
  dd r = dd_from(1.0);
  while (n > 0) {
    if (n & 1) r = r * a;
    a = a * a;
    n >>= 1;
  }
  return r;
}

// Newton for x^n = a, seeded from the double root; two corrections take the
// seed's 1e-16 error below dd resolution.
inline dd nth_root(dd a, int n) {
  dd x = dd_from(std::pow(a.hi, 1.0 / static_cast<double>(n)));
  for (int it = 0; it < 3; ++it) {
    dd xn1 = pow_int(x, n - 1);
    dd f = x * xn1 - a;
    x = x - f / mul(xn1, static_cast<double>(n));
  }
  return x;
}

// atan(1/k) by Taylor series in dd; used for pi = 4*(atan(1/2)+atan(1/3)).
dd atan_recip(int k) {
  dd x = dd_from(1.0) / dd_from(static_cast<double>(k));
  dd x2 = x * x;
  dd term = x;
  dd sum = x;
  for (int j = 1; j < 80; ++j) {
    term = term * x2;
    dd t = term / dd_from(static_cast<double>(2 * j + 1));
    sum = (j % 2 == 1) ? sum - t : sum + t;
    if (std::abs(t.hi) < 1e-36 * std::abs(sum.hi)) break;
  }
  return sum;
}

dd dd_pi() { return mul(atan_recip(2) + atan_recip(3), 4.0); }

// Gamma(1/3) via the AGM identity
//   Gamma(1/3) = 2^{7/9} pi^{2/3} / (3^{1/12} AGM(2, sqrt(2+sqrt(3)))^{1/3}).
dd gamma_one_third(dd pi) {
  dd a = dd_from(2.0);
  dd b = dd_sqrt(dd_from(2.0) + dd_sqrt(dd_from(3.0)));
  for (int it = 0; it < 8; ++it) {
    dd am = mul(a + b, 0.5);
    dd gm = dd_sqrt(a * b);
    a = am;
    b = gm;
  }
  dd agm = mul(a + b, 0.5);
  dd num = nth_root(dd_from(128.0), 9) * nth_root(pi * pi, 3);
  dd den = nth_root(dd_from(3.0), 12) * nth_root(agm, 3);
  return num / den;
}

struct cdd {
  dd re, im;
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(cdd a, cdd b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator*(cdd a, cdd b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd div(cdd a, double s) {
  dd d = dd_from(s);
  return {a.re / d, a.im / d};
}
inline cdd mul(cdd a, dd s) { return {a.re * s, a.im * s}; }
inline double abs_hi(cdd a) { return std::hypot(a.re.hi, a.im.hi); }
inline Cplx to_cplx(cdd a) { return {a.re.hi + a.re.lo, a.im.hi + a.im.lo}; }

struct SeriesConstants {
  dd c1;  // Ai(0)  = 3^{-2/3}/Gamma(2/3)
  dd c2;  // -Ai'(0) = 3^{-1/3}/Gamma(1/3)
};

const SeriesConstants& series_constants() {
  static const SeriesConstants sc = [] {
    dd pi = dd_pi();
    dd g13 = gamma_one_third(pi);
    // Gamma(2/3) = 2*pi / (sqrt(3)*Gamma(1/3)).
    dd g23 = mul(pi, 2.0) / (dd_sqrt(dd_from(3.0)) * g13);
    SeriesConstants sc;
    sc.c1 = dd_from(1.0) / (nth_root(dd_from(9.0), 3) * g23);
    sc.c2 = dd_from(1.0) / (nth_root(dd_from(3.0), 3) * g13);
    return sc;
  }();
  return sc;
}

// Maclaurin series of Ai and Ai' about 0:
//   Ai = c1*f - c2*g with f'' = z f, g'' = z g, f(0)=g'(0)=1, f'(0)=g(0)=0.
detail::AiPair airy_series(Cplx z) {
  const SeriesConstants& sc = series_constants();
  const cdd zc{dd_from(z.real()), dd_from(z.imag())};
  const cdd z3 = zc * zc * zc;

  cdd tf{dd_from(1.0), dd_from(0.0)};  // z^{3k} term of f
  cdd tg = zc;                         // z^{3k+1} term of g
  cdd tfp = div(zc * zc, 2.0);         // z^{3k-1} term of f', k = 1
  cdd tgp{dd_from(1.0), dd_from(0.0)};  // z^{3k} term of g'

  cdd sf = tf, sg = tg, sgp = tgp;
  cdd sfp{dd_from(0.0), dd_from(0.0)};

  for (int k = 1; k <= 400; ++k) {
    const double k3 = 3.0 * k;
    tf = div(tf * z3, k3 * (k3 - 1.0));
    tg = div(tg * z3, (k3 + 1.0) * k3);
    if (k >= 2) tfp = div(tfp * z3, (k3 - 3.0) * (k3 - 1.0));
    tgp = div(tgp * z3, (k3 - 2.0) * k3);
    sf = sf + tf;
    sg = sg + tg;
    sfp = sfp + tfp;
    sgp = sgp + tgp;
    const double scale = abs_hi(sf) + abs_hi(sg) + 1.0;
    if (abs_hi(tf) < 1e-36 * scale && abs_hi(tg) < 1e-36 * scale &&
        abs_hi(tfp) < 1e-36 * scale && abs_hi(tgp) < 1e-36 * scale) {
      break;
    }
  }
  detail::AiPair out;
  out.ai = to_cplx(mul(sf, sc.c1) - mul(sg, sc.c2));
  out.aip = to_cplx(mul(sfp, sc.c1) - mul(sgp, sc.c2));
  return out;
}

// DLMF 9.7 coefficients: u_0 = v_0 = 1,
//   u_{k+1} = u_k (6k+1)(6k+5)/(72(k+1)),  v_k = u_k (6k+1)/(1-6k).
struct AsymCoeffs {
  std::vector<double> u, v;
};

const AsymCoeffs& asym_coeffs() {
  static const AsymCoeffs ac = [] {
    AsymCoeffs ac;
    constexpr int kMax = 60;
    ac.u.resize(kMax + 1);
    ac.v.resize(kMax + 1);
    ac.u[0] = ac.v[0] = 1.0;
    for (int k = 0; k < kMax; ++k) {
      ac.u[k + 1] = ac.u[k] * (6.0 * k + 1.0) * (6.0 * k + 5.0) / (72.0 * (k + 1.0));
    }
    for (int k = 1; k <= kMax; ++k) ac.v[k] = ac.u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    return ac;
  }();
  return ac;
}

const double kSqrtPi = std::sqrt(kPi);

// Recessive-direction expansion, comfortable for |arg z| <= 2*pi/3:
//   Ai(z)  ~  e^{-zeta}/(2 sqrt(pi) z^{1/4}) * sum (-1)^k u_k zeta^{-k},
//   Ai'(z) ~ -z^{1/4} e^{-zeta}/(2 sqrt(pi)) * sum (-1)^k v_k zeta^{-k}.
detail::AiPair airy_asym_right(Cplx z) {
  const AsymCoeffs& ac = asym_coeffs();
  const Cplx zeta = (2.0 / 3.0) * std::pow(z, 1.5);
  const Cplx z14 = std::pow(z, 0.25);
  const Cplx izeta = 1.0 / zeta;

  Cplx s = 0.0, sp = 0.0, pw = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < static_cast<int>(ac.u.size()); ++k) {
    const Cplx tu = ac.u[k] * pw;
    if (std::abs(tu) > prev) break;  // past the optimal truncation point
    s += tu;
    sp += ac.v[k] * pw;
    prev = std::abs(tu);
    if (prev < 1e-19 * std::abs(s)) break;
    pw *= -izeta;
  }
  const Cplx e = std::exp(-zeta);
  return {e / (2.0 * kSqrtPi * z14) * s, -z14 * e / (2.0 * kSqrtPi) * sp};
}

// Oscillatory expansion about the negative axis in x = -z, |arg x| < 2*pi/3:
//   Ai(-x)  ~ (cos(xi - pi/4) P + sin(xi - pi/4) Q) / (sqrt(pi) x^{1/4}),
//   Ai'(-x) ~ x^{1/4}/sqrt(pi) (sin(xi - pi/4) R - cos(xi - pi/4) S),
// with xi = (2/3) x^{3/2} and P,Q,R,S the even/odd u,v subsums.
detail::AiPair airy_asym_left(Cplx z) {
  const AsymCoeffs& ac = asym_coeffs();
  const Cplx x = -z;
  const Cplx xi = (2.0 / 3.0) * std::pow(x, 1.5);
  const Cplx x14 = std::pow(x, 0.25);
  const Cplx ixi = 1.0 / xi;
  const Cplx ixi2 = ixi * ixi;

  Cplx P = 0.0, Q = 0.0, R = 0.0, S = 0.0;
  Cplx even = 1.0;  // (-1)^k xi^{-2k}
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; 2 * k + 1 < static_cast<int>(ac.u.size()); ++k) {
    const Cplx tP = ac.u[2 * k] * even;
    if (std::abs(tP) > prev) break;
    P += tP;
    Q += ac.u[2 * k + 1] * even * ixi;
    R += ac.v[2 * k] * even;
    S += ac.v[2 * k + 1] * even * ixi;
    prev = std::abs(tP);
    if (prev < 1e-19 * std::abs(P)) break;
    even *= -ixi2;
  }
  const Cplx c = std::cos(xi - kPi / 4.0);
  const Cplx sn = std::sin(xi - kPi / 4.0);
  return {(c * P + sn * Q) / (kSqrtPi * x14), x14 / kSqrtPi * (sn * R - c * S)};
}

constexpr double kSeriesRadius = 9.0;
constexpr double kLeftSectorArg = 2.0 * kPi / 3.0;

void check_window(Cplx z) {
  if (std::abs(z) > kValidityRadius) {
    throw std::domain_error("airy: |z| exceeds the documented validity window (50)");
  }
}

}  // namespace

namespace detail {

AiPair airy_both(Cplx z) {
  if (std::abs(z) <= kSeriesRadius) return airy_series(z);
  if (std::abs(std::arg(z)) <= kLeftSectorArg) return airy_asym_right(z);
  return airy_asym_left(z);
}

AiPair airy_series_eval(Cplx z) { return airy_series(z); }

AiPair airy_asym_eval(Cplx z) {
  if (std::abs(std::arg(z)) <= kLeftSectorArg) return airy_asym_right(z);
  return airy_asym_left(z);
}

}  // namespace detail

Cplx airy_ai(Cplx z) {
  check_window(z);
  return detail::airy_both(z).ai;
}

Cplx airy_ai_prime(Cplx z) {
  check_window(z);
  return detail::airy_both(z).aip;
}

double airy_zero(int n) {
  if (n < 1 || n > 100) throw std::domain_error("airy_zero: n must be in [1, 100]");
  const double t = 3.0 * kPi * (4.0 * n - 1.0) / 8.0;
  double x = -std::pow(t, 2.0 / 3.0);
  for (int it = 0; it < 50; ++it) {
    const detail::AiPair p = detail::airy_both({x, 0.0});
    const double step = p.ai.real() / p.aip.real();
    x -= step;
    if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(x))) return x;
  }
  throw std::runtime_error("airy_zero: Newton did not converge in 50 steps");
}

AiryZeroTable AiryZeroTable::first(int count) {
  if (count < 1) throw std::domain_error("AiryZeroTable: count must be positive");
  AiryZeroTable t;
  t.count = count;
  t.zeros.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) t.zeros.push_back(airy_zero(n));
  for (std::size_t i = 0; i + 1 < t.zeros.size(); ++i) {
    if (!(t.zeros[i] > t.zeros[i + 1]) || !(t.zeros[i] < 0.0)) {
      throw std::runtime_error("AiryZeroTable: zeros not strictly decreasing negative");
    }
  }
  return t;
}

}  // namespace btlab::specfn
