#include "btlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace btlab::quad {

namespace {

// QUADPACK 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
  T value{};
  double err = 0.0;
};

template <typename T, typename F>
Panel<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  T fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - hw * xgk[j]);
    fv[14 - j] = f(c + hw * xgk[j]);
  }
  fv[7] = f(c);
  T resk{};
  T resg{};
  for (int j = 0; j < 8; ++j) {
    resk += wgk[j] * (fv[j] + (j < 7 ? fv[14 - j] : T{}));
  }
  for (int j = 0; j < 4; ++j) {
    const int i = 2 * j + 1;
    resg += wg[j] * (fv[i] + (j < 3 ? fv[14 - i] : T{}));
  }
  Panel<T> p;
  p.value = resk * hw;
  p.err = std::abs(resk - resg) * hw;
  return p;
}

template <typename T, typename F>
void adapt(const F& f, double a, double b, const Options& opt, int depth, T& total,
           double& errtotal, long& evals, bool& ok) {
  Panel<T> p = gk15<T>(f, a, b);
  evals += 15;
  const double tol_here =
      std::max(opt.abs_tol * (b - a), opt.rel_tol * std::abs(p.value)) + 1e-300;
  if (p.err <= tol_here || depth >= opt.max_depth) {
    if (p.err > tol_here) ok = false;
    total += p.value;
    errtotal += p.err;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, opt, depth + 1, total, errtotal, evals, ok);
  adapt(f, c, b, opt, depth + 1, total, errtotal, evals, ok);
}

template <typename T, typename F>
auto run(const F& f, double a, double b, const Options& opt) {
  T total{};
  double err = 0.0;
  long evals = 0;
  bool ok = true;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  if (a != b) adapt(f, a, b, opt, 0, total, err, evals, ok);
  struct R {
    T value;
    double err;
    long evals;
    bool ok;
  };
  return R{sign * total, err, evals, ok};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt) {
  auto r = run<double>(f, a, b, opt);
  return {r.value, r.err, r.evals, r.ok};
}

CResult integrate_complex(const std::function<Cplx(double)>& f, double a, double b,
                          const Options& opt) {
  auto r = run<Cplx>(f, a, b, opt);
  return {r.value, r.err, r.evals, r.ok};
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const Options& opt) {
  Result r = integrate(f, a, b, opt);
  if (!r.converged) throw std::runtime_error("quadrature did not converge");
  return r.value;
}

Cplx integrate_complex_or_throw(const std::function<Cplx(double)>& f, double a, double b,
                                const Options& opt) {
  CResult r = integrate_complex(f, a, b, opt);
  if (!r.converged) throw std::runtime_error("quadrature did not converge");
  return r.value;
}

}  // namespace btlab::quad
