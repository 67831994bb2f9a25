#pragma once

#include <vector>

#include "btlab/common.hpp"

namespace btlab::specfn {

/// Largest |z| for which the evaluation contract (relative error <= 1e-10)
/// is documented. Calls beyond it throw std::domain_error.
inline constexpr double kValidityRadius = 50.0;

/// Airy function Ai(z). Maclaurin series in double-double arithmetic for
/// |z| <= 9, asymptotic expansions with sector connection beyond.
Cplx airy_ai(Cplx z);

/// Derivative Ai'(z), same method and validity window as airy_ai.
Cplx airy_ai_prime(Cplx z);

/// n-th negative real zero z_n of Ai (n = 1..100), |Ai(z_n)| <= 1e-12.
/// Newton refinement from the asymptotic seed -(3*pi*(4n-1)/8)^(2/3).
double airy_zero(int n);

struct AiryZeroTable {
  std::vector<double> zeros;  // z_1 > z_2 > ... (all negative, decreasing)
  int count = 0;

  static AiryZeroTable first(int count);
};

namespace detail {

struct AiPair {
  Cplx ai;
  Cplx aip;
};

/// Evaluation without the public validity-window check. The asymptotic
/// branches only gain accuracy as |z| grows; zero refinement for n near 100
/// needs |z| up to ~61.
AiPair airy_both(Cplx z);

/// Individual evaluation branches, exposed so tests can measure the overlap
/// agreement at the crossover radius.
AiPair airy_series_eval(Cplx z);
AiPair airy_asym_eval(Cplx z);

}  // namespace detail

}  // namespace btlab::specfn
