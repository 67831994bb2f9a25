#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "btlab/arnoldi.hpp"
#include "btlab/dense_eig.hpp"
#include "btlab/experiments.hpp"
#include "btlab/specfn.hpp"

using btlab::Cplx;
using btlab::kPi;
using btlab::SparseCS;

namespace {

std::vector<Cplx> random_symmetric_dense(int n, std::uint64_t seed) {
  btlab::SplitMix64 rng(seed);
  std::vector<Cplx> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      const Cplx v = rng.next_cplx();
      a[static_cast<std::size_t>(r) * n + c] = v;
      a[static_cast<std::size_t>(c) * n + r] = v;
    }
  }
  return a;
}

}  // namespace

TEST_CASE("diagonal matrix: shift 2.1i picks the 2i eigenpair") {
  std::vector<btlab::Triplet> t{{0, 0, 1.0}, {1, 1, Cplx{0.0, 2.0}}, {2, 2, -3.0}, {3, 3, Cplx{5.0, 5.0}}};
  const SparseCS m = SparseCS::from_triplets(4, std::move(t));
  btlab::ArnoldiOptions opt;
  opt.k = 1;
  const auto pairs = btlab::shift_invert_arnoldi(m, Cplx{0.0, 2.1}, opt);
  REQUIRE(pairs.size() == 1);
  CHECK(std::abs(pairs[0].value - Cplx{0.0, 2.0}) < 1e-12);
  // eigenvector is e_2 up to phase
  for (int i = 0; i < 4; ++i) {
    const double expect = i == 1 ? 1.0 : 0.0;
    CHECK(std::abs(std::abs(pairs[0].vector[static_cast<std::size_t>(i)]) - expect) < 1e-10);
  }
}

TEST_CASE("200x200 complex-symmetric: 5 nearest-shift values match the dense oracle") {
  const int n = 200;
  const std::vector<Cplx> a = random_symmetric_dense(n, 77);
  const SparseCS m = SparseCS::from_dense(a, n);
  const Cplx shift{0.3, 0.2};
  btlab::ArnoldiOptions opt;
  opt.k = 5;
  opt.tol = 1e-10;
  const auto pairs = btlab::shift_invert_arnoldi(m, shift, opt);
  REQUIRE(pairs.size() == 5);
  std::vector<Cplx> oracle = btlab::dense_eig(a, n);
  std::sort(oracle.begin(), oracle.end(), [shift](Cplx x, Cplx y) {
    return std::abs(x - shift) < std::abs(y - shift);
  });
  for (std::size_t i = 0; i < 5; ++i) {
    double best = 1e300;
    for (const Cplx ev : oracle) best = std::min(best, std::abs(ev - pairs[i].value));
    CHECK(best < 1e-8);
    CHECK(std::abs(pairs[i].value - oracle[i]) < 1e-8);  // same ordering by distance
  }
}

TEST_CASE("1-D complex Airy spectrum to 1e-4 and second-order convergence") {
  const auto fine = btlab::airy_spectrum_1d(1.0, 40.0, 4000, 3);
  for (int i = 0; i < 3; ++i) {
    INFO("n = ", i + 1);
    CHECK(fine.abs_err[static_cast<std::size_t>(i)] <= 1e-4);
  }
  const auto coarse = btlab::airy_spectrum_1d(1.0, 40.0, 2000, 3);
  for (int i = 0; i < 3; ++i) {
    const double ratio = coarse.abs_err[static_cast<std::size_t>(i)] / fine.abs_err[static_cast<std::size_t>(i)];
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}

TEST_CASE("omega scaling of the 1-D Airy eigenvalue: omega = 8 gives 4x") {
  const auto w1 = btlab::airy_spectrum_1d(1.0, 40.0, 3000, 1);
  const auto w8 = btlab::airy_spectrum_1d(8.0, 20.0, 3000, 1);
  CHECK(std::abs(w8.computed[0] - 4.0 * w1.computed[0]) < 4e-3);
  CHECK(std::abs(w8.computed[0] - w8.exact[0]) < 2e-3);
}

TEST_CASE("dense_eig basics") {
  // [[0, 1], [-1, 0]] -> +-i
  std::vector<Cplx> rot{0.0, 1.0, -1.0, 0.0};
  std::vector<Cplx> ev = btlab::dense_eig(rot, 2);
  std::sort(ev.begin(), ev.end(), [](Cplx a, Cplx b) { return a.imag() < b.imag(); });
  CHECK(std::abs(ev[0] - Cplx{0.0, -1.0}) < 1e-12);
  CHECK(std::abs(ev[1] - Cplx{0.0, 1.0}) < 1e-12);

  // upper triangular: eigenvalues are the diagonal
  btlab::SplitMix64 rng(9);
  const int n = 12;
  std::vector<Cplx> tri(static_cast<std::size_t>(n) * n, Cplx{0.0});
  std::vector<Cplx> diag;
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) tri[static_cast<std::size_t>(r) * n + c] = rng.next_cplx();
    diag.push_back(tri[static_cast<std::size_t>(r) * n + r]);
  }
  std::vector<Cplx> tev = btlab::dense_eig(tri, n);
  auto lex = [](Cplx a, Cplx b) {
    return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag());
  };
  std::sort(tev.begin(), tev.end(), lex);
  std::sort(diag.begin(), diag.end(), lex);
  for (int i = 0; i < n; ++i) CHECK(std::abs(tev[static_cast<std::size_t>(i)] - diag[static_cast<std::size_t>(i)]) < 1e-12);
}

TEST_CASE("dense_eig shift property on 50x50") {
  const int n = 50;
  const std::vector<Cplx> a = random_symmetric_dense(n, 31);
  std::vector<Cplx> shifted = a;
  for (int i = 0; i < n; ++i) shifted[static_cast<std::size_t>(i) * n + i] += 10.0;
  auto lex = [](Cplx x, Cplx y) {
    return std::make_pair(x.real(), x.imag()) < std::make_pair(y.real(), y.imag());
  };
  std::vector<Cplx> ev = btlab::dense_eig(a, n);
  std::vector<Cplx> evs = btlab::dense_eig(shifted, n);
  for (Cplx& v : ev) v += 10.0;
  std::sort(ev.begin(), ev.end(), lex);
  std::sort(evs.begin(), evs.end(), lex);
  for (int i = 0; i < n; ++i) CHECK(std::abs(ev[static_cast<std::size_t>(i)] - evs[static_cast<std::size_t>(i)]) < 1e-9);
}

TEST_CASE("dense_eig size cap") {
  CHECK_THROWS_AS((void)btlab::dense_eig(std::vector<Cplx>(4e6, Cplx{0.0}), 2001),
                  std::domain_error);
}

TEST_CASE("residual contract: stored residual matches recomputation") {
  const int n = 150;
  const std::vector<Cplx> a = random_symmetric_dense(n, 13);
  const SparseCS m = SparseCS::from_dense(a, n);
  btlab::ArnoldiOptions opt;
  opt.k = 3;
  const auto pairs = btlab::shift_invert_arnoldi(m, Cplx{0.1, -0.2}, opt);
  for (const auto& p : pairs) {
    std::vector<Cplx> r = m.apply(p.vector);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.value * p.vector[i];
    CHECK(btlab::norm2(r) / btlab::norm2(p.vector) == doctest::Approx(p.residual).epsilon(1e-6));
    CHECK(p.residual <= opt.tol);
  }
}

TEST_CASE("transpose symmetry: v^T (M - lambda) ~ 0 for complex-symmetric M") {
  const int n = 120;
  const std::vector<Cplx> a = random_symmetric_dense(n, 99);
  const SparseCS m = SparseCS::from_dense(a, n);
  btlab::ArnoldiOptions opt;
  opt.k = 2;
  const auto pairs = btlab::shift_invert_arnoldi(m, Cplx{0.0, 0.0}, opt);
  const SparseCS mt = m.transpose();
  for (const auto& p : pairs) {
    std::vector<Cplx> r = mt.apply(p.vector);  // (M^T v) = row action of v^T M
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.value * p.vector[i];
    CHECK(btlab::norm2(r) <= 2.0 * opt.tol);
  }
}

TEST_CASE("determinism: same inputs and seed give bit-identical values") {
  const int n = 80;
  const std::vector<Cplx> a = random_symmetric_dense(n, 55);
  const SparseCS m = SparseCS::from_dense(a, n);
  btlab::ArnoldiOptions opt;
  opt.k = 2;
  opt.seed = 1234;
  const auto p1 = btlab::shift_invert_arnoldi(m, Cplx{0.2, 0.1}, opt);
  const auto p2 = btlab::shift_invert_arnoldi(m, Cplx{0.2, 0.1}, opt);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].value.real() == p2[i].value.real());
    CHECK(p1[i].value.imag() == p2[i].value.imag());
  }
}

TEST_CASE("happy breakdown: an exact eigenvector start yields the invariant subspace") {
  std::vector<btlab::Triplet> t{{0, 0, 1.0}, {1, 1, Cplx{0.0, 2.0}}, {2, 2, -3.0}};
  const SparseCS m = SparseCS::from_triplets(3, std::move(t));
  btlab::ArnoldiOptions opt;
  opt.k = 1;
  opt.start = std::vector<Cplx>{0.0, 1.0, 0.0};  // eigenvector of 2i
  const auto pairs = btlab::shift_invert_arnoldi(m, Cplx{0.0, 1.9}, opt);
  REQUIRE(pairs.size() == 1);
  CHECK(std::abs(pairs[0].value - Cplx{0.0, 2.0}) < 1e-12);
  CHECK(pairs[0].residual < 1e-12);
}

TEST_CASE("shift on an exact eigenvalue is nudged, not fatal") {
  std::vector<btlab::Triplet> t{{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 3.0}};
  const SparseCS m = SparseCS::from_triplets(3, std::move(t));
  btlab::ArnoldiOptions opt;
  opt.k = 1;
  const auto pairs = btlab::shift_invert_arnoldi(m, Cplx{2.0, 0.0}, opt);
  REQUIRE(pairs.size() == 1);
  CHECK(std::abs(pairs[0].value - 2.0) < 1e-12);
}
