#include "btlab/arnoldi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "btlab/dense_eig.hpp"

namespace btlab {

namespace {

void normalize(std::vector<Cplx>& v) {
  const double nrm = norm2(v);
  if (nrm == 0.0) throw std::runtime_error("arnoldi: zero vector");
  for (Cplx& x : v) x /= nrm;
}

struct Locked {
  Cplx value;
  std::vector<Cplx> vector;
  double residual;
  Cplx vtv;  // bilinear self-pairing v^T v of the (unit 2-norm) vector
};

// Deflate converged pairs through the bilinear spectral projector: for a
// complex-symmetric matrix the left eigenvector of v is its own transpose,
// so w -= v (v^T w)/(v^T v) removes the eigدirection exactly (up to the pair
// residual). Falls back to Hermitian projection for near-defective pairs.
void deflate(std::vector<Cplx>& w, const std::vector<Locked>& locked) {
  for (const Locked& l : locked) {
    Cplx coef;
    if (std::abs(l.vtv) > 1e-6) {
      coef = dot_bilinear(l.vector, w) / l.vtv;
    } else {
      coef = dot_hermitian(l.vector, w);
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= coef * l.vector[i];
  }
}

}  // namespace

std::vector<EigenPair> shift_invert_arnoldi(const SparseCS& m, Cplx shift,
                                            const ArnoldiOptions& opt) {
  if (opt.k < 1) throw std::invalid_argument("arnoldi: k >= 1");
  if (opt.tol < 1e-12) throw std::invalid_argument("arnoldi: tol >= 1e-12");
  const int n = m.n;
  const int k = std::min(opt.k, n);
  int msub = opt.subspace > 0 ? opt.subspace : std::max(20, 4 * k);
  msub = std::min(msub, n);

  // Factor (M - shift I); a singular pivot means the shift hit an eigenvalue,
  // in which case the caller contract is to nudge it.
  LUOptions lopt;
  lopt.pivot_threshold = opt.pivot_threshold;
  std::optional<LUFactors> lu;
  for (int attempt = 0; attempt < 3 && !lu; ++attempt) {
    try {
      lu.emplace(sparse_lu(m.shifted(-shift), lopt));
    } catch (const std::runtime_error&) {
      shift *= (1.0 + 1e-8);
      if (shift == 0.0) shift = Cplx{1e-8, 0.0};
    }
  }
  if (!lu) throw std::runtime_error("arnoldi: shifted matrix is singular");

  std::vector<Cplx> v0;
  if (opt.start && static_cast<int>(opt.start->size()) == n) {
    v0 = *opt.start;
  } else {
    SplitMix64 rng(opt.seed);
    v0.resize(static_cast<std::size_t>(n));
    for (Cplx& x : v0) x = rng.next_cplx();
  }
  normalize(v0);

  std::vector<Locked> locked;
  std::vector<std::vector<Cplx>> basis;
  std::vector<Cplx> hess;
  auto h = [&hess, msub](int i, int j) -> Cplx& {
    return hess[static_cast<std::size_t>(i) * static_cast<std::size_t>(msub) +
                static_cast<std::size_t>(j)];
  };

  auto residual_of = [&m](const Cplx lambda, const std::vector<Cplx>& x) {
    std::vector<Cplx> r = m.apply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += std::norm(r[i] - lambda * x[i]);
    return std::sqrt(s);
  };

  auto finish = [&locked, shift](int count) {
    std::sort(locked.begin(), locked.end(), [shift](const Locked& a, const Locked& b) {
      return std::abs(a.value - shift) < std::abs(b.value - shift);
    });
    std::vector<EigenPair> out;
    for (int i = 0; i < count && i < static_cast<int>(locked.size()); ++i) {
      out.push_back({locked[static_cast<std::size_t>(i)].value,
                     locked[static_cast<std::size_t>(i)].vector,
                     locked[static_cast<std::size_t>(i)].residual});
    }
    return out;
  };

  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    deflate(v0, locked);
    if (norm2(v0) < 1e-8) {  // start vector lay in the locked span
      SplitMix64 rng(opt.seed + static_cast<std::uint64_t>(restart) + 1);
      for (Cplx& x : v0) x = rng.next_cplx();
      deflate(v0, locked);
    }
    normalize(v0);

    basis.clear();
    basis.push_back(v0);
    hess.assign(static_cast<std::size_t>(msub + 1) * static_cast<std::size_t>(msub), Cplx{0.0});

    int built = 0;
    bool breakdown = false;
    for (int j = 0; j < msub && !breakdown; ++j) {
      std::vector<Cplx> w = lu->solve(basis[static_cast<std::size_t>(j)]);
      deflate(w, locked);
      // Modified Gram-Schmidt plus one full reorthogonalization pass.
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const Cplx hij = dot_hermitian(basis[static_cast<std::size_t>(i)], w);
          h(i, j) += hij;
          for (int r = 0; r < n; ++r) {
            w[static_cast<std::size_t>(r)] -=
                hij * basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
          }
        }
      }
      const double beta = norm2(w);
      built = j + 1;
      if (beta < 1e-14) {
        breakdown = true;  // happy breakdown: invariant subspace found
        break;
      }
      h(j + 1, j) = beta;
      for (Cplx& x : w) x /= beta;
      basis.push_back(std::move(w));
    }

    const int dim = built;
    std::vector<Cplx> hm(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) hm[static_cast<std::size_t>(i) * dim + j] = h(i, j);
    }
    const DenseEigenPairs ritz = dense_eig_pairs(hm, dim);

    std::vector<int> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&ritz](int a, int b) {
      return std::abs(ritz.values[static_cast<std::size_t>(a)]) >
             std::abs(ritz.values[static_cast<std::size_t>(b)]);
    });

    // Lock converged Ritz pairs (largest |theta| first = nearest the shift),
    // keep the best unconverged one as the next start vector.
    std::vector<Cplx> next_start;
    const int still_needed = k - static_cast<int>(locked.size());
    int examined = 0;
    for (const int idx : order) {
      if (examined >= std::max(still_needed + 2, 4)) break;
      ++examined;
      const Cplx theta = ritz.values[static_cast<std::size_t>(idx)];
      if (theta == 0.0) continue;
      std::vector<Cplx> x(static_cast<std::size_t>(n), Cplx{0.0});
      const auto& y = ritz.vectors[static_cast<std::size_t>(idx)];
      for (int j = 0; j < dim; ++j) {
        const Cplx yj = y[static_cast<std::size_t>(j)];
        const auto& bj = basis[static_cast<std::size_t>(j)];
        for (int r = 0; r < n; ++r) {
          x[static_cast<std::size_t>(r)] += yj * bj[static_cast<std::size_t>(r)];
        }
      }
      deflate(x, locked);
      if (norm2(x) < 1e-8) continue;
      normalize(x);
      const Cplx lambda = shift + 1.0 / theta;
      bool duplicate = false;
      for (const Locked& l : locked) {
        if (std::abs(lambda - l.value) <=
            1e-10 * (std::abs(lambda) + std::abs(l.value) + std::abs(shift))) {
          duplicate = true;
        }
      }
      if (duplicate) continue;
      const double res = residual_of(lambda, x);
      if (res <= opt.tol && static_cast<int>(locked.size()) < k) {
        locked.push_back({lambda, x, res, dot_bilinear(x, x)});
      } else if (next_start.empty()) {
        next_start = std::move(x);
      }
      if (static_cast<int>(locked.size()) >= k) break;
    }

    if (static_cast<int>(locked.size()) >= k) return finish(k);
    if (breakdown) {
      // Exhausted an invariant subspace; return whatever converged.
      if (!locked.empty()) return finish(static_cast<int>(locked.size()));
      throw std::runtime_error("arnoldi: breakdown before any pair converged");
    }
    if (!next_start.empty()) {
      v0 = std::move(next_start);
    } else {
      SplitMix64 rng(opt.seed + 1000 + static_cast<std::uint64_t>(restart));
      for (Cplx& x : v0) x = rng.next_cplx();
    }
  }
  throw std::runtime_error("arnoldi: no convergence after max restarts");
}

}  // namespace btlab
