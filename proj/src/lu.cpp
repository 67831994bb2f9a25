#include "btlab/lu.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace btlab {

std::vector<int> amd_ordering(const SparseCS& a) {
  // Symmetrize the pattern, then hand it to Eigen's approximate minimum degree.
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * static_cast<std::size_t>(a.nnz()));
  for (int c = 0; c < a.n; ++c) {
    for (int p = a.col_ptr[static_cast<std::size_t>(c)]; p < a.col_ptr[static_cast<std::size_t>(c) + 1]; ++p) {
      const int r = a.row_idx[static_cast<std::size_t>(p)];
      trip.emplace_back(r, c, 1.0);
      trip.emplace_back(c, r, 1.0);
    }
  }
  Eigen::SparseMatrix<double, Eigen::ColMajor, int> pattern(a.n, a.n);
  pattern.setFromTriplets(trip.begin(), trip.end());
  Eigen::AMDOrdering<int> amd;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
  amd(pattern, perm);
  // Elimination order: the k-th eliminated variable is perm.indices()[k].
  std::vector<int> order(static_cast<std::size_t>(a.n));
  for (int i = 0; i < a.n; ++i) order[static_cast<std::size_t>(i)] = perm.indices()[i];
  return order;
}

namespace {

// Depth-first search from column `col` of A through the graph of already
// computed L columns (via pinv); emits the reach in topological order.
struct SymbolicWorkspace {
  std::vector<int> stack;
  std::vector<int> branch;   // per-stack-frame next-entry cursor
  std::vector<int> topo;     // reach, topological order
  std::vector<unsigned> mark;
  unsigned stamp = 0;
};

void reach(const std::vector<std::vector<std::pair<int, Cplx>>>& lcols,
           const std::vector<int>& pinv, const SparseCS& a, int col, SymbolicWorkspace& ws) {
  ws.topo.clear();
  ++ws.stamp;
  for (int p = a.col_ptr[static_cast<std::size_t>(col)]; p < a.col_ptr[static_cast<std::size_t>(col) + 1]; ++p) {
    const int start = a.row_idx[static_cast<std::size_t>(p)];
    if (ws.mark[static_cast<std::size_t>(start)] == ws.stamp) continue;
    ws.stack.clear();
    ws.branch.clear();
    ws.stack.push_back(start);
    ws.branch.push_back(0);
    ws.mark[static_cast<std::size_t>(start)] = ws.stamp;
    while (!ws.stack.empty()) {
      const int node = ws.stack.back();
      const int lcol = pinv[static_cast<std::size_t>(node)];
      bool descended = false;
      if (lcol >= 0) {
        const auto& entries = lcols[static_cast<std::size_t>(lcol)];
        int& cursor = ws.branch.back();
        while (cursor < static_cast<int>(entries.size())) {
          const int child = entries[static_cast<std::size_t>(cursor)].first;
          ++cursor;
          if (ws.mark[static_cast<std::size_t>(child)] != ws.stamp) {
            ws.mark[static_cast<std::size_t>(child)] = ws.stamp;
            ws.stack.push_back(child);
            ws.branch.push_back(0);
            descended = true;
            break;
          }
        }
      }
      if (!descended) {
        ws.topo.push_back(node);
        ws.stack.pop_back();
        ws.branch.pop_back();
      }
    }
  }
  // post-order gives children first; elimination needs parents first.
  std::reverse(ws.topo.begin(), ws.topo.end());
}

}  // namespace

LUFactors sparse_lu(const SparseCS& a, const LUOptions& opt) {
  if (a.n == 0) throw std::invalid_argument("sparse_lu: empty matrix");
  const int n = a.n;
  LUFactors f;
  f.n = n;
  f.col_perm = opt.use_amd ? amd_ordering(a) : [] {
    return std::vector<int>{};
  }();
  if (f.col_perm.empty()) {
    f.col_perm.resize(static_cast<std::size_t>(n));
    std::iota(f.col_perm.begin(), f.col_perm.end(), 0);
  }
  f.row_perm.assign(static_cast<std::size_t>(n), -1);

  std::vector<int> pinv(static_cast<std::size_t>(n), -1);
  // L columns in elimination order; entries (original row, multiplier),
  // excluding the unit pivot. U columns with final (pivot-order) row indices.
  std::vector<std::vector<std::pair<int, Cplx>>> lcols(static_cast<std::size_t>(n));
  std::vector<std::vector<std::pair<int, Cplx>>> ucols(static_cast<std::size_t>(n));

  std::vector<Cplx> x(static_cast<std::size_t>(n), Cplx{0.0});
  SymbolicWorkspace ws;
  ws.mark.assign(static_cast<std::size_t>(n), 0);

  for (int k = 0; k < n; ++k) {
    const int col = f.col_perm[static_cast<std::size_t>(k)];
    reach(lcols, pinv, a, col, ws);
    // Scatter A(:, col) and run the sparse lower triangular solve.
    for (int p = a.col_ptr[static_cast<std::size_t>(col)]; p < a.col_ptr[static_cast<std::size_t>(col) + 1]; ++p) {
      x[static_cast<std::size_t>(a.row_idx[static_cast<std::size_t>(p)])] =
          a.values[static_cast<std::size_t>(p)];
    }
    for (const int node : ws.topo) {
      const int lcol = pinv[static_cast<std::size_t>(node)];
      if (lcol < 0) continue;
      const Cplx xj = x[static_cast<std::size_t>(node)];
      if (xj != 0.0) {
        for (const auto& [r, v] : lcols[static_cast<std::size_t>(lcol)]) {
          x[static_cast<std::size_t>(r)] -= v * xj;
        }
      }
    }
    // Threshold partial pivoting over not-yet-pivotal rows.
    double amax = 0.0;
    int best = -1;
    for (const int node : ws.topo) {
      if (pinv[static_cast<std::size_t>(node)] >= 0) continue;
      const double m = std::abs(x[static_cast<std::size_t>(node)]);
      if (m > amax) {
        amax = m;
        best = node;
      }
    }
    if (best < 0 || amax < 1e-300) {
      throw std::runtime_error("sparse_lu: numerically singular pivot at step " +
                               std::to_string(k));
    }
    int pivot_row = best;
    if (pinv[static_cast<std::size_t>(col)] < 0 &&
        std::abs(x[static_cast<std::size_t>(col)]) >= opt.pivot_threshold * amax) {
      pivot_row = col;  // keep the structural diagonal when it is large enough
    }
    const Cplx piv = x[static_cast<std::size_t>(pivot_row)];

    auto& ucol = ucols[static_cast<std::size_t>(k)];
    auto& lcol = lcols[static_cast<std::size_t>(k)];
    for (const int node : ws.topo) {
      const int prow = pinv[static_cast<std::size_t>(node)];
      const Cplx v = x[static_cast<std::size_t>(node)];
      if (prow >= 0) {
        if (v != 0.0) ucol.emplace_back(prow, v);
      } else if (node != pivot_row && v != 0.0) {
        lcol.emplace_back(node, v / piv);
      }
      x[static_cast<std::size_t>(node)] = 0.0;
    }
    ucol.emplace_back(k, piv);
    pinv[static_cast<std::size_t>(pivot_row)] = k;
    f.row_perm[static_cast<std::size_t>(k)] = pivot_row;
  }

  // Finalize factors as SparseCS with pivot-order row indices, consuming the
  // per-column storage as it goes (the factors dominate peak memory).
  std::size_t total_l = 0, total_u = 0;
  for (int k = 0; k < n; ++k) {
    total_l += lcols[static_cast<std::size_t>(k)].size() + 1;
    total_u += ucols[static_cast<std::size_t>(k)].size();
  }
  auto sort_by_row = [](std::vector<std::pair<int, Cplx>>& col) {
    std::sort(col.begin(), col.end(),
              [](const auto& a_, const auto& b_) { return a_.first < b_.first; });
  };
  f.lower.n = n;
  f.lower.col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  f.lower.row_idx.reserve(total_l);
  f.lower.values.reserve(total_l);
  f.upper.n = n;
  f.upper.col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  f.upper.row_idx.reserve(total_u);
  f.upper.values.reserve(total_u);
  for (int k = 0; k < n; ++k) {
    auto& lcol = lcols[static_cast<std::size_t>(k)];
    for (auto& [r, v] : lcol) r = pinv[static_cast<std::size_t>(r)];
    sort_by_row(lcol);
    f.lower.row_idx.push_back(k);  // unit diagonal; all other rows are > k
    f.lower.values.push_back(1.0);
    for (const auto& [r, v] : lcol) {
      f.lower.row_idx.push_back(r);
      f.lower.values.push_back(v);
    }
    f.lower.col_ptr[static_cast<std::size_t>(k) + 1] = static_cast<int>(f.lower.row_idx.size());
    lcol.clear();
    lcol.shrink_to_fit();

    auto& ucol = ucols[static_cast<std::size_t>(k)];
    sort_by_row(ucol);
    for (const auto& [r, v] : ucol) {
      f.upper.row_idx.push_back(r);
      f.upper.values.push_back(v);
    }
    f.upper.col_ptr[static_cast<std::size_t>(k) + 1] = static_cast<int>(f.upper.row_idx.size());
    ucol.clear();
    ucol.shrink_to_fit();
  }
  f.nnz_l = f.lower.nnz();
  f.nnz_u = f.upper.nnz();
  f.fill_ratio = a.nnz() > 0 ? static_cast<double>(f.nnz_l + f.nnz_u) / static_cast<double>(a.nnz())
                             : 0.0;
  return f;
}

std::vector<Cplx> LUFactors::solve(std::span<const Cplx> b) const {
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("LUFactors::solve: size");
  std::vector<Cplx> y(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) y[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(row_perm[static_cast<std::size_t>(k)])];
  // Forward: L y = P_r b (unit lower, CSC: eliminate column by column).
  for (int k = 0; k < n; ++k) {
    const Cplx yk = y[static_cast<std::size_t>(k)];
    if (yk == 0.0) continue;
    for (int p = lower.col_ptr[static_cast<std::size_t>(k)]; p < lower.col_ptr[static_cast<std::size_t>(k) + 1]; ++p) {
      const int r = lower.row_idx[static_cast<std::size_t>(p)];
      if (r > k) y[static_cast<std::size_t>(r)] -= lower.values[static_cast<std::size_t>(p)] * yk;
    }
  }
  // Backward: U w = y (CSC back substitution; diagonal is the last entry of
  // each column because row indices are sorted and U is upper triangular).
  for (int k = n - 1; k >= 0; --k) {
    const int last = upper.col_ptr[static_cast<std::size_t>(k) + 1] - 1;
    if (last < upper.col_ptr[static_cast<std::size_t>(k)] ||
        upper.row_idx[static_cast<std::size_t>(last)] != k) {
      throw std::runtime_error("LUFactors::solve: missing U diagonal");
    }
    const Cplx wk = y[static_cast<std::size_t>(k)] / upper.values[static_cast<std::size_t>(last)];
    y[static_cast<std::size_t>(k)] = wk;
    if (wk == 0.0) continue;
    for (int p = upper.col_ptr[static_cast<std::size_t>(k)]; p < last; ++p) {
      y[static_cast<std::size_t>(upper.row_idx[static_cast<std::size_t>(p)])] -=
          upper.values[static_cast<std::size_t>(p)] * wk;
    }
  }
  // Undo the column permutation.
  std::vector<Cplx> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(col_perm[static_cast<std::size_t>(k)])] = y[static_cast<std::size_t>(k)];
  return out;
}

std::vector<Cplx> LUFactors::solve_refined(const SparseCS& a, std::span<const Cplx> b) const {
  std::vector<Cplx> x = solve(b);
  std::vector<Cplx> r(static_cast<std::size_t>(n));
  a.matvec(x, r);
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)];
  const std::vector<Cplx> dx = solve(r);
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] += dx[static_cast<std::size_t>(i)];
  return x;
}

}  // namespace btlab
