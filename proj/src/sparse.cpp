#include "btlab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace btlab {

SparseCS SparseCS::from_triplets(int n, std::vector<Triplet> triplets) {
  if (n < 0) throw std::invalid_argument("SparseCS: negative dimension");
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) {
      throw std::invalid_argument("SparseCS: triplet index out of range");
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  SparseCS m;
  m.n = n;
  m.col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  m.row_idx.reserve(triplets.size());
  m.values.reserve(triplets.size());
  std::size_t i = 0;
  for (int c = 0; c < n; ++c) {
    while (i < triplets.size() && triplets[i].col == c) {
      int r = triplets[i].row;
      Cplx v = 0.0;
      while (i < triplets.size() && triplets[i].col == c && triplets[i].row == r) {
        v += triplets[i].value;
        ++i;
      }
      if (v != 0.0) {
        m.row_idx.push_back(r);
        m.values.push_back(v);
      }
    }
    m.col_ptr[static_cast<std::size_t>(c) + 1] = static_cast<int>(m.row_idx.size());
  }
  return m;
}

SparseCS SparseCS::identity(int n) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, std::move(t));
}

SparseCS SparseCS::from_dense(const std::vector<Cplx>& a, int n, double drop_tol) {
  if (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != a.size()) {
    throw std::invalid_argument("from_dense: size mismatch (row-major n*n expected)");
  }
  std::vector<Triplet> t;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Cplx v = a[static_cast<std::size_t>(r) * n + c];
      if (std::abs(v) > drop_tol) t.push_back({r, c, v});
    }
  }
  return from_triplets(n, std::move(t));
}

void SparseCS::matvec(std::span<const Cplx> x, std::span<Cplx> y) const {
  std::fill(y.begin(), y.end(), Cplx{0.0});
  for (int c = 0; c < n; ++c) {
    const Cplx xc = x[static_cast<std::size_t>(c)];
    if (xc == 0.0) continue;
    for (int p = col_ptr[static_cast<std::size_t>(c)]; p < col_ptr[static_cast<std::size_t>(c) + 1]; ++p) {
      y[static_cast<std::size_t>(row_idx[static_cast<std::size_t>(p)])] +=
          values[static_cast<std::size_t>(p)] * xc;
    }
  }
}

std::vector<Cplx> SparseCS::apply(std::span<const Cplx> x) const {
  std::vector<Cplx> y(static_cast<std::size_t>(n));
  matvec(x, y);
  return y;
}

SparseCS SparseCS::transpose() const {
  std::vector<Triplet> t;
  t.reserve(row_idx.size());
  for (int c = 0; c < n; ++c) {
    for (int p = col_ptr[static_cast<std::size_t>(c)]; p < col_ptr[static_cast<std::size_t>(c) + 1]; ++p) {
      t.push_back({c, row_idx[static_cast<std::size_t>(p)], values[static_cast<std::size_t>(p)]});
    }
  }
  return from_triplets(n, std::move(t));
}

SparseCS SparseCS::shifted(Cplx sigma) const {
  std::vector<Triplet> t;
  t.reserve(row_idx.size() + static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    for (int p = col_ptr[static_cast<std::size_t>(c)]; p < col_ptr[static_cast<std::size_t>(c) + 1]; ++p) {
      t.push_back({row_idx[static_cast<std::size_t>(p)], c, values[static_cast<std::size_t>(p)]});
    }
    t.push_back({c, c, sigma});
  }
  return from_triplets(n, std::move(t));
}

bool SparseCS::structurally_symmetric() const {
  const SparseCS at = transpose();
  return col_ptr == at.col_ptr && row_idx == at.row_idx;
}

double SparseCS::symmetry_defect() const {
  const SparseCS at = transpose();
  double d = 0.0;
  for (int c = 0; c < n; ++c) {
    int pa = col_ptr[static_cast<std::size_t>(c)];
    int pb = at.col_ptr[static_cast<std::size_t>(c)];
    const int ea = col_ptr[static_cast<std::size_t>(c) + 1];
    const int eb = at.col_ptr[static_cast<std::size_t>(c) + 1];
    while (pa < ea || pb < eb) {
      const int ra = pa < ea ? row_idx[static_cast<std::size_t>(pa)] : n;
      const int rb = pb < eb ? at.row_idx[static_cast<std::size_t>(pb)] : n;
      if (ra == rb) {
        d = std::max(d, std::abs(values[static_cast<std::size_t>(pa)] -
                                 at.values[static_cast<std::size_t>(pb)]));
        ++pa;
        ++pb;
      } else if (ra < rb) {
        d = std::max(d, std::abs(values[static_cast<std::size_t>(pa)]));
        ++pa;
      } else {
        d = std::max(d, std::abs(at.values[static_cast<std::size_t>(pb)]));
        ++pb;
      }
    }
  }
  return d;
}

Cplx SparseCS::coeff(int row, int col) const {
  for (int p = col_ptr[static_cast<std::size_t>(col)]; p < col_ptr[static_cast<std::size_t>(col) + 1]; ++p) {
    if (row_idx[static_cast<std::size_t>(p)] == row) return values[static_cast<std::size_t>(p)];
  }
  return 0.0;
}

void write_matrix_market(const SparseCS& m, std::ostream& os) {
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << m.n << " " << m.n << " " << m.nnz() << "\n";
  char buf[128];
  for (int c = 0; c < m.n; ++c) {
    for (int p = m.col_ptr[static_cast<std::size_t>(c)]; p < m.col_ptr[static_cast<std::size_t>(c) + 1]; ++p) {
      const Cplx v = m.values[static_cast<std::size_t>(p)];
      std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g\n",
                    m.row_idx[static_cast<std::size_t>(p)] + 1, c + 1, v.real(), v.imag());
      os << buf;
    }
  }
}

void write_matrix_market(const SparseCS& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix_market(m, os);
}

SparseCS read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("matrix market: empty stream");
  if (line.find("%%MatrixMarket") != 0 || line.find("coordinate") == std::string::npos ||
      line.find("complex") == std::string::npos) {
    throw std::runtime_error("matrix market: unsupported header: " + line);
  }
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream hs(line);
  long rows = 0, cols = 0, nnz = 0;
  hs >> rows >> cols >> nnz;
  if (rows != cols || rows <= 0) throw std::runtime_error("matrix market: expected square matrix");
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(nnz));
  for (long k = 0; k < nnz; ++k) {
    long r = 0, c = 0;
    double re = 0.0, im = 0.0;
    if (!(is >> r >> c >> re >> im)) throw std::runtime_error("matrix market: truncated data");
    t.push_back({static_cast<int>(r - 1), static_cast<int>(c - 1), Cplx{re, im}});
  }
  return SparseCS::from_triplets(static_cast<int>(rows), std::move(t));
}

SparseCS read_matrix_market(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_matrix_market(is);
}

}  // namespace btlab
