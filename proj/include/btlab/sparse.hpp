#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "btlab/common.hpp"

namespace btlab {

struct Triplet {
  int row = 0;
  int col = 0;
  Cplx value;
};

/// Square compressed-sparse-column complex matrix. Row indices are sorted per
/// column, duplicates summed at construction, explicit zeros dropped.
struct SparseCS {
  int n = 0;
  std::vector<int> col_ptr;   // size n+1
  std::vector<int> row_idx;   // size nnz
  std::vector<Cplx> values;   // size nnz

  static SparseCS from_triplets(int n, std::vector<Triplet> triplets);
  static SparseCS identity(int n);
  static SparseCS from_dense(const std::vector<Cplx>& a, int n, double drop_tol = 0.0);

  long nnz() const { return static_cast<long>(row_idx.size()); }
  void matvec(std::span<const Cplx> x, std::span<Cplx> y) const;  // y = A x
  std::vector<Cplx> apply(std::span<const Cplx> x) const;
  SparseCS transpose() const;
  /// Adds sigma to the diagonal (structural diagonal inserted if missing).
  SparseCS shifted(Cplx sigma) const;

  bool structurally_symmetric() const;
  /// max |A - A^T| entry.
  double symmetry_defect() const;
  Cplx coeff(int row, int col) const;
};

/// Matrix Market "matrix coordinate complex general" export / import.
void write_matrix_market(const SparseCS& m, std::ostream& os);
void write_matrix_market(const SparseCS& m, const std::string& path);
SparseCS read_matrix_market(std::istream& is);
SparseCS read_matrix_market(const std::string& path);

}  // namespace btlab
