#pragma once

#include <cstddef>
#include <vector>

namespace gist {

// Dense column vector. Plain std::vector<double>; the finite-entry invariant
// is enforced on the I/O paths that construct vectors from external data.
using DenseVector = std::vector<double>;

// Compressed sparse-row matrix. Immutable after construction; the solver only
// needs row-wise products and transpose products.
class SparseMatrix {
 public:
  // Validates the CSR invariants: monotone offsets, in-range and strictly
  // increasing column indices within each row, finite values. Throws
  // std::invalid_argument on violation.
  SparseMatrix(std::size_t n_rows, std::size_t n_cols,
               std::vector<std::size_t> row_offsets,
               std::vector<std::size_t> col_indices,
               std::vector<double> values);

  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  std::size_t nnz() const { return values_.size(); }
  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<std::size_t>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

// A * v. Throws std::invalid_argument on dimension mismatch.
DenseVector matvec(const SparseMatrix& a, const DenseVector& v);
// A^T * v.
DenseVector matvec_transpose(const SparseMatrix& a, const DenseVector& v);

double dot(const DenseVector& a, const DenseVector& b);
double norm_sq(const DenseVector& a);
// y += alpha * x
void axpy(double alpha, const DenseVector& x, DenseVector& y);
DenseVector sub(const DenseVector& a, const DenseVector& b);

}  // namespace gist
