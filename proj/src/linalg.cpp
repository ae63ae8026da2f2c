#include "gist/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "gist/kernels.hpp"

namespace gist {

SparseMatrix::SparseMatrix(std::size_t n_rows, std::size_t n_cols,
                           std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> col_indices,
                           std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != n_rows_ + 1)
    throw std::invalid_argument("SparseMatrix: row_offsets must have n_rows+1 entries");
  if (row_offsets_.front() != 0)
    throw std::invalid_argument("SparseMatrix: row_offsets[0] must be 0");
  if (row_offsets_.back() != values_.size() || col_indices_.size() != values_.size())
    throw std::invalid_argument("SparseMatrix: offset/index/value lengths disagree");
  for (std::size_t r = 0; r < n_rows_; ++r) {
    if (row_offsets_[r] > row_offsets_[r + 1])
      throw std::invalid_argument("SparseMatrix: row_offsets must be non-decreasing");
    for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      if (col_indices_[k] >= n_cols_)
        throw std::invalid_argument("SparseMatrix: column index out of range");
      if (k > row_offsets_[r] && col_indices_[k] <= col_indices_[k - 1])
        throw std::invalid_argument(
            "SparseMatrix: column indices must be strictly increasing within a row");
      if (!std::isfinite(values_[k]))
        throw std::invalid_argument("SparseMatrix: non-finite value");
    }
  }
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::size_t> offsets(n + 1), cols(n);
  std::vector<double> vals(n, 1.0);
  for (std::size_t i = 0; i <= n; ++i) offsets[i] = i;
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

namespace {
void require_len(const DenseVector& v, std::size_t len, const char* what) {
  if (v.size() != len)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(v.size()) + " vs " +
                                std::to_string(len) + ")");
}
}  // namespace

DenseVector matvec(const SparseMatrix& a, const DenseVector& v) {
  require_len(v, a.cols(), "matvec");
  DenseVector out(a.rows(), 0.0);
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double acc = 0.0;
    for (std::size_t k = off[r]; k < off[r + 1]; ++k) acc += val[k] * v[col[k]];
    out[r] = acc;
  }
  return out;
}

DenseVector matvec_transpose(const SparseMatrix& a, const DenseVector& v) {
  require_len(v, a.rows(), "matvec_transpose");
  DenseVector out(a.cols(), 0.0);
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double vr = v[r];
    if (vr == 0.0) continue;
    for (std::size_t k = off[r]; k < off[r + 1]; ++k) out[col[k]] += val[k] * vr;
  }
  return out;
}

double dot(const DenseVector& a, const DenseVector& b) {
  require_len(b, a.size(), "dot");
  return kernels::dot(a.data(), b.data(), a.size());
}

double norm_sq(const DenseVector& a) {
  return kernels::norm_sq(a.data(), a.size());
}

void axpy(double alpha, const DenseVector& x, DenseVector& y) {
  require_len(y, x.size(), "axpy");
  kernels::axpy(alpha, x.data(), y.data(), x.size());
}

DenseVector sub(const DenseVector& a, const DenseVector& b) {
  require_len(b, a.size(), "sub");
  DenseVector out(a.size());
  kernels::sub(a.data(), b.data(), out.data(), a.size());
  return out;
}

}  // namespace gist
