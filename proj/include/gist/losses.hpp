#pragma once

#include "gist/linalg.hpp"

namespace gist {

enum class LossKind { LeastSquares, Logistic };

// Smooth data-fit term l(w).
//   LeastSquares: l(w) = ||Xw - y||^2 / (2n)
//   Logistic:     l(w) = (1/n) sum_i log(1 + exp(-y_i x_i^T w)), y_i in {-1,+1}
class Loss {
 public:
  // Throws std::invalid_argument if y length != rows, the matrix is empty,
  // or logistic labels are not exactly +-1.
  Loss(LossKind kind, SparseMatrix x, DenseVector y);

  LossKind kind() const { return kind_; }
  const SparseMatrix& x() const { return x_; }
  const DenseVector& y() const { return y_; }
  std::size_t samples() const { return x_.rows(); }
  std::size_t dim() const { return x_.cols(); }

  double value(const DenseVector& w) const;
  DenseVector gradient(const DenseVector& w) const;

  // Upper bound on the Lipschitz constant of the gradient:
  // lambda_max(X^T X)/n for least squares, lambda_max(X^T X)/(4n) for
  // logistic, estimated by power iteration and inflated by 1%.
  double lipschitz_bound() const;

 private:
  LossKind kind_;
  SparseMatrix x_;
  DenseVector y_;
};

}  // namespace gist
