#include "gist/losses.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace gist {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// 1 / (1 + exp(-z)) without overflow.
double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

Loss::Loss(LossKind kind, SparseMatrix x, DenseVector y)
    : kind_(kind), x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() == 0 || x_.cols() == 0)
    throw std::invalid_argument("Loss: empty design matrix");
  if (y_.size() != x_.rows())
    throw std::invalid_argument("Loss: target length must equal row count");
  for (double yi : y_) {
    if (!std::isfinite(yi)) throw std::invalid_argument("Loss: non-finite target");
    if (kind_ == LossKind::Logistic && yi != 1.0 && yi != -1.0)
      throw std::invalid_argument("Loss: logistic labels must be exactly +-1");
  }
}

double Loss::value(const DenseVector& w) const {
  const DenseVector margins = matvec(x_, w);
  const double n = static_cast<double>(samples());
  if (kind_ == LossKind::LeastSquares) {
    double acc = 0.0;
    for (std::size_t i = 0; i < margins.size(); ++i) {
      const double r = margins[i] - y_[i];
      acc += r * r;
    }
    return acc / (2.0 * n);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < margins.size(); ++i)
    acc += softplus(-y_[i] * margins[i]);
  return acc / n;
}

DenseVector Loss::gradient(const DenseVector& w) const {
  const DenseVector margins = matvec(x_, w);
  const double n = static_cast<double>(samples());
  DenseVector coeff(margins.size());
  if (kind_ == LossKind::LeastSquares) {
    for (std::size_t i = 0; i < margins.size(); ++i)
      coeff[i] = (margins[i] - y_[i]) / n;
  } else {
    for (std::size_t i = 0; i < margins.size(); ++i)
      coeff[i] = -y_[i] * sigmoid(-y_[i] * margins[i]) / n;
  }
  return matvec_transpose(x_, coeff);
}

double Loss::lipschitz_bound() const {
  // Power iteration on X^T X with a fixed seed for reproducibility.
  std::mt19937_64 rng(0x9157b30dULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseVector v(dim());
  for (double& vi : v) vi = gauss(rng);

  double eig = 0.0;
  for (int it = 0; it < 200; ++it) {
    DenseVector xv = matvec(x_, v);
    const double num = norm_sq(xv);  // v^T X^T X v with ||v|| = 1
    const double vv = norm_sq(v);
    if (vv == 0.0 || num == 0.0) return 0.0;
    const double est = num / vv;
    DenseVector next = matvec_transpose(x_, xv);
    const double scale = std::sqrt(norm_sq(next));
    if (scale == 0.0) return 0.0;
    for (double& ni : next) ni /= scale;
    v = std::move(next);
    if (it > 0 && std::fabs(est - eig) <= 1e-8 * std::max(1.0, est)) {
      eig = est;
      break;
    }
    eig = est;
  }
  const double n = static_cast<double>(samples());
  const double factor = kind_ == LossKind::LeastSquares ? 1.0 : 0.25;
  return 1.01 * factor * eig / n;
}

}  // namespace gist
