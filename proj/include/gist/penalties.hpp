#pragma once

#include <utility>

#include "gist/kernels.hpp"
#include "gist/linalg.hpp"

namespace gist {

enum class PenaltyFamily { L1, Lsp, Scad, Mcp, CappedL1 };

// Separable sparsity penalty r(w) = sum_i r_i(w_i) with a DC decomposition
// r = r1 - r2 (r1 = lambda*|.|_1 for every supported family) and a
// closed-form scalar proximal operator.
//
// Parameter domain: lambda > 0 for all families; theta > 0 for LSP, MCP and
// capped-L1; theta > 2 for SCAD; theta unused for L1.
class Penalty {
 public:
  Penalty(PenaltyFamily family, double lambda, double theta = 1.0);

  PenaltyFamily family() const { return family_; }
  double lambda() const { return lambda_; }
  double theta() const { return theta_; }

  // r_i at one coordinate.
  double value_at(double w) const;
  // (r1_i, r2_i) at one coordinate; value_at(w) == first - second.
  std::pair<double, double> dc_parts_at(double w) const;
  // One element of the subdifferential of r2_i; the derivative where r2_i is
  // differentiable, 0 at the kinks.
  double r2_derivative_at(double w) const;

  double value(const DenseVector& w) const;
  std::pair<double, double> dc_parts(const DenseVector& w) const;
  DenseVector r2_subgradient(const DenseVector& w) const;

  // Global minimizer of h(w) = 0.5*(w-u)^2 + r(w)/t, t > 0. Ties between
  // candidates (within 1e-12 in h) resolve to the smaller |w|, then to the
  // nonnegative one; capped-L1 keeps its stated x1-first rule.
  double prox_scalar(double u, double t) const;
  // Coordinate-wise prox_scalar.
  DenseVector prox(const DenseVector& u, double t) const;

 private:
  PenaltyFamily family_;
  double lambda_;
  double theta_;
};

// Independent check for prox_scalar: argmin of h over the uniform grid on
// [-B, B], B = |u| + lambda/t + theta + 1. Returns the minimizing grid point.
double grid_prox_oracle(const Penalty& p, double u, double t, double grid_step);

// The grid oracle's h value at its minimizer (avoids re-evaluating r).
kernels::GridScanResult grid_prox_scan(const Penalty& p, double u, double t,
                                       double grid_step);

// Value of h(w) = 0.5*(w-u)^2 + r(w)/t for a scalar w.
double prox_objective(const Penalty& p, double w, double u, double t);

}  // namespace gist
