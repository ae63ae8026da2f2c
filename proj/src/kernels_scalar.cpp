#include "gist/kernels.hpp"

#include <cmath>

namespace gist::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double norm_sq(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void sub(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

double penalty_point(ProxFamily family, double w, double lambda,
                     double theta) {
  const double a = std::fabs(w);
  switch (family) {
    case ProxFamily::L1:
      return lambda * a;
    case ProxFamily::Lsp:
      return lambda * std::log1p(a / theta);
    case ProxFamily::Scad: {
      if (a <= lambda) return lambda * a;
      if (a <= theta * lambda)
        return (-w * w + 2.0 * theta * lambda * a - lambda * lambda) /
               (2.0 * (theta - 1.0));
      return (theta + 1.0) * lambda * lambda / 2.0;
    }
    case ProxFamily::Mcp: {
      if (a <= theta * lambda) return lambda * a - w * w / (2.0 * theta);
      return theta * lambda * lambda / 2.0;
    }
    case ProxFamily::CappedL1:
      return lambda * std::min(a, theta);
  }
  return 0.0;
}

GridScanResult grid_scan_prox(ProxFamily family, double u, double t,
                              double lambda, double theta, double lo,
                              double step, std::size_t count) {
  const double inv_t = 1.0 / t;
  double best = 1.0 / 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double w = lo + static_cast<double>(i) * step;
    const double d = w - u;
    const double h = 0.5 * d * d + inv_t * penalty_point(family, w, lambda, theta);
    if (h < best) {
      best = h;
      best_i = i;
    }
  }
  return {best_i, best};
}

}  // namespace gist::kernels::scalar
