#include "gist/penalties.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gist {

namespace {

double sgn(double w) { return w < 0.0 ? -1.0 : 1.0; }

kernels::ProxFamily to_kernel_family(PenaltyFamily f) {
  switch (f) {
    case PenaltyFamily::L1: return kernels::ProxFamily::L1;
    case PenaltyFamily::Lsp: return kernels::ProxFamily::Lsp;
    case PenaltyFamily::Scad: return kernels::ProxFamily::Scad;
    case PenaltyFamily::Mcp: return kernels::ProxFamily::Mcp;
    case PenaltyFamily::CappedL1: return kernels::ProxFamily::CappedL1;
  }
  throw std::logic_error("unknown penalty family");
}

}  // namespace

Penalty::Penalty(PenaltyFamily family, double lambda, double theta)
    : family_(family), lambda_(lambda), theta_(theta) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("Penalty: lambda must be positive");
  switch (family) {
    case PenaltyFamily::L1:
      break;
    case PenaltyFamily::Scad:
      if (!(theta > 2.0) || !std::isfinite(theta))
        throw std::invalid_argument("Penalty: SCAD requires theta > 2");
      break;
    default:
      if (!(theta > 0.0) || !std::isfinite(theta))
        throw std::invalid_argument("Penalty: theta must be positive");
  }
}

double Penalty::value_at(double w) const {
  return kernels::scalar::penalty_point(to_kernel_family(family_), w, lambda_,
                                        theta_);
}

std::pair<double, double> Penalty::dc_parts_at(double w) const {
  const double a = std::fabs(w);
  const double r1 = lambda_ * a;
  double r2 = 0.0;
  switch (family_) {
    case PenaltyFamily::L1:
      break;
    case PenaltyFamily::Lsp:
      r2 = lambda_ * (a - std::log1p(a / theta_));
      break;
    case PenaltyFamily::Scad:
      if (a <= lambda_)
        r2 = 0.0;
      else if (a <= theta_ * lambda_)
        r2 = (w * w - 2.0 * lambda_ * a + lambda_ * lambda_) /
             (2.0 * (theta_ - 1.0));
      else
        r2 = lambda_ * a - (theta_ + 1.0) * lambda_ * lambda_ / 2.0;
      break;
    case PenaltyFamily::Mcp:
      if (a <= theta_ * lambda_)
        r2 = w * w / (2.0 * theta_);
      else
        r2 = lambda_ * a - theta_ * lambda_ * lambda_ / 2.0;
      break;
    case PenaltyFamily::CappedL1:
      r2 = lambda_ * std::max(0.0, a - theta_);
      break;
  }
  return {r1, r2};
}

double Penalty::r2_derivative_at(double w) const {
  if (w == 0.0) return 0.0;
  const double a = std::fabs(w);
  const double s = sgn(w);
  switch (family_) {
    case PenaltyFamily::L1:
      return 0.0;
    case PenaltyFamily::Lsp:
      return lambda_ * s * (1.0 - 1.0 / (theta_ + a));
    case PenaltyFamily::Scad:
      if (a <= lambda_) return 0.0;
      if (a <= theta_ * lambda_) return (w - lambda_ * s) / (theta_ - 1.0);
      return lambda_ * s;
    case PenaltyFamily::Mcp:
      if (a <= theta_ * lambda_) return w / theta_;
      return lambda_ * s;
    case PenaltyFamily::CappedL1:
      return a > theta_ ? lambda_ * s : 0.0;
  }
  return 0.0;
}

double Penalty::value(const DenseVector& w) const {
  double acc = 0.0;
  for (double wi : w) acc += value_at(wi);
  return acc;
}

std::pair<double, double> Penalty::dc_parts(const DenseVector& w) const {
  double r1 = 0.0, r2 = 0.0;
  for (double wi : w) {
    auto [a, b] = dc_parts_at(wi);
    r1 += a;
    r2 += b;
  }
  return {r1, r2};
}

DenseVector Penalty::r2_subgradient(const DenseVector& w) const {
  DenseVector s(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) s[i] = r2_derivative_at(w[i]);
  return s;
}

double prox_objective(const Penalty& p, double w, double u, double t) {
  const double d = w - u;
  return 0.5 * d * d + p.value_at(w) / t;
}

namespace {

// argmin over a small candidate set; on ties within 1e-12 in h prefer the
// candidate with smaller |w|, then the nonnegative one.
double pick_candidate(const Penalty& p, const double* cands, int n, double u,
                      double t) {
  double best_w = cands[0];
  double best_h = prox_objective(p, cands[0], u, t);
  for (int i = 1; i < n; ++i) {
    const double h = prox_objective(p, cands[i], u, t);
    if (h < best_h - 1e-12) {
      best_h = h;
      best_w = cands[i];
    } else if (h <= best_h + 1e-12) {
      const double cw = cands[i];
      const bool smaller = std::fabs(cw) < std::fabs(best_w) - 1e-12;
      const bool equal_mag = std::fabs(std::fabs(cw) - std::fabs(best_w)) <= 1e-12;
      if (smaller || (equal_mag && cw >= 0.0 && best_w < 0.0)) {
        best_h = std::min(best_h, h);
        best_w = cw;
      }
    }
  }
  return best_w;
}

}  // namespace

double Penalty::prox_scalar(double u, double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("prox_scalar: t must be positive");
  if (u == 0.0) u = 0.0;  // normalize -0
  const double s = sgn(u);
  const double a = std::fabs(u);
  const double lam = lambda_, th = theta_;

  switch (family_) {
    case PenaltyFamily::L1:
      return s * std::max(0.0, a - lam / t);

    case PenaltyFamily::Lsp: {
      // Stationary points of 0.5*(x-|u|)^2 + (lam/t)*log(1+x/theta) on x>=0
      // are roots of x^2 + (theta-|u|)x + lam/t - |u|*theta = 0.
      double cands[3] = {0.0, 0.0, 0.0};
      int n = 1;
      const double disc = t * t * (a - th) * (a - th) - 4.0 * t * (lam - t * a * th);
      if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        cands[n++] = s * std::max(0.0, (t * (a - th) + root) / (2.0 * t));
        cands[n++] = s * std::max(0.0, (t * (a - th) - root) / (2.0 * t));
      }
      return pick_candidate(*this, cands, n, u, t);
    }

    case PenaltyFamily::Scad: {
      // Branch candidates for h = 0.5*(w-u)^2 + r(w)/t. The interior
      // stationary point of the middle branch exists only when the branch
      // is strictly convex, i.e. t*(theta-1) > 1; the branch endpoints are
      // always included, which also covers the concave/linear cases.
      double cands[5];
      int n = 0;
      cands[n++] = s * std::min(lam, std::max(0.0, a - lam / t));
      cands[n++] = s * lam;
      cands[n++] = s * th * lam;
      const double den = t * (th - 1.0) - 1.0;
      if (den > 0.0) {
        const double x = (t * a * (th - 1.0) - th * lam) / den;
        cands[n++] = s * std::clamp(x, lam, th * lam);
      }
      cands[n++] = s * std::max(th * lam, a);
      return pick_candidate(*this, cands, n, u, t);
    }

    case PenaltyFamily::Mcp: {
      // Inner branch is strictly convex iff theta*t > 1.
      double cands[4];
      int n = 0;
      cands[n++] = 0.0;
      cands[n++] = s * th * lam;
      const double den = th * t - 1.0;
      if (den > 0.0) {
        const double x = th * (t * a - lam) / den;
        cands[n++] = s * std::clamp(x, 0.0, th * lam);
      }
      cands[n++] = s * std::max(th * lam, a);
      return pick_candidate(*this, cands, n, u, t);
    }

    case PenaltyFamily::CappedL1: {
      const double x1 = s * std::max(th, a);
      const double x2 = s * std::min(th, std::max(0.0, a - lam / t));
      return prox_objective(*this, x1, u, t) <= prox_objective(*this, x2, u, t)
                 ? x1
                 : x2;
    }
  }
  throw std::logic_error("unknown penalty family");
}

DenseVector Penalty::prox(const DenseVector& u, double t) const {
  DenseVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = prox_scalar(u[i], t);
  return out;
}

kernels::GridScanResult grid_prox_scan(const Penalty& p, double u, double t,
                                       double grid_step) {
  if (!(grid_step > 0.0))
    throw std::invalid_argument("grid_prox_scan: grid_step must be positive");
  const double bound = std::fabs(u) + p.lambda() / t + p.theta() + 1.0;
  const auto count = static_cast<std::size_t>(2.0 * bound / grid_step) + 1;
  return kernels::grid_scan_prox(to_kernel_family(p.family()), u, t,
                                 p.lambda(), p.theta(), -bound, grid_step,
                                 count);
}

double grid_prox_oracle(const Penalty& p, double u, double t,
                        double grid_step) {
  const double bound = std::fabs(u) + p.lambda() / t + p.theta() + 1.0;
  const auto res = grid_prox_scan(p, u, t, grid_step);
  return -bound + static_cast<double>(res.index) * grid_step;
}

}  // namespace gist
