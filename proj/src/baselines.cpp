#include "gist/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace gist {

namespace {

// Soft threshold applied to u = w - (grad - s2)/t with threshold lambda/t;
// s2 may be null when the shift is already folded into the gradient.
DenseVector l1_shifted_step(const DenseVector& w, const DenseVector& grad,
                            const DenseVector* s2, double lambda, double t) {
  DenseVector out(w.size());
  const double thr = lambda / t;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double u = w[i] - (grad[i] - (s2 ? (*s2)[i] : 0.0)) / t;
    const double a = std::fabs(u) - thr;
    out[i] = a > 0.0 ? (u > 0.0 ? a : -a) : 0.0;
  }
  return out;
}

}  // namespace

DenseVector scp_step(const Loss& loss, const Penalty& penalty,
                     const DenseVector& w_k, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("scp_step: t must be positive");
  const DenseVector grad = loss.gradient(w_k);
  const DenseVector s2 = penalty.r2_subgradient(w_k);
  return l1_shifted_step(w_k, grad, &s2, penalty.lambda(), t);
}

SolveResult scp_solve(const Loss& loss, const Penalty& penalty,
                      const SolverConfig& config, const DenseVector& w0) {
  if (w0.size() != loss.dim())
    throw std::invalid_argument("scp_solve: w0 length must equal feature count");
  ProximalProblem problem;
  problem.smooth_value = [&loss](const DenseVector& w) { return loss.value(w); };
  problem.smooth_gradient = [&loss](const DenseVector& w) {
    return loss.gradient(w);
  };
  problem.nonsmooth_value = [&penalty](const DenseVector& w) {
    return penalty.value(w);
  };
  problem.step = [&loss, &penalty](const DenseVector& w, const DenseVector& grad,
                                   double t) {
    const DenseVector s2 = penalty.r2_subgradient(w);
    return l1_shifted_step(w, grad, &s2, penalty.lambda(), t);
  };
  SolveResult result = run_proximal_loop(problem, config, w0);
  result.critical_point_residual =
      critical_point_residual(loss, penalty, result.w_final);
  return result;
}

SolveResult ms_solve(const Loss& loss, const Penalty& penalty,
                     const MsConfig& ms_config, const DenseVector& w0) {
  if (ms_config.outer_iters == 0)
    throw std::invalid_argument("ms_solve: outer_iters must be >= 1");
  if (ms_config.inner.line_search != LineSearch::Monotone)
    throw std::invalid_argument("ms_solve: inner solver must use Monotone mode");
  if (w0.size() != loss.dim())
    throw std::invalid_argument("ms_solve: w0 length must equal feature count");

  auto f_true = [&](const DenseVector& w) {
    return loss.value(w) + penalty.value(w);
  };

  SolveResult result;
  DenseVector w = w0;
  double f_prev = f_true(w);
  result.initial_objective = f_prev;
  result.termination = Termination::MaxIters;

  std::size_t global_iter = 0;
  double elapsed_offset = 0.0;
  for (std::size_t stage = 1; stage <= ms_config.outer_iters; ++stage) {
    const DenseVector s2 = penalty.r2_subgradient(w);

    ProximalProblem inner;
    inner.smooth_value = [&loss, &s2](const DenseVector& v) {
      return loss.value(v) - dot(s2, v);
    };
    inner.smooth_gradient = [&loss, &s2](const DenseVector& v) {
      DenseVector g = loss.gradient(v);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= s2[i];
      return g;
    };
    const double lam = penalty.lambda();
    inner.nonsmooth_value = [lam](const DenseVector& v) {
      double acc = 0.0;
      for (double vi : v) acc += std::fabs(vi);
      return lam * acc;
    };
    inner.step = [lam](const DenseVector& v, const DenseVector& grad, double t) {
      return l1_shifted_step(v, grad, nullptr, lam, t);
    };
    inner.trace_objective = f_true;

    SolveResult stage_result = run_proximal_loop(inner, ms_config.inner, w);
    const double stage_base = elapsed_offset;
    for (IterationRecord rec : stage_result.trace) {
      rec.k = global_iter++;
      rec.stage = stage;
      rec.elapsed_seconds += stage_base;
      elapsed_offset = rec.elapsed_seconds;
      result.trace.push_back(rec);
    }
    w = std::move(stage_result.w_final);

    if (stage_result.termination == Termination::LineSearchExhausted) {
      result.termination = Termination::LineSearchExhausted;
      break;
    }

    const double f_new = f_true(w);
    const double rel = std::fabs(f_new - f_prev) / std::max(1.0, std::fabs(f_prev));
    f_prev = f_new;
    if (rel < ms_config.inner.rel_tol) {
      result.termination = Termination::RelativeChange;
      break;
    }
  }

  result.w_final = std::move(w);
  result.critical_point_residual =
      critical_point_residual(loss, penalty, result.w_final);
  return result;
}

}  // namespace gist
