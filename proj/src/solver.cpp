#include "gist/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace gist {

void SolverConfig::validate() const {
  if (!(eta > 1.0)) throw std::invalid_argument("SolverConfig: eta must be > 1");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("SolverConfig: sigma must be in (0,1)");
  if (window_m <= 1) throw std::invalid_argument("SolverConfig: window_m must be > 1");
  if (!(t_min > 0.0 && t_min < t_max))
    throw std::invalid_argument("SolverConfig: need 0 < t_min < t_max");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("SolverConfig: rel_tol must be > 0");
  if (max_line_search_trials == 0)
    throw std::invalid_argument("SolverConfig: max_line_search_trials must be >= 1");
}

double bb_init(const DenseVector& x_k, const DenseVector& y_k, double t_min,
               double t_max) {
  const double xx = norm_sq(x_k);
  const double xy = dot(x_k, y_k);
  if (xx == 0.0) return t_min;
  const double q = xy / xx;
  if (!std::isfinite(q) || q <= 0.0) return t_min;
  return std::clamp(q, t_min, t_max);
}

bool check_monotone(double f_next, double f_curr, double t, double delta_sq,
                    double sigma) {
  return f_next <= f_curr - 0.5 * sigma * t * delta_sq;
}

bool check_nonmonotone(double f_next, const std::vector<double>& recent_objectives,
                       double t, double delta_sq, double sigma) {
  if (recent_objectives.empty())
    throw std::invalid_argument("check_nonmonotone: empty objective window");
  const double f_max =
      *std::max_element(recent_objectives.begin(), recent_objectives.end());
  return f_next <= f_max - 0.5 * sigma * t * delta_sq;
}

DenseVector gist_step(const Loss& loss, const Penalty& penalty,
                      const DenseVector& w_k, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("gist_step: t must be positive");
  DenseVector u = loss.gradient(w_k);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = w_k[i] - u[i] / t;
  return penalty.prox(u, t);
}

double critical_point_residual(const Loss& loss, const Penalty& penalty,
                               const DenseVector& w) {
  // r1 = lambda*|.|_1 for every supported family, so the inclusion reads
  // 0 in g_i + lambda*sign(w_i) at nonzeros and |g_i| <= lambda at zeros,
  // with g = grad l(w) - s2(w).
  DenseVector g = loss.gradient(w);
  const DenseVector s2 = penalty.r2_subgradient(w);
  const double lam = penalty.lambda();
  double res = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double gi = g[i] - s2[i];
    double vi;
    if (w[i] != 0.0)
      vi = std::fabs(gi + (w[i] > 0.0 ? lam : -lam));
    else
      vi = std::max(0.0, std::fabs(gi) - lam);
    res = std::max(res, vi);
  }
  return res;
}

SolveResult run_proximal_loop(const ProximalProblem& problem,
                              const SolverConfig& config,
                              const DenseVector& w0) {
  config.validate();
  for (double wi : w0)
    if (!std::isfinite(wi))
      throw std::invalid_argument("solve: starting point must be finite");

  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&t_start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
        .count();
  };

  SolveResult result;
  DenseVector w = w0;
  DenseVector grad = problem.smooth_gradient(w);
  double f_curr = problem.smooth_value(w) + problem.nonsmooth_value(w);
  result.initial_objective = f_curr;

  std::deque<double> window{f_curr};  // accepted objectives, most recent last
  double t_prev = 1.0;
  DenseVector bb_x, bb_y;  // iterate and gradient differences
  bool have_bb = false;

  result.termination = Termination::MaxIters;
  for (std::size_t k = 0; k < config.max_outer_iters; ++k) {
    double t0 = 1.0;
    switch (config.step_init) {
      case StepInit::ConstantOne:
        t0 = 1.0;
        break;
      case StepInit::PreviousT:
        t0 = k == 0 ? 1.0 : t_prev;
        break;
      case StepInit::BarzilaiBorwein:
        t0 = have_bb ? bb_init(bb_x, bb_y, config.t_min, config.t_max) : 1.0;
        break;
    }
    double t = std::clamp(t0, config.t_min, config.t_max);

    DenseVector w_next;
    double f_next = 0.0, delta_sq = 0.0;
    bool accepted = false;
    std::size_t trials = 0;
    for (; trials < config.max_line_search_trials; ) {
      ++trials;
      w_next = problem.step(w, grad, t);
      delta_sq = norm_sq(sub(w_next, w));
      f_next = problem.smooth_value(w_next) + problem.nonsmooth_value(w_next);
      if (config.line_search == LineSearch::Monotone) {
        accepted = check_monotone(f_next, f_curr, t, delta_sq, config.sigma);
      } else {
        accepted = check_nonmonotone(
            f_next, {window.begin(), window.end()}, t, delta_sq, config.sigma);
      }
      if (accepted) break;
      t *= config.eta;
    }
    if (!accepted) {
      result.termination = Termination::LineSearchExhausted;
      break;
    }

    IterationRecord rec;
    rec.k = k;
    rec.objective =
        problem.trace_objective ? problem.trace_objective(w_next) : f_next;
    rec.t_accepted = t;
    rec.line_search_trials = trials;
    rec.delta_w_norm_sq = delta_sq;
    rec.elapsed_seconds = elapsed();
    result.trace.push_back(rec);

    DenseVector grad_next = problem.smooth_gradient(w_next);
    bb_x = sub(w_next, w);
    bb_y = sub(grad_next, grad);
    have_bb = true;

    const double rel = std::fabs(f_next - f_curr) / std::max(1.0, std::fabs(f_curr));
    w = std::move(w_next);
    grad = std::move(grad_next);
    t_prev = t;
    window.push_back(f_next);
    while (window.size() > config.window_m) window.pop_front();
    f_curr = f_next;

    if (rel < config.rel_tol) {
      result.termination = Termination::RelativeChange;
      break;
    }
  }

  result.w_final = std::move(w);
  return result;
}

SolveResult solve(const Loss& loss, const Penalty& penalty,
                  const SolverConfig& config, const DenseVector& w0) {
  if (w0.size() != loss.dim())
    throw std::invalid_argument("solve: w0 length must equal feature count");
  ProximalProblem problem;
  problem.smooth_value = [&loss](const DenseVector& w) { return loss.value(w); };
  problem.smooth_gradient = [&loss](const DenseVector& w) {
    return loss.gradient(w);
  };
  problem.nonsmooth_value = [&penalty](const DenseVector& w) {
    return penalty.value(w);
  };
  problem.step = [&penalty](const DenseVector& w, const DenseVector& grad,
                            double t) {
    DenseVector u(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) u[i] = w[i] - grad[i] / t;
    return penalty.prox(u, t);
  };
  SolveResult result = run_proximal_loop(problem, config, w0);
  result.critical_point_residual =
      critical_point_residual(loss, penalty, result.w_final);
  return result;
}

}  // namespace gist
