#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gist/linalg.hpp"
#include "gist/losses.hpp"
#include "gist/penalties.hpp"

namespace gist {

enum class StepInit { ConstantOne, PreviousT, BarzilaiBorwein };
enum class LineSearch { Monotone, NonMonotone };
enum class Termination { RelativeChange, MaxIters, LineSearchExhausted };

struct SolverConfig {
  double eta = 2.0;            // line-search growth factor, > 1
  double sigma = 1e-5;         // sufficient-decrease constant, in (0,1)
  std::size_t window_m = 5;    // non-monotone memory, > 1
  double t_min = 1e-30;
  double t_max = 1e30;
  StepInit step_init = StepInit::BarzilaiBorwein;
  LineSearch line_search = LineSearch::Monotone;
  std::size_t max_outer_iters = 1000;
  double rel_tol = 1e-5;
  std::size_t max_line_search_trials = 100;

  // Throws std::invalid_argument on violated parameter constraints.
  void validate() const;
};

struct IterationRecord {
  std::size_t k = 0;
  double objective = 0.0;        // f(w^(k+1)) as recorded for the trace
  double t_accepted = 0.0;
  std::size_t line_search_trials = 0;
  double delta_w_norm_sq = 0.0;  // ||w^(k+1) - w^(k)||^2
  double elapsed_seconds = 0.0;
  std::size_t stage = 0;         // outer stage, nonzero only for multi-stage runs
};

struct SolveResult {
  DenseVector w_final;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::MaxIters;
  double critical_point_residual = 0.0;
  double initial_objective = 0.0;  // f(w^(0)), lets traces be re-verified
};

// BB step parameter: clamp(<x,y>/<x,x>, t_min, t_max); t_min when the
// quotient is non-positive, non-finite, or <x,x> = 0.
double bb_init(const DenseVector& x_k, const DenseVector& y_k, double t_min,
               double t_max);

// Monotone acceptance: f_next <= f_curr - (sigma/2) * t * delta_sq.
bool check_monotone(double f_next, double f_curr, double t, double delta_sq,
                    double sigma);

// Non-monotone acceptance against the max of the recent accepted objectives.
// Throws std::invalid_argument if the window is empty.
bool check_nonmonotone(double f_next, const std::vector<double>& recent_objectives,
                       double t, double delta_sq, double sigma);

// One proximal-gradient step: prox(penalty, w_k - grad l(w_k)/t, t).
DenseVector gist_step(const Loss& loss, const Penalty& penalty,
                      const DenseVector& w_k, double t);

// Max-norm violation of 0 in grad l(w) + d r1(w) - s2(w), using the
// deterministic r2 subgradient choice; an upper bound on the true violation.
double critical_point_residual(const Loss& loss, const Penalty& penalty,
                               const DenseVector& w);

SolveResult solve(const Loss& loss, const Penalty& penalty,
                  const SolverConfig& config, const DenseVector& w0);

// Generic driver shared by the GIST solver and the baselines: outer loop,
// step-parameter initialization, line search and trace recording around an
// arbitrary smooth part and step map.
struct ProximalProblem {
  std::function<double(const DenseVector&)> smooth_value;
  std::function<DenseVector(const DenseVector&)> smooth_gradient;
  std::function<double(const DenseVector&)> nonsmooth_value;
  // (w_k, grad at w_k, t) -> trial iterate
  std::function<DenseVector(const DenseVector&, const DenseVector&, double)> step;
  // Optional objective recorded in the trace instead of the line-search
  // objective (used by multi-stage runs to log the true objective).
  std::function<double(const DenseVector&)> trace_objective;
};

SolveResult run_proximal_loop(const ProximalProblem& problem,
                              const SolverConfig& config,
                              const DenseVector& w0);

}  // namespace gist
