#pragma once

#include "gist/solver.hpp"

namespace gist {

// Sequential convex programming step: r2 is linearized at w_k, leaving an
// l1-prox of the shifted gradient point. Collapses to gist_step when r2 = 0.
DenseVector scp_step(const Loss& loss, const Penalty& penalty,
                     const DenseVector& w_k, double t);

// Same outer machinery as solve() with scp_step in place of the GIST step;
// line-search acceptance is evaluated on the true objective f.
SolveResult scp_solve(const Loss& loss, const Penalty& penalty,
                      const SolverConfig& config, const DenseVector& w0);

struct MsConfig {
  std::size_t outer_iters = 10;
  SolverConfig inner;  // must use Monotone line search
};

// Multi-stage convex relaxation: each stage freezes s2 = r2 subgradient at
// the current iterate and solves the convex problem
//   min_w l(w) + lambda*||w||_1 - <s2, w>
// with the proximal-gradient machinery. Stops early when the relative change
// of the true objective f across stages drops below inner.rel_tol. Trace
// records one row per inner iteration with the true objective and the stage
// index (1-based).
SolveResult ms_solve(const Loss& loss, const Penalty& penalty,
                     const MsConfig& ms_config, const DenseVector& w0);

}  // namespace gist
