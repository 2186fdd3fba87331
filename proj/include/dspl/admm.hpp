#ifndef DSPL_ADMM_HPP
#define DSPL_ADMM_HPP

#include <vector>

#include <Eigen/Core>

#include "dspl/objective.hpp"
#include "dspl/parallel.hpp"
#include "dspl/types.hpp"

namespace dspl {

// Squared norms of the primal and dual residuals.
struct Residuals {
  double r_sq = 0.0;
  double s_sq = 0.0;
};

// Exact minimizer of one batch's model subproblem for squared loss:
// solves (2 sum_j v_j x_j x_j' + rho I) w = 2 sum_j v_j y_j x_j - alpha + rho z.
// The rho I term keeps the system positive definite even with v = 0.
Eigen::VectorXd update_w_closed_form(const Batch& batch,
                                     const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& alpha,
                                     const Eigen::VectorXd& z, double rho);

// Iterative minimizer of the same subproblem for any differentiable
// loss model; starts from z. Barzilai-Borwein steps with a backtracking
// safeguard. Throws DescentFailure (carrying the last iterate) when the
// iteration cap is hit before the gradient is driven down.
Eigen::VectorXd update_w_generic(const Batch& batch, const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& alpha,
                                 const Eigen::VectorXd& z, double rho,
                                 const LossModel& model);

// Consensus update: z = (rho * sum_i w_i + sum_i alpha_i) / (2 + rho m),
// the exact minimizer of the augmented Lagrangian over z. Sums run in
// batch order.
Eigen::VectorXd update_z(const std::vector<Eigen::VectorXd>& w,
                         const std::vector<Eigen::VectorXd>& alpha,
                         double rho);

// Dual ascent step: alpha + rho * (w - z).
Eigen::VectorXd update_alpha(const Eigen::VectorXd& alpha,
                             const Eigen::VectorXd& w,
                             const Eigen::VectorXd& z, double rho);

// r_sq = sum_i ||w_i - z_new||^2, s_sq = m * rho^2 * ||z_new - z_old||^2.
Residuals compute_residuals(const std::vector<Eigen::VectorXd>& w,
                            const Eigen::VectorXd& z_new,
                            const Eigen::VectorXd& z_old, double rho);

// Residual balancing: doubles rho when the primal residual dominates
// (r > 10 s), halves it when the dual residual dominates (10 r < s).
// Compares unsquared norms.
double adapt_rho(double rho, const Residuals& res);

struct InnerResult {
  bool converged = false;
  int iterations = 0;
};

// One inner consensus pass sequence for fixed pace: repeats
//   z update -> per-batch w updates (parallel) ->
//   [optional v refresh + refactor when interleave_v] ->
//   per-batch dual updates (parallel) -> residuals -> trace record
// until r_sq < eps_r and s_sq < eps_s or params.max_inner is reached.
// Hitting the cap is reported, not fatal. rho is read and, under
// adaptive_rho, written back so the caller can carry it across rounds.
// Appends one IterationRecord per pass to trace, labelled with outer.
// A null pool runs single-threaded.
InnerResult run_inner_admm(const std::vector<Batch>& batches,
                           ConsensusState& state, const HyperParams& params,
                           const LossModel& model, double& rho,
                           std::vector<IterationRecord>& trace, int outer = 0,
                           ThreadPool* pool = nullptr);

}  // namespace dspl

#endif  // DSPL_ADMM_HPP
