#ifndef DSPL_SPL_HPP
#define DSPL_SPL_HPP

#include <vector>

#include <Eigen/Core>

#include "dspl/objective.hpp"
#include "dspl/types.hpp"

namespace dspl {

// Hard pace threshold: v_j = 1 when the instance loss is strictly
// below lambda, else 0. A loss exactly equal to lambda excludes the
// instance. This is the exact minimizer of the weight subproblem,
// which is linear in each v_j.
Eigen::VectorXd update_weights(const Batch& batch, const Eigen::VectorXd& w,
                               double lambda, const LossModel& model);

struct SplResult {
  Eigen::VectorXd w;
  std::vector<Eigen::VectorXd> v;
  RunReport report;
};

// Single-machine self-paced baseline: alternates a pooled weighted
// ridge solve across all batches (no consensus split), the hard weight
// threshold per batch, and the pace step lambda <- min(lambda * mu,
// tau_lambda). Stops when the objective
//   ||w||^2 + sum_ij v_ij loss_ij - lambda sum_ij v_ij
// changes by less than eps_L (resolved to 1e-6 * (1 + |first
// objective|) when 0) or max_outer is reached. Trace rows carry the
// objective in the lagrangian field, one checkpoint per round.
SplResult fit_spl(const std::vector<Batch>& batches, const HyperParams& params,
                  const LossModel& model = squared_loss_model());

// Pooled ridge regression: minimizes sum ||y - X'w||^2 + ridge ||w||^2
// over all batches. ridge = 0 is plain least squares; a singular
// system then raises SolveError.
Eigen::VectorXd fit_ols(const std::vector<Batch>& batches, double ridge = 0.0);

}  // namespace dspl

#endif  // DSPL_SPL_HPP
