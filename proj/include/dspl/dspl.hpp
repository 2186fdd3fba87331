#ifndef DSPL_DSPL_HPP
#define DSPL_DSPL_HPP

#include <vector>

#include "dspl/admm.hpp"
#include "dspl/objective.hpp"
#include "dspl/types.hpp"

namespace dspl {

// Pace schedule. The default caps in one step: min(lambda * mu,
// tau_lambda). With literal_lambda_step the two-branch rule is applied
// as stated (lambda * mu when below the ceiling, else the ceiling),
// which can overshoot tau_lambda for one round before snapping back.
double lambda_step(double lambda, const HyperParams& params);

// Full solver: starting from w_i = ones, v_i = ones, alpha_i = 0,
// repeats { inner consensus rounds -> per-batch weight refresh against
// the local w_i -> convergence check -> pace step } and returns the
// consensus z as the model. The outer loop stops once the augmented
// Lagrangian change drops below eps_L with the pace already saturated
// at tau_lambda, or at max_outer (reported as non-converged). Under
// adaptive_rho the penalty carries across outer rounds. Throws
// DivergenceError (trace attached) if the Lagrangian turns non-finite.
FitResult fit_dspl(const std::vector<Batch>& batches,
                   const HyperParams& params,
                   const LossModel& model = squared_loss_model());

}  // namespace dspl

#endif  // DSPL_DSPL_HPP
