#include "dspl/dspl.hpp"

#include <chrono>
#include <cmath>
#include <memory>

#include "dspl/spl.hpp"

namespace dspl {

double lambda_step(double lambda, const HyperParams& params) {
  if (lambda <= 0) throw ParameterError("lambda must be positive");
  if (params.literal_lambda_step) {
    return lambda < params.tau_lambda ? lambda * params.mu : params.tau_lambda;
  }
  return std::min(lambda * params.mu, params.tau_lambda);
}

FitResult fit_dspl(const std::vector<Batch>& batches,
                   const HyperParams& params, const LossModel& model) {
  const auto start = std::chrono::steady_clock::now();
  params.validate();
  validate_batches(batches);

  const int m = static_cast<int>(batches.size());
  const auto p = batches.front().X.rows();

  FitResult out;
  out.state = make_initial_state(batches, params.lambda0);
  ConsensusState& state = out.state;
  RunReport& report = out.report;

  double rho = params.rho;
  const double L0 = evaluate_lagrangian(batches, state, rho, model);
  const double eps_L =
      params.eps_L > 0 ? params.eps_L : 1e-6 * (1.0 + std::abs(L0));
  HyperParams inner_params = params;
  inner_params.eps_r =
      params.eps_r > 0 ? params.eps_r : 1e-6 * static_cast<double>(p);
  inner_params.eps_s =
      params.eps_s > 0 ? params.eps_s : 1e-6 * static_cast<double>(p);

  report.iterations.push_back(
      {-1, -1, L0, 0.0, 0.0, state.lambda, rho, active_counts(state.v)});

  std::unique_ptr<ThreadPool> pool;
  if (params.workers > 1) pool = std::make_unique<ThreadPool>(params.workers);

  double L_prev = L0;
  double L_t = L0;
  for (int t = 0; t < params.max_outer; ++t) {
    const InnerResult inner = run_inner_admm(batches, state, inner_params,
                                             model, rho, report.iterations, t,
                                             pool.get());
    report.inner_iterations += inner.iterations;

    // Weight refresh against each batch's local model, then the
    // checkpoint the stopping rule reads.
    const auto refresh = [&](int i) {
      state.v[i] = update_weights(batches[i], state.w[i], state.lambda, model);
    };
    if (pool) {
      pool->parallel_for(m, refresh);
    } else {
      for (int i = 0; i < m; ++i) refresh(i);
    }

    L_t = evaluate_lagrangian(batches, state, rho, model);
    Residuals res = compute_residuals(state.w, state.z, state.z, rho);
    report.iterations.push_back({t, -1, L_t, res.r_sq, 0.0, state.lambda, rho,
                                 active_counts(state.v)});
    report.outer_rounds = t + 1;
    if (!std::isfinite(L_t)) {
      throw DivergenceError("augmented Lagrangian became non-finite after "
                            "the weight refresh of outer round " +
                                std::to_string(t),
                            report.iterations);
    }

    if (std::abs(L_t - L_prev) < eps_L && state.lambda >= params.tau_lambda) {
      report.converged = true;
      break;
    }
    L_prev = L_t;
    state.lambda = lambda_step(state.lambda, params);
  }

  report.final_z = state.z;
  report.final_v = state.v;
  report.final_lagrangian = L_t;
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace dspl
