#include "dspl/spl.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace dspl {

Eigen::VectorXd update_weights(const Batch& batch, const Eigen::VectorXd& w,
                               double lambda, const LossModel& model) {
  const Eigen::VectorXd losses = instance_losses(batch, w, model);
  Eigen::VectorXd v(losses.size());
  for (Eigen::Index j = 0; j < losses.size(); ++j) {
    v[j] = losses[j] < lambda ? 1.0 : 0.0;
  }
  return v;
}

namespace {

// Weighted pooled ridge solve: (I + sum_ij v_ij x x') w = sum_ij v_ij y x.
// The unit regularizer keeps the system positive definite under any v.
Eigen::VectorXd pooled_weighted_solve(const std::vector<Batch>& batches,
                                      const std::vector<Eigen::VectorXd>& v) {
  const Eigen::Index p = batches.front().X.rows();
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(p, p);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  for (std::size_t i = 0; i < batches.size(); ++i) {
    A.noalias() +=
        batches[i].X * v[i].asDiagonal() * batches[i].X.transpose();
    b.noalias() += batches[i].X * v[i].cwiseProduct(batches[i].y);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw SolveError("pooled ridge factorization failed");
  }
  return llt.solve(b);
}

}  // namespace

SplResult fit_spl(const std::vector<Batch>& batches, const HyperParams& params,
                  const LossModel& model) {
  const auto start = std::chrono::steady_clock::now();
  validate_batches(batches);
  params.validate();

  SplResult out;
  out.v.reserve(batches.size());
  for (const Batch& b : batches) {
    out.v.push_back(Eigen::VectorXd::Ones(b.y.size()));
  }
  double lambda = params.lambda0;
  double eps_L = params.eps_L;
  double obj_prev = 0.0;
  bool have_prev = false;

  for (int t = 0; t < params.max_outer; ++t) {
    out.w = pooled_weighted_solve(batches, out.v);
    for (std::size_t i = 0; i < batches.size(); ++i) {
      out.v[i] = update_weights(batches[i], out.w, lambda, model);
    }
    double obj = out.w.squaredNorm();
    for (std::size_t i = 0; i < batches.size(); ++i) {
      obj += batch_objective(batches[i], out.w, out.v[i], lambda, model);
    }
    out.report.iterations.push_back(
        {t, -1, obj, 0.0, 0.0, lambda, 0.0, active_counts(out.v)});
    out.report.outer_rounds = t + 1;
    if (!std::isfinite(obj)) {
      throw DivergenceError("baseline objective became non-finite",
                            out.report.iterations);
    }
    if (!have_prev) {
      if (eps_L <= 0) eps_L = 1e-6 * (1.0 + std::abs(obj));
      have_prev = true;
    } else if (std::abs(obj - obj_prev) < eps_L) {
      out.report.converged = true;
      out.report.final_lagrangian = obj;
      break;
    }
    obj_prev = obj;
    out.report.final_lagrangian = obj;
    lambda = std::min(lambda * params.mu, params.tau_lambda);
  }

  out.report.final_z = out.w;
  out.report.final_v = out.v;
  out.report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

Eigen::VectorXd fit_ols(const std::vector<Batch>& batches, double ridge) {
  validate_batches(batches);
  if (ridge < 0) throw ParameterError("ridge must be nonnegative");
  const Eigen::Index p = batches.front().X.rows();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  for (const Batch& batch : batches) {
    A.noalias() += batch.X * batch.X.transpose();
    b.noalias() += batch.X * batch.y;
  }
  A.diagonal().array() += ridge;
  // LLT alone does not reliably flag near-singular systems, so check
  // conditioning through a rank-revealing decomposition first.
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    throw SolveError("normal equations are singular; add a ridge term");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw SolveError("normal equations are not positive definite");
  }
  return llt.solve(b);
}

}  // namespace dspl
