#include "dspl/admm.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "dspl/spl.hpp"

namespace {

// Cached normal-equations pieces for one batch. The data part (G, c)
// depends only on v; the factorization also depends on rho. Keeping
// them separate lets adaptive-rho steps refactor without touching the
// O(n p^2) data products.
struct BatchSolver {
  Eigen::MatrixXd G;  // 2 * sum_j v_j x_j x_j'
  Eigen::VectorXd c;  // 2 * sum_j v_j y_j x_j
  Eigen::LLT<Eigen::MatrixXd> llt;

  void build(const dspl::Batch& batch, const Eigen::VectorXd& v) {
    G.noalias() = 2.0 * (batch.X * v.asDiagonal() * batch.X.transpose());
    c.noalias() = 2.0 * (batch.X * v.cwiseProduct(batch.y));
  }

  void factor(double rho) {
    Eigen::MatrixXd A = G;
    A.diagonal().array() += rho;
    llt.compute(A);
    if (llt.info() != Eigen::Success) {
      throw dspl::SolveError("Cholesky factorization failed in the w update");
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& alpha, const Eigen::VectorXd& z,
                        double rho) const {
    return llt.solve(c - alpha + rho * z);
  }
};

void check_w_inputs(const dspl::Batch& batch, const Eigen::VectorXd& v,
                    const Eigen::VectorXd& alpha, const Eigen::VectorXd& z,
                    double rho) {
  if (rho <= 0) throw dspl::ParameterError("rho must be positive");
  if (v.size() != batch.y.size()) {
    throw dspl::ContractViolation("weight vector length does not match batch");
  }
  if (alpha.size() != batch.X.rows() || z.size() != batch.X.rows()) {
    throw dspl::ContractViolation("alpha / z length does not match features");
  }
  if (!v.allFinite() || !alpha.allFinite() || !z.allFinite()) {
    throw dspl::ContractViolation("non-finite input to the w update");
  }
}

}  // namespace

namespace dspl {

Eigen::VectorXd update_w_closed_form(const Batch& batch,
                                     const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& alpha,
                                     const Eigen::VectorXd& z, double rho) {
  check_w_inputs(batch, v, alpha, z, rho);
  BatchSolver s;
  s.build(batch, v);
  s.factor(rho);
  return s.solve(alpha, z, rho);
}

Eigen::VectorXd update_w_generic(const Batch& batch, const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& alpha,
                                 const Eigen::VectorXd& z, double rho,
                                 const LossModel& model) {
  check_w_inputs(batch, v, alpha, z, rho);
  const Eigen::Index n = batch.y.size();

  // Subproblem objective and gradient; the pace term is constant in w
  // and omitted.
  const auto objective = [&](const Eigen::VectorXd& w) {
    Eigen::VectorXd y_hat, losses;
    model.predict_batch(w, batch.X, y_hat);
    model.loss_batch(batch.y, y_hat, losses);
    const Eigen::VectorXd d = w - z;
    return v.dot(losses) + alpha.dot(d) + 0.5 * rho * d.squaredNorm();
  };
  const auto gradient = [&](const Eigen::VectorXd& w) {
    Eigen::VectorXd g = alpha + rho * (w - z);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (v[j] != 0.0) g += v[j] * model.loss_grad(w, batch.X.col(j), batch.y[j]);
    }
    return g;
  };

  Eigen::VectorXd w = z;
  Eigen::VectorXd g = gradient(w);
  double fw = objective(w);
  const double scale = 1.0 + g.norm();
  const double tol = 1e-10 * scale;        // target
  const double escape_tol = 1e-6 * scale;  // acceptable at a numeric stall
  double step = 1.0 / rho;
  constexpr int kMaxIters = 50000;

  for (int it = 0; it < kMaxIters; ++it) {
    const double gnorm = g.norm();
    if (gnorm <= tol) return w;

    // Backtracking line search along -g from the BB-sized trial step.
    double t = step;
    Eigen::VectorXd w_new;
    double f_new = 0.0;
    bool accepted = false;
    for (int half = 0; half < 60; ++half) {
      w_new = w - t * g;
      f_new = objective(w_new);
      if (f_new <= fw - 1e-4 * t * gnorm * gnorm) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // No measurable decrease left at this floating-point scale.
      if (gnorm <= escape_tol) return w;
      throw DescentFailure("line search stalled in the generic w update", w);
    }

    Eigen::VectorXd g_new = gradient(w_new);
    const Eigen::VectorXd s = w_new - w;
    const Eigen::VectorXd dg = g_new - g;
    const double sy = s.dot(dg);
    step = sy > 0 ? s.squaredNorm() / sy : t * 2.0;

    w = std::move(w_new);
    g = std::move(g_new);
    fw = f_new;
  }
  if (g.norm() <= escape_tol) return w;
  throw DescentFailure("iteration cap reached in the generic w update", w);
}

Eigen::VectorXd update_z(const std::vector<Eigen::VectorXd>& w,
                         const std::vector<Eigen::VectorXd>& alpha,
                         double rho) {
  if (w.empty() || w.size() != alpha.size()) {
    throw ParameterError("update_z needs matching non-empty w and alpha lists");
  }
  if (rho <= 0) throw ParameterError("rho must be positive");
  const auto m = static_cast<double>(w.size());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(w.front().size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += rho * w[i] + alpha[i];
  }
  return acc / (2.0 + rho * m);
}

Eigen::VectorXd update_alpha(const Eigen::VectorXd& alpha,
                             const Eigen::VectorXd& w,
                             const Eigen::VectorXd& z, double rho) {
  if (rho <= 0) throw ParameterError("rho must be positive");
  if (alpha.size() != w.size() || w.size() != z.size()) {
    throw ContractViolation("alpha, w, z lengths disagree");
  }
  return alpha + rho * (w - z);
}

Residuals compute_residuals(const std::vector<Eigen::VectorXd>& w,
                            const Eigen::VectorXd& z_new,
                            const Eigen::VectorXd& z_old, double rho) {
  if (z_new.size() != z_old.size()) {
    throw ContractViolation("z vectors have different lengths");
  }
  Residuals res;
  for (const Eigen::VectorXd& wi : w) {
    res.r_sq += (wi - z_new).squaredNorm();
  }
  const auto m = static_cast<double>(w.size());
  res.s_sq = m * rho * rho * (z_new - z_old).squaredNorm();
  return res;
}

double adapt_rho(double rho, const Residuals& res) {
  if (rho <= 0) throw ParameterError("rho must be positive");
  const double r = std::sqrt(res.r_sq);
  const double s = std::sqrt(res.s_sq);
  if (r > 10.0 * s) return 2.0 * rho;
  if (10.0 * r < s) return rho / 2.0;
  return rho;
}

InnerResult run_inner_admm(const std::vector<Batch>& batches,
                           ConsensusState& state, const HyperParams& params,
                           const LossModel& model, double& rho,
                           std::vector<IterationRecord>& trace, int outer,
                           ThreadPool* pool) {
  state.validate(batches);
  if (rho <= 0) throw ParameterError("rho must be positive");
  const int m = static_cast<int>(batches.size());
  const auto p = batches.front().X.rows();
  const double eps_r =
      params.eps_r > 0 ? params.eps_r : 1e-6 * static_cast<double>(p);
  const double eps_s =
      params.eps_s > 0 ? params.eps_s : 1e-6 * static_cast<double>(p);

  const bool closed_form = model.has_closed_form();
  std::vector<BatchSolver> solvers;
  const auto run = [&](int n, const std::function<void(int)>& fn) {
    if (pool) {
      pool->parallel_for(n, fn);
    } else {
      for (int i = 0; i < n; ++i) fn(i);
    }
  };
  if (closed_form) {
    solvers.resize(m);
    run(m, [&](int i) {
      solvers[i].build(batches[i], state.v[i]);
      solvers[i].factor(rho);
    });
  }

  std::vector<double> terms(m, 0.0);
  Eigen::VectorXd z_old;
  InnerResult result;

  for (int k = 0; k < params.max_inner; ++k) {
    z_old = state.z;
    state.z = update_z(state.w, state.alpha, rho);

    if (closed_form) {
      run(m, [&](int i) {
        state.w[i] = solvers[i].solve(state.alpha[i], state.z, rho);
      });
    } else {
      run(m, [&](int i) {
        state.w[i] = update_w_generic(batches[i], state.v[i], state.alpha[i],
                                      state.z, rho, model);
      });
    }

    if (params.interleave_v) {
      run(m, [&](int i) {
        state.v[i] =
            update_weights(batches[i], state.w[i], state.lambda, model);
        if (closed_form) {
          solvers[i].build(batches[i], state.v[i]);
          solvers[i].factor(rho);
        }
      });
    }

    run(m, [&](int i) {
      state.alpha[i] = update_alpha(state.alpha[i], state.w[i], state.z, rho);
    });

    const Residuals res = compute_residuals(state.w, state.z, z_old, rho);
    run(m, [&](int i) {
      terms[i] = lagrangian_term(batches[i], state.w[i], state.alpha[i],
                                 state.z, state.v[i], state.lambda, rho, model);
    });
    double lagr = state.z.squaredNorm();
    for (int i = 0; i < m; ++i) lagr += terms[i];

    ++result.iterations;
    trace.push_back({outer, k, lagr, res.r_sq, res.s_sq, state.lambda, rho,
                     active_counts(state.v)});

    if (!std::isfinite(lagr) || !std::isfinite(res.r_sq)) {
      throw DivergenceError(
          "augmented Lagrangian became non-finite at outer round " +
              std::to_string(outer) + ", inner pass " + std::to_string(k),
          trace);
    }
    if (res.r_sq < eps_r && res.s_sq < eps_s) {
      result.converged = true;
      break;
    }
    if (params.adaptive_rho) {
      const double next = adapt_rho(rho, res);
      if (next != rho) {
        rho = next;
        if (closed_form) {
          run(m, [&](int i) { solvers[i].factor(rho); });
        }
      }
    }
  }
  return result;
}

}  // namespace dspl
