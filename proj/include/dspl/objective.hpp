#ifndef DSPL_OBJECTIVE_HPP
#define DSPL_OBJECTIVE_HPP

#include <vector>

#include <Eigen/Core>

#include "dspl/types.hpp"

namespace dspl {

// Prediction rule g(w, x) paired with a pointwise loss L(y, y_hat).
// The virtual batch entry points exist so the solver's hot loop is a
// couple of matrix products instead of a virtual call per instance;
// the defaults just loop over columns.
class LossModel {
 public:
  virtual ~LossModel() = default;

  virtual double predict(const Eigen::VectorXd& w,
                         const Eigen::VectorXd& x) const = 0;
  virtual double loss(double y, double y_hat) const = 0;

  // Gradient of L(y, g(w, x)) with respect to w, for one instance.
  virtual Eigen::VectorXd loss_grad(const Eigen::VectorXd& w,
                                    const Eigen::VectorXd& x,
                                    double y) const = 0;

  // Predictions for every column of X.
  virtual void predict_batch(const Eigen::VectorXd& w,
                             const Eigen::MatrixXd& X,
                             Eigen::VectorXd& out) const;

  // Elementwise losses for paired vectors.
  virtual void loss_batch(const Eigen::VectorXd& y,
                          const Eigen::VectorXd& y_hat,
                          Eigen::VectorXd& out) const;

  // True when the per-batch model subproblem is the squared-loss
  // linear case with an exact normal-equations solution.
  virtual bool has_closed_form() const { return false; }
};

// g(w, x) = w'x with L(y, y_hat) = (y - y_hat)^2.
class SquaredLossLinearModel final : public LossModel {
 public:
  double predict(const Eigen::VectorXd& w,
                 const Eigen::VectorXd& x) const override;
  double loss(double y, double y_hat) const override;
  Eigen::VectorXd loss_grad(const Eigen::VectorXd& w, const Eigen::VectorXd& x,
                            double y) const override;
  void predict_batch(const Eigen::VectorXd& w, const Eigen::MatrixXd& X,
                     Eigen::VectorXd& out) const override;
  void loss_batch(const Eigen::VectorXd& y, const Eigen::VectorXd& y_hat,
                  Eigen::VectorXd& out) const override;
  bool has_closed_form() const override { return true; }
};

// Shared default model instance.
const LossModel& squared_loss_model();

// Per-instance losses of w on one batch.
Eigen::VectorXd instance_losses(const Batch& batch, const Eigen::VectorXd& w,
                                const LossModel& model);

// Weighted batch objective: sum_j v_j * L(y_j, g(w, x_j)) - lambda * sum_j v_j.
double batch_objective(const Batch& batch, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& v, double lambda,
                       const LossModel& model);

// One batch's share of the augmented Lagrangian: the batch objective
// plus alpha'(w - z) + (rho/2) * ||w - z||^2.
double lagrangian_term(const Batch& batch, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& alpha, const Eigen::VectorXd& z,
                       const Eigen::VectorXd& v, double lambda, double rho,
                       const LossModel& model);

// Full augmented Lagrangian: ||z||^2 plus every batch's term, summed
// in batch order.
double evaluate_lagrangian(const std::vector<Batch>& batches,
                           const ConsensusState& state, double rho,
                           const LossModel& model);

}  // namespace dspl

#endif  // DSPL_OBJECTIVE_HPP
