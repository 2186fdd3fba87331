#include "dspl/objective.hpp"

namespace dspl {

void LossModel::predict_batch(const Eigen::VectorXd& w,
                              const Eigen::MatrixXd& X,
                              Eigen::VectorXd& out) const {
  out.resize(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    out[j] = predict(w, X.col(j));
  }
}

void LossModel::loss_batch(const Eigen::VectorXd& y,
                           const Eigen::VectorXd& y_hat,
                           Eigen::VectorXd& out) const {
  out.resize(y.size());
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    out[j] = loss(y[j], y_hat[j]);
  }
}

double SquaredLossLinearModel::predict(const Eigen::VectorXd& w,
                                       const Eigen::VectorXd& x) const {
  return w.dot(x);
}

double SquaredLossLinearModel::loss(double y, double y_hat) const {
  const double d = y - y_hat;
  return d * d;
}

Eigen::VectorXd SquaredLossLinearModel::loss_grad(const Eigen::VectorXd& w,
                                                  const Eigen::VectorXd& x,
                                                  double y) const {
  return 2.0 * (w.dot(x) - y) * x;
}

void SquaredLossLinearModel::predict_batch(const Eigen::VectorXd& w,
                                           const Eigen::MatrixXd& X,
                                           Eigen::VectorXd& out) const {
  out.noalias() = X.transpose() * w;
}

void SquaredLossLinearModel::loss_batch(const Eigen::VectorXd& y,
                                        const Eigen::VectorXd& y_hat,
                                        Eigen::VectorXd& out) const {
  out = (y - y_hat).array().square();
}

const LossModel& squared_loss_model() {
  static const SquaredLossLinearModel model;
  return model;
}

Eigen::VectorXd instance_losses(const Batch& batch, const Eigen::VectorXd& w,
                                const LossModel& model) {
  if (w.size() != batch.X.rows()) {
    throw ContractViolation("model vector length does not match features");
  }
  Eigen::VectorXd y_hat, losses;
  model.predict_batch(w, batch.X, y_hat);
  model.loss_batch(batch.y, y_hat, losses);
  return losses;
}

double batch_objective(const Batch& batch, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& v, double lambda,
                       const LossModel& model) {
  if (v.size() != batch.y.size()) {
    throw ContractViolation("weight vector length does not match batch size");
  }
  const Eigen::VectorXd losses = instance_losses(batch, w, model);
  return v.dot(losses) - lambda * v.sum();
}

double lagrangian_term(const Batch& batch, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& alpha, const Eigen::VectorXd& z,
                       const Eigen::VectorXd& v, double lambda, double rho,
                       const LossModel& model) {
  if (alpha.size() != w.size() || z.size() != w.size()) {
    throw ContractViolation("w, alpha, z lengths disagree");
  }
  const double data = batch_objective(batch, w, v, lambda, model);
  const Eigen::VectorXd d = w - z;
  return data + alpha.dot(d) + 0.5 * rho * d.squaredNorm();
}

double evaluate_lagrangian(const std::vector<Batch>& batches,
                           const ConsensusState& state, double rho,
                           const LossModel& model) {
  state.validate(batches);
  double total = state.z.squaredNorm();
  for (std::size_t i = 0; i < batches.size(); ++i) {
    total += lagrangian_term(batches[i], state.w[i], state.alpha[i], state.z,
                             state.v[i], state.lambda, rho, model);
  }
  return total;
}

}  // namespace dspl
