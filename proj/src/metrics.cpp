#include "dspl/metrics.hpp"

namespace dspl {

double l2_recovery_error(const Eigen::VectorXd& w_hat,
                         const Eigen::VectorXd& w_star) {
  if (w_hat.size() != w_star.size()) {
    throw ContractViolation("recovery error needs equal-length vectors");
  }
  return (w_hat - w_star).norm();
}

double mean_absolute_error(const Eigen::VectorXd& y_hat,
                           const Eigen::VectorXd& y) {
  if (y_hat.size() != y.size()) {
    throw ContractViolation("MAE needs equal-length vectors");
  }
  if (y.size() == 0) throw ParameterError("MAE of empty vectors is undefined");
  return (y_hat - y).cwiseAbs().mean();
}

WeightConfusion weight_confusion(
    const std::vector<Eigen::VectorXd>& v,
    const std::vector<std::vector<std::uint8_t>>& mask) {
  if (v.size() != mask.size()) {
    throw ContractViolation("weight lists and masks have different lengths");
  }
  WeightConfusion c;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (static_cast<std::size_t>(v[i].size()) != mask[i].size()) {
      throw ContractViolation("weight/mask shape mismatch in batch " +
                              std::to_string(i));
    }
    for (Eigen::Index j = 0; j < v[i].size(); ++j) {
      const bool included = v[i][j] != 0.0;
      const bool corrupted = mask[i][static_cast<std::size_t>(j)] != 0;
      if (included && corrupted) ++c.false_inclusions;
      if (included && !corrupted) ++c.true_inclusions;
      if (!included && corrupted) ++c.true_exclusions;
      if (!included && !corrupted) ++c.false_exclusions;
    }
  }
  return c;
}

}  // namespace dspl
