#ifndef DSPL_METRICS_HPP
#define DSPL_METRICS_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dspl/types.hpp"

namespace dspl {

// ||w_hat - w_star||_2.
double l2_recovery_error(const Eigen::VectorXd& w_hat,
                         const Eigen::VectorXd& w_star);

// (1/n) sum |y_hat_i - y_i|.
double mean_absolute_error(const Eigen::VectorXd& y_hat,
                           const Eigen::VectorXd& y);

// Cross-tabulation of the final instance weights against a known
// corruption mask (mask 1 = corrupted). Exclusion means v = 0.
struct WeightConfusion {
  long long true_exclusions = 0;   // v = 0 on corrupted
  long long false_exclusions = 0;  // v = 0 on clean
  long long true_inclusions = 0;   // v = 1 on clean
  long long false_inclusions = 0;  // v = 1 on corrupted

  long long total() const {
    return true_exclusions + false_exclusions + true_inclusions +
           false_inclusions;
  }
};

WeightConfusion weight_confusion(
    const std::vector<Eigen::VectorXd>& v,
    const std::vector<std::vector<std::uint8_t>>& mask);

}  // namespace dspl

#endif  // DSPL_METRICS_HPP
