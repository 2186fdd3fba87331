#include "dspl/types.hpp"

namespace dspl {

void Batch::validate() const {
  if (X.rows() < 1 || X.cols() < 1) {
    throw ContractViolation("batch " + std::to_string(id) +
                            ": X must be at least 1x1");
  }
  if (X.cols() != y.size()) {
    throw ContractViolation("batch " + std::to_string(id) + ": X has " +
                            std::to_string(X.cols()) + " columns but y has " +
                            std::to_string(y.size()) + " entries");
  }
  if (!X.allFinite() || !y.allFinite()) {
    throw ContractViolation("batch " + std::to_string(id) +
                            ": non-finite entries");
  }
}

void validate_batches(const std::vector<Batch>& batches) {
  if (batches.empty()) {
    throw ContractViolation("dataset has no batches");
  }
  const Eigen::Index p = batches.front().X.rows();
  for (const Batch& b : batches) {
    b.validate();
    if (b.X.rows() != p) {
      throw ContractViolation("batch " + std::to_string(b.id) + " has " +
                              std::to_string(b.X.rows()) +
                              " features, expected " + std::to_string(p));
    }
  }
}

void HyperParams::validate() const {
  if (lambda0 <= 0) throw ParameterError("lambda0 must be positive");
  if (tau_lambda <= 0) throw ParameterError("tau_lambda must be positive");
  if (lambda0 > tau_lambda) {
    throw ParameterError("lambda0 must not exceed tau_lambda");
  }
  if (mu <= 1) throw ParameterError("mu must be greater than 1");
  if (rho <= 0) throw ParameterError("rho must be positive");
  if (eps_L < 0 || eps_r < 0 || eps_s < 0) {
    throw ParameterError("tolerances must be positive (or 0 for the default)");
  }
  if (max_outer < 1) throw ParameterError("max_outer must be at least 1");
  if (max_inner < 1) throw ParameterError("max_inner must be at least 1");
  if (workers < 1) throw ParameterError("workers must be at least 1");
}

void ConsensusState::validate(const std::vector<Batch>& batches) const {
  const std::size_t m = batches.size();
  if (w.size() != m || alpha.size() != m || v.size() != m) {
    throw ContractViolation("state lists do not match the batch count");
  }
  const Eigen::Index p = batches.empty() ? z.size() : batches.front().X.rows();
  if (z.size() != p) throw ContractViolation("z has wrong length");
  for (std::size_t i = 0; i < m; ++i) {
    if (w[i].size() != p) throw ContractViolation("w vector has wrong length");
    if (alpha[i].size() != p) {
      throw ContractViolation("alpha vector has wrong length");
    }
    if (v[i].size() != batches[i].y.size()) {
      throw ContractViolation("v vector has wrong length");
    }
    for (Eigen::Index j = 0; j < v[i].size(); ++j) {
      if (v[i][j] != 0.0 && v[i][j] != 1.0) {
        throw ContractViolation("v entries must be exactly 0 or 1");
      }
    }
  }
}

ConsensusState make_initial_state(const std::vector<Batch>& batches,
                                  double lambda0) {
  validate_batches(batches);
  const Eigen::Index p = batches.front().X.rows();
  ConsensusState s;
  s.z = Eigen::VectorXd::Zero(p);
  s.lambda = lambda0;
  s.w.reserve(batches.size());
  s.alpha.reserve(batches.size());
  s.v.reserve(batches.size());
  for (const Batch& b : batches) {
    s.w.push_back(Eigen::VectorXd::Ones(p));
    s.alpha.push_back(Eigen::VectorXd::Zero(p));
    s.v.push_back(Eigen::VectorXd::Ones(b.y.size()));
  }
  return s;
}

std::vector<int> active_counts(const std::vector<Eigen::VectorXd>& v) {
  std::vector<int> counts;
  counts.reserve(v.size());
  for (const Eigen::VectorXd& vi : v) {
    counts.push_back(static_cast<int>(vi.sum()));
  }
  return counts;
}

}  // namespace dspl
