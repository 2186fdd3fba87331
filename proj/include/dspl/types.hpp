#ifndef DSPL_TYPES_HPP
#define DSPL_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace dspl {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inputs that break a documented precondition (dimension mismatch,
// non-finite values, inconsistent state).
struct ContractViolation : Error {
  using Error::Error;
};

// Invalid configuration values (non-positive rho, mu <= 1, ...).
struct ParameterError : Error {
  using Error::Error;
};

// A linear solve that cannot be completed (singular system).
struct SolveError : Error {
  using Error::Error;
};

// Iterative descent failed to make progress; carries the last iterate
// so callers can inspect where it stalled.
struct DescentFailure : Error {
  DescentFailure(const std::string& msg, Eigen::VectorXd iterate)
      : Error(msg), last_iterate(std::move(iterate)) {}
  Eigen::VectorXd last_iterate;
};

// One mini-batch: X holds one instance per column (p x n_i), y the
// n_i responses.
struct Batch {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  int id = 0;

  int features() const { return static_cast<int>(X.rows()); }
  int size() const { return static_cast<int>(X.cols()); }

  // Throws ContractViolation on shape mismatch or non-finite entries.
  void validate() const;
};

// Validates a whole dataset: every batch well-formed, same feature
// count everywhere, at least one batch.
void validate_batches(const std::vector<Batch>& batches);

// Every knob the solver reads. Tolerances set to 0 mean "derive the
// documented default at fit time": eps_L becomes 1e-6 * (1 + |L0|)
// where L0 is the initial augmented Lagrangian, and eps_r / eps_s
// become 1e-6 * p.
struct HyperParams {
  double lambda0 = 0.1;      // initial pace
  double tau_lambda = 1.0;   // pace ceiling
  double mu = 1.1;           // pace growth factor, > 1
  double rho = 1.0;          // consensus penalty
  double eps_L = 0.0;        // outer stop: |L change| threshold (0 = auto)
  double eps_r = 0.0;        // inner stop: squared primal residual (0 = auto)
  double eps_s = 0.0;        // inner stop: squared dual residual (0 = auto)
  int max_outer = 200;
  int max_inner = 500;
  bool adaptive_rho = false;       // halve/double rho from residual imbalance
  bool interleave_v = false;       // refresh v inside the inner loop
  bool literal_lambda_step = false;  // allow the one-step pace overshoot
  int workers = 1;                 // threads for per-batch phases

  // Throws ParameterError when any field is out of range.
  void validate() const;
};

// Full optimizer state: per-batch models w[i], duals alpha[i], and
// instance weights v[i] (each entry exactly 0.0 or 1.0), plus the
// shared consensus vector z and the current pace lambda.
struct ConsensusState {
  std::vector<Eigen::VectorXd> w;
  Eigen::VectorXd z;
  std::vector<Eigen::VectorXd> alpha;
  std::vector<Eigen::VectorXd> v;
  double lambda = 0.0;

  int num_batches() const { return static_cast<int>(w.size()); }

  // Throws ContractViolation when sizes are inconsistent with the
  // dataset or any v entry is not 0/1.
  void validate(const std::vector<Batch>& batches) const;
};

// Fresh state for a dataset: w[i] = all-ones, z = 0, alpha[i] = 0,
// v[i] = all-ones, pace = lambda0.
ConsensusState make_initial_state(const std::vector<Batch>& batches,
                                  double lambda0);

// One row of the solver trace. inner == -1 marks an outer-level
// checkpoint (taken after the weight refresh); the leading record with
// outer == -1 is the initial state. Checkpoint rows recompute r_sq
// from the final iterates and carry s_sq = 0 (z does not move there).
struct IterationRecord {
  int outer = 0;
  int inner = -1;
  double lagrangian = 0.0;
  double r_sq = 0.0;
  double s_sq = 0.0;
  double lambda = 0.0;
  double rho = 0.0;
  std::vector<int> active_counts;  // per-batch count of v == 1
};

struct RunReport {
  std::vector<IterationRecord> iterations;
  Eigen::VectorXd final_z;
  std::vector<Eigen::VectorXd> final_v;
  bool converged = false;
  int outer_rounds = 0;
  long long inner_iterations = 0;
  double final_lagrangian = 0.0;
  double wall_time_seconds = 0.0;
};

// Thrown when the Lagrangian or an iterate turns non-finite; carries
// the trace collected up to that point.
struct DivergenceError : Error {
  DivergenceError(const std::string& msg, std::vector<IterationRecord> t)
      : Error(msg), trace(std::move(t)) {}
  std::vector<IterationRecord> trace;
};

// Result of a consensus fit: the final state (kept so callers can
// check per-batch consensus gaps), the consensus model z, the final
// weights, and the full trace.
struct FitResult {
  ConsensusState state;
  RunReport report;

  const Eigen::VectorXd& z() const { return report.final_z; }
  const std::vector<Eigen::VectorXd>& v() const { return report.final_v; }
};

// Count of v == 1 entries per batch.
std::vector<int> active_counts(const std::vector<Eigen::VectorXd>& v);

}  // namespace dspl

#endif  // DSPL_TYPES_HPP
