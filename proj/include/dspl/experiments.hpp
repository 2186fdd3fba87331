#ifndef DSPL_EXPERIMENTS_HPP
#define DSPL_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dspl/datagen.hpp"
#include "dspl/types.hpp"

namespace dspl {

// Shared knobs for the sweep drivers. Each sweep only reads the
// fields it needs; the rest sit at their defaults.
struct SweepConfig {
  int p = 20;
  int num_batches = 10;
  int n_total = 2000;
  double noise_sigma = 0.3;
  double corruption_scale = 5.0;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

  HyperParams dspl_params;
  HyperParams spl_params;  // pace disabled by default: lambda0 == tau
  double ols_ridge = 0.0;
  std::vector<std::string> solvers = {"dspl", "spl", "ols"};

  // sweep_corruption: shared corruption ratio per run.
  std::vector<double> ratios = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

  // sweep_batches: k batches at ratio 0.9, the rest at 0.1.
  std::vector<int> k_values = {4, 5, 6, 7, 8, 9};

  // sweep_lambda: pace ceilings to compare at fixed 0.9 corruption.
  std::vector<double> taus = {0.0316, 0.1, 0.316, 1.0, 3.16, 10.0};
  std::vector<std::uint64_t> lambda_seeds = {0};

  // Worker threads for running sweep cells side by side. Solver-level
  // threading stays under HyperParams::workers.
  int workers = 1;

  void validate() const;
  std::vector<int> batch_sizes() const;
};

SweepConfig default_sweep_config();

// One solver run inside a sweep. A failed run keeps its row with
// ok = false and the failure text; the sweep itself carries on.
struct SweepRow {
  double key = 0.0;  // ratio, k, or tau_lambda depending on the sweep
  std::string solver;
  std::uint64_t seed = 0;
  bool ok = true;
  std::string message;
  double error = 0.0;
  double lagrangian = 0.0;  // final objective value; 0 for ols
  double wall_time = 0.0;
  long long iterations = 0;
};

struct SweepTable {
  std::string key_name;  // column header for SweepRow::key
  bool has_lagrangian = false;
  std::vector<SweepRow> rows;

  bool all_ok() const;
  // Mean error over seeds for one (key, solver) cell; failed runs are
  // excluded. Throws ParameterError when the cell has no usable rows.
  double mean_error(const std::string& solver, double key) const;
};

SweepTable run_sweep_corruption(const SweepConfig& config);
SweepTable run_sweep_batches(const SweepConfig& config);
SweepTable run_sweep_lambda(const SweepConfig& config);

// Raw per-run rows; columns <key>,solver,seed,error,wall_time,
// iterations[,lagrangian],status.
void write_sweep_csv(const SweepTable& table, const std::string& path);
// Per-(key, solver) means over seeds.
void write_sweep_summary_csv(const SweepTable& table, const std::string& path);

}  // namespace dspl

#endif  // DSPL_EXPERIMENTS_HPP
