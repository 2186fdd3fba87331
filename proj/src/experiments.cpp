#include "dspl/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <utility>

#include "dspl/csv.hpp"
#include "dspl/dspl.hpp"
#include "dspl/metrics.hpp"
#include "dspl/parallel.hpp"
#include "dspl/spl.hpp"

namespace dspl {

namespace {

bool known_solver(const std::string& name) {
  return name == "dspl" || name == "spl" || name == "ols";
}

std::string sanitize_message(std::string text) {
  for (char& c : text) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

// Runs one solver on one dataset, capturing failures as row state.
SweepRow run_cell(const SynthDataset& data, const std::string& solver,
                  const SweepConfig& config) {
  SweepRow row;
  row.solver = solver;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (solver == "dspl") {
      FitResult fit = fit_dspl(data.batches, config.dspl_params);
      row.error = l2_recovery_error(fit.z(), data.w_star);
      row.lagrangian = fit.report.final_lagrangian;
      row.iterations = fit.report.inner_iterations;
    } else if (solver == "spl") {
      SplResult fit = fit_spl(data.batches, config.spl_params);
      row.error = l2_recovery_error(fit.w, data.w_star);
      row.lagrangian = fit.report.final_lagrangian;
      row.iterations = fit.report.outer_rounds;
    } else {
      Eigen::VectorXd w = fit_ols(data.batches, config.ols_ridge);
      row.error = l2_recovery_error(w, data.w_star);
      row.iterations = 1;
    }
  } catch (const std::exception& e) {
    row.ok = false;
    row.message = sanitize_message(e.what());
  }
  row.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return row;
}

SynthConfig base_synth_config(const SweepConfig& config, std::uint64_t seed) {
  SynthConfig synth;
  synth.p = config.p;
  synth.n_per_batch = config.batch_sizes();
  synth.noise_sigma = config.noise_sigma;
  synth.corruption_scale = config.corruption_scale;
  synth.seed = seed;
  return synth;
}

}  // namespace

void SweepConfig::validate() const {
  if (p < 1) throw ParameterError("p must be at least 1");
  if (num_batches < 1) throw ParameterError("num_batches must be at least 1");
  if (n_total < num_batches) {
    throw ParameterError("n_total must provide at least one row per batch");
  }
  if (seeds.empty()) throw ParameterError("seeds must not be empty");
  if (solvers.empty()) throw ParameterError("solvers must not be empty");
  for (const auto& s : solvers) {
    if (!known_solver(s)) {
      throw ParameterError("unknown solver '" + s +
                           "'; expected dspl, spl, or ols");
    }
  }
  if (ols_ridge < 0) throw ParameterError("ols_ridge must be nonnegative");
  if (workers < 1) throw ParameterError("workers must be at least 1");
  dspl_params.validate();
  spl_params.validate();
}

std::vector<int> SweepConfig::batch_sizes() const {
  const int base = n_total / num_batches;
  const int extra = n_total % num_batches;
  std::vector<int> sizes(num_batches, base);
  for (int i = 0; i < extra; ++i) sizes[i] += 1;
  return sizes;
}

SweepConfig default_sweep_config() {
  SweepConfig config;
  config.spl_params.lambda0 = config.spl_params.tau_lambda;
  return config;
}

bool SweepTable::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return r.ok; });
}

double SweepTable::mean_error(const std::string& solver, double key) const {
  double sum = 0.0;
  int count = 0;
  for (const auto& row : rows) {
    if (row.ok && row.solver == solver && row.key == key) {
      sum += row.error;
      ++count;
    }
  }
  if (count == 0) {
    throw ParameterError("no successful rows for solver '" + solver + "'");
  }
  return sum / count;
}

SweepTable run_sweep_corruption(const SweepConfig& config) {
  config.validate();
  for (double r : config.ratios) {
    if (r < 0 || r > 1) {
      throw ParameterError("corruption ratios must lie in [0, 1]");
    }
  }
  SweepTable table;
  table.key_name = "ratio";
  const int cells = static_cast<int>(config.ratios.size() *
                                     config.seeds.size());
  const int per_cell = static_cast<int>(config.solvers.size());
  table.rows.resize(static_cast<std::size_t>(cells) * per_cell);

  ThreadPool pool(config.workers);
  pool.parallel_for(cells, [&](int cell) {
    const std::size_t ri = cell / config.seeds.size();
    const std::size_t si = cell % config.seeds.size();
    SynthConfig synth = base_synth_config(config, config.seeds[si]);
    synth.corruption_ratio = {config.ratios[ri]};
    const SynthDataset data = generate(synth);
    for (int oi = 0; oi < per_cell; ++oi) {
      SweepRow row = run_cell(data, config.solvers[oi], config);
      row.key = config.ratios[ri];
      row.seed = config.seeds[si];
      table.rows[static_cast<std::size_t>(cell) * per_cell + oi] =
          std::move(row);
    }
  });
  return table;
}

SweepTable run_sweep_batches(const SweepConfig& config) {
  config.validate();
  for (int k : config.k_values) {
    if (k < 0 || k > config.num_batches) {
      throw ParameterError("k values must lie in [0, num_batches]");
    }
  }
  SweepTable table;
  table.key_name = "k";
  const int cells = static_cast<int>(config.k_values.size() *
                                     config.seeds.size());
  const int per_cell = static_cast<int>(config.solvers.size());
  table.rows.resize(static_cast<std::size_t>(cells) * per_cell);

  ThreadPool pool(config.workers);
  pool.parallel_for(cells, [&](int cell) {
    const std::size_t ki = cell / config.seeds.size();
    const std::size_t si = cell % config.seeds.size();
    const int k = config.k_values[ki];

    // k heavily corrupted batches among the rest, placed by a
    // dedicated draw so placement varies across seeds but stays clear
    // of the generator's own streams.
    std::vector<double> ratios(config.num_batches, 0.1);
    std::fill(ratios.begin(), ratios.begin() + k, 0.9);
    auto eng =
        seed_stream(config.seeds[si], 100000u + static_cast<std::uint32_t>(k));
    std::shuffle(ratios.begin(), ratios.end(), eng);

    SynthConfig synth = base_synth_config(config, config.seeds[si]);
    synth.corruption_ratio = ratios;
    const SynthDataset data = generate(synth);
    for (int oi = 0; oi < per_cell; ++oi) {
      SweepRow row = run_cell(data, config.solvers[oi], config);
      row.key = k;
      row.seed = config.seeds[si];
      table.rows[static_cast<std::size_t>(cell) * per_cell + oi] =
          std::move(row);
    }
  });
  return table;
}

SweepTable run_sweep_lambda(const SweepConfig& config) {
  config.validate();
  for (double t : config.taus) {
    if (!(t > 0)) throw ParameterError("tau values must be positive");
  }
  if (config.lambda_seeds.empty()) {
    throw ParameterError("lambda_seeds must not be empty");
  }
  SweepTable table;
  table.key_name = "tau_lambda";
  table.has_lagrangian = true;
  const int cells = static_cast<int>(config.taus.size() *
                                     config.lambda_seeds.size());
  table.rows.resize(cells);

  ThreadPool pool(config.workers);
  pool.parallel_for(cells, [&](int cell) {
    const std::size_t ti = cell / config.lambda_seeds.size();
    const std::size_t si = cell % config.lambda_seeds.size();

    SynthConfig synth = base_synth_config(config, config.lambda_seeds[si]);
    synth.corruption_ratio = {0.9};
    const SynthDataset data = generate(synth);

    SweepConfig cell_config = config;
    cell_config.dspl_params.tau_lambda = config.taus[ti];
    // Keep the pace start below its ceiling.
    cell_config.dspl_params.lambda0 =
        std::min(config.dspl_params.lambda0, config.taus[ti]);

    SweepRow row = run_cell(data, "dspl", cell_config);
    row.key = config.taus[ti];
    row.seed = config.lambda_seeds[si];
    table.rows[cell] = std::move(row);
  });
  return table;
}

void write_sweep_csv(const SweepTable& table, const std::string& path) {
  CsvTable csv;
  csv.header = {table.key_name, "solver", "seed",
                "error",        "wall_time", "iterations"};
  if (table.has_lagrangian) csv.header.push_back("lagrangian");
  csv.header.push_back("status");
  for (const auto& row : table.rows) {
    std::vector<std::string> cells = {
        format_double(row.key), row.solver, std::to_string(row.seed)};
    if (row.ok) {
      cells.push_back(format_double(row.error));
      cells.push_back(format_double(row.wall_time));
      cells.push_back(std::to_string(row.iterations));
      if (table.has_lagrangian) cells.push_back(format_double(row.lagrangian));
      cells.push_back("ok");
    } else {
      cells.push_back("");
      cells.push_back(format_double(row.wall_time));
      cells.push_back("");
      if (table.has_lagrangian) cells.push_back("");
      cells.push_back(row.message.empty() ? "failed" : row.message);
    }
    csv.rows.push_back(std::move(cells));
  }
  write_csv(path, csv.header, csv.rows);
}

void write_sweep_summary_csv(const SweepTable& table,
                             const std::string& path) {
  struct Cell {
    double key;
    std::string solver;
    double error_sum = 0.0;
    double lagrangian_sum = 0.0;
    int ok_count = 0;
    int failed = 0;
  };
  std::vector<Cell> cells;
  for (const auto& row : table.rows) {
    auto it = std::find_if(cells.begin(), cells.end(), [&](const Cell& c) {
      return c.key == row.key && c.solver == row.solver;
    });
    if (it == cells.end()) {
      cells.push_back({row.key, row.solver, 0.0, 0.0, 0, 0});
      it = std::prev(cells.end());
    }
    if (row.ok) {
      it->error_sum += row.error;
      it->lagrangian_sum += row.lagrangian;
      it->ok_count += 1;
    } else {
      it->failed += 1;
    }
  }

  CsvTable csv;
  csv.header = {table.key_name, "solver", "runs", "failures", "mean_error"};
  if (table.has_lagrangian) csv.header.push_back("mean_lagrangian");
  for (const auto& cell : cells) {
    std::vector<std::string> out = {
        format_double(cell.key), cell.solver,
        std::to_string(cell.ok_count + cell.failed),
        std::to_string(cell.failed),
        cell.ok_count > 0 ? format_double(cell.error_sum / cell.ok_count)
                          : std::string()};
    if (table.has_lagrangian) {
      out.push_back(cell.ok_count > 0
                        ? format_double(cell.lagrangian_sum / cell.ok_count)
                        : std::string());
    }
    csv.rows.push_back(std::move(out));
  }
  write_csv(path, csv.header, csv.rows);
}

}  // namespace dspl
