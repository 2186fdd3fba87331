// Command-line front end: synthetic dataset generation, single solver
// runs on synthetic or CSV data, and the three experiment sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dspl/csv.hpp"
#include "dspl/datagen.hpp"
#include "dspl/dspl.hpp"
#include "dspl/experiments.hpp"
#include "dspl/metrics.hpp"
#include "dspl/report_json.hpp"
#include "dspl/spl.hpp"

namespace {

struct SynthFlags {
  int p = 20;
  int n_total = 2000;
  int num_batches = 10;
  std::vector<double> ratios = {0.4};
  double sigma = 0.3;
  double scale = 5.0;
  std::uint64_t seed = 0;
};

std::vector<int> split_sizes(int n_total, int num_batches) {
  if (num_batches < 1 || n_total < num_batches) {
    throw dspl::ParameterError("need at least one row per batch");
  }
  std::vector<int> sizes(num_batches, n_total / num_batches);
  for (int i = 0; i < n_total % num_batches; ++i) sizes[i] += 1;
  return sizes;
}

dspl::SynthConfig to_synth_config(const SynthFlags& f) {
  dspl::SynthConfig config;
  config.p = f.p;
  config.n_per_batch = split_sizes(f.n_total, f.num_batches);
  config.corruption_ratio = f.ratios;
  config.noise_sigma = f.sigma;
  config.corruption_scale = f.scale;
  config.seed = f.seed;
  return config;
}

// Registers the synthetic-data flags and returns them so callers can
// test whether any was set explicitly.
std::vector<CLI::Option*> add_synth_flags(CLI::App* cmd, SynthFlags& f) {
  std::vector<CLI::Option*> opts;
  opts.push_back(cmd->add_option("--p", f.p, "Feature dimension"));
  opts.push_back(cmd->add_option("--n", f.n_total, "Total instance count"));
  opts.push_back(cmd->add_option("--batches", f.num_batches, "Batch count"));
  opts.push_back(cmd->add_option("--ratio", f.ratios,
                                 "Corruption ratio; one value or one per "
                                 "batch")
                     ->delimiter(','));
  opts.push_back(cmd->add_option("--sigma", f.sigma, "Noise level"));
  opts.push_back(
      cmd->add_option("--scale", f.scale, "Corruption magnitude factor"));
  opts.push_back(cmd->add_option("--seed", f.seed, "Dataset seed"));
  return opts;
}

void add_hyper_flags(CLI::App* cmd, dspl::HyperParams& h) {
  cmd->add_option("--lambda0", h.lambda0, "Initial pace threshold");
  cmd->add_option("--tau-lambda", h.tau_lambda, "Pace ceiling");
  cmd->add_option("--mu", h.mu, "Pace growth factor");
  cmd->add_option("--rho", h.rho, "Consensus penalty");
  cmd->add_option("--eps-L", h.eps_L,
                  "Outer stop on |Lagrangian change| (0 = auto)");
  cmd->add_option("--eps-r", h.eps_r,
                  "Inner stop on squared primal residual (0 = auto)");
  cmd->add_option("--eps-s", h.eps_s,
                  "Inner stop on squared dual residual (0 = auto)");
  cmd->add_option("--max-outer", h.max_outer, "Outer round cap");
  cmd->add_option("--max-inner", h.max_inner, "Inner iteration cap per round");
  cmd->add_flag("--adaptive-rho", h.adaptive_rho,
                "Rebalance rho from the residual ratio");
  cmd->add_flag("--interleave-v", h.interleave_v,
                "Refresh instance weights inside the inner loop");
  cmd->add_flag("--literal-lambda-step", h.literal_lambda_step,
                "Two-branch pace rule (may overshoot the ceiling once)");
}

nlohmann::json confusion_to_json(const dspl::WeightConfusion& c) {
  return {{"true_exclusions", c.true_exclusions},
          {"false_exclusions", c.false_exclusions},
          {"true_inclusions", c.true_inclusions},
          {"false_inclusions", c.false_inclusions}};
}

int run_generate(const SynthFlags& flags, const std::string& out,
                 const std::string& meta) {
  const dspl::SynthDataset data = dspl::generate(to_synth_config(flags));
  dspl::save_dataset_csv(data.batches, out);
  std::cout << "wrote " << out << " (" << data.batches.size()
            << " batches)\n";
  if (!meta.empty()) {
    nlohmann::json j;
    j["p"] = flags.p;
    j["seed"] = flags.seed;
    j["noise_sigma"] = flags.sigma;
    j["corruption_scale"] = flags.scale;
    j["corruption_ratio"] = flags.ratios;
    j["w_star"] = std::vector<double>(
        data.w_star.data(), data.w_star.data() + data.w_star.size());
    j["corruption_mask"] = data.corruption_mask;
    std::ofstream f(meta);
    if (!f) throw dspl::ParameterError("cannot open '" + meta + "'");
    f << j.dump(2) << '\n';
    std::cout << "wrote " << meta << "\n";
  }
  return 0;
}

int run_fit(const std::vector<dspl::Batch>& batches, const SynthFlags& flags,
            bool synthetic, const std::string& solver,
            const dspl::HyperParams& params, double ols_ridge,
            const std::string& report_path, const std::string& trace_path) {
  dspl::RunReport report;
  Eigen::VectorXd w;
  if (solver == "dspl") {
    dspl::FitResult fit = dspl::fit_dspl(batches, params);
    w = fit.z();
    report = std::move(fit.report);
  } else if (solver == "spl") {
    dspl::SplResult fit = dspl::fit_spl(batches, params);
    w = fit.w;
    report = std::move(fit.report);
  } else {
    w = dspl::fit_ols(batches, ols_ridge);
    report.final_z = w;
    report.converged = true;
    report.final_lagrangian = 0.0;
  }

  nlohmann::json j = dspl::to_json(report, false);
  j["solver"] = solver;
  std::cout << "solver=" << solver << " converged=" << std::boolalpha
            << report.converged << " outer=" << report.outer_rounds
            << " inner=" << report.inner_iterations
            << " wall=" << report.wall_time_seconds << "s\n";

  if (synthetic) {
    const dspl::SynthDataset data = dspl::generate(to_synth_config(flags));
    const double err = dspl::l2_recovery_error(w, data.w_star);
    j["recovery_error"] = err;
    std::cout << "recovery_error=" << err << "\n";
    if (!report.final_v.empty()) {
      const auto confusion =
          dspl::weight_confusion(report.final_v, data.corruption_mask);
      j["weight_confusion"] = confusion_to_json(confusion);
      std::cout << "excluded " << confusion.true_exclusions << "/"
                << confusion.true_exclusions + confusion.false_inclusions
                << " corrupted, kept " << confusion.true_inclusions << "/"
                << confusion.true_inclusions + confusion.false_exclusions
                << " clean\n";
    }
  } else {
    double abs_sum = 0.0;
    long long n = 0;
    for (const dspl::Batch& b : batches) {
      abs_sum += (b.X.transpose() * w - b.y).cwiseAbs().sum();
      n += b.y.size();
    }
    const double mae = abs_sum / static_cast<double>(n);
    j["train_mae"] = mae;
    std::cout << "train_mae=" << mae << "\n";
  }

  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) throw dspl::ParameterError("cannot open '" + report_path + "'");
    f << j.dump(2) << '\n';
    std::cout << "wrote " << report_path << "\n";
  }
  if (!trace_path.empty()) {
    dspl::write_report_json(report, trace_path, true);
    std::cout << "wrote " << trace_path << "\n";
  }
  return 0;
}

int finish_sweep(const dspl::SweepTable& table, const std::string& out,
                 const std::string& summary) {
  dspl::write_sweep_csv(table, out);
  int failures = 0;
  for (const auto& row : table.rows) {
    if (!row.ok) ++failures;
  }
  std::cout << "wrote " << table.rows.size() << " rows to " << out;
  if (failures > 0) std::cout << " (" << failures << " failed)";
  std::cout << "\n";
  if (!summary.empty()) {
    dspl::write_sweep_summary_csv(table, summary);
    std::cout << "wrote " << summary << "\n";
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed self-paced robust regression experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");

  int rc = 0;

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset CSV");
  SynthFlags gen_flags;
  std::string gen_out;
  std::string gen_meta;
  add_synth_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "Dataset CSV path")->required();
  gen->add_option("--meta", gen_meta,
                  "Also write ground truth and masks as JSON");
  gen->callback([&] { rc = run_generate(gen_flags, gen_out, gen_meta); });

  // fit
  auto* fit = app.add_subcommand("fit", "Run one solver on one dataset");
  SynthFlags fit_flags;
  std::string fit_data;
  int fit_batch_size = 0;
  std::string fit_solver = "dspl";
  dspl::HyperParams fit_params;
  double fit_ridge = 0.0;
  std::string fit_report;
  std::string fit_trace;
  auto fit_synth_opts = add_synth_flags(fit, fit_flags);
  fit->add_option("--data", fit_data,
                  "Dataset CSV (default: synthetic from the flags above)");
  fit->add_option("--batch-size", fit_batch_size,
                  "Chunk --data rows into batches of this size (0 = use "
                  "the file's batch column)");
  fit->add_option("--solver", fit_solver, "dspl, spl, or ols")
      ->check(CLI::IsMember({"dspl", "spl", "ols"}));
  add_hyper_flags(fit, fit_params);
  fit->add_option("--workers", fit_params.workers,
                  "Threads for per-batch solver phases");
  fit->add_option("--ols-ridge", fit_ridge, "Ridge term for --solver ols");
  fit->add_option("--report", fit_report, "Write a run summary JSON here");
  fit->add_option("--trace", fit_trace,
                  "Write the full RunReport JSON (all iterations) here");
  fit->callback([&] {
    const bool have_data = !fit_data.empty();
    if (have_data) {
      for (const CLI::Option* opt : fit_synth_opts) {
        if (opt->count() > 0) {
          throw dspl::ParameterError(
              "--data and synthetic-data flags are mutually exclusive");
        }
      }
    }
    const std::vector<dspl::Batch> batches =
        have_data ? dspl::load_csv_dataset(fit_data, fit_batch_size)
                  : dspl::generate(to_synth_config(fit_flags)).batches;
    rc = run_fit(batches, fit_flags, !have_data, fit_solver, fit_params,
                 fit_ridge, fit_report, fit_trace);
  });

  // sweeps
  dspl::SweepConfig sweep = dspl::default_sweep_config();
  bool full_scale = false;
  std::string sweep_out;
  std::string sweep_summary;
  auto add_sweep_flags = [&](CLI::App* cmd) {
    cmd->add_option("--out", sweep_out, "Raw results CSV path")->required();
    cmd->add_option("--summary", sweep_summary,
                    "Also write per-cell means here");
    cmd->add_option("--p", sweep.p, "Feature dimension");
    cmd->add_option("--n", sweep.n_total, "Total instance count");
    cmd->add_option("--batches", sweep.num_batches, "Batch count");
    cmd->add_option("--sigma", sweep.noise_sigma, "Noise level");
    cmd->add_option("--scale", sweep.corruption_scale,
                    "Corruption magnitude factor");
    cmd->add_option("--seeds", sweep.seeds, "Dataset seeds")->delimiter(',');
    cmd->add_option("--solvers", sweep.solvers, "Solvers to run")
        ->delimiter(',')
        ->check(CLI::IsMember({"dspl", "spl", "ols"}));
    cmd->add_option("--ols-ridge", sweep.ols_ridge, "Ridge term for ols");
    cmd->add_option("--workers", sweep.workers,
                    "Sweep cells to run side by side");
    cmd->add_flag("--full-scale", full_scale,
                  "Full-size problems (p=100, n=10000); slow");
    add_hyper_flags(cmd, sweep.dspl_params);
  };
  auto apply_scale = [&] {
    if (full_scale) {
      sweep.p = 100;
      sweep.n_total = 10000;
    }
  };

  auto* corr = app.add_subcommand(
      "sweep-corruption", "Error vs corruption ratio for each solver");
  add_sweep_flags(corr);
  corr->add_option("--ratios", sweep.ratios, "Corruption ratios")
      ->delimiter(',');
  corr->callback([&] {
    apply_scale();
    rc = finish_sweep(dspl::run_sweep_corruption(sweep), sweep_out,
                      sweep_summary);
  });

  auto* batches_cmd = app.add_subcommand(
      "sweep-batches", "Error vs number of heavily corrupted batches");
  add_sweep_flags(batches_cmd);
  batches_cmd->add_option("--k-values", sweep.k_values,
                          "Counts of heavily corrupted batches")
      ->delimiter(',');
  batches_cmd->callback([&] {
    apply_scale();
    rc = finish_sweep(dspl::run_sweep_batches(sweep), sweep_out,
                      sweep_summary);
  });

  auto* lambda_cmd = app.add_subcommand(
      "sweep-lambda", "Error and Lagrangian vs the pace ceiling");
  add_sweep_flags(lambda_cmd);
  lambda_cmd->add_option("--taus", sweep.taus, "Pace ceilings to sweep")
      ->delimiter(',');
  lambda_cmd->add_option("--lambda-seeds", sweep.lambda_seeds,
                         "Dataset seeds for this sweep")
      ->delimiter(',');
  lambda_cmd->callback([&] {
    apply_scale();
    rc = finish_sweep(dspl::run_sweep_lambda(sweep), sweep_out,
                      sweep_summary);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
