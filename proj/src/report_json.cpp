#include "dspl/report_json.hpp"

#include <fstream>

namespace dspl {

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

nlohmann::json to_json(const IterationRecord& record) {
  return {{"outer", record.outer},
          {"inner", record.inner},
          {"lagrangian", record.lagrangian},
          {"r_sq", record.r_sq},
          {"s_sq", record.s_sq},
          {"lambda", record.lambda},
          {"rho", record.rho},
          {"active_counts", record.active_counts}};
}

nlohmann::json to_json(const RunReport& report, bool include_trace) {
  nlohmann::json out = {
      {"converged", report.converged},
      {"outer_rounds", report.outer_rounds},
      {"inner_iterations", report.inner_iterations},
      {"final_lagrangian", report.final_lagrangian},
      {"wall_time_seconds", report.wall_time_seconds},
      {"final_z", vector_to_json(report.final_z)},
  };
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& v : report.final_v) {
    counts.push_back(static_cast<long long>(v.sum()));
  }
  out["final_active_counts"] = counts;
  if (include_trace) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& record : report.iterations) trace.push_back(to_json(record));
    out["iterations"] = trace;
  }
  return out;
}

void write_report_json(const RunReport& report, const std::string& path,
                       bool include_trace) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open '" + path + "' for writing");
  out << to_json(report, include_trace).dump(2) << '\n';
}

}  // namespace dspl
