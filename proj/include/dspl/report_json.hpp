#ifndef DSPL_REPORT_JSON_HPP
#define DSPL_REPORT_JSON_HPP

#include <string>

#include <json.hpp>

#include "dspl/types.hpp"

namespace dspl {

nlohmann::json to_json(const IterationRecord& record);

// Run summary. include_trace additionally embeds every iteration
// record under "iterations".
nlohmann::json to_json(const RunReport& report, bool include_trace = false);

void write_report_json(const RunReport& report, const std::string& path,
                       bool include_trace = false);

}  // namespace dspl

#endif  // DSPL_REPORT_JSON_HPP
