#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace segpipe::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kMissingInput = 3,
    kParseError = 4,
    kStageError = 5,
    kWriteError = 6,
};

struct StageTimesMs {
    double equalize = 0.0;
    double median = 0.0;
    double fcm = 0.0;
    double defuzzify = 0.0;
    double total = 0.0;
};

struct RunReport {
    std::string command;
    std::string input;
    nlohmann::json config = nlohmann::json::object();
    StageTimesMs timings_ms;
    std::size_t fcm_iterations = 0;
    std::vector<double> objective_trace;
    bool converged = false;
    std::vector<double> centers;
    std::vector<std::string> outputs;
};

nlohmann::json to_json(const RunReport& report);

/// Names of missing or mistyped fields; empty when the report is complete.
std::vector<std::string> report_schema_errors(const nlohmann::json& report);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace segpipe::cli
