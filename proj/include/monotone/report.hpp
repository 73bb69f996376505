#pragma once

#include <filesystem>
#include <vector>

#include "monotone/json_io.hpp"

namespace monotone {

// Execute one requested check against the config's operator. Throws
// SchemaError for malformed check fields (message carries the field path)
// and propagates precondition/solver errors from the check itself.
VerificationReport execute_check(const ExperimentConfig& config, const CheckRequest& req);

struct RunResult {
  std::vector<VerificationReport> reports;
  std::vector<std::filesystem::path> files;  // one report per check, then the summary
  int exit_code = 0;
};

// 0 when nothing failed (premise_failed counts as not-failed), 1 otherwise
int exit_code_for(const std::vector<VerificationReport>& reports);

// Run every check in config order and write one report file per check plus a
// summary file into config.output.path, in config.output.format.
RunResult run_config(const ExperimentConfig& config);

// Trajectory CSV for the first yosida check in the config (schedule and x
// taken from that check). Throws SchemaError when the config has none.
std::string trajectory_csv_for_config(const ExperimentConfig& config);

}  // namespace monotone
