// run.hpp - the five CLI commands as library calls, shared by the
// binary and the tests.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "eventum/config.hpp"
#include "eventum/scenarios.hpp"

namespace eventum {

struct CommandResult {
  int exit_code = 0;          // 0 pass, 1 tolerance failure
  nlohmann::json report;      // always populated
  std::string csv;            // populated when format == "csv"
  std::string summary;        // one-line human text for stdout
};

// resolve the configured scenario/family/overrides into a Scenario
Scenario resolve_scenario(const RunConfig& cfg);

CommandResult run_validate(const RunConfig& cfg);
CommandResult run_simulate(const RunConfig& cfg);
CommandResult run_filter(const RunConfig& cfg);
CommandResult run_compare(const RunConfig& cfg);
CommandResult run_sample(const RunConfig& cfg);

CommandResult run_command(const std::string& command, const RunConfig& cfg);

}  // namespace eventum
