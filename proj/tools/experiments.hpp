#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace chaosbe::tools {

/// Raised for anything wrong with a config before computation starts.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOutput {
  nlohmann::ordered_json report;
  std::string curves_csv;
  bool flagged = false;  // some numeric did not converge to its tolerance
};

/// Validates a config (fail-closed on unknown keys) and runs the experiment.
/// Deterministic per (config, seed): sampling uses counter-based streams, so
/// the worker count never changes any output byte.
RunOutput run_experiment(const nlohmann::json& config, unsigned workers);

nlohmann::ordered_json builtins_inventory();

}  // namespace chaosbe::tools
