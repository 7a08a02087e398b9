#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace ciscat {

struct ScenarioResult {
  std::vector<std::pair<std::string, double>> summary;  // also written to analysis/summary.csv
  std::vector<std::string> messages;                    // lines meant for stdout
  std::vector<std::string> files;                       // relative to the output directory

  double value(const std::string& key) const;  // NaN when absent
};

/// Runs one scenario and writes its bundle into `outdir` (created if needed).
ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& outdir);

/// Dislocation analysis of one channel of a field dump, using the [analysis]
/// settings of `config`.
ScenarioResult analyse_dump(const std::string& field_path, const ScenarioConfig& config,
                            const std::string& outdir);

/// "name<TAB>subcommand<TAB>figure<TAB>description" per preset.
std::vector<std::string> list_scenarios();

}  // namespace ciscat
