#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crowdsim/analysis.hpp"
#include "crowdsim/config.hpp"

namespace crowdsim {

struct RunSummary {
  RunResult result;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  std::optional<double> evacuation_time;
  std::size_t scatter_points = 0;
  int snapshots = 0;
};

/// Runs one configuration and writes snapshots/, mass.csv, meta.json and, in
/// 1D, fd_scatter.csv and fd_binned.csv below `out`.
RunSummary run_to_directory(const RunConfig& cfg, const std::filesystem::path& out);

/// Writes phi and w for the configured geometry to `out`/eikonal.csv.
void dump_eikonal(const RunConfig& cfg, const std::filesystem::path& out);

struct ValidationReport {
  long steps = 0;
  std::vector<std::string> failures;  // empty when every check held
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Runs the configuration checking after every step: 0 <= rho <= tau,
/// tau and u within bounds, finite fields; plus mass conservation for closed
/// domains and non-increasing mass without inflow or pinned cells.
ValidationReport validate_run(const RunConfig& cfg);

}  // namespace crowdsim
