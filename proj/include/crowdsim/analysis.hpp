#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "crowdsim/grid.hpp"

namespace crowdsim {

/// Ex-post fundamental diagram: one (rho of the sending cell, interface flux)
/// pair per interior interface and step.
struct ScatterRecord {
  double t = 0.0;
  int cell = 0;
  double rho = 0.0;
  double flux = 0.0;
};

class ScatterSeries {
 public:
  /// Appends (rho_j^n, G(j, j+1, n)) for j = 0..N-2. `fluxes` holds the N+1
  /// interface fluxes of the step, interface k sitting left of cell k.
  void collect(double t, const Field& rho_n, std::span<const double> fluxes);
  [[nodiscard]] const std::vector<ScatterRecord>& records() const { return records_; }
  [[nodiscard]] std::size_t size() const { return records_.size(); }
  void push(const ScatterRecord& r) { records_.push_back(r); }

 private:
  std::vector<ScatterRecord> records_;
};

struct FluxBin {
  double rho_center = 0.0;
  double mean_flux = 0.0;
  std::size_t count = 0;
};

/// Mean flux per density bin over [lo, hi]; empty bins report count 0.
std::vector<FluxBin> binned_means(const ScatterSeries& s, double lo, double hi, int bins = 50);

struct MassRecord {
  double t = 0.0;
  double mass = 0.0;
};

class MassSeries {
 public:
  /// Throws std::invalid_argument unless t is strictly increasing.
  void push(double t, double mass);
  [[nodiscard]] const std::vector<MassRecord>& records() const { return records_; }
  [[nodiscard]] bool empty() const { return records_.empty(); }
  /// First recorded t with mass below `fraction` of the first record.
  [[nodiscard]] std::optional<double> evacuation_time(double fraction = 0.01) const;

 private:
  std::vector<MassRecord> records_;
};

struct SteadyStateFit {
  double slope = 0.0;      // density per m
  double intercept = 0.0;  // density at x = 0
  int first = 0;           // fit window, inclusive cell range
  int last = 0;
  double residual = 0.0;   // RMS deviation from the line
};

/// Least-squares line through rho over cells [first, last] of a 1D grid.
/// Throws std::invalid_argument for windows shorter than 5 cells.
SteadyStateFit fit_steady_slope(const Field& rho, const Grid& grid, int first, int last);

/// Interior of the queue standing behind cell `front` (the last cell before
/// the gate): the contiguous congested run (rho > sigma) ending at `front`,
/// less cells where tau sits at its upper bound and `trim` of the remaining
/// length at each end. Returns nullopt if fewer than 5 cells remain.
struct QueueWindow {
  int first = 0;
  int last = 0;
};
std::optional<QueueWindow> queue_window(const SimState& s, double sigma, double tau_hi, int front,
                                        double trim = 0.2);

}  // namespace crowdsim
