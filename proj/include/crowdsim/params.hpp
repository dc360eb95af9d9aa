#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace crowdsim {

/// Model constants plus discretization. Defaults are the reference parameter
/// set used by every built-in scenario.
struct SimParams {
  double f_max = 0.5;      // peak flux, ped/(m s)
  double sigma = 0.5;      // critical density
  double tau_lo = 1.0;     // lower bound of the maximal density
  double tau_hi = 5.5;     // upper bound of the maximal density
  double u_lo = -1.5;      // lower bound of the information wave
  double u_hi = 1.0;       // upper bound of the information wave
  double eps = 0.1;        // damping rate, 1/s
  double alpha_pos = 1.0;  // source gain for theta >= 0
  double alpha_neg = 0.1;  // source gain for theta < 0
  double beta = 1.0;       // gradient length, m
  double gamma = 0.01;     // tau response rate
  double delta = 1.0;      // sensory radius, m
  double nu = 0.1;         // tolerance density
  double dx = 1.0;         // cell size, m
  double dt = 0.5;         // time step, s
  double t_end = 600.0;    // final time, s

  /// Largest characteristic speed of either equation.
  [[nodiscard]] double max_wave_speed() const;

  /// Throws ConfigError naming the first violated invariant. `dims` selects
  /// the converging-flow bound of the 2D split scheme.
  void validate(int dims = 1) const;

  /// Names accepted by get/set, in declaration order.
  static const std::vector<std::string>& names();
  [[nodiscard]] double get(std::string_view name) const;
  void set(std::string_view name, double value);
  [[nodiscard]] bool has(std::string_view name) const;

  bool operator==(const SimParams&) const = default;
};

}  // namespace crowdsim
