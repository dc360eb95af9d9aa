#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "crowdsim/eikonal.hpp"
#include "crowdsim/nonlocal.hpp"
#include "crowdsim/stepper.hpp"

namespace crowdsim {

enum class Boundary1D {
  Inflow,        // left only: ghost (rho_in, tau_lo, 0) until the cutoff, then vacuum
  Outflow,       // vacuum ghost (0, tau_lo, 0)
  Closed,        // zero flux
  Periodic,
  Transmissive,  // ghost copies the adjacent cell
};

/// Corridor [0, length] walked left to right.
struct Scenario1D {
  SimParams params;
  double length = 100.0;
  std::optional<double> gate_x;  // gate interface position
  double gate_open_time = std::numeric_limits<double>::infinity();
  Boundary1D left = Boundary1D::Inflow;
  Boundary1D right = Boundary1D::Outflow;
  double inflow_rho = 0.5;
  double inflow_until = 150.0;
  // Default initial crowd: initial_rho on [0, initial_extent].
  double initial_rho = 0.5;
  double initial_extent = 50.0;
  // Explicit initial data, one value per cell; overrides the above.
  std::vector<double> rho0;
  std::vector<double> tau0;
  std::vector<double> u0;

  [[nodiscard]] int cells() const;
  /// Interface index of the gate (between cells k-1 and k), if any.
  [[nodiscard]] std::optional<int> gate_interface() const;
  [[nodiscard]] bool gate_closed(double t) const;
  void validate() const;
  [[nodiscard]] SimState initial_state() const;
};

struct GhostCell {
  double rho = 0.0;
  double tau = 1.0;
  double u = 0.0;
};

/// Ghost values outside each end at time t, or nullopt for a closed end.
/// Periodic ends return the opposite interior cell.
std::optional<GhostCell> left_ghost(const Scenario1D& sc, const SimState& s, double t);
std::optional<GhostCell> right_ghost(const Scenario1D& sc, const SimState& s, double t);

/// Gate post-condition: while the gate is closed at time t, every cell past
/// it is reset to (0, tau_lo, 0).
void apply_boundaries_1d(SimState& s, const Scenario1D& sc, double t);

class Solver1D final : public Stepper {
 public:
  explicit Solver1D(Scenario1D sc);

  struct StepResult {
    SimState next;
    std::vector<double> rho_fluxes;
  };
  /// One explicit step from `s`. Every flux and source term is evaluated
  /// from the time-n fields; clamp and gate reset follow.
  [[nodiscard]] StepResult step_from(const SimState& s) const;

  void advance() override;
  [[nodiscard]] const SimState& state() const override { return state_; }
  [[nodiscard]] const Grid& grid() const override { return grid_; }
  [[nodiscard]] const SimParams& params() const override { return sc_.params; }
  [[nodiscard]] const Field& prev_rho() const override { return prev_rho_; }
  [[nodiscard]] std::span<const double> rho_fluxes() const override { return fluxes_; }
  [[nodiscard]] double last_max_change() const override { return max_change_; }

  [[nodiscard]] const Scenario1D& scenario() const { return sc_; }
  [[nodiscard]] const DirectionField& directions() const { return w_; }
  [[nodiscard]] const SensoryStencils& stencils() const { return stencils_; }
  void set_state(SimState s);

 private:
  Scenario1D sc_;
  Grid grid_;
  DirectionField w_;
  SensoryStencils stencils_;
  SimState state_;
  Field prev_rho_;
  std::vector<double> fluxes_;
  double max_change_ = 0.0;
  double t_origin_ = 0.0;
  long steps_origin_ = 0;
};

}  // namespace crowdsim
