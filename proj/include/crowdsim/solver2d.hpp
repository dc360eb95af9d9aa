#pragma once

#include <array>
#include <optional>

#include "crowdsim/eikonal.hpp"
#include "crowdsim/nonlocal.hpp"
#include "crowdsim/stepper.hpp"

namespace crowdsim {

struct Scenario2D {
  SimParams params;
  Grid grid;
  Field rho0;
  /// Replaces the Eikonal-derived directions (equivariance tests, imports).
  std::optional<DirectionField> directions;
  /// Lie splitting order; X then Y unless overridden.
  std::array<Axis, 2> sweep_order{Axis::X, Axis::Y};

  void validate() const;
};

enum class Transported : std::uint8_t { Rho, U };

/// One 1D sub-step along `axis` over the full dt. Each cell sends to the
/// neighbor its own w component points at and receives from each neighbor
/// whose w component points back at it. Fluxes are the 1D Godunov fluxes
/// scaled by the sender's |w component|; closed faces and walls carry zero,
/// exit faces open onto a vacuum ghost scaled by the exit factor.
/// `tau` is read only for Transported::Rho.
Field axis_sweep(Transported kind, const Field& field, const Field& tau, Axis axis,
                 const DirectionField& w, const Grid& grid, const SimParams& p);

class Solver2D final : public Stepper {
 public:
  explicit Solver2D(Scenario2D sc);

  [[nodiscard]] SimState step_from(const SimState& s) const;

  void advance() override;
  [[nodiscard]] const SimState& state() const override { return state_; }
  [[nodiscard]] const Grid& grid() const override { return sc_.grid; }
  [[nodiscard]] const SimParams& params() const override { return sc_.params; }
  [[nodiscard]] const Field& prev_rho() const override { return prev_rho_; }
  [[nodiscard]] std::span<const double> rho_fluxes() const override { return {}; }
  [[nodiscard]] double last_max_change() const override { return max_change_; }

  [[nodiscard]] const Scenario2D& scenario() const { return sc_; }
  [[nodiscard]] const Field& phi() const { return phi_; }
  [[nodiscard]] const DirectionField& directions() const { return w_; }
  [[nodiscard]] const SensoryStencils& stencils() const { return stencils_; }
  void set_state(SimState s);

 private:
  Scenario2D sc_;
  Field phi_;
  DirectionField w_;
  SensoryStencils stencils_;
  SimState state_;
  Field prev_rho_;
  double max_change_ = 0.0;
  double t_origin_ = 0.0;
  long steps_origin_ = 0;
};

/// Re-imposes Dirichlet densities of pinned cells.
void apply_pins(SimState& s, const Grid& grid);

}  // namespace crowdsim
