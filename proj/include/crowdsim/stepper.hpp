#pragma once

#include <functional>
#include <span>
#include <vector>

#include "crowdsim/grid.hpp"
#include "crowdsim/params.hpp"

namespace crowdsim {

/// What an observer sees after each completed step (and once for the
/// initial state, with step == 0 and no fluxes).
struct StepView {
  const SimState& state;           // time level n+1
  const Grid& grid;
  const Field* prev_rho = nullptr; // time level n
  double prev_t = 0.0;
  std::span<const double> rho_fluxes;  // 1D interface fluxes for n -> n+1
  long step = 0;
};

using Observer = std::function<void(const StepView&)>;

/// Common surface of the 1D and 2D steppers.
class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual void advance() = 0;
  [[nodiscard]] virtual const SimState& state() const = 0;
  [[nodiscard]] virtual const Grid& grid() const = 0;
  [[nodiscard]] virtual const SimParams& params() const = 0;
  /// rho at the previous time level; equals state().rho before any step.
  [[nodiscard]] virtual const Field& prev_rho() const = 0;
  /// 1D: G at interfaces 0..N from the last step (interface k sits left of
  /// cell k). Empty in 2D.
  [[nodiscard]] virtual std::span<const double> rho_fluxes() const = 0;
  /// Largest |change| of rho, tau, or u during the last step.
  [[nodiscard]] virtual double last_max_change() const = 0;
  [[nodiscard]] long steps_taken() const { return steps_; }

 protected:
  long steps_ = 0;
};

struct RunControl {
  /// Stop once the last step changed no field by more than this.
  double steady_tol = 0.0;
  /// Stop once room mass drops below this fraction of its initial value.
  double evacuated_fraction = 0.0;
};

struct RunResult {
  long steps = 0;
  double t_final = 0.0;
  bool reached_steady = false;
  bool evacuated = false;
};

/// Steps from the current state to params().t_end, notifying observers
/// synchronously after each step.
RunResult run(Stepper& stepper, std::span<const Observer> observers, const RunControl& ctl = {});

}  // namespace crowdsim
