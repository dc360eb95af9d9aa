#include "crowdsim/stepper.hpp"

#include <cmath>

namespace crowdsim {

RunResult run(Stepper& stepper, std::span<const Observer> observers, const RunControl& ctl) {
  const SimParams& p = stepper.params();
  const Grid& grid = stepper.grid();
  const long total = std::lround((p.t_end - stepper.state().t) / p.dt);
  const double mass0 = total_mass(stepper.state().rho, grid, true);

  {
    const StepView initial{stepper.state(), grid, nullptr, stepper.state().t, {}, 0};
    for (const auto& ob : observers) ob(initial);
  }

  RunResult res;
  for (long k = 0; k < total; ++k) {
    const double t_prev = stepper.state().t;
    stepper.advance();
    ++res.steps;
    const StepView view{stepper.state(), grid, &stepper.prev_rho(), t_prev, stepper.rho_fluxes(),
                        res.steps};
    for (const auto& ob : observers) ob(view);
    if (ctl.steady_tol > 0.0 && stepper.last_max_change() < ctl.steady_tol) {
      res.reached_steady = true;
      break;
    }
    if (ctl.evacuated_fraction > 0.0 && mass0 > 0.0 &&
        total_mass(stepper.state().rho, grid, true) < ctl.evacuated_fraction * mass0) {
      res.evacuated = true;
      break;
    }
  }
  res.t_final = stepper.state().t;
  return res;
}

}  // namespace crowdsim
