#include "crowdsim/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crowdsim/error.hpp"
#include "crowdsim/flux.hpp"

namespace crowdsim {

void Scenario2D::validate() const {
  params.validate(2);
  if (grid.dims() != 2) throw ConfigError("2D scenario needs a planar grid");
  if (std::abs(grid.dx() - params.dx) > 1e-12 * params.dx)
    throw ConfigError("grid cell size differs from parameter dx");
  grid.validate(params.tau_hi);
  if (!directions && !grid.has_exit()) throw ConfigError("2D scenario needs at least one exit");
  if (rho0.size() != grid.size()) throw ConfigError("rho0 must have one value per cell");
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (!(rho0[c] >= 0.0 && rho0[c] <= params.tau_lo))
      throw ConfigError("initial rho must lie in [0, tau_lo]");
    if (grid.is_wall(c) && rho0[c] != 0.0) throw ConfigError("initial rho must vanish on walls");
    if (auto pin = grid.pinned(c); pin && *pin > params.tau_lo)
      throw ConfigError("fixed density must not exceed tau_lo");
  }
  if (directions && (directions->wx.size() != grid.size() || directions->wy.size() != grid.size()))
    throw ConfigError("direction field does not match the grid");
  if (sweep_order[0] == sweep_order[1]) throw ConfigError("sweep order must visit both axes");
}

Field axis_sweep(Transported kind, const Field& field, const Field& tau, Axis axis,
                 const DirectionField& w, const Grid& grid, const SimParams& p) {
  const std::size_t n = grid.size();
  const double lambda = p.dt / p.dx;
  auto link = [&](std::size_t s, std::size_t r) {
    const double scale = std::abs(w.component(axis, s));
    if (kind == Transported::Rho)
      return scale * flux::interface_rho(field[s], tau[s], field[r], tau[r], p);
    return scale * flux::interface_u(field[s], field[r]);
  };
  auto exit_link = [&](std::size_t s) {
    const double scale = std::abs(w.component(axis, s)) * grid.exit_factor(s);
    if (kind == Transported::Rho)
      return scale * flux::interface_rho(field[s], tau[s], 0.0, p.tau_lo, p);
    return scale * flux::interface_u(field[s], 0.0);
  };
  auto opens = [&](std::size_t c, int step) {
    if (!grid.is_exit(c)) return false;
    const Face f = grid.exit_face(c);
    if (axis == Axis::X) return (step > 0 && f == Face::XPlus) || (step < 0 && f == Face::XMinus);
    return (step > 0 && f == Face::YPlus) || (step < 0 && f == Face::YMinus);
  };

  Field out = field;
  for (std::size_t c = 0; c < n; ++c) {
    if (grid.is_wall(c)) continue;
    const int step = w.component(axis, c) >= 0.0 ? +1 : -1;
    double sent = 0.0;
    if (const auto nb = grid.neighbor(c, axis, step)) {
      if (!grid.is_wall(*nb)) sent = link(c, *nb);
    } else if (opens(c, step)) {
      sent = exit_link(c);
    }
    double from_lo = 0.0;
    double from_hi = 0.0;
    if (const auto lo = grid.neighbor(c, axis, -1); lo && !grid.is_wall(*lo) &&
                                                    w.component(axis, *lo) >= 0.0)
      from_lo = link(*lo, c);
    if (const auto hi = grid.neighbor(c, axis, +1); hi && !grid.is_wall(*hi) &&
                                                    w.component(axis, *hi) < 0.0)
      from_hi = link(*hi, c);
    out[c] = field[c] - lambda * (sent - (from_lo + from_hi));
  }
  return out;
}

void apply_pins(SimState& s, const Grid& grid) {
  for (std::size_t c = 0; c < grid.size(); ++c)
    if (auto pin = grid.pinned(c)) {
      s.rho[c] = *pin;
      s.tau[c] = std::max(s.tau[c], *pin);
    }
}

Solver2D::Solver2D(Scenario2D sc) : sc_(std::move(sc)) {
  sc_.validate();
  if (sc_.directions) {
    w_ = *sc_.directions;
    phi_ = Field(sc_.grid.size(), 0.0, FieldRole::Phi);
  } else {
    phi_ = solve_eikonal(sc_.grid);
    w_ = direction_field(phi_, sc_.grid);
  }
  stencils_ = build_stencils(sc_.grid, w_, sc_.params);
  state_ = SimState::initial(sc_.rho0, sc_.params);
  apply_pins(state_, sc_.grid);
  clamp_state(state_, sc_.params);
  prev_rho_ = state_.rho;
}

void Solver2D::set_state(SimState s) {
  state_ = std::move(s);
  prev_rho_ = state_.rho;
  t_origin_ = state_.t;
  steps_origin_ = steps_;
}

SimState Solver2D::step_from(const SimState& s) const {
  const SimParams& p = sc_.params;
  const Grid& grid = sc_.grid;
  const auto [first, second] = sc_.sweep_order;

  const Field avg = tau_ave(s.tau, stencils_);
  const Field th = theta(s.rho, avg, p);
  const Field omega = u_rhs(s.u, th, w_, grid, p);

  SimState next = s;
  const Field rho_half = axis_sweep(Transported::Rho, s.rho, s.tau, first, w_, grid, p);
  next.rho = axis_sweep(Transported::Rho, rho_half, s.tau, second, w_, grid, p);
  const Field u_half = axis_sweep(Transported::U, s.u, s.tau, first, w_, grid, p);
  next.u = axis_sweep(Transported::U, u_half, s.tau, second, w_, grid, p);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (grid.is_wall(c)) continue;
    next.u[c] += p.dt * omega[c];
    next.tau[c] = s.tau[c] + p.dt * p.gamma * s.u[c];
  }
  next.t = s.t + p.dt;
  clamp_state(next, p);
  apply_pins(next, grid);
  return next;
}

void Solver2D::advance() {
  SimState next;
  try {
    next = step_from(state_);
  } catch (const NumericalFault& e) {
    std::ostringstream os;
    os << e.what() << " during step " << steps_ + 1;
    throw NumericalFault(os.str());
  }
  next.t = t_origin_ + static_cast<double>(steps_ - steps_origin_ + 1) * sc_.params.dt;
  double change = 0.0;
  for (std::size_t c = 0; c < next.rho.size(); ++c) {
    change = std::max({change, std::abs(next.rho[c] - state_.rho[c]),
                       std::abs(next.tau[c] - state_.tau[c]), std::abs(next.u[c] - state_.u[c])});
  }
  max_change_ = change;
  prev_rho_ = std::move(state_.rho);
  state_ = std::move(next);
  ++steps_;
}

}  // namespace crowdsim
