#include "crowdsim/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crowdsim/error.hpp"
#include "crowdsim/flux.hpp"

namespace crowdsim {

int Scenario1D::cells() const { return static_cast<int>(std::lround(length / params.dx)); }

std::optional<int> Scenario1D::gate_interface() const {
  if (!gate_x) return std::nullopt;
  return static_cast<int>(std::lround(*gate_x / params.dx));
}

bool Scenario1D::gate_closed(double t) const { return gate_x.has_value() && t < gate_open_time; }

void Scenario1D::validate() const {
  params.validate(1);
  if (!(length > 0)) throw ConfigError("corridor length must be positive");
  const int n = cells();
  if (n < 2 || std::abs(n * params.dx - length) > 1e-9 * length)
    throw ConfigError("corridor length must be a multiple of dx with at least two cells");
  if (gate_x) {
    if (!(*gate_x > 0 && *gate_x < length)) throw ConfigError("gate must lie inside (0, length)");
    const int k = *gate_interface();
    if (std::abs(k * params.dx - *gate_x) > 1e-9 * length)
      throw ConfigError("gate position must coincide with a cell interface");
  }
  if (right == Boundary1D::Inflow) throw ConfigError("inflow is only supported on the left end");
  if ((left == Boundary1D::Periodic) != (right == Boundary1D::Periodic))
    throw ConfigError("periodic boundaries must be set on both ends");
  if (!(inflow_rho >= 0 && inflow_rho <= params.tau_lo))
    throw ConfigError("inflow density must lie in [0, tau_lo]");
  if (!(initial_rho >= 0 && initial_rho <= params.tau_lo))
    throw ConfigError("initial density must lie in [0, tau_lo]");
  auto check_size = [&](const std::vector<double>& v, const char* what) {
    if (!v.empty() && static_cast<int>(v.size()) != n)
      throw ConfigError(std::string(what) + " must have one value per cell");
  };
  check_size(rho0, "rho0");
  check_size(tau0, "tau0");
  check_size(u0, "u0");
  for (std::size_t c = 0; c < rho0.size(); ++c) {
    const double cap = tau0.empty() ? params.tau_lo : tau0[c];
    if (!(rho0[c] >= 0 && rho0[c] <= cap)) throw ConfigError("initial rho must lie in [0, tau]");
  }
}

SimState Scenario1D::initial_state() const {
  const int n = cells();
  std::vector<double> r(n, 0.0);
  if (!rho0.empty()) {
    r = rho0;
  } else {
    for (int j = 0; j < n; ++j)
      if ((j + 0.5) * params.dx <= initial_extent) r[j] = initial_rho;
  }
  SimState s = SimState::initial(Field(std::move(r), FieldRole::Rho), params);
  if (!tau0.empty()) s.tau = Field(tau0, FieldRole::Tau);
  if (!u0.empty()) s.u = Field(u0, FieldRole::U);
  clamp_state(s, params);
  apply_boundaries_1d(s, *this, 0.0);
  return s;
}

namespace {

GhostCell cell_as_ghost(const SimState& s, std::size_t c) { return {s.rho[c], s.tau[c], s.u[c]}; }

std::optional<GhostCell> ghost_for(Boundary1D b, const Scenario1D& sc, const SimState& s,
                                   double t, bool left) {
  const std::size_t n = s.rho.size();
  const double tau_lo = sc.params.tau_lo;
  switch (b) {
    case Boundary1D::Closed: return std::nullopt;
    case Boundary1D::Inflow:
      return GhostCell{t < sc.inflow_until ? sc.inflow_rho : 0.0, tau_lo, 0.0};
    case Boundary1D::Outflow: return GhostCell{0.0, tau_lo, 0.0};
    case Boundary1D::Periodic: return cell_as_ghost(s, left ? n - 1 : 0);
    case Boundary1D::Transmissive: return cell_as_ghost(s, left ? 0 : n - 1);
  }
  return std::nullopt;
}

}  // namespace

std::optional<GhostCell> left_ghost(const Scenario1D& sc, const SimState& s, double t) {
  return ghost_for(sc.left, sc, s, t, true);
}

std::optional<GhostCell> right_ghost(const Scenario1D& sc, const SimState& s, double t) {
  return ghost_for(sc.right, sc, s, t, false);
}

void apply_boundaries_1d(SimState& s, const Scenario1D& sc, double t) {
  if (!sc.gate_closed(t)) return;
  const int k = *sc.gate_interface();
  for (std::size_t c = static_cast<std::size_t>(k); c < s.rho.size(); ++c) {
    s.rho[c] = 0.0;
    s.tau[c] = sc.params.tau_lo;
    s.u[c] = 0.0;
  }
}

Solver1D::Solver1D(Scenario1D sc) : sc_(std::move(sc)) {
  sc_.validate();
  const int n = sc_.cells();
  grid_ = Grid::line(n, sc_.params.dx);
  if (sc_.right == Boundary1D::Outflow) grid_.set_exit(static_cast<std::size_t>(n - 1));
  if (auto k = sc_.gate_interface()) grid_.set_gate_adjacent(static_cast<std::size_t>(*k - 1));
  // The corridor is walked toward its right end.
  w_ = DirectionField{Field(n, 1.0, FieldRole::Wx), Field(n, 0.0, FieldRole::Wy)};
  stencils_ = build_stencils(grid_, w_, sc_.params);
  state_ = sc_.initial_state();
  prev_rho_ = state_.rho;
  fluxes_.assign(static_cast<std::size_t>(n) + 1, 0.0);
}

void Solver1D::set_state(SimState s) {
  state_ = std::move(s);
  prev_rho_ = state_.rho;
  t_origin_ = state_.t;
  steps_origin_ = steps_;
}

Solver1D::StepResult Solver1D::step_from(const SimState& s) const {
  const SimParams& p = sc_.params;
  const std::size_t n = s.rho.size();
  const double lambda = p.dt / p.dx;
  const double t = s.t;

  const auto lg = left_ghost(sc_, s, t);
  const auto rg = right_ghost(sc_, s, t);
  const auto gate = sc_.gate_interface();
  const bool gate_shut = sc_.gate_closed(t);

  std::vector<double> g_rho(n + 1, 0.0);
  std::vector<double> g_u(n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    if (gate_shut && static_cast<int>(k) == *gate) continue;
    GhostCell snd;
    GhostCell rcv;
    if (k == 0) {
      if (!lg) continue;
      snd = *lg;
      rcv = {s.rho[0], s.tau[0], s.u[0]};
    } else if (k == n) {
      if (!rg) continue;
      snd = {s.rho[n - 1], s.tau[n - 1], s.u[n - 1]};
      rcv = *rg;
    } else {
      snd = {s.rho[k - 1], s.tau[k - 1], s.u[k - 1]};
      rcv = {s.rho[k], s.tau[k], s.u[k]};
    }
    double factor = 1.0;
    if (k == n && grid_.is_exit(n - 1)) factor = grid_.exit_factor(n - 1);
    g_rho[k] = factor * flux::interface_rho(snd.rho, snd.tau, rcv.rho, rcv.tau, p);
    g_u[k] = factor * flux::interface_u(snd.u, rcv.u);
  }

  const Field avg = tau_ave(s.tau, stencils_);
  const Field th = theta(s.rho, avg, p);
  const Field omega = u_rhs(s.u, th, w_, grid_, p);

  StepResult r;
  r.next = s;
  for (std::size_t j = 0; j < n; ++j) {
    r.next.rho[j] = s.rho[j] - lambda * (g_rho[j + 1] - g_rho[j]);
    r.next.u[j] = s.u[j] - lambda * (g_u[j + 1] - g_u[j]) + p.dt * omega[j];
    r.next.tau[j] = s.tau[j] + p.dt * p.gamma * s.u[j];
  }
  r.next.t = t + p.dt;
  clamp_state(r.next, p);
  apply_boundaries_1d(r.next, sc_, t);
  r.rho_fluxes = std::move(g_rho);
  return r;
}

void Solver1D::advance() {
  StepResult r;
  try {
    r = step_from(state_);
  } catch (const NumericalFault& e) {
    std::ostringstream os;
    os << e.what() << " during step " << steps_ + 1;
    throw NumericalFault(os.str());
  }
  // Time levels are origin + k dt so long runs do not accumulate drift.
  r.next.t = t_origin_ + static_cast<double>(steps_ - steps_origin_ + 1) * sc_.params.dt;
  double change = 0.0;
  for (std::size_t j = 0; j < state_.rho.size(); ++j) {
    change = std::max({change, std::abs(r.next.rho[j] - state_.rho[j]),
                       std::abs(r.next.tau[j] - state_.tau[j]),
                       std::abs(r.next.u[j] - state_.u[j])});
  }
  max_change_ = change;
  prev_rho_ = std::move(state_.rho);
  state_ = std::move(r.next);
  fluxes_ = std::move(r.rho_fluxes);
  ++steps_;
}

}  // namespace crowdsim
