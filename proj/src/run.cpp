#include "crowdsim/run.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "crowdsim/error.hpp"
#include "crowdsim/io.hpp"
#include "crowdsim/version.hpp"

namespace crowdsim {

namespace fs = std::filesystem;

namespace {

std::string snapshot_name(long step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "step_%07ld.csv", step);
  return buf;
}

bool crosses(double prev_t, double t, double interval) {
  if (interval <= 0.0) return false;
  const double slack = 1e-9;
  return std::floor(t / interval + slack) > std::floor(prev_t / interval + slack);
}

bool closed_domain(const RunConfig& cfg, const Grid& grid) {
  if (cfg.dims == 1) {
    const auto& c = cfg.corridor;
    const bool ends_closed = (c.left == Boundary1D::Closed || c.left == Boundary1D::Periodic) &&
                             (c.right == Boundary1D::Closed || c.right == Boundary1D::Periodic);
    return ends_closed;
  }
  if (grid.has_pinned_cells()) return false;
  for (std::size_t c = 0; c < grid.size(); ++c)
    if (grid.is_exit(c) && grid.exit_factor(c) > 0.0) return false;
  return true;
}

bool has_inflow(const RunConfig& cfg) {
  return cfg.dims == 1 && cfg.corridor.left == Boundary1D::Inflow &&
         cfg.corridor.inflow_rho > 0.0 && cfg.corridor.inflow_until > 0.0;
}

}  // namespace

RunSummary run_to_directory(const RunConfig& cfg, const fs::path& out) {
  cfg.validate();
  auto stepper = make_stepper(cfg);
  const Grid& grid = stepper->grid();
  const fs::path snap_dir = out / "snapshots";
  std::error_code ec;
  fs::create_directories(snap_dir, ec);
  if (ec) throw IoError("cannot create " + snap_dir.string() + ": " + ec.message());

  RunSummary summary;
  MassSeries mass;
  ScatterSeries scatter;
  long last_snapshot = -1;

  std::vector<Observer> observers;
  observers.emplace_back([&](const StepView& v) {
    if (v.step == 0 || crosses(v.prev_t, v.state.t, cfg.snapshot_interval)) {
      io::write_snapshot(snap_dir / snapshot_name(v.step), v.state, v.grid);
      last_snapshot = v.step;
      ++summary.snapshots;
    }
  });
  observers.emplace_back(
      [&](const StepView& v) { mass.push(v.state.t, total_mass(v.state.rho, v.grid, true)); });
  if (cfg.dims == 1) {
    observers.emplace_back([&](const StepView& v) {
      if (v.prev_rho) scatter.collect(v.prev_t, *v.prev_rho, v.rho_fluxes);
    });
  }

  summary.result = run(*stepper, observers, cfg.control);
  if (last_snapshot != summary.result.steps) {
    io::write_snapshot(snap_dir / snapshot_name(summary.result.steps), stepper->state(), grid);
    ++summary.snapshots;
  }
  summary.initial_mass = mass.records().front().mass;
  summary.final_mass = mass.records().back().mass;
  summary.evacuation_time = mass.evacuation_time(0.01);
  summary.scatter_points = scatter.size();

  io::write_mass(out / "mass.csv", mass);
  if (cfg.dims == 1) {
    io::write_scatter(out / "fd_scatter.csv", scatter);
    io::write_binned(out / "fd_binned.csv", binned_means(scatter, 0.0, cfg.params.tau_hi, 50));
  }
  nlohmann::json meta = to_json(cfg);
  meta["version"] = kVersion;
  meta["result"] = {{"steps", summary.result.steps},
                    {"t_final", summary.result.t_final},
                    {"reached_steady", summary.result.reached_steady},
                    {"evacuated", summary.result.evacuated},
                    {"initial_mass", summary.initial_mass},
                    {"final_mass", summary.final_mass},
                    {"evacuation_time", summary.evacuation_time
                                            ? nlohmann::json(*summary.evacuation_time)
                                            : nlohmann::json(nullptr)}};
  io::write_text(out / "meta.json", meta.dump(2) + "\n");
  return summary;
}

void dump_eikonal(const RunConfig& cfg, const fs::path& out) {
  cfg.validate();
  if (cfg.dims == 1) {
    Solver1D s(make_scenario_1d(cfg));
    Grid g = s.grid();
    if (!g.has_exit()) g.set_exit(g.size() - 1);
    const Field phi = solve_eikonal(g);
    io::write_eikonal(out / "eikonal.csv", phi, direction_field(phi, g), g);
    return;
  }
  const Scenario2D sc = make_scenario_2d(cfg);
  const Field phi = solve_eikonal(sc.grid);
  io::write_eikonal(out / "eikonal.csv", phi, direction_field(phi, sc.grid), sc.grid);
}

ValidationReport validate_run(const RunConfig& cfg) {
  cfg.validate();
  auto stepper = make_stepper(cfg);
  const SimParams& p = cfg.params;
  const Grid& grid = stepper->grid();
  const bool closed = closed_domain(cfg, grid);
  const bool monotone = !has_inflow(cfg) && !grid.has_pinned_cells();
  const double mass0 = total_mass(stepper->state().rho, grid);
  double prev_mass = mass0;

  ValidationReport rep;
  auto fail = [&](long step, const std::string& what) {
    if (rep.failures.size() < 20) {
      std::ostringstream os;
      os << "step " << step << ": " << what;
      rep.failures.push_back(os.str());
    }
  };
  const Observer check = [&](const StepView& v) {
    const auto& s = v.state;
    for (std::size_t c = 0; c < grid.size(); ++c) {
      if (grid.is_wall(c)) continue;
      const double r = s.rho[c], t = s.tau[c], u = s.u[c];
      std::ostringstream os;
      os << "cell " << c << " rho=" << r << " tau=" << t << " u=" << u;
      if (!(r >= 0.0 && r <= t)) fail(v.step, "0 <= rho <= tau violated at " + os.str());
      if (!(t >= p.tau_lo && t <= p.tau_hi)) fail(v.step, "tau out of bounds at " + os.str());
      if (!(u >= p.u_lo && u <= p.u_hi)) fail(v.step, "u out of bounds at " + os.str());
    }
    const double m = total_mass(s.rho, grid);
    if (closed && std::abs(m - mass0) > 1e-12 * std::max(mass0, 1e-300))
      fail(v.step, "closed-domain mass drifted from " + io::format_double(mass0) + " to " +
                       io::format_double(m));
    if (monotone && m > prev_mass * (1.0 + 1e-12) + 1e-300)
      fail(v.step, "mass increased without inflow");
    prev_mass = m;
  };
  const Observer observers[] = {check};
  rep.steps = run(*stepper, observers, cfg.control).steps;
  return rep;
}

}  // namespace crowdsim
