#include "crowdsim/grid.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "crowdsim/error.hpp"
#include "crowdsim/params.hpp"

namespace crowdsim {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

Grid Grid::line(int n, double dx) {
  if (n < 1 || !(dx > 0)) throw ConfigError("grid needs at least one cell and dx > 0");
  Grid g;
  g.dims_ = 1;
  g.nx_ = n;
  g.ny_ = 1;
  g.dx_ = dx;
  g.kind_.assign(n, CellKind::Interior);
  g.exit_face_.assign(n, Face::None);
  g.exit_factor_.assign(n, 1.0);
  g.pinned_.assign(n, kNaN);
  return g;
}

Grid Grid::plane(int nx, int ny, double dx) {
  if (nx < 1 || ny < 1 || !(dx > 0)) throw ConfigError("grid needs at least one cell and dx > 0");
  Grid g;
  g.dims_ = 2;
  g.nx_ = nx;
  g.ny_ = ny;
  g.dx_ = dx;
  const auto n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  g.kind_.assign(n, CellKind::Interior);
  g.exit_face_.assign(n, Face::None);
  g.exit_factor_.assign(n, 1.0);
  g.pinned_.assign(n, kNaN);
  return g;
}

std::optional<std::size_t> Grid::neighbor(std::size_t c, Axis axis, int step) const {
  int i = col(c);
  int j = row(c);
  if (axis == Axis::X)
    i += step;
  else
    j += step;
  if (i < 0 || i >= nx_ || j < 0 || j >= ny_) return std::nullopt;
  return index(i, j);
}

std::optional<double> Grid::pinned(std::size_t c) const {
  if (std::isnan(pinned_[c])) return std::nullopt;
  return pinned_[c];
}

bool Grid::has_pinned_cells() const {
  for (double v : pinned_)
    if (!std::isnan(v)) return true;
  return false;
}

bool Grid::has_exit() const {
  for (auto k : kind_)
    if (k == CellKind::Exit) return true;
  return false;
}

void Grid::set_wall(std::size_t c) {
  kind_[c] = CellKind::Wall;
  exit_face_[c] = Face::None;
  pinned_[c] = kNaN;
}

void Grid::set_gate_adjacent(std::size_t c) { kind_[c] = CellKind::GateAdjacent; }

void Grid::set_exit(std::size_t c, double flux_factor, Face face) {
  const int i = col(c);
  const int j = row(c);
  if (face == Face::None) {
    if (i == nx_ - 1)
      face = Face::XPlus;
    else if (i == 0)
      face = Face::XMinus;
    else if (dims_ == 2 && j == ny_ - 1)
      face = Face::YPlus;
    else if (dims_ == 2 && j == 0)
      face = Face::YMinus;
    else {
      std::ostringstream os;
      os << "exit cell (" << i << ", " << j << ") is not on the domain boundary";
      throw ConfigError(os.str());
    }
  }
  kind_[c] = CellKind::Exit;
  exit_face_[c] = face;
  exit_factor_[c] = flux_factor;
}

void Grid::set_pinned(std::size_t c, double rho) { pinned_[c] = rho; }

void Grid::set_wall_rect(double x0, double x1, double y0, double y1) {
  for (std::size_t c = 0; c < size(); ++c) {
    const double x = xc(c);
    const double y = yc(c);
    if (x >= x0 && x <= x1 && (dims_ == 1 || (y >= y0 && y <= y1))) set_wall(c);
  }
}

void Grid::validate(double tau_hi) const {
  for (std::size_t c = 0; c < size(); ++c) {
    const int i = col(c);
    const int j = row(c);
    if (kind_[c] == CellKind::Exit) {
      const Face f = exit_face_[c];
      const bool on_face = (f == Face::XPlus && i == nx_ - 1) || (f == Face::XMinus && i == 0) ||
                           (f == Face::YPlus && j == ny_ - 1) || (f == Face::YMinus && j == 0);
      if (!on_face || (dims_ == 1 && (f == Face::YPlus || f == Face::YMinus))) {
        std::ostringstream os;
        os << "exit cell (" << i << ", " << j << ") does not open onto the domain boundary";
        throw ConfigError(os.str());
      }
      if (!(exit_factor_[c] >= 0.0 && exit_factor_[c] <= 1.0))
        throw ConfigError("exit flux factor must lie in [0, 1]");
    }
    if (!std::isnan(pinned_[c]) && !(pinned_[c] >= 0.0 && pinned_[c] <= tau_hi))
      throw ConfigError("fixed density must lie in [0, tau_hi]");
  }
}

Grid Grid::transposed() const {
  Grid g = dims_ == 1 ? *this : plane(ny_, nx_, dx_);
  if (dims_ == 1) return g;
  auto swap_face = [](Face f) {
    switch (f) {
      case Face::XMinus: return Face::YMinus;
      case Face::XPlus: return Face::YPlus;
      case Face::YMinus: return Face::XMinus;
      case Face::YPlus: return Face::XPlus;
      default: return Face::None;
    }
  };
  for (std::size_t c = 0; c < size(); ++c) {
    const std::size_t t = g.index(row(c), col(c));
    g.kind_[t] = kind_[c];
    g.exit_face_[t] = swap_face(exit_face_[c]);
    g.exit_factor_[t] = exit_factor_[c];
    g.pinned_[t] = pinned_[c];
  }
  return g;
}

Grid Grid::mirrored_y() const {
  Grid g = *this;
  auto flip = [](Face f) {
    if (f == Face::YPlus) return Face::YMinus;
    if (f == Face::YMinus) return Face::YPlus;
    return f;
  };
  for (std::size_t c = 0; c < size(); ++c) {
    const std::size_t m = index(col(c), ny_ - 1 - row(c));
    g.kind_[m] = kind_[c];
    g.exit_face_[m] = flip(exit_face_[c]);
    g.exit_factor_[m] = exit_factor_[c];
    g.pinned_[m] = pinned_[c];
  }
  return g;
}

SimState SimState::initial(Field rho0, const SimParams& p) {
  SimState s;
  const std::size_t n = rho0.size();
  s.rho = Field(std::vector<double>(rho0.values().begin(), rho0.values().end()), FieldRole::Rho);
  s.tau = Field(n, p.tau_lo, FieldRole::Tau);
  s.u = Field(n, 0.0, FieldRole::U);
  s.t = 0.0;
  return s;
}

void clamp_state(SimState& s, const SimParams& p) {
  const std::size_t n = s.rho.size();
  for (std::size_t c = 0; c < n; ++c) {
    const double r = s.rho[c];
    double tau = s.tau[c];
    double u = s.u[c];
    if (!std::isfinite(r) || !std::isfinite(tau) || !std::isfinite(u)) {
      std::ostringstream os;
      os << "non-finite state at cell " << c << " (rho=" << r << ", tau=" << tau << ", u=" << u
         << ", t=" << s.t << ")";
      throw NumericalFault(os.str());
    }
    u = std::min(std::max(u, p.u_lo), p.u_hi);
    tau = std::min(std::max(tau, p.tau_lo), p.tau_hi);
    tau = std::max(tau, r);
    s.u[c] = u;
    s.tau[c] = tau;
  }
}

double total_mass(const Field& rho, const Grid& grid, bool exclude_pinned) {
  double sum = 0.0;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (grid.is_wall(c)) continue;
    if (exclude_pinned && grid.pinned(c)) continue;
    sum += rho[c];
  }
  return sum * grid.cell_area();
}

}  // namespace crowdsim
