#include "crowdsim/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace crowdsim {

SensoryStencils build_stencils(const Grid& grid, const DirectionField& w, const SimParams& p) {
  const std::size_t n = grid.size();
  const double h = grid.dx();
  const int reach = static_cast<int>(std::ceil(p.delta / h + 1e-9));
  const double r2 = p.delta * p.delta * (1.0 + 1e-12);
  const int reach_y = grid.dims() == 1 ? 0 : reach;

  std::vector<std::size_t> offsets;
  std::vector<std::size_t> members;
  offsets.reserve(n + 1);
  offsets.push_back(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (!grid.is_wall(c)) {
      members.push_back(c);
      const int i = grid.col(c);
      const int j = grid.row(c);
      for (int dj = -reach_y; dj <= reach_y; ++dj) {
        for (int di = -reach; di <= reach; ++di) {
          if (di == 0 && dj == 0) continue;
          const int zi = i + di;
          const int zj = j + dj;
          if (zi < 0 || zi >= grid.nx() || zj < 0 || zj >= grid.ny()) continue;
          const std::size_t z = grid.index(zi, zj);
          if (grid.is_wall(z)) continue;
          const double ox = di * h;
          const double oy = dj * h;
          if (ox * ox + oy * oy > r2) continue;
          if (w.wx[c] * di + w.wy[c] * dj > 0.0) members.push_back(z);
        }
      }
    }
    offsets.push_back(members.size());
  }
  return SensoryStencils(std::move(offsets), std::move(members));
}

double exact_sum(std::span<const double> values) {
  // Shewchuk's non-overlapping partials with a correctly rounded final sum.
  std::vector<double> partials;
  for (double x : values) {
    std::size_t k = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[k++] = lo;
      x = hi;
    }
    partials.resize(k);
    partials.push_back(x);
  }
  std::size_t m = partials.size();
  if (m == 0) return 0.0;
  double hi = partials[--m];
  double lo = 0.0;
  while (m > 0) {
    const double x = hi;
    const double y = partials[--m];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  // Round half-way cases the same way a single exact addition would.
  if (m > 0 && ((lo < 0.0 && partials[m - 1] < 0.0) || (lo > 0.0 && partials[m - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    const double yr = x - hi;
    if (y == yr) hi = x;
  }
  return hi;
}

Field tau_ave(const Field& tau, const SensoryStencils& st) {
  const std::size_t n = tau.size();
  Field out(n, 0.0, FieldRole::Other);
  std::vector<double> buf;
  for (std::size_t c = 0; c < n; ++c) {
    const auto m = st.members(c);
    if (m.empty()) {
      out[c] = tau[c];
      continue;
    }
    buf.clear();
    for (std::size_t z : m) buf.push_back(tau[z]);
    out[c] = exact_sum(buf) / static_cast<double>(m.size());
  }
  return out;
}

Field theta(const Field& rho, const Field& tau_avg, const SimParams& p) {
  const std::size_t n = rho.size();
  Field out(n, 0.0, FieldRole::Theta);
  for (std::size_t c = 0; c < n; ++c) out[c] = rho[c] - (tau_avg[c] - p.nu);
  return out;
}

double directional_derivative(const Field& th, const DirectionField& w, const Grid& grid,
                              std::size_t c) {
  const double h = grid.dx();
  auto along = [&](Axis a) {
    const double wa = w.component(a, c);
    if (wa == 0.0) return 0.0;
    const auto nb = grid.neighbor(c, a, wa > 0.0 ? +1 : -1);
    if (!nb || grid.is_wall(*nb)) return 0.0;
    return wa > 0.0 ? wa * (th[*nb] - th[c]) / h : wa * (th[c] - th[*nb]) / h;
  };
  const double dxp = along(Axis::X);
  return grid.dims() == 1 ? dxp : dxp + along(Axis::Y);
}

Field u_rhs(const Field& u, const Field& th, const DirectionField& w, const Grid& grid,
            const SimParams& p) {
  const std::size_t n = u.size();
  Field out(n, 0.0, FieldRole::Other);
  for (std::size_t c = 0; c < n; ++c) {
    if (grid.is_wall(c)) continue;
    const double t = th[c];
    double source;
    if (t >= 0.0) {
      const double phi = std::max(t - p.beta * directional_derivative(th, w, grid, c), 0.0);
      source = p.alpha_pos * phi;
    } else {
      source = p.alpha_neg * t;
    }
    out[c] = -p.eps * u[c] + source;
  }
  return out;
}

}  // namespace crowdsim
