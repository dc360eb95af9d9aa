#include "crowdsim/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "crowdsim/error.hpp"

namespace crowdsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double neighbor_value(const Field& phi, const Grid& g, std::size_t c, Axis a, int step) {
  const auto n = g.neighbor(c, a, step);
  if (!n || g.is_wall(*n)) return kInf;
  return phi[*n];
}

// Godunov upwind update from the smaller neighbor on each axis. Symmetric
// in (a, b) bit for bit.
double local_update(double a, double b, double h) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (hi - lo >= h) return lo + h;
  const double d = hi - lo;
  return 0.5 * (lo + hi + std::sqrt(2.0 * h * h - d * d));
}

}  // namespace

Field solve_eikonal(const Grid& grid, const EikonalOptions& opt) {
  if (!grid.has_exit()) throw ConfigError("Eikonal solve needs at least one exit cell");
  const std::size_t n = grid.size();
  Field phi(n, kInf, FieldRole::Phi);
  for (std::size_t c = 0; c < n; ++c)
    if (grid.is_exit(c)) phi[c] = 0.0;

  const int nx = grid.nx();
  const int ny = grid.ny();
  const double h = grid.dx();
  auto relax = [&](int i, int j) {
    const std::size_t c = grid.index(i, j);
    if (grid.is_wall(c) || grid.is_exit(c)) return 0.0;
    const double a = std::min(neighbor_value(phi, grid, c, Axis::X, -1),
                              neighbor_value(phi, grid, c, Axis::X, +1));
    const double b = grid.dims() == 1 ? kInf
                                      : std::min(neighbor_value(phi, grid, c, Axis::Y, -1),
                                                 neighbor_value(phi, grid, c, Axis::Y, +1));
    if (std::isinf(a) && std::isinf(b)) return 0.0;
    const double cand = local_update(a, b, h);
    if (cand < phi[c]) {
      const double change = std::isinf(phi[c]) ? kInf : phi[c] - cand;
      phi[c] = cand;
      return change;
    }
    return 0.0;
  };

  for (int round = 0; round < opt.max_sweeps; ++round) {
    double max_change = 0.0;
    // Four alternating orderings: (+x,+y), (-x,+y), (-x,-y), (+x,-y).
    for (int order = 0; order < 4; ++order) {
      const bool rev_x = order == 1 || order == 2;
      const bool rev_y = order >= 2;
      for (int jj = 0; jj < ny; ++jj) {
        const int j = rev_y ? ny - 1 - jj : jj;
        for (int ii = 0; ii < nx; ++ii) {
          const int i = rev_x ? nx - 1 - ii : ii;
          max_change = std::max(max_change, relax(i, j));
        }
      }
    }
    if (max_change < opt.tolerance) return phi;
  }
  throw NumericalFault("Eikonal fast sweeping did not converge");
}

DirectionField direction_field(const Field& phi, const Grid& grid) {
  const std::size_t n = grid.size();
  DirectionField w{Field(n, 0.0, FieldRole::Wx), Field(n, 0.0, FieldRole::Wy)};
  for (std::size_t c = 0; c < n; ++c) {
    if (grid.is_wall(c)) continue;
    if (grid.is_exit(c)) {
      switch (grid.exit_face(c)) {
        case Face::XPlus: w.wx[c] = 1.0; break;
        case Face::XMinus: w.wx[c] = -1.0; break;
        case Face::YPlus: w.wy[c] = 1.0; break;
        case Face::YMinus: w.wy[c] = -1.0; break;
        case Face::None: break;
      }
      continue;
    }
    if (!std::isfinite(phi[c])) {
      std::ostringstream os;
      os << "cell (" << grid.col(c) << ", " << grid.row(c) << ") cannot reach any exit";
      throw NumericalFault(os.str());
    }
    // Descent toward the smaller neighbor per axis; an exact tie on an axis
    // leaves that component zero.
    auto component = [&](Axis a) {
      const double lo = neighbor_value(phi, grid, c, a, -1);
      const double hi = neighbor_value(phi, grid, c, a, +1);
      if (lo == hi) return 0.0;
      if (hi < lo) return hi < phi[c] ? phi[c] - hi : 0.0;
      return lo < phi[c] ? -(phi[c] - lo) : 0.0;
    };
    double gx = component(Axis::X);
    double gy = grid.dims() == 1 ? 0.0 : component(Axis::Y);
    if (gx == 0.0 && gy == 0.0) {
      // Ridge with ties on every descending axis: break toward +x, then +y.
      const double xl = neighbor_value(phi, grid, c, Axis::X, -1);
      const double yl = grid.dims() == 1 ? kInf : neighbor_value(phi, grid, c, Axis::Y, -1);
      if (xl < phi[c])
        gx = 1.0;
      else if (yl < phi[c])
        gy = 1.0;
      else {
        std::ostringstream os;
        os << "zero walking-distance gradient at cell (" << grid.col(c) << ", " << grid.row(c)
           << ")";
        throw NumericalFault(os.str());
      }
    }
    const double norm = std::sqrt(gx * gx + gy * gy);
    w.wx[c] = gx / norm;
    w.wy[c] = gy / norm;
  }
  return w;
}

}  // namespace crowdsim
