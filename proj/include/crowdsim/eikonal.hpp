#pragma once

#include "crowdsim/grid.hpp"

namespace crowdsim {

/// Unit walking direction per cell; (0, 0) on walls. wy is zero in 1D.
struct DirectionField {
  Field wx;
  Field wy;

  [[nodiscard]] double component(Axis a, std::size_t c) const { return a == Axis::X ? wx[c] : wy[c]; }
};

struct EikonalOptions {
  double tolerance = 1e-10;
  int max_sweeps = 10000;
};

/// Walking distance to the nearest exit: zero at exit cell centers, +inf on
/// walls and unreachable cells, first-order Godunov upwind discretization of
/// |grad phi| = 1 solved by fast sweeping until the largest update in a full
/// round of sweeps is below the tolerance.
Field solve_eikonal(const Grid& grid, const EikonalOptions& opt = {});

/// w = -grad(phi)/|grad(phi)| from the same upwind differences the solver
/// uses: on each axis the smaller neighbor provides the difference, and an
/// axis with no descending neighbor (or an exact tie) contributes zero. Exit
/// cells point through their exit face.
DirectionField direction_field(const Field& phi, const Grid& grid);

}  // namespace crowdsim
