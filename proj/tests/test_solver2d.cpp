#include <cmath>

#include "doctest.h"

#include "crowdsim/error.hpp"
#include "crowdsim/solver2d.hpp"

using namespace crowdsim;

namespace {

DirectionField uniform(const Grid& g, double wx, double wy) {
  return {Field(g.size(), wx, FieldRole::Wx), Field(g.size(), wy, FieldRole::Wy)};
}

}  // namespace

TEST_CASE("sweeps along an axis w ignores leave the field alone") {
  SimParams p;
  Grid g = Grid::plane(6, 6, 1.0);
  Field rho(g.size(), 0.0, FieldRole::Rho);
  for (std::size_t c = 0; c < g.size(); ++c) rho[c] = 0.1 * g.col(c) + 0.05 * g.row(c);
  const Field tau(g.size(), 1.0, FieldRole::Tau);
  const Field out = axis_sweep(Transported::Rho, rho, tau, Axis::Y, uniform(g, 1.0, 0.0), g, p);
  CHECK(out == rho);
}

TEST_CASE("uniform interior flow telescopes") {
  SimParams p;
  Grid g = Grid::plane(8, 3, 1.0);
  for (int j = 0; j < 3; ++j) g.set_exit(g.index(7, j));
  const Field rho(g.size(), 0.3, FieldRole::Rho);
  const Field tau(g.size(), 1.0, FieldRole::Tau);
  const Field out = axis_sweep(Transported::Rho, rho, tau, Axis::X, uniform(g, 1.0, 0.0), g, p);
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (g.col(c) == 0)
      CHECK(out[c] == doctest::Approx(0.3 - 0.5 * 0.3));  // closed left face
    else
      CHECK(out[c] == doctest::Approx(0.3));
  }
}

TEST_CASE("converging directions fill a cell from both sides") {
  SimParams p;
  Grid g = Grid::plane(3, 1, 1.0);
  DirectionField w = uniform(g, 0.0, 0.0);
  w.wx[0] = 1.0;
  w.wx[1] = 1.0;
  w.wx[2] = -1.0;
  Field rho(std::vector<double>{0.4, 0.2, 0.3}, FieldRole::Rho);
  const Field tau(3, 1.0, FieldRole::Tau);
  // Make the middle cell a sink with nowhere to send.
  w.wx[1] = 0.0;
  const Field out = axis_sweep(Transported::Rho, rho, tau, Axis::X, w, g, p);
  const double lambda = p.dt / p.dx;
  const double in_left = std::min(0.4, 0.5);
  const double in_right = std::min(0.3, 0.5);
  CHECK(out[1] == doctest::Approx(0.2 + lambda * (in_left + in_right)));
  double before = 0.0, after = 0.0;
  for (int c = 0; c < 3; ++c) {
    before += rho[c];
    after += out[c];
  }
  CHECK(after == doctest::Approx(before));
  CHECK(out[1] - rho[1] == doctest::Approx(lambda * (in_left + in_right)));
}

TEST_CASE("u sweeps use the Burgers flux scaled by |w|") {
  SimParams p;
  Grid g = Grid::plane(3, 1, 1.0);
  const double s = std::sqrt(0.5);
  const DirectionField w = uniform(g, s, s);
  Field u(std::vector<double>{1.0, 0.0, 0.0}, FieldRole::U);
  const Field tau(3, 1.0, FieldRole::Tau);
  const Field out = axis_sweep(Transported::U, u, tau, Axis::X, w, g, p);
  CHECK(out[0] == doctest::Approx(1.0 - 0.5 * s * 0.5));
  CHECK(out[1] == doctest::Approx(0.5 * s * 0.5));
}

TEST_CASE("exit faces discharge into vacuum scaled by the exit factor") {
  SimParams p;
  Grid g = Grid::plane(2, 1, 1.0);
  g.set_exit(g.index(1, 0), 0.5);
  Field rho(std::vector<double>{0.0, 0.8}, FieldRole::Rho);
  const Field tau(2, 1.0, FieldRole::Tau);
  const Field out = axis_sweep(Transported::Rho, rho, tau, Axis::X, uniform(g, 1.0, 0.0), g, p);
  CHECK(out[1] == doctest::Approx(0.8 - 0.5 * 0.5 * 0.5));
}

TEST_CASE("empty room stays empty and exits relax u") {
  Scenario2D sc;
  sc.grid = Grid::plane(20, 20, 1.0);
  sc.grid.set_exit(sc.grid.index(19, 10));
  sc.rho0 = Field(sc.grid.size(), 0.0, FieldRole::Rho);
  Solver2D s(sc);
  for (int n = 0; n < 50; ++n) s.advance();
  for (std::size_t c = 0; c < sc.grid.size(); ++c) {
    CHECK(s.state().rho[c] == 0.0);
    CHECK(s.state().tau[c] == sc.params.tau_lo);
  }
}

TEST_CASE("closed box conserves mass") {
  Scenario2D sc;
  sc.grid = Grid::plane(30, 30, 1.0);
  sc.grid.set_exit(sc.grid.index(29, 15), 0.0);
  sc.grid.set_wall_rect(10, 11, 5, 25);
  sc.rho0 = Field(sc.grid.size(), 0.0, FieldRole::Rho);
  for (std::size_t c = 0; c < sc.grid.size(); ++c)
    if (sc.grid.col(c) < 8) sc.rho0[c] = 0.9;
  Solver2D s(sc);
  const double m0 = total_mass(s.state().rho, s.grid());
  for (int n = 0; n < 3000; ++n) s.advance();
  CHECK(std::abs(total_mass(s.state().rho, s.grid()) - m0) <= 1e-12 * m0);
  for (std::size_t c = 0; c < sc.grid.size(); ++c) CHECK(s.state().rho[c] <= s.state().tau[c]);
}

TEST_CASE("pinned cells are re-imposed every step") {
  Scenario2D sc;
  sc.params.dx = 2.0;
  sc.params.dt = 1.0;
  sc.grid = Grid::plane(10, 10, 2.0);
  const std::size_t ex = sc.grid.index(9, 5);
  sc.grid.set_exit(ex);
  sc.grid.set_pinned(ex, 0.9);
  sc.rho0 = Field(sc.grid.size(), 0.0, FieldRole::Rho);
  Solver2D s(sc);
  CHECK(s.state().rho[ex] == 0.9);
  for (int n = 0; n < 20; ++n) {
    s.advance();
    CHECK(s.state().rho[ex] == 0.9);
    CHECK(s.state().tau[ex] >= 0.9);
  }
  // The pin points out through its exit face, so nothing reaches the room.
  CHECK(total_mass(s.state().rho, s.grid(), true) == 0.0);
}

TEST_CASE("frozen wave keeps tau at its floor") {
  Scenario2D sc;
  sc.params.alpha_pos = sc.params.alpha_neg = sc.params.gamma = 0.0;
  sc.grid = Grid::plane(20, 20, 1.0);
  sc.grid.set_exit(sc.grid.index(19, 0));
  sc.rho0 = Field(sc.grid.size(), 0.0, FieldRole::Rho);
  for (std::size_t c = 0; c < sc.grid.size(); ++c)
    if (sc.grid.col(c) < 10 && sc.grid.row(c) > 5) sc.rho0[c] = 0.7;
  Solver2D s(sc);
  for (int n = 0; n < 200; ++n) {
    s.advance();
    for (std::size_t c = 0; c < sc.grid.size(); ++c) {
      REQUIRE(s.state().tau[c] == sc.params.tau_lo);
      REQUIRE(s.state().u[c] == 0.0);
    }
  }
}

TEST_CASE("transposed problem with swapped sweeps is equivalent") {
  Scenario2D a;
  a.grid = Grid::plane(24, 16, 1.0);
  a.grid.set_exit(a.grid.index(23, 2));
  a.grid.set_exit(a.grid.index(5, 15));
  a.grid.set_wall_rect(12, 13, 4, 12);
  a.rho0 = Field(a.grid.size(), 0.0, FieldRole::Rho);
  for (std::size_t c = 0; c < a.grid.size(); ++c)
    if (a.grid.col(c) < 10) a.rho0[c] = 0.3 + 0.05 * (c % 7);
  Solver2D sa(a);

  auto tr = [&](const Field& f) {
    Field out = f;
    for (std::size_t c = 0; c < a.grid.size(); ++c)
      out[static_cast<std::size_t>(a.grid.col(c)) * a.grid.ny() + a.grid.row(c)] = f[c];
    return out;
  };
  Scenario2D b;
  b.grid = a.grid.transposed();
  b.rho0 = tr(a.rho0);
  b.directions = DirectionField{tr(sa.directions().wy), tr(sa.directions().wx)};
  b.sweep_order = {Axis::Y, Axis::X};
  Solver2D sb(b);
  for (int n = 0; n < 150; ++n) {
    sa.advance();
    sb.advance();
    REQUIRE(tr(sa.state().rho) == sb.state().rho);
    REQUIRE(tr(sa.state().u) == sb.state().u);
    REQUIRE(tr(sa.state().tau) == sb.state().tau);
  }
}

TEST_CASE("scenario validation") {
  Scenario2D sc;
  sc.grid = Grid::plane(5, 5, 1.0);
  sc.rho0 = Field(sc.grid.size(), 0.0, FieldRole::Rho);
  CHECK_THROWS_AS(Solver2D{sc}, ConfigError);  // no exit
  sc.grid.set_exit(sc.grid.index(4, 2));
  sc.rho0[3] = 1.5;
  CHECK_THROWS_AS(Solver2D{sc}, ConfigError);
  sc.rho0[3] = 0.0;
  sc.sweep_order = {Axis::X, Axis::X};
  CHECK_THROWS_AS(Solver2D{sc}, ConfigError);
  sc.sweep_order = {Axis::X, Axis::Y};
  sc.params.dx = 2.0;
  CHECK_THROWS_AS(Solver2D{sc}, ConfigError);
}
