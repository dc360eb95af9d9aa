#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

#include "crowdsim/error.hpp"
#include "crowdsim/solver1d.hpp"
#include "oracles.hpp"

using namespace crowdsim;

namespace {

Scenario1D closed_corridor() {
  Scenario1D sc;
  sc.left = Boundary1D::Closed;
  sc.right = Boundary1D::Closed;
  sc.gate_x.reset();
  return sc;
}

}  // namespace

TEST_CASE("uniform periodic free flow") {
  Scenario1D sc;
  sc.left = sc.right = Boundary1D::Periodic;
  sc.gate_x.reset();
  sc.rho0.assign(sc.cells(), 0.3);
  Solver1D s(sc);
  s.advance();
  for (int j = 0; j < sc.cells(); ++j) {
    CHECK(s.state().rho[j] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(s.state().u[j] == doctest::Approx(-0.03).epsilon(1e-12));
    CHECK(s.state().tau[j] == 1.0);
  }
  CHECK(s.state().t == 0.5);
}

TEST_CASE("empty corridor keeps tau at its floor") {
  Scenario1D sc = closed_corridor();
  sc.initial_rho = 0.0;
  sc.params.t_end = 2000;
  Solver1D s(sc);
  run(s, {}, {});
  for (int j = 0; j < sc.cells(); ++j) {
    CHECK(s.state().rho[j] == 0.0);
    CHECK(s.state().tau[j] == sc.params.tau_lo);
    CHECK(s.state().u[j] <= 0.0);
    CHECK(s.state().u[j] >= sc.params.u_lo);
  }
}

TEST_CASE("closed gate carries no flux and keeps the far side empty") {
  Scenario1D sc;
  sc.gate_x = 66.0;
  sc.gate_open_time = 400.0;
  Solver1D s(sc);
  const int k = *sc.gate_interface();
  double peak = 0.0;
  for (int n = 0; n < 790; ++n) {
    s.advance();
    CHECK(s.rho_fluxes()[k] == 0.0);
    for (int j = k; j < sc.cells(); ++j) {
      CHECK(s.state().rho[j] == 0.0);
      CHECK(s.state().tau[j] == sc.params.tau_lo);
      CHECK(s.state().u[j] == 0.0);
    }
    peak = std::max(peak, s.state().rho[k - 1]);
  }
  CHECK(peak > sc.params.tau_lo);
  // The step leaving t = 395 is still closed; the gate opens at t = 400.
  for (int n = 0; n < 12; ++n) s.advance();
  CHECK(s.rho_fluxes()[k] > 0.0);
  CHECK(s.state().rho[k] > 0.0);
}

TEST_CASE("inflow switches off at the cutoff") {
  Scenario1D sc;
  const auto g149 = left_ghost(sc, sc.initial_state(), 149.0);
  const auto g151 = left_ghost(sc, sc.initial_state(), 151.0);
  REQUIRE(g149);
  REQUIRE(g151);
  CHECK(g149->rho == 0.5);
  CHECK(g151->rho == 0.0);
  CHECK(g151->tau == sc.params.tau_lo);
  const auto r = right_ghost(sc, sc.initial_state(), 10.0);
  REQUIRE(r);
  CHECK(r->rho == 0.0);
  CHECK(r->u == 0.0);
  Scenario1D closed = closed_corridor();
  CHECK_FALSE(left_ghost(closed, closed.initial_state(), 0.0).has_value());
}

TEST_CASE("closed corridor conserves mass") {
  Scenario1D sc = closed_corridor();
  sc.initial_rho = 0.8;
  sc.initial_extent = 70;
  Solver1D s(sc);
  const double m0 = total_mass(s.state().rho, s.grid());
  for (int n = 0; n < 10000; ++n) s.advance();
  CHECK(std::abs(total_mass(s.state().rho, s.grid()) - m0) <= 1e-12 * m0);
}

TEST_CASE("frozen tau keeps rho within [0, tau] without the clamp") {
  Scenario1D sc = closed_corridor();
  sc.params.gamma = 0.0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  sc.rho0.resize(sc.cells());
  sc.tau0.resize(sc.cells());
  for (int j = 0; j < sc.cells(); ++j) {
    sc.tau0[j] = 1.0 + 4.5 * unit(rng);
    sc.rho0[j] = sc.tau0[j] * unit(rng);
  }
  Solver1D s(sc);
  for (int n = 0; n < 500; ++n) {
    const auto r = s.step_from(s.state());
    for (int j = 0; j < sc.cells(); ++j) {
      CHECK(r.next.rho[j] >= 0.0);
      CHECK(r.next.rho[j] <= sc.tau0[j]);
      CHECK(r.next.tau[j] == sc.tau0[j]);
    }
    s.advance();
  }
}

TEST_CASE("degenerates to the cell transmission model") {
  Scenario1D sc;
  sc.params.alpha_pos = sc.params.alpha_neg = sc.params.gamma = 0.0;
  sc.left = Boundary1D::Closed;
  sc.right = Boundary1D::Outflow;
  sc.gate_x.reset();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  sc.rho0.resize(sc.cells());
  for (auto& r : sc.rho0) r = unit(rng);
  Solver1D s(sc);
  std::vector<double> ref = sc.rho0;
  const std::vector<double> tau(sc.cells(), sc.params.tau_lo);
  const oracle::Triangle tri;
  for (int n = 0; n < 400; ++n) {
    s.advance();
    ref = oracle::ctm_step(ref, tau, 0.5, 1.0, tri);
    for (int j = 0; j < sc.cells(); ++j) REQUIRE(s.state().rho[j] == ref[j]);
  }
}

TEST_CASE("queue behind the gate rises toward it before opening") {
  Scenario1D sc;
  sc.gate_x = 66.0;
  sc.gate_open_time = 400.0;
  sc.params.eps = 0.0;
  sc.params.t_end = 300.0;
  Solver1D s(sc);
  run(s, {}, {});
  const int k = *sc.gate_interface();
  CHECK(s.state().rho[k - 1] > sc.params.tau_lo);
  CHECK(s.state().rho[k - 1] > s.state().rho[k - 20]);
  CHECK(s.state().rho[k - 20] > sc.params.sigma);
}

TEST_CASE("scenario validation") {
  Scenario1D sc;
  sc.gate_x = 66.3;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc.gate_x = 120.0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc.gate_x.reset();
  sc.inflow_rho = 2.0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc.inflow_rho = 0.5;
  sc.left = Boundary1D::Periodic;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc.left = Boundary1D::Inflow;
  sc.rho0.assign(10, 0.1);
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc.rho0.clear();
  sc.length = 99.7;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
}

TEST_CASE("faults report the step") {
  Scenario1D sc = closed_corridor();
  Solver1D s(sc);
  SimState bad = s.state();
  bad.u[3] = std::numeric_limits<double>::infinity();
  s.set_state(bad);
  try {
    s.advance();
    FAIL("expected a fault");
  } catch (const NumericalFault& e) {
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
}

TEST_CASE("run stops at steady state and reports observers") {
  Scenario1D sc = closed_corridor();
  sc.initial_rho = 0.0;
  sc.params.t_end = 5000;
  Solver1D s(sc);
  long seen = 0;
  std::vector<Observer> obs{[&](const StepView& v) {
    CHECK(v.step == seen);
    ++seen;
  }};
  const RunResult r = run(s, obs, RunControl{1e-9, 0.0});
  CHECK(r.reached_steady);
  CHECK(r.steps < 10000);
  CHECK(seen == r.steps + 1);
}
