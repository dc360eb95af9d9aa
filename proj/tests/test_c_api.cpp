#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"

#include "crowdsim/crowdsim.h"

namespace fs = std::filesystem;

TEST_CASE("version and builtins") {
  CHECK(std::strlen(crowdsim_version()) > 0);
  REQUIRE(crowdsim_builtin_count() == 5);
  CHECK(std::string(crowdsim_builtin_name(0)) == "test1");
  CHECK(crowdsim_builtin_name(99) == nullptr);
  CHECK(std::string(crowdsim_status_name(CROWDSIM_ERR_CONFIG)).size() > 0);
}

TEST_CASE("null arguments") {
  crowdsim_config* cfg = nullptr;
  CHECK(crowdsim_config_load(nullptr, &cfg) == CROWDSIM_ERR_ARGUMENT);
  CHECK(crowdsim_config_load("test1", nullptr) == CROWDSIM_ERR_ARGUMENT);
  CHECK(crowdsim_sim_step(nullptr, 1) == CROWDSIM_ERR_ARGUMENT);
  CHECK(std::strlen(crowdsim_last_error()) > 0);
  crowdsim_config_free(nullptr);
  crowdsim_sim_free(nullptr);
}

TEST_CASE("config errors carry a message") {
  crowdsim_config* cfg = nullptr;
  CHECK(crowdsim_config_load("test9", &cfg) == CROWDSIM_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(crowdsim_last_error()).find("test9") != std::string::npos);

  REQUIRE(crowdsim_config_load("test1", &cfg) == CROWDSIM_OK);
  CHECK(crowdsim_config_set(cfg, "bogus", 1.0) == CROWDSIM_ERR_CONFIG);
  CHECK(crowdsim_config_set(cfg, "dt", 5.0) == CROWDSIM_ERR_CONFIG);
  double dt = 0.0;
  REQUIRE(crowdsim_config_get(cfg, "dt", &dt) == CROWDSIM_OK);
  CHECK(dt == 0.5);  // a rejected set leaves the config untouched
  CHECK(crowdsim_config_set(cfg, "nu", 0.2) == CROWDSIM_OK);
  double nu = 0.0;
  crowdsim_config_get(cfg, "nu", &nu);
  CHECK(nu == 0.2);
  int dims = 0;
  CHECK(crowdsim_config_dims(cfg, &dims) == CROWDSIM_OK);
  CHECK(dims == 1);
  crowdsim_config_free(cfg);
}

TEST_CASE("json export sizes its buffer") {
  crowdsim_config* cfg = nullptr;
  REQUIRE(crowdsim_config_load("test4b", &cfg) == CROWDSIM_OK);
  std::size_t needed = 0;
  REQUIRE(crowdsim_config_to_json(cfg, nullptr, 0, &needed) == CROWDSIM_OK);
  CHECK(needed > 10);
  std::vector<char> small(4);
  CHECK(crowdsim_config_to_json(cfg, small.data(), small.size(), &needed) == CROWDSIM_ERR_ARGUMENT);
  std::vector<char> buf(needed);
  REQUIRE(crowdsim_config_to_json(cfg, buf.data(), buf.size(), &needed) == CROWDSIM_OK);
  CHECK(std::string(buf.data()).find("alpha_pos") != std::string::npos);

  const char* param = nullptr;
  const double* values = nullptr;
  std::size_t count = 0;
  REQUIRE(crowdsim_config_sweep(cfg, &param, &values, &count) == CROWDSIM_OK);
  REQUIRE(count == 4);
  CHECK(std::string(param) == "alpha_pos");
  CHECK(values[1] == 0.05);

  crowdsim_config* copy = nullptr;
  REQUIRE(crowdsim_config_clone(cfg, &copy) == CROWDSIM_OK);
  crowdsim_config_set(copy, "alpha_pos", 0.3);
  double a = 0.0;
  crowdsim_config_get(cfg, "alpha_pos", &a);
  CHECK(a == 1.0);
  crowdsim_config_free(copy);
  crowdsim_config_free(cfg);
}

TEST_CASE("stepping and field access") {
  crowdsim_config* cfg = nullptr;
  REQUIRE(crowdsim_config_load("test1", &cfg) == CROWDSIM_OK);
  crowdsim_sim* sim = nullptr;
  REQUIRE(crowdsim_sim_create(cfg, &sim) == CROWDSIM_OK);
  int nx = 0, ny = 0;
  REQUIRE(crowdsim_sim_shape(sim, &nx, &ny) == CROWDSIM_OK);
  CHECK(nx == 100);
  CHECK(ny == 1);
  double m0 = 0.0;
  crowdsim_sim_mass(sim, &m0);
  CHECK(m0 == doctest::Approx(25.0));
  REQUIRE(crowdsim_sim_step(sim, 10) == CROWDSIM_OK);
  double t = 0.0;
  crowdsim_sim_time(sim, &t);
  CHECK(t == 5.0);
  std::vector<double> rho(100), tau(100), phi(100);
  CHECK(crowdsim_sim_field(sim, CROWDSIM_FIELD_RHO, rho.data(), 99) == CROWDSIM_ERR_ARGUMENT);
  REQUIRE(crowdsim_sim_field(sim, CROWDSIM_FIELD_RHO, rho.data(), 100) == CROWDSIM_OK);
  REQUIRE(crowdsim_sim_field(sim, CROWDSIM_FIELD_TAU, tau.data(), 100) == CROWDSIM_OK);
  REQUIRE(crowdsim_sim_field(sim, CROWDSIM_FIELD_PHI, phi.data(), 100) == CROWDSIM_OK);
  for (int j = 0; j < 100; ++j) CHECK(rho[j] <= tau[j]);
  CHECK(phi[0] > phi[50]);
  CHECK(crowdsim_sim_field(sim, static_cast<crowdsim_field>(42), rho.data(), 100) ==
        CROWDSIM_ERR_ARGUMENT);
  crowdsim_sim_free(sim);
  crowdsim_config_free(cfg);
}

TEST_CASE("full run and validation through the C surface") {
  crowdsim_config* cfg = nullptr;
  REQUIRE(crowdsim_config_load("test3", &cfg) == CROWDSIM_OK);
  REQUIRE(crowdsim_config_set(cfg, "t_end", 10.0) == CROWDSIM_OK);
  const fs::path out = fs::temp_directory_path() / "crowdsim_test_capi";
  fs::remove_all(out);
  crowdsim_run_summary s{};
  REQUIRE(crowdsim_run(cfg, out.string().c_str(), &s) == CROWDSIM_OK);
  CHECK(s.steps == 20);
  CHECK(s.final_mass < s.initial_mass + 1e-9);
  CHECK(s.evacuation_time < 0.0);
  CHECK(fs::exists(out / "mass.csv"));
  CHECK(crowdsim_dump_eikonal(cfg, out.string().c_str()) == CROWDSIM_OK);
  CHECK(fs::exists(out / "eikonal.csv"));
  crowdsim_validation v{};
  REQUIRE(crowdsim_validate(cfg, &v) == CROWDSIM_OK);
  CHECK(v.failures == 0);
  CHECK(v.first_failure[0] == '\0');
  CHECK(crowdsim_run(cfg, "/proc/forbidden/out", nullptr) == CROWDSIM_ERR_IO);
  fs::remove_all(out);
  crowdsim_config_free(cfg);
}
