#include "crowdsim/crowdsim.h"

#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "crowdsim/config.hpp"
#include "crowdsim/error.hpp"
#include "crowdsim/run.hpp"
#include "crowdsim/version.hpp"

struct crowdsim_config {
  crowdsim::RunConfig cfg;
  // Owns the strings handed out by crowdsim_config_sweep.
  std::string sweep_param;
  std::vector<double> sweep_values;
};

struct crowdsim_sim {
  std::unique_ptr<crowdsim::Stepper> stepper;
  crowdsim::Field phi;
  crowdsim::DirectionField w;
};

namespace {

thread_local std::string g_last_error;

crowdsim_status fail(crowdsim_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
crowdsim_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const crowdsim::ConfigError& e) {
    return fail(CROWDSIM_ERR_CONFIG, e.what());
  } catch (const crowdsim::NumericalFault& e) {
    return fail(CROWDSIM_ERR_NUMERIC, e.what());
  } catch (const crowdsim::IoError& e) {
    return fail(CROWDSIM_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CROWDSIM_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(CROWDSIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CROWDSIM_ERR_INTERNAL, "unknown exception");
  }
}

#define CROWDSIM_REQUIRE(ptr)                                       \
  do {                                                              \
    if (!(ptr)) return fail(CROWDSIM_ERR_ARGUMENT, #ptr " is null"); \
  } while (0)

void refresh_sweep(crowdsim_config* c) {
  if (c->cfg.sweep) {
    c->sweep_param = c->cfg.sweep->param;
    c->sweep_values = c->cfg.sweep->values;
  } else {
    c->sweep_param.clear();
    c->sweep_values.clear();
  }
}

}  // namespace

extern "C" {

const char* crowdsim_version(void) { return crowdsim::kVersion; }

const char* crowdsim_last_error(void) { return g_last_error.c_str(); }

const char* crowdsim_status_name(crowdsim_status status) {
  switch (status) {
    case CROWDSIM_OK: return "ok";
    case CROWDSIM_ERR_ARGUMENT: return "argument error";
    case CROWDSIM_ERR_CONFIG: return "configuration error";
    case CROWDSIM_ERR_NUMERIC: return "numerical fault";
    case CROWDSIM_ERR_IO: return "i/o error";
    case CROWDSIM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

size_t crowdsim_builtin_count(void) { return crowdsim::builtin_names().size(); }

const char* crowdsim_builtin_name(size_t index) {
  const auto& n = crowdsim::builtin_names();
  return index < n.size() ? n[index].c_str() : nullptr;
}

crowdsim_status crowdsim_config_load(const char* name_or_path, crowdsim_config** out) {
  CROWDSIM_REQUIRE(name_or_path);
  CROWDSIM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<crowdsim_config>();
    c->cfg = crowdsim::load_config(name_or_path);
    refresh_sweep(c.get());
    *out = c.release();
    return CROWDSIM_OK;
  });
}

crowdsim_status crowdsim_config_clone(const crowdsim_config* cfg, crowdsim_config** out) {
  CROWDSIM_REQUIRE(cfg);
  CROWDSIM_REQUIRE(out);
  return guarded([&] {
    *out = new crowdsim_config(*cfg);
    return CROWDSIM_OK;
  });
}

void crowdsim_config_free(crowdsim_config* cfg) { delete cfg; }

crowdsim_status crowdsim_config_set(crowdsim_config* cfg, const char* key, double value) {
  CROWDSIM_REQUIRE(cfg);
  CROWDSIM_REQUIRE(key);
  return guarded([&] {
    crowdsim::RunConfig merged = cfg->cfg;
    merged.set(key, value);
    merged.validate();
    cfg->cfg = std::move(merged);
    return CROWDSIM_OK;
  });
}

crowdsim_status crowdsim_config_get(const crowdsim_config* cfg, const char* key, double* value) {
  CROWDSIM_REQUIRE(cfg);
  CROWDSIM_REQUIRE(key);
  CROWDSIM_REQUIRE(value);
  return guarded([&] {
    *value = cfg->cfg.get(key);
    return CROWDSIM_OK;
  });
}

crowdsim_status crowdsim_config_set_snapshot_interval(crowdsim_config* cfg, double seconds) {
  return crowdsim_config_set(cfg, "snapshot_interval", seconds);
}

crowdsim_status crowdsim_config_dims(const crowdsim_config* cfg, int* dims) {
  CROWDSIM_REQUIRE(cfg);
  CROWDSIM_REQUIRE(dims);
  *dims = cfg->cfg.dims;
  return CROWDSIM_OK;
}

crowdsim_status crowdsim_config_sweep(const crowdsim_config* cfg, const char** param,
                                      const double** values, size_t* count) {
  CROWDSIM_REQUIRE(cfg);
  CROWDSIM_REQUIRE(count);
  *count = cfg->sweep_values.size();
  if (param) *param = cfg->sweep_param.c_str();
  if (values) *values = cfg->sweep_values.data();
  return CROWDSIM_OK;
}

crowdsim_status crowdsim_config_to_json(const crowdsim_config* cfg, char* buffer, size_t capacity,
                                        size_t* needed) {
  CROWDSIM_REQUIRE(cfg);
  return guarded([&] {
    const std::string text = crowdsim::to_json(cfg->cfg).dump(2);
    if (needed) *needed = text.size() + 1;
    if (!buffer) return CROWDSIM_OK;
    if (capacity < text.size() + 1) return fail(CROWDSIM_ERR_ARGUMENT, "buffer too small");
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return CROWDSIM_OK;
  });
}

crowdsim_status crowdsim_sim_create(const crowdsim_config* cfg, crowdsim_sim** out) {
  CROWDSIM_REQUIRE(cfg);
  CROWDSIM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto sim = std::make_unique<crowdsim_sim>();
    sim->stepper = crowdsim::make_stepper(cfg->cfg);
    if (auto* s2 = dynamic_cast<crowdsim::Solver2D*>(sim->stepper.get())) {
      sim->phi = s2->phi();
      sim->w = s2->directions();
    } else {
      auto* s1 = dynamic_cast<crowdsim::Solver1D*>(sim->stepper.get());
      crowdsim::Grid g = s1->grid();
      if (!g.has_exit()) g.set_exit(g.size() - 1);
      sim->phi = crowdsim::solve_eikonal(g);
      sim->w = s1->directions();
    }
    *out = sim.release();
    return CROWDSIM_OK;
  });
}

void crowdsim_sim_free(crowdsim_sim* sim) { delete sim; }

crowdsim_status crowdsim_sim_step(crowdsim_sim* sim, long steps) {
  CROWDSIM_REQUIRE(sim);
  if (steps < 0) return fail(CROWDSIM_ERR_ARGUMENT, "step count must be non-negative");
  return guarded([&] {
    for (long k = 0; k < steps; ++k) sim->stepper->advance();
    return CROWDSIM_OK;
  });
}

crowdsim_status crowdsim_sim_time(const crowdsim_sim* sim, double* t) {
  CROWDSIM_REQUIRE(sim);
  CROWDSIM_REQUIRE(t);
  *t = sim->stepper->state().t;
  return CROWDSIM_OK;
}

crowdsim_status crowdsim_sim_shape(const crowdsim_sim* sim, int* nx, int* ny) {
  CROWDSIM_REQUIRE(sim);
  if (nx) *nx = sim->stepper->grid().nx();
  if (ny) *ny = sim->stepper->grid().ny();
  return CROWDSIM_OK;
}

crowdsim_status crowdsim_sim_mass(const crowdsim_sim* sim, double* mass) {
  CROWDSIM_REQUIRE(sim);
  CROWDSIM_REQUIRE(mass);
  *mass = crowdsim::total_mass(sim->stepper->state().rho, sim->stepper->grid(), true);
  return CROWDSIM_OK;
}

crowdsim_status crowdsim_sim_field(const crowdsim_sim* sim, crowdsim_field which, double* buffer,
                                   size_t count) {
  CROWDSIM_REQUIRE(sim);
  CROWDSIM_REQUIRE(buffer);
  const auto& s = sim->stepper->state();
  const crowdsim::Field* f = nullptr;
  switch (which) {
    case CROWDSIM_FIELD_RHO: f = &s.rho; break;
    case CROWDSIM_FIELD_TAU: f = &s.tau; break;
    case CROWDSIM_FIELD_U: f = &s.u; break;
    case CROWDSIM_FIELD_PHI: f = &sim->phi; break;
    case CROWDSIM_FIELD_WX: f = &sim->w.wx; break;
    case CROWDSIM_FIELD_WY: f = &sim->w.wy; break;
    default: return fail(CROWDSIM_ERR_ARGUMENT, "unknown field selector");
  }
  if (count != f->size()) {
    return fail(CROWDSIM_ERR_ARGUMENT, "buffer holds " + std::to_string(count) +
                                           " values, field has " + std::to_string(f->size()));
  }
  std::memcpy(buffer, f->values().data(), count * sizeof(double));
  return CROWDSIM_OK;
}

crowdsim_status crowdsim_run(const crowdsim_config* cfg, const char* out_dir,
                             crowdsim_run_summary* summary) {
  CROWDSIM_REQUIRE(cfg);
  CROWDSIM_REQUIRE(out_dir);
  return guarded([&] {
    const auto s = crowdsim::run_to_directory(cfg->cfg, out_dir);
    if (summary) {
      summary->steps = s.result.steps;
      summary->t_final = s.result.t_final;
      summary->initial_mass = s.initial_mass;
      summary->final_mass = s.final_mass;
      summary->evacuation_time = s.evacuation_time.value_or(-1.0);
      summary->scatter_points = s.scatter_points;
      summary->snapshots = s.snapshots;
      summary->reached_steady = s.result.reached_steady ? 1 : 0;
    }
    return CROWDSIM_OK;
  });
}

crowdsim_status crowdsim_dump_eikonal(const crowdsim_config* cfg, const char* out_dir) {
  CROWDSIM_REQUIRE(cfg);
  CROWDSIM_REQUIRE(out_dir);
  return guarded([&] {
    crowdsim::dump_eikonal(cfg->cfg, out_dir);
    return CROWDSIM_OK;
  });
}

crowdsim_status crowdsim_validate(const crowdsim_config* cfg, crowdsim_validation* report) {
  CROWDSIM_REQUIRE(cfg);
  CROWDSIM_REQUIRE(report);
  return guarded([&] {
    const auto rep = crowdsim::validate_run(cfg->cfg);
    report->steps = rep.steps;
    report->failures = rep.failures.size();
    report->first_failure[0] = '\0';
    if (!rep.failures.empty()) {
      std::strncpy(report->first_failure, rep.failures.front().c_str(),
                   sizeof report->first_failure - 1);
      report->first_failure[sizeof report->first_failure - 1] = '\0';
    }
    return CROWDSIM_OK;
  });
}

}  // extern "C"
