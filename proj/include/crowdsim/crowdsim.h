/* C interface to the crowd simulation engine. Every call returns a
 * crowdsim_status; on failure crowdsim_last_error() describes the cause for
 * the calling thread. Handles are opaque and owned by the caller. */
#ifndef CROWDSIM_CROWDSIM_H
#define CROWDSIM_CROWDSIM_H

#include <stddef.h>

#if defined(_WIN32)
#  ifdef CROWDSIM_BUILDING
#    define CROWDSIM_API __declspec(dllexport)
#  else
#    define CROWDSIM_API __declspec(dllimport)
#  endif
#else
#  define CROWDSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crowdsim_status {
  CROWDSIM_OK = 0,
  CROWDSIM_ERR_ARGUMENT = 1,  /* null handle, bad buffer, unknown enum */
  CROWDSIM_ERR_CONFIG = 2,    /* invalid parameters or scenario */
  CROWDSIM_ERR_NUMERIC = 3,   /* NaN, CFL or constraint fault while stepping */
  CROWDSIM_ERR_IO = 4,
  CROWDSIM_ERR_INTERNAL = 5
} crowdsim_status;

typedef enum crowdsim_field {
  CROWDSIM_FIELD_RHO = 0,
  CROWDSIM_FIELD_TAU = 1,
  CROWDSIM_FIELD_U = 2,
  CROWDSIM_FIELD_PHI = 3,
  CROWDSIM_FIELD_WX = 4,
  CROWDSIM_FIELD_WY = 5
} crowdsim_field;

typedef struct crowdsim_config crowdsim_config;
typedef struct crowdsim_sim crowdsim_sim;

typedef struct crowdsim_run_summary {
  long steps;
  double t_final;
  double initial_mass;
  double final_mass;
  double evacuation_time; /* negative when the room did not empty */
  size_t scatter_points;
  int snapshots;
  int reached_steady;
} crowdsim_run_summary;

CROWDSIM_API const char* crowdsim_version(void);
CROWDSIM_API const char* crowdsim_last_error(void);
CROWDSIM_API const char* crowdsim_status_name(crowdsim_status status);

/* Number of built-in scenarios and the name at `index`. */
CROWDSIM_API size_t crowdsim_builtin_count(void);
CROWDSIM_API const char* crowdsim_builtin_name(size_t index);

/* Loads a built-in scenario name or a JSON scenario file. */
CROWDSIM_API crowdsim_status crowdsim_config_load(const char* name_or_path, crowdsim_config** out);
CROWDSIM_API crowdsim_status crowdsim_config_clone(const crowdsim_config* cfg, crowdsim_config** out);
CROWDSIM_API void crowdsim_config_free(crowdsim_config* cfg);
/* Sets a parameter or scalar scenario key; re-validates the merged config. */
CROWDSIM_API crowdsim_status crowdsim_config_set(crowdsim_config* cfg, const char* key, double value);
CROWDSIM_API crowdsim_status crowdsim_config_get(const crowdsim_config* cfg, const char* key, double* value);
CROWDSIM_API crowdsim_status crowdsim_config_set_snapshot_interval(crowdsim_config* cfg, double seconds);
CROWDSIM_API crowdsim_status crowdsim_config_dims(const crowdsim_config* cfg, int* dims);
/* Sweep attached to the config (built-in test4b has one). *count == 0 when none. */
CROWDSIM_API crowdsim_status crowdsim_config_sweep(const crowdsim_config* cfg, const char** param,
                                                   const double** values, size_t* count);
/* Writes the resolved config as JSON. `needed` receives the size including the
 * terminating NUL; a NULL buffer only queries the size. */
CROWDSIM_API crowdsim_status crowdsim_config_to_json(const crowdsim_config* cfg, char* buffer,
                                                     size_t capacity, size_t* needed);

CROWDSIM_API crowdsim_status crowdsim_sim_create(const crowdsim_config* cfg, crowdsim_sim** out);
CROWDSIM_API void crowdsim_sim_free(crowdsim_sim* sim);
CROWDSIM_API crowdsim_status crowdsim_sim_step(crowdsim_sim* sim, long steps);
CROWDSIM_API crowdsim_status crowdsim_sim_time(const crowdsim_sim* sim, double* t);
CROWDSIM_API crowdsim_status crowdsim_sim_shape(const crowdsim_sim* sim, int* nx, int* ny);
CROWDSIM_API crowdsim_status crowdsim_sim_mass(const crowdsim_sim* sim, double* mass);
/* Copies nx*ny values of a field in row-major cell order. */
CROWDSIM_API crowdsim_status crowdsim_sim_field(const crowdsim_sim* sim, crowdsim_field which,
                                                double* buffer, size_t count);

/* Full run writing the output directory layout; `summary` may be NULL. */
CROWDSIM_API crowdsim_status crowdsim_run(const crowdsim_config* cfg, const char* out_dir,
                                          crowdsim_run_summary* summary);
CROWDSIM_API crowdsim_status crowdsim_dump_eikonal(const crowdsim_config* cfg, const char* out_dir);
typedef struct crowdsim_validation {
  long steps;
  size_t failures;
  char first_failure[512]; /* empty when every check held */
} crowdsim_validation;

/* Runs the invariant suite on a config. Returns CROWDSIM_OK when the suite
 * ran, whether or not checks failed; inspect `report->failures`. */
CROWDSIM_API crowdsim_status crowdsim_validate(const crowdsim_config* cfg,
                                               crowdsim_validation* report);

#ifdef __cplusplus
}
#endif

#endif /* CROWDSIM_CROWDSIM_H */
