/* C interface to the orbitreach library.
 *
 * Functions return an orx_status. On failure the message is available from
 * orx_last_error() on the same thread until the next failing call. Strings
 * returned through char** belong to the caller and are released with
 * orx_free_string().
 */
#ifndef ORBITREACH_H
#define ORBITREACH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ORX_API __declspec(dllexport)
#else
#define ORX_API __attribute__((visibility("default")))
#endif

typedef enum orx_status {
    ORX_OK = 0,
    ORX_ERR_ARGUMENT = 1,
    ORX_ERR_PARSE = 2,
    ORX_ERR_DIMENSION = 3,
    ORX_ERR_DOMAIN = 4,
    ORX_ERR_INTEGRATION = 5,
    ORX_ERR_GLUE = 6,
    ORX_ERR_IO = 7,
    ORX_ERR_INTERNAL = 8
} orx_status;

typedef struct orx_system orx_system;
typedef struct orx_grid orx_grid;

ORX_API const char* orx_version(void);
ORX_API const char* orx_last_error(void);
ORX_API const char* orx_status_name(orx_status status);
ORX_API void orx_free_string(char* s);

/* Subcommands accepted by orx_run, in alphabetical order. */
ORX_API size_t orx_command_count(void);
ORX_API const char* orx_command_name(size_t index);

/* Runs a subcommand. options_json is a JSON object; *report receives the
 * JSON report and *passed its overall verdict (0 or 1). */
ORX_API orx_status orx_run(const char* command, const char* options_json, char** report,
                           int* passed);

ORX_API orx_status orx_system_parse(const char* text, orx_system** out);
ORX_API orx_status orx_system_load(const char* path, orx_system** out);
ORX_API void orx_system_free(orx_system* sys);
ORX_API size_t orx_system_dim(const orx_system* sys);
ORX_API size_t orx_system_control_dim(const orx_system* sys);

/* Rank of the Lie hull of depth `depth` at x. */
ORX_API orx_status orx_system_lie_rank(const orx_system* sys, const double* x, unsigned depth,
                                       size_t* rank);

/* Endpoint of a piecewise-constant control. controls holds
 * segments * control_dim values; *inside is 0 if the domain was left. */
ORX_API orx_status orx_system_endpoint(const orx_system* sys, const double* x0, size_t segments,
                                       const double* durations, const double* controls,
                                       double step, double* out, int* inside);

typedef struct orx_reach_params {
    uint64_t budget;
    double max_time;
    uint64_t max_segments;
    /* Cell side per axis (h_count == 1 applies to every axis). */
    const double* h;
    size_t h_count;
    uint64_t seed;
    double step;
    int backward;
} orx_reach_params;

ORX_API void orx_reach_params_default(orx_reach_params* params);

/* Samples A+(x0, U) (or A- when params->backward) on the box [lo, hi]. */
ORX_API orx_status orx_grid_build(const orx_system* sys, const double* x0, const double* lo,
                                  const double* hi, const orx_reach_params* params,
                                  orx_grid** out);
ORX_API void orx_grid_free(orx_grid* grid);
ORX_API size_t orx_grid_occupied(const orx_grid* grid);
ORX_API orx_status orx_grid_interior(const orx_grid* grid, const double* p, int radius_cells,
                                     int* interior);
ORX_API orx_status orx_grid_krener(const orx_grid* grid, int radius_cells, int* holds);

#ifdef __cplusplus
}
#endif

#endif
