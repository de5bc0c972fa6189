/* Exercises the C interface from C. */
#include "orbitreach/orbitreach.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

static const char* kTorus =
    "[space]\ndim = 2\nperiod x1 = 2*pi\nperiod x2 = 2*pi\n"
    "[fields]\nX = [1, 0]\nY = [0, 1]\n"
    "[system]\nkind = affine\ndrift = X\ninputs = Y\ncontrol_box = [-1, 1]\n";

static const char* kMartinet =
    "[space]\ndim = 3\nperiod x1 = 2*pi\nconstraint x2^2 + x3^2 < 1\n"
    "[fields]\nX = [1, 0, x2^3]\nY = [0, 1, 0]\n"
    "[system]\nkind = affine\ndrift = X\ninputs = Y\ncontrol_box = [-1, 1]\n";

static void test_system(void) {
    orx_system* sys = NULL;
    EXPECT(orx_system_parse(kMartinet, &sys) == ORX_OK);
    EXPECT(orx_system_dim(sys) == 3);
    EXPECT(orx_system_control_dim(sys) == 1);

    double origin[3] = {0, 0, 0};
    size_t rank = 0;
    EXPECT(orx_system_lie_rank(sys, origin, 4, &rank) == ORX_OK && rank == 3);
    EXPECT(orx_system_lie_rank(sys, origin, 2, &rank) == ORX_OK && rank == 2);

    double duration = 2 * 3.14159265358979323846, u = 0, end[3];
    int inside = 0;
    EXPECT(orx_system_endpoint(sys, origin, 1, &duration, &u, 1e-3, end, &inside) == ORX_OK);
    EXPECT(inside == 1);
    EXPECT(fabs(end[1]) < 1e-12 && fabs(end[2]) < 1e-12);
    EXPECT(fabs(end[0]) < 1e-9 || fabs(end[0] - duration) < 1e-9);

    double bad_u = 3;
    EXPECT(orx_system_endpoint(sys, origin, 1, &duration, &bad_u, 1e-3, end, &inside) == ORX_ERR_ARGUMENT);
    EXPECT(strlen(orx_last_error()) > 0);
    orx_system_free(sys);
}

static void test_grid(void) {
    orx_system* sys = NULL;
    EXPECT(orx_system_parse(kTorus, &sys) == ORX_OK);
    orx_reach_params p;
    orx_reach_params_default(&p);
    double h = 0.02;
    p.h = &h;
    p.h_count = 1;
    p.step = 0.01;
    double x0[2] = {1, 1}, lo[2] = {0.75, 0.75}, hi[2] = {1.25, 1.25};
    orx_grid* g = NULL;
    EXPECT(orx_grid_build(sys, x0, lo, hi, &p, &g) == ORX_OK);
    EXPECT(orx_grid_occupied(g) > 100);
    int interior = -1;
    double ahead[2] = {1.15, 1.02}, behind[2] = {0.9, 1.0};
    EXPECT(orx_grid_interior(g, ahead, 2, &interior) == ORX_OK && interior == 1);
    EXPECT(orx_grid_interior(g, behind, 2, &interior) == ORX_OK && interior == 0);
    orx_grid_free(g);

    p.backward = 1;
    EXPECT(orx_grid_build(sys, x0, lo, hi, &p, &g) == ORX_OK);
    EXPECT(orx_grid_interior(g, behind, 2, &interior) == ORX_OK && interior == 1);
    int holds = 0;
    EXPECT(orx_grid_krener(g, 0, &holds) == ORX_OK && holds == 1);
    orx_grid_free(g);

    double empty_hi[2] = {0.75, 1.25};
    EXPECT(orx_grid_build(sys, x0, lo, empty_hi, &p, &g) == ORX_ERR_ARGUMENT);
    orx_system_free(sys);
}

static void test_run(void) {
    EXPECT(orx_command_count() == 11);
    EXPECT(strcmp(orx_command_name(0), "arwar") == 0);
    EXPECT(orx_command_name(99) == NULL);

    char* report = NULL;
    int passed = -1;
    EXPECT(orx_run("verify-martinet", "{\"seed\": 3}", &report, &passed) == ORX_OK);
    EXPECT(passed == 1);
    EXPECT(report && strstr(report, "\"schema\": 1") != NULL);
    orx_free_string(report);

    EXPECT(orx_run("larc", "{\"spec_text\": \"[space]\\ndim = 1\\n[fields]\\nX = [1\\n\"}", &report, &passed) ==
           ORX_ERR_PARSE);
    EXPECT(strncmp(orx_last_error(), "4:", 2) == 0);
    EXPECT(orx_run("nope", "{}", &report, &passed) == ORX_ERR_ARGUMENT);
    EXPECT(orx_run("larc", "{not json", &report, &passed) == ORX_ERR_ARGUMENT);
    EXPECT(orx_run(NULL, "{}", &report, &passed) == ORX_ERR_ARGUMENT);
    EXPECT(strcmp(orx_status_name(ORX_ERR_GLUE), "glue") == 0);
    EXPECT(strlen(orx_version()) > 0);
}

static void test_errors(void) {
    orx_system* sys = NULL;
    EXPECT(orx_system_parse("[space]\ndim = 2\n[fields]\nX = [1, 0]\nX = [0, 1]\n", &sys) == ORX_ERR_PARSE);
    EXPECT(sys == NULL);
    EXPECT(orx_system_load("/nonexistent.sys", &sys) == ORX_ERR_ARGUMENT);
    EXPECT(orx_system_parse(NULL, &sys) == ORX_ERR_ARGUMENT);
    orx_system_free(NULL);
    orx_grid_free(NULL);
    orx_free_string(NULL);
}

int main(void) {
    test_system();
    test_grid();
    test_run();
    test_errors();
    if (failures) {
        fprintf(stderr, "%d failures\n", failures);
        return 1;
    }
    puts("capi: all checks passed");
    return 0;
}
