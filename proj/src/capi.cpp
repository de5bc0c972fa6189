#include "orbitreach/orbitreach.h"

#include "commands.hpp"
#include "orbitreach/errors.hpp"
#include "orbitreach/reach.hpp"
#include "orbitreach/specfile.hpp"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>

struct orx_system {
    orbitreach::ControlSystem sys;
};

struct orx_grid {
    orbitreach::ReachGrid grid;
};

namespace {

thread_local std::string last_error;

orx_status fail(orx_status s, const char* what) {
    last_error = what;
    return s;
}

template <class F>
orx_status guarded(F&& f) {
    try {
        f();
        return ORX_OK;
    } catch (const orbitreach::ParseError& e) {
        return fail(ORX_ERR_PARSE, e.what());
    } catch (const orbitreach::DimensionError& e) {
        return fail(ORX_ERR_DIMENSION, e.what());
    } catch (const orbitreach::DomainError& e) {
        return fail(ORX_ERR_DOMAIN, e.what());
    } catch (const orbitreach::IntegrationError& e) {
        return fail(ORX_ERR_INTEGRATION, e.what());
    } catch (const orbitreach::GlueError& e) {
        return fail(ORX_ERR_GLUE, e.what());
    } catch (const orbitreach::ArgumentError& e) {
        return fail(ORX_ERR_ARGUMENT, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(ORX_ERR_ARGUMENT, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(ORX_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(ORX_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ORX_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool cond, const char* what) {
    if (!cond) throw orbitreach::ArgumentError(what);
}

}  // namespace

extern "C" {

const char* orx_version(void) { return ORBITREACH_VERSION; }

const char* orx_last_error(void) { return last_error.c_str(); }

const char* orx_status_name(orx_status status) {
    switch (status) {
        case ORX_OK: return "ok";
        case ORX_ERR_ARGUMENT: return "argument";
        case ORX_ERR_PARSE: return "parse";
        case ORX_ERR_DIMENSION: return "dimension";
        case ORX_ERR_DOMAIN: return "domain";
        case ORX_ERR_INTEGRATION: return "integration";
        case ORX_ERR_GLUE: return "glue";
        case ORX_ERR_IO: return "io";
        case ORX_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void orx_free_string(char* s) { std::free(s); }

size_t orx_command_count(void) { return orbitreach::command_names().size(); }

const char* orx_command_name(size_t index) {
    const auto& names = orbitreach::command_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

orx_status orx_run(const char* command, const char* options_json, char** report, int* passed) {
    return guarded([&] {
        require(command && report, "null argument");
        *report = nullptr;
        nlohmann::json options = options_json && *options_json ? nlohmann::json::parse(options_json)
                                                                : nlohmann::json::object();
        nlohmann::json rep = orbitreach::run_command(command, options);
        if (passed) *passed = rep.value("passed", false) ? 1 : 0;
        *report = dup_string(rep.dump(2));
    });
}

orx_status orx_system_parse(const char* text, orx_system** out) {
    return guarded([&] {
        require(text && out, "null argument");
        *out = new orx_system{orbitreach::parse_spec(text).system};
    });
}

orx_status orx_system_load(const char* path, orx_system** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new orx_system{orbitreach::load_spec(path).system};
    });
}

void orx_system_free(orx_system* sys) { delete sys; }

size_t orx_system_dim(const orx_system* sys) { return sys ? sys->sys.dim() : 0; }

size_t orx_system_control_dim(const orx_system* sys) { return sys ? sys->sys.control_dim() : 0; }

orx_status orx_system_lie_rank(const orx_system* sys, const double* x, unsigned depth,
                               size_t* rank) {
    return guarded([&] {
        require(sys && x && rank, "null argument");
        auto hull = orbitreach::generate_hull(sys->sys.generating_fields(), depth);
        *rank = orbitreach::lie_rank(hull, std::span(x, sys->sys.dim()));
    });
}

orx_status orx_system_endpoint(const orx_system* sys, const double* x0, size_t segments,
                               const double* durations, const double* controls, double step,
                               double* out, int* inside) {
    return guarded([&] {
        require(sys && x0 && out && (segments == 0 || durations), "null argument");
        const std::size_t k = sys->sys.control_dim();
        require(segments == 0 || k == 0 || controls, "null argument");
        orbitreach::PiecewiseControl ctrl;
        for (std::size_t i = 0; i < segments; ++i)
            ctrl.segments.push_back({durations[i], std::vector<double>(controls + i * k, controls + (i + 1) * k)});
        ctrl.validate(sys->sys);
        orbitreach::Point end;
        bool ok = orbitreach::integrate_endpoint(sys->sys, std::span(x0, sys->sys.dim()), ctrl, step, end);
        std::copy(end.begin(), end.end(), out);
        if (inside) *inside = ok ? 1 : 0;
    });
}

void orx_reach_params_default(orx_reach_params* params) {
    if (!params) return;
    orbitreach::ReachParams d;
    params->budget = d.budget;
    params->max_time = d.max_time;
    params->max_segments = d.max_segments;
    params->h = nullptr;
    params->h_count = 0;
    params->seed = d.seed;
    params->step = d.step;
    params->backward = 0;
}

orx_status orx_grid_build(const orx_system* sys, const double* x0, const double* lo,
                          const double* hi, const orx_reach_params* params, orx_grid** out) {
    return guarded([&] {
        require(sys && x0 && lo && hi && params && out, "null argument");
        const std::size_t n = sys->sys.dim();
        orbitreach::ReachParams rp;
        rp.budget = params->budget;
        rp.max_time = params->max_time;
        rp.max_segments = params->max_segments;
        if (params->h && params->h_count) rp.h.assign(params->h, params->h + params->h_count);
        rp.seed = params->seed;
        rp.step = params->step;
        orbitreach::Window w{{lo, lo + n}, {hi, hi + n}};
        auto grid = params->backward ? orbitreach::backward_grid(sys->sys, std::span(x0, n), w, rp)
                                     : orbitreach::reach_grid(sys->sys, std::span(x0, n), w, rp);
        *out = new orx_grid{std::move(grid)};
    });
}

void orx_grid_free(orx_grid* grid) { delete grid; }

size_t orx_grid_occupied(const orx_grid* grid) { return grid ? grid->grid.occupied_count() : 0; }

orx_status orx_grid_interior(const orx_grid* grid, const double* p, int radius_cells, int* interior) {
    return guarded([&] {
        require(grid && p && interior, "null argument");
        *interior = orbitreach::interior_test(grid->grid, std::span(p, grid->grid.dim()), radius_cells) ? 1 : 0;
    });
}

orx_status orx_grid_krener(const orx_grid* grid, int radius_cells, int* holds) {
    return guarded([&] {
        require(grid && holds, "null argument");
        *holds = orbitreach::krener_check(grid->grid, grid->grid.origin(), radius_cells) ? 1 : 0;
    });
}

}  // extern "C"
