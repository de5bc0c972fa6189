#pragma once

#include "orbitreach/dynamics.hpp"

#include <functional>
#include <span>
#include <vector>

namespace orbitreach {

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Nelder-Mead simplex minimisation started from x0 with initial edge
/// lengths `scale`. Stops after max_evals evaluations or once the best value
/// drops to `target`.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, std::span<const double> scale,
                          std::size_t max_evals, double target = 0.0);

struct ShootingOptions {
    /// Trailing segments whose durations and values are adjusted.
    std::size_t free_segments = 2;
    std::size_t max_evals = 2000;
    double tolerance = 1e-8;
    double step = kDefaultStep;
    /// Every integrated state must satisfy this, when set.
    std::function<bool(const double*)> admissible;
};

struct ShootingResult {
    PiecewiseControl control;
    Point endpoint;
    double initial_gap = 0.0;
    double gap = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Adjusts the trailing segments of `ctrl` so that the trajectory from x0
/// ends at `target`. Control values stay inside the control set and
/// durations stay nonnegative; zero-length segments are dropped from the
/// result. The returned gap never exceeds the initial one.
ShootingResult refine_endpoint(const ControlSystem& sys, std::span<const double> x0,
                               const PiecewiseControl& ctrl, std::span<const double> target,
                               const ShootingOptions& options = {});

}  // namespace orbitreach
