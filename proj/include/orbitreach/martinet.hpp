#pragma once

#include "orbitreach/dynamics.hpp"
#include "orbitreach/orbits.hpp"

#include <string>
#include <vector>

namespace orbitreach {

struct MartinetConfig {
    unsigned k = 3;
    double step = kDefaultStep;
    std::uint64_t seed = 0;
    /// Rollouts per regularity grid.
    std::size_t regularity_budget = 200000;
    /// Rollouts per grid of the neighbourhood check.
    std::size_t neighborhood_budget = 50000;
    std::size_t neighborhood_pairs = 25;

    /// Throws ArgumentError unless k is odd and at least 3.
    void validate() const;
};

/// x1 periodic with period 2 pi, domain x2^2 + x3^2 < 1, drift
/// d/dx1 + x2^k d/dx3, input d/dx2, |u| <= 1.
ControlSystem build_martinet(const MartinetConfig& config);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckReport {
    std::vector<Check> checks;

    bool passed() const;
    void add(std::string name, bool ok, std::string detail = {});
};

/// The closed orbit through the origin (u = 0 for one period).
ClosedOrbit martinet_orbit(const ControlSystem& sys, double step = kDefaultStep);

/// Five sample points on the singular surface x2 = 0.
std::vector<Point> martinet_surface_points();

/// Exact bracket identities and the rank profile of the hull.
CheckReport verify_bracket_claims(const MartinetConfig& config);

/// Closure of the orbit and conditions (i)-(iv) for the lift with constant
/// covector (0, 0, 1).
CheckReport verify_singular_orbit(const MartinetConfig& config);

/// Grid parameters used for the orbit's regularity grids.
ReachParams martinet_regularity_params(const MartinetConfig& config);
/// Window schedule tried at the origin in order, aligned so that the
/// origin sits at a cell centre.
std::vector<Window> martinet_regularity_windows(const ReachParams& params);
/// Orbit samples this many cells from the base point are not tested.
inline constexpr int kMartinetExclusionCells = 8;

/// Tube around the orbit: full circle in x1, 0.3 x 0.3 cross-section.
Window martinet_tube(const ControlSystem& sys);
ReachParams martinet_tube_params(const MartinetConfig& config);

/// Regularity in both time directions, failure of the Arwar condition on the
/// orbit and the controllable neighbourhood check.
CheckReport verify_regularity(const MartinetConfig& config);

}  // namespace orbitreach
