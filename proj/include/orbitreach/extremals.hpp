#pragma once

#include "orbitreach/dynamics.hpp"

#include <optional>
#include <span>
#include <vector>

namespace orbitreach {

/// H_u(x, p) = <p, f_u(x)>.
double hamiltonian(const ControlSystem& sys, std::span<const double> u, std::span<const double> x,
                   std::span<const double> p);

/// Base trajectory with a covector at every base sample.
struct ExtremalLift {
    Trajectory base;
    std::vector<std::vector<double>> covector;
};

/// Covectors below this norm count as vanished.
inline constexpr double kCovectorFloor = 1e-12;

/// RK4 on x' = f_u(x), p' = -(Df_u(x))^T p, segment by segment. Throws
/// IntegrationError when |p| drops below kCovectorFloor and DomainError if
/// the base leaves the domain.
ExtremalLift integrate_lift(const ControlSystem& sys, const PiecewiseControl& ctrl,
                            std::span<const double> x0, std::span<const double> p0,
                            double step = kDefaultStep);

/// Lift whose covector is the same at every sample of `base`.
ExtremalLift constant_lift(const Trajectory& base, std::span<const double> p);

struct ExtremalResiduals {
    double cond_i = 0.0;    ///< max deviation from the re-integrated lift
    double cond_ii = 0.0;   ///< max |H_u(t)| along the lift
    double cond_iii = 0.0;  ///< max over t of max_v H_v - H_u(t)
    std::optional<double> cond_iv;  ///< max |dH/du|; empty when not applicable
    double min_covector_norm = 0.0;
};

/// Conditions (i)-(iii). The lift's samples must sit on the grid that
/// integrate_lift produces for `ctrl` and `step`.
ExtremalResiduals check_extremal_conditions(const ControlSystem& sys, const ExtremalLift& lift,
                                            const PiecewiseControl& ctrl,
                                            double step = kDefaultStep);

/// Condition (iv) for affine systems: max over samples of |(<p, Y_j(x)>)_j|.
/// Empty when some control value is on the boundary of the box or the
/// system is finite.
std::optional<double> check_singular(const ControlSystem& sys, const ExtremalLift& lift,
                                     const PiecewiseControl& ctrl);

/// Rank at x of {Y_j, ad X.Y_j, ..., ad^depth X.Y_j}; the drift is not
/// included.
std::size_t endpoint_image_rank(const ControlSystem& sys, std::span<const double> x, unsigned depth);

/// endpoint_image_rank == dim.
bool consing_check(const ControlSystem& sys, std::span<const double> x, unsigned depth);

/// Rank at x of {X} together with ad^i X.Y_j for 0 <= i <= depth.
std::size_t arwar_rank(const ControlSystem& sys, std::span<const double> x, unsigned depth);

/// Fields whose span endpoint_image_rank measures.
std::vector<PolyVectorField> endpoint_image_fields(const ControlSystem& sys, unsigned depth);

}  // namespace orbitreach
