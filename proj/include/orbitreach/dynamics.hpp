#pragma once

#include "orbitreach/fields.hpp"
#include "orbitreach/geometry.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace orbitreach {

/// Product of closed intervals [lo_i, hi_i].
struct ControlBox {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const noexcept { return lo.size(); }
    bool contains(std::span<const double> u) const;
    /// Strictly inside every interval.
    bool interior(std::span<const double> u) const;
    /// All 2^k corners, lexicographic with lo before hi.
    std::vector<std::vector<double>> vertices() const;
    std::vector<double> clamp(std::span<const double> u) const;

    friend bool operator==(const ControlBox&, const ControlBox&) = default;
};

/// A control value: the input vector for affine systems, or a one-element
/// vector holding the index into the field list for finite systems.
using ControlValue = std::vector<double>;

/// Family of vector fields f_u indexed by a control set U: either
/// x' = X + sum_j u_j Y_j with u in a box, or a finite list {f_0, ..., f_m}.
class ControlSystem {
public:
    enum class Kind { Affine, Finite };

    static ControlSystem affine(StateSpace space, PolyVectorField drift,
                                std::vector<PolyVectorField> inputs, ControlBox box,
                                std::vector<std::string> names = {});
    static ControlSystem finite(StateSpace space, std::vector<PolyVectorField> fields,
                                std::vector<std::string> names = {});

    Kind kind() const noexcept { return kind_; }
    bool is_affine() const noexcept { return kind_ == Kind::Affine; }
    const StateSpace& space() const noexcept { return space_; }
    std::size_t dim() const noexcept { return space_.dim(); }

    /// Affine: the drift. Finite: undefined (throws).
    const PolyVectorField& drift() const;
    const std::vector<PolyVectorField>& inputs() const;
    const ControlBox& box() const;
    /// Finite-kind field list.
    const std::vector<PolyVectorField>& fields() const;

    /// Drift then inputs (affine) or the finite list; these generate the
    /// Lie algebra of {f_u}.
    const std::vector<PolyVectorField>& generating_fields() const noexcept { return generators_; }
    /// Names parallel to generating_fields().
    const std::vector<std::string>& names() const noexcept { return names_; }

    /// Length of a ControlValue.
    std::size_t control_dim() const noexcept;
    bool valid_control(std::span<const double> u) const;
    bool interior_control(std::span<const double> u) const;
    /// Finite enumeration of U for exact maximisation of affine-in-u
    /// functions: box vertices, or every index.
    std::vector<ControlValue> extreme_controls() const;

    /// Exact f_u; u is converted to a rational without rounding.
    PolyVectorField field_for(std::span<const double> u) const;

    void eval(const double* x, const double* u, double* out) const;
    /// Row-major n x n Jacobian of f_u at x.
    void eval_jacobian(const double* x, const double* u, double* out) const;

    friend bool operator==(const ControlSystem& a, const ControlSystem& b);

private:
    ControlSystem() = default;
    void compile();

    struct CompiledField {
        std::vector<CompiledPolynomial> comps;
        std::vector<CompiledPolynomial> jac;
    };

    Kind kind_ = Kind::Affine;
    StateSpace space_;
    std::vector<PolyVectorField> generators_;
    std::vector<std::string> names_;
    std::vector<PolyVectorField> inputs_;
    ControlBox box_;
    std::vector<CompiledField> compiled_;
};

/// (Sigma^-): every field negated, same control set.
ControlSystem reverse_system(const ControlSystem& sys);

struct Segment {
    double duration = 0.0;
    ControlValue value;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Piecewise-constant control, applied segment after segment.
struct PiecewiseControl {
    std::vector<Segment> segments;

    double total_time() const;
    void validate(const ControlSystem& sys) const;
    PiecewiseControl reversed() const;
    void append(const PiecewiseControl& other);

    friend bool operator==(const PiecewiseControl&, const PiecewiseControl&) = default;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Point> states;
    /// Index of the control segment that produced each state (state 0 is
    /// attributed to segment 0).
    std::vector<std::size_t> segment_index;
    PiecewiseControl control;
    double t0 = 0.0;
    double duration = 0.0;
    bool truncated = false;
    /// Sum of gaps absorbed by concat().
    double glue_gap = 0.0;

    const Point& start() const { return states.front(); }
    const Point& end() const { return states.back(); }
};

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kDefaultGlueTolerance = 1e-6;

/// Number of RK4 steps used for a segment of the given duration, and the
/// step length. Durations that are whole multiples of `step` use `step`
/// itself so that replaying any prefix reproduces states bit for bit.
std::size_t segment_steps(double duration, double step, double& dt);

/// Classical RK4 with reusable scratch storage.
class Rk4Stepper {
public:
    explicit Rk4Stepper(const ControlSystem& sys);

    /// One step in place; the result is not wrapped.
    void step(double* x, const double* u, double dt);

private:
    const ControlSystem* sys_;
    std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

enum class StepOutcome { Ok, LeftDomain };

/// One RK4 step followed by wrapping and a domain check. Throws
/// IntegrationError on a non-finite state.
StepOutcome advance(const ControlSystem& sys, Rk4Stepper& stepper, double* x, const double* u,
                    double dt);

/// Fixed-step RK4 over each constant segment. Stops with `truncated` set
/// when the state leaves the domain.
Trajectory integrate(const ControlSystem& sys, std::span<const double> x0,
                     const PiecewiseControl& ctrl, double step = kDefaultStep);

/// Endpoint only; returns false if the domain was left.
bool integrate_endpoint(const ControlSystem& sys, std::span<const double> x0,
                        const PiecewiseControl& ctrl, double step, Point& out);

/// Visits every state (including x0); the visitor may stop integration by
/// returning false. Returns false if stopped early or the domain was left.
bool integrate_visit(const ControlSystem& sys, std::span<const double> x0,
                     const PiecewiseControl& ctrl, double step,
                     const std::function<bool(const double* x)>& visit);

/// t1 followed by t2; throws GlueError if the end of t1 and start of t2 are
/// further apart than `tolerance`.
Trajectory concat(const ControlSystem& sys, const Trajectory& t1, const Trajectory& t2,
                  double tolerance = kDefaultGlueTolerance);

/// Time reversal: the result is a trajectory of reverse_system(sys).
Trajectory reverse_trajectory(const Trajectory& t);

/// CSV with header `t,x1..xn,u1..uk`, one row per state.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

}  // namespace orbitreach
