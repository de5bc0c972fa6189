#pragma once

#include "orbitreach/polynomial.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orbitreach {

/// Coordinates of a point in the single chart of a StateSpace.
using Point = std::vector<double>;

enum class Relation { Less, LessEqual, Greater, GreaterEqual };

/// Domain predicate `lhs REL 0` with polynomial left-hand side.
struct Constraint {
    Constraint(Polynomial lhs, Relation rel);

    bool holds(const double* x) const;
    std::string to_string() const;

    Polynomial lhs;
    Relation relation;

private:
    CompiledPolynomial compiled_;
};

/// R^n chart with optional periodic identification per axis and polynomial
/// domain predicates. Immutable once handed to a ControlSystem.
class StateSpace {
public:
    StateSpace() = default;
    explicit StateSpace(std::size_t dim);

    StateSpace& set_period(std::size_t axis, double period);
    StateSpace& add_constraint(Constraint c);

    std::size_t dim() const noexcept { return periods_.size(); }
    const std::optional<double>& period(std::size_t axis) const { return periods_.at(axis); }
    bool is_periodic(std::size_t axis) const { return periods_.at(axis).has_value(); }
    bool fully_periodic() const;
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

    /// Constraint predicates only; periodic axes are not range-checked.
    bool contains(std::span<const double> x) const;

    /// Reduce periodic coordinates into [0, period); throws DomainError when a
    /// constraint fails afterwards.
    Point wrap(std::span<const double> raw) const;
    void wrap_in_place(std::span<double> x) const noexcept;

    /// b - a with each periodic component reduced to the shortest arc.
    std::vector<double> displacement(std::span<const double> a, std::span<const double> b) const;
    double dist(std::span<const double> a, std::span<const double> b) const;

    void check_dim(std::span<const double> x) const;

private:
    std::vector<std::optional<double>> periods_;
    std::vector<Constraint> constraints_;
};

/// x mod period in [0, period).
double wrap_coordinate(double x, double period) noexcept;

/// Shortest signed representative of d modulo period, in [-period/2, period/2).
double wrap_difference(double d, double period) noexcept;

}  // namespace orbitreach
