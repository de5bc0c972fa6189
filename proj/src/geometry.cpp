#include "orbitreach/geometry.hpp"

#include "orbitreach/errors.hpp"

#include <cmath>

namespace orbitreach {

double wrap_coordinate(double x, double period) noexcept {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

double wrap_difference(double d, double period) noexcept {
    double r = wrap_coordinate(d + 0.5 * period, period) - 0.5 * period;
    return r;
}

Constraint::Constraint(Polynomial lhs_, Relation rel)
    : lhs(std::move(lhs_)), relation(rel), compiled_(lhs) {}

bool Constraint::holds(const double* x) const {
    double v = compiled_(x);
    switch (relation) {
        case Relation::Less: return v < 0.0;
        case Relation::LessEqual: return v <= 0.0;
        case Relation::Greater: return v > 0.0;
        case Relation::GreaterEqual: return v >= 0.0;
    }
    return false;
}

std::string Constraint::to_string() const {
    const char* op = "<";
    switch (relation) {
        case Relation::Less: op = "<"; break;
        case Relation::LessEqual: op = "<="; break;
        case Relation::Greater: op = ">"; break;
        case Relation::GreaterEqual: op = ">="; break;
    }
    return lhs.to_string() + " " + op + " 0";
}

StateSpace::StateSpace(std::size_t dim) : periods_(dim) {
    if (dim == 0) throw ArgumentError("state space dimension must be positive");
}

StateSpace& StateSpace::set_period(std::size_t axis, double period) {
    if (axis >= dim()) throw DimensionError("period axis out of range");
    if (!(period > 0.0) || !std::isfinite(period))
        throw ArgumentError("period must be positive and finite");
    periods_[axis] = period;
    return *this;
}

StateSpace& StateSpace::add_constraint(Constraint c) {
    if (c.lhs.nvars() != dim()) throw DimensionError("constraint over wrong variable count");
    constraints_.push_back(std::move(c));
    return *this;
}

bool StateSpace::fully_periodic() const {
    for (const auto& p : periods_)
        if (!p) return false;
    return true;
}

void StateSpace::check_dim(std::span<const double> x) const {
    if (x.size() != dim())
        throw DimensionError("point has " + std::to_string(x.size()) +
                             " coordinates, space has dimension " + std::to_string(dim()));
}

bool StateSpace::contains(std::span<const double> x) const {
    for (const auto& c : constraints_)
        if (!c.holds(x.data())) return false;
    return true;
}

void StateSpace::wrap_in_place(std::span<double> x) const noexcept {
    for (std::size_t i = 0; i < periods_.size(); ++i)
        if (periods_[i]) x[i] = wrap_coordinate(x[i], *periods_[i]);
}

Point StateSpace::wrap(std::span<const double> raw) const {
    check_dim(raw);
    Point p(raw.begin(), raw.end());
    wrap_in_place(p);
    for (const auto& c : constraints_)
        if (!c.holds(p.data())) throw DomainError("point violates constraint " + c.to_string());
    return p;
}

std::vector<double> StateSpace::displacement(std::span<const double> a,
                                             std::span<const double> b) const {
    check_dim(a);
    check_dim(b);
    std::vector<double> d(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        d[i] = b[i] - a[i];
        if (periods_[i]) d[i] = wrap_difference(d[i], *periods_[i]);
    }
    return d;
}

double StateSpace::dist(std::span<const double> a, std::span<const double> b) const {
    auto d = displacement(a, b);
    double s = 0.0;
    for (double v : d) s += v * v;
    return std::sqrt(s);
}

}  // namespace orbitreach
