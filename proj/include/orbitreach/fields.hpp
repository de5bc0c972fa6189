#pragma once

#include "orbitreach/geometry.hpp"
#include "orbitreach/polynomial.hpp"

#include <span>
#include <string>
#include <vector>

namespace orbitreach {

/// Polynomial vector field sum_i P_i(x) d/dx_i on an n-dimensional chart.
class PolyVectorField {
public:
    PolyVectorField() = default;
    explicit PolyVectorField(std::vector<Polynomial> components);

    static PolyVectorField zero(std::size_t dim);
    /// The coordinate field d/dx_{axis+1}.
    static PolyVectorField coordinate(std::size_t dim, std::size_t axis);

    std::size_t dim() const noexcept { return components_.size(); }
    const Polynomial& operator[](std::size_t i) const { return components_.at(i); }
    const std::vector<Polynomial>& components() const noexcept { return components_; }
    bool is_zero() const;

    std::vector<double> evaluate(std::span<const double> x) const;
    std::vector<Rational> evaluate(std::span<const Rational> x) const;

    /// Jacobian entries d P_i / d x_j, row-major.
    std::vector<Polynomial> jacobian() const;

    /// `[c1, c2, ...]` using canonical polynomial text.
    std::string to_string() const;

    PolyVectorField& operator+=(const PolyVectorField& rhs);
    PolyVectorField& operator-=(const PolyVectorField& rhs);
    PolyVectorField& operator*=(const Rational& s);

    friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
    friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }
    friend PolyVectorField operator*(const Rational& s, PolyVectorField a) { return a *= s; }
    friend PolyVectorField operator-(PolyVectorField a) { return a *= Rational(-1); }
    friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
        return a.components_ == b.components_;
    }

private:
    std::vector<Polynomial> components_;
};

/// Directional derivative of P along V: sum_j V_j dP/dx_j.
Polynomial lie_derivative(const PolyVectorField& v, const Polynomial& p);

/// [X, Y] = (DY) X - (DX) Y.
PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y);

/// ad_X^l Y with ad_X^0 Y = Y.
PolyVectorField ad_power(const PolyVectorField& x, const PolyVectorField& y, unsigned l);

/// Left-normed bracket word [g_{w0}, [g_{w1}, [..., g_{wm}]]], stored as
/// generator indices outermost first.
using BracketWord = std::vector<std::size_t>;

std::string word_to_string(const BracketWord& w, std::span<const std::string> names);

struct LieHullElement {
    BracketWord word;
    PolyVectorField field;
};

/// Nonzero left-normed brackets of the generators up to a given word length.
struct LieHull {
    std::vector<PolyVectorField> generators;
    unsigned depth = 0;
    std::vector<LieHullElement> elements;
};

/// Enumerates words by length, then lexicographically by generator index,
/// keeping the first occurrence of each distinct nonzero field. Only the
/// surviving elements are extended to longer words.
LieHull generate_hull(std::vector<PolyVectorField> generators, unsigned depth);

/// Evaluates a left-normed word over generators directly (no deduplication).
PolyVectorField evaluate_word(std::span<const PolyVectorField> generators, const BracketWord& w);

enum class RankMethod { Exact, Numeric };

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kRankRelativeThreshold = 1e-9;

/// Rank of the span of the fields' values at x. Exact mode converts the
/// coordinates to rationals (doubles are exact binary fractions) and runs
/// Gaussian elimination over Q.
std::size_t span_rank(std::span<const PolyVectorField> fields, std::span<const double> x,
                      RankMethod method = RankMethod::Exact);

std::size_t lie_rank(const LieHull& hull, std::span<const double> x,
                     RankMethod method = RankMethod::Exact);

struct LarcReport {
    std::vector<Point> points;
    std::vector<std::size_t> ranks;
    std::size_t dim = 0;
    unsigned depth = 0;
    /// Every rank equals dim.
    bool passed = false;
};

/// lie_rank of the hull of `generators` at each sample point.
LarcReport larc_check(std::span<const PolyVectorField> generators, std::span<const Point> points,
                      unsigned depth, RankMethod method = RankMethod::Exact);

/// Default hull depth: dim + 2.
inline unsigned default_depth(std::size_t dim) { return static_cast<unsigned>(dim) + 2; }

}  // namespace orbitreach
