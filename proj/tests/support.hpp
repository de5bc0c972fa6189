#pragma once

#include "orbitreach/dynamics.hpp"
#include "orbitreach/random.hpp"
#include "orbitreach/specfile.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace test {

using namespace orbitreach;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline PolyVectorField field(std::initializer_list<const char*> comps) {
    std::vector<Polynomial> c;
    for (const char* s : comps) c.push_back(parse_polynomial(s, comps.size()));
    return PolyVectorField(std::move(c));
}

/// x' = (1, u) on the flat torus with |u| <= 1.
inline ControlSystem torus_system() {
    StateSpace space(2);
    space.set_period(0, kTwoPi).set_period(1, kTwoPi);
    return ControlSystem::affine(space, field({"1", "0"}), {field({"0", "1"})}, ControlBox{{-1}, {1}},
                                 {"X", "Y"});
}

/// x' = (1, x2 u) on the flat torus.
inline ControlSystem degenerate_system() {
    StateSpace space(2);
    space.set_period(0, kTwoPi).set_period(1, kTwoPi);
    return ControlSystem::affine(space, field({"1", "0"}), {field({"0", "x2"})}, ControlBox{{-1}, {1}},
                                 {"X", "Y"});
}

/// x' = u on the line with |u| <= 1.
inline ControlSystem line_system() {
    return ControlSystem::affine(StateSpace(1), PolyVectorField::zero(1), {field({"1"})},
                                 ControlBox{{-1}, {1}});
}

/// X = d1 + x2 d3, Y = d2 on R^3.
inline ControlSystem heisenberg_system() {
    return ControlSystem::affine(StateSpace(3), field({"1", "0", "x2"}), {field({"0", "1", "0"})},
                                 ControlBox{{-1}, {1}});
}

/// Random polynomial of total degree <= max_degree with small integer
/// coefficients.
inline Polynomial random_polynomial(Rng& rng, std::size_t n, unsigned max_degree) {
    Polynomial p(n);
    std::size_t terms = 1 + rng.below(4);
    for (std::size_t t = 0; t < terms; ++t) {
        Exponents e(n, 0);
        unsigned deg = static_cast<unsigned>(rng.below(max_degree + 1));
        for (unsigned d = 0; d < deg; ++d) ++e[rng.below(n)];
        long c = static_cast<long>(rng.below(7)) - 3;
        p += Polynomial::monomial(n, e, Rational(c, 1 + static_cast<long>(rng.below(3))));
    }
    return p;
}

inline PolyVectorField random_field(Rng& rng, std::size_t n, unsigned max_degree) {
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(random_polynomial(rng, n, max_degree));
    return PolyVectorField(std::move(c));
}

inline std::string data_path(const std::string& name) { return std::string(ORBITREACH_SOURCE_DIR) + "/" + name; }

}  // namespace test
