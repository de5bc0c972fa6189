#include "orbitreach/martinet.hpp"

#include "orbitreach/errors.hpp"
#include "orbitreach/extremals.hpp"
#include "orbitreach/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace orbitreach {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

void MartinetConfig::validate() const {
    if (k < 3) throw ArgumentError("Martinet exponent k must be at least 3");
    if (k % 2 == 0) throw ArgumentError("Martinet exponent k must be odd");
    if (!(step > 0.0)) throw ArgumentError("integration step must be positive");
}

ControlSystem build_martinet(const MartinetConfig& config) {
    config.validate();
    StateSpace space(3);
    space.set_period(0, kTwoPi);
    auto x2 = Polynomial::variable(3, 1), x3 = Polynomial::variable(3, 2);
    space.add_constraint(Constraint(x2 * x2 + x3 * x3 - Polynomial::constant(3, 1), Relation::Less));
    PolyVectorField drift({Polynomial::constant(3, 1), Polynomial(3), x2.pow(config.k)});
    return ControlSystem::affine(space, drift, {PolyVectorField::coordinate(3, 1)},
                                 ControlBox{{-1.0}, {1.0}}, {"X", "Y"});
}

bool CheckReport::passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

void CheckReport::add(std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
}

ClosedOrbit martinet_orbit(const ControlSystem& sys, double step) {
    PiecewiseControl ctrl{{Segment{kTwoPi, {0.0}}}};
    ClosedOrbit orbit;
    orbit.trajectory = integrate(sys, Point{0.0, 0.0, 0.0}, ctrl, step);
    orbit.period = kTwoPi;
    orbit.gap = sys.space().dist(orbit.trajectory.end(), orbit.trajectory.start());
    orbit.initial_gap = orbit.gap;
    orbit.closed = !orbit.trajectory.truncated && orbit.gap <= kDefaultGlueTolerance;
    return orbit;
}

std::vector<Point> martinet_surface_points() {
    return {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.25}, {2.5, 0.0, -0.5}, {4.0, 0.0, 0.75}, {5.5, 0.0, -0.9}};
}

CheckReport verify_bracket_claims(const MartinetConfig& config) {
    ControlSystem sys = build_martinet(config);
    const auto& X = sys.drift();
    const auto& Y = sys.inputs()[0];
    const unsigned k = config.k;
    CheckReport rep;

    auto x2 = Polynomial::variable(3, 1);
    PolyVectorField expected({Polynomial(3), Polynomial(3), Rational(-static_cast<long>(k)) * x2.pow(k - 1)});
    PolyVectorField xy = lie_bracket(X, Y);
    rep.add("bracket [X,Y] = -k x2^(k-1) d/dx3", xy == expected, xy.to_string());

    bool vanish = true;
    std::string first_nonzero;
    for (unsigned l = 2; l <= 6; ++l) {
        auto v = ad_power(X, Y, l);
        if (!v.is_zero()) {
            vanish = false;
            if (first_nonzero.empty()) first_nonzero = "l=" + std::to_string(l);
        }
    }
    rep.add("ad^l X.Y = 0 for 2 <= l <= 6", vanish, first_nonzero.empty() ? "all zero" : first_nonzero);

    std::vector<PolyVectorField> gens{X, Y};
    for (const auto& p : martinet_surface_points()) {
        std::ostringstream detail;
        bool ok = true;
        for (unsigned d = 1; d <= k + 1; ++d) {
            std::size_t r = lie_rank(generate_hull(gens, d), p);
            detail << (d > 1 ? " " : "") << r;
            ok = ok && (d <= k ? r == 2 : r == 3);
        }
        std::ostringstream name;
        name << "rank profile on S at (" << p[0] << "," << p[1] << "," << p[2] << ")";
        rep.add(name.str(), ok, "depths 1.." + std::to_string(k + 1) + ": " + detail.str());
    }
    Point off{0.0, 0.5, 0.0};
    std::size_t r = lie_rank(generate_hull(gens, 2), off);
    rep.add("contact off S: depth-2 rank at (0,0.5,0) = 3", r == 3, std::to_string(r));
    return rep;
}

CheckReport verify_singular_orbit(const MartinetConfig& config) {
    ControlSystem sys = build_martinet(config);
    CheckReport rep;
    ClosedOrbit orbit = martinet_orbit(sys, config.step);
    rep.add("orbit closure gap < 1e-9", orbit.gap < 1e-9, fmt(orbit.gap));

    const auto& ctrl = orbit.trajectory.control;
    const double p[3] = {0.0, 0.0, 1.0};
    // The lift t -> (t mod 2 pi, 0, 0; 0, 0, 1) sampled on the integration grid.
    Trajectory formula = orbit.trajectory;
    for (std::size_t i = 0; i < formula.states.size(); ++i)
        formula.states[i] = {wrap_coordinate(formula.times[i], kTwoPi), 0.0, 0.0};
    auto lift = constant_lift(formula, p);
    auto res = check_extremal_conditions(sys, lift, ctrl, config.step);
    rep.add("(i) Hamiltonian system residual < 1e-9", res.cond_i < 1e-9, fmt(res.cond_i));
    rep.add("(ii) max |H| < 1e-9", res.cond_ii < 1e-9, fmt(res.cond_ii));
    rep.add("(iii) maximum condition residual < 1e-9", res.cond_iii < 1e-9, fmt(res.cond_iii));
    rep.add("(iv) max |dH/du| < 1e-9", res.cond_iv && *res.cond_iv < 1e-9,
            res.cond_iv ? fmt(*res.cond_iv) : "not applicable");
    rep.add("covector bounded away from zero", res.min_covector_norm >= kCovectorFloor,
            fmt(res.min_covector_norm));

    const double pp[3] = {0.0, 1e-3, 1.0};
    auto perturbed = integrate_lift(sys, ctrl, orbit.trajectory.start(), pp, config.step);
    auto piv = check_singular(sys, perturbed, ctrl);
    rep.add("perturbed covector: (iv) residual = 1e-3", piv && std::abs(*piv - 1e-3) < 1e-9,
            piv ? fmt(*piv) : "not applicable");

    ControlSystem rsys = reverse_system(sys);
    Trajectory rev = reverse_trajectory(formula);
    auto rlift = constant_lift(rev, p);
    auto rres = check_extremal_conditions(rsys, rlift, rev.control, config.step);
    bool rok = rres.cond_i < 1e-9 && rres.cond_ii < 1e-9 && rres.cond_iii < 1e-9 && rres.cond_iv &&
               *rres.cond_iv < 1e-9;
    rep.add("reversed-time lift is singular", rok,
            fmt(std::max({rres.cond_i, rres.cond_ii, rres.cond_iii, rres.cond_iv.value_or(INFINITY)})));
    return rep;
}

ReachParams martinet_regularity_params(const MartinetConfig& config) {
    ReachParams p;
    p.budget = config.regularity_budget;
    p.max_time = 0.9;
    p.max_segments = 6;
    // Near the orbit the x3 extent after time t grows like t^(k+1) / (k+1);
    // the x3 cell follows it so that k = 3 gets 1e-6.
    double h3 = 1e-6 * std::pow(0.08, static_cast<double>(config.k) - 3.0) * 4.0 / (config.k + 1.0);
    p.h = {0.02, 0.01, h3};
    p.step = config.step;
    p.seed = derive_seed(config.seed, 10);
    return p;
}

std::vector<Window> martinet_regularity_windows(const ReachParams& params) {
    const double origin[3] = {0.0, 0.0, 0.0};
    return {Window{{-0.3, -0.15, -0.15}, {0.3, 0.15, 0.15}}.aligned(origin, params.h),
            Window{{-0.4, -0.2, -0.2}, {0.4, 0.2, 0.2}}.aligned(origin, params.h)};
}

Window martinet_tube(const ControlSystem& sys) {
    const double sides[3] = {kTwoPi, 0.3, 0.3};
    const double center[3] = {0.0, 0.0, 0.0};
    return Window::centered(sys.space(), center, sides);
}

ReachParams martinet_tube_params(const MartinetConfig& config) {
    ReachParams p;
    p.budget = config.neighborhood_budget;
    p.max_time = 30.0;
    p.max_segments = 15;
    p.h = {kDefaultGridH};
    p.step = 0.01;
    p.seed = derive_seed(config.seed, 20);
    return p;
}

CheckReport verify_regularity(const MartinetConfig& config) {
    ControlSystem sys = build_martinet(config);
    CheckReport rep;
    ClosedOrbit orbit = martinet_orbit(sys, config.step);
    ReachParams params = martinet_regularity_params(config);
    RegularityOptions opts;
    opts.exclusion_cells = kMartinetExclusionCells;

    auto run = [&](bool reverse) {
        std::ostringstream detail;
        for (const auto& w : martinet_regularity_windows(params)) {
            auto r = reverse ? reverse_regularity_test(sys, orbit, 0, w, params, opts)
                             : regularity_test(sys, orbit, 0, w, params, opts);
            if (detail.tellp() > 0) detail << "; ";
            detail << "window " << (w.hi[0] - w.lo[0]) << "x" << (w.hi[1] - w.lo[1]) << "x"
                   << (w.hi[2] - w.lo[2]) << ": " << to_string(r.verdict) << " (interior "
                   << r.interior << ", not interior " << r.not_interior << ", unoccupied "
                   << r.unoccupied << ")";
            if (r.verdict == RegularityVerdict::Regular) return std::pair{true, detail.str()};
        }
        return std::pair{false, detail.str()};
    };
    auto [fwd, fdetail] = run(false);
    rep.add("orbit regular", fwd, fdetail);
    auto [bwd, bdetail] = run(true);
    rep.add("orbit regular for the reversed system", bwd, bdetail);

    for (double t : {0.0, 1.0, 2.0, 3.0, 4.5}) {
        Point x{t, 0.0, 0.0};
        std::size_t r = arwar_rank(sys, x, config.k + 1);
        std::ostringstream name;
        name << "Arwar rank 2 at (" << t << ", 0, 0)";
        rep.add(name.str(), r == 2, std::to_string(r));
    }

    NeighborhoodOptions nopts;
    nopts.pairs = config.neighborhood_pairs;
    nopts.seed = derive_seed(config.seed, 30);
    auto nb = controllable_neighborhood_check(sys, orbit, martinet_tube(sys), martinet_tube_params(config), nopts);
    rep.add("controllable neighbourhood: >= 90% of pairs connected", nb.fraction() >= 0.9,
            std::to_string(nb.connected) + "/" + std::to_string(nb.pairs) + " over " +
                std::to_string(nb.common_cells) + " common cells");
    return rep;
}

}  // namespace orbitreach
