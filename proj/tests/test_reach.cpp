#include "doctest.h"
#include "support.hpp"

#include "orbitreach/errors.hpp"
#include "orbitreach/reach.hpp"

#include <sstream>

using namespace test;

namespace {

ReachParams params(std::size_t budget, double h, std::uint64_t seed = 1) {
    ReachParams p;
    p.budget = budget;
    p.h = {h};
    p.seed = seed;
    p.max_time = 1.0;
    p.max_segments = 8;
    p.step = 0.01;
    return p;
}

ControlSystem martinet3() {
    StateSpace s(3);
    s.set_period(0, kTwoPi);
    s.add_constraint(Constraint(parse_polynomial("x2^2 + x3^2 - 1", 3), Relation::Less));
    return ControlSystem::affine(s, field({"1", "0", "x2^3"}), {field({"0", "1", "0"})}, ControlBox{{-1}, {1}});
}

}  // namespace

TEST_SUITE("reach") {
    TEST_CASE("interval reachable set of x' = u") {
        ControlSystem sys = line_system();
        Window w{{-1}, {1}};
        ReachParams p = params(10000, 0.01);
        p.max_time = 2.0;
        p.max_segments = 20;
        ReachGrid g = reach_grid(sys, std::vector<double>{0}, w, p);
        REQUIRE(g.axis_cells(0) == 200);
        CHECK(static_cast<double>(g.occupied_count()) >= 0.99 * 200);
        CHECK(interior_test(g, std::vector<double>{0.5}, 2));
        CHECK(interior_test(g, std::vector<double>{-0.5}, 2));
        CHECK(krener_check(g, std::vector<double>{0}, 2));
        // The test neighbourhood of a point next to the window edge leaves the window.
        CHECK_FALSE(interior_test(g, std::vector<double>{0.995}, 2));
        CHECK_FALSE(interior_test(g, std::vector<double>{1.5}, 2));
    }

    TEST_CASE("torus grid stays in the forward cone") {
        ControlSystem sys = torus_system();
        Point x0{1.0, 1.0};
        Window w = Window::centered(sys.space(), x0, 0.5);
        const double h = 0.02;
        ReachGrid g = reach_grid(sys, x0, w, params(10000, h));
        CHECK(g.occupied_count() > 100);
        for (auto key : g.occupied_cells()) {
            Point c = g.cell_center(key);
            double dx1 = c[0] - x0[0], dx2 = c[1] - x0[1];
            CHECK(dx1 >= -h);
            CHECK(std::abs(dx2) <= dx1 + 2 * h);
        }
        CHECK(interior_test(g, std::vector<double>{1.15, 1.02}, 2));
        CHECK_FALSE(interior_test(g, std::vector<double>{0.9, 1.0}, 2));
    }

    TEST_CASE("backward grid lies in the backward cone") {
        ControlSystem sys = torus_system();
        Point x0{1.0, 1.0};
        Window w = Window::centered(sys.space(), x0, 0.5);
        const double h = 0.02;
        ReachGrid g = backward_grid(sys, x0, w, params(10000, h));
        for (auto key : g.occupied_cells()) {
            Point c = g.cell_center(key);
            CHECK(c[0] - x0[0] <= h);
            CHECK(std::abs(c[1] - x0[1]) <= x0[0] - c[0] + 2 * h);
        }
        CHECK(interior_test(g, std::vector<double>{0.85, 0.98}, 2));
    }

    TEST_CASE("zero budget") {
        ControlSystem sys = line_system();
        ReachGrid g = reach_grid(sys, std::vector<double>{0}, Window{{-1}, {1}}, params(0, 0.01));
        CHECK(g.occupied_count() == 1);
        CHECK(g.occupied(*g.cell_of(std::vector<double>{0})));
        CHECK_FALSE(krener_check(g, std::vector<double>{0}, 1));
        CHECK(krener_check(g, std::vector<double>{0}, 0));
    }

    TEST_CASE("same seed, same grid; other seed, other grid") {
        ControlSystem sys = torus_system();
        Point x0{0.0, 0.0};
        Window w = Window::centered(sys.space(), x0, 0.5);
        ReachGrid a = reach_grid(sys, x0, w, params(3000, 0.02, 5));
        ReachGrid b = reach_grid(sys, x0, w, params(3000, 0.02, 5));
        ReachGrid c = reach_grid(sys, x0, w, params(3000, 0.02, 6));
        CHECK(a.occupied_cells() == b.occupied_cells());
        for (auto key : a.occupied_cells()) CHECK(a.witness(key) == b.witness(key));
        bool differ = a.occupied_cells() != c.occupied_cells();
        if (!differ)
            for (auto key : a.occupied_cells()) differ |= a.witness_state(key) != c.witness_state(key);
        CHECK(differ);
    }

    TEST_CASE("witnesses land in their cells") {
        ControlSystem sys = martinet3();
        Point x0{0.0, 0.2, 0.0};
        Window w = Window::centered(sys.space(), x0, 0.6);
        ReachGrid g = reach_grid(sys, x0, w, params(2000, 0.02));
        for (auto key : g.occupied_cells()) {
            Point end;
            REQUIRE(integrate_endpoint(sys, x0, g.witness(key), g.step(), end));
            CHECK(end == g.witness_state(key));
            CHECK(g.cell_of(end) == key);
        }
    }

    TEST_CASE("periodic window wraps across the seam") {
        ControlSystem sys = torus_system();
        Point x0{kTwoPi - 0.05, 0.0};
        Window w = Window::centered(sys.space(), x0, 0.5);
        ReachGrid g = reach_grid(sys, x0, w, params(5000, 0.02));
        CHECK(interior_test(g, std::vector<double>{0.1, 0.0}, 2));
        CHECK(g.local_coords(std::vector<double>{0.1, 0.0}).has_value());
    }

    TEST_CASE("full-circle axes wrap neighbourhoods") {
        ControlSystem sys = torus_system();
        Point x0{0.0, 0.0};
        std::vector<double> sides{kTwoPi, 0.4};
        Window w = Window::centered(sys.space(), x0, sides);
        ReachParams p = params(1, 0.05);
        ReachGrid g = reach_grid(sys, x0, w, p);
        CHECK(g.full_circle(0));
        CHECK_FALSE(g.full_circle(1));
        auto key = *g.cell_of(std::vector<double>{0.01, 0.0});
        CHECK(g.neighborhood_inside(key, 2));
    }

    TEST_CASE("aligned window centres the point in its cell") {
        StateSpace s(2);
        Window w = Window::centered(s, std::vector<double>{0.013, -0.4}, 0.6);
        std::vector<double> h{0.02, 0.05};
        Window a = w.aligned(std::vector<double>{0.013, -0.4}, h);
        for (std::size_t i = 0; i < 2; ++i) {
            double offset = (std::vector<double>{0.013, -0.4}[i] - a.lo[i]) / h[i];
            CHECK(offset - std::floor(offset) == doctest::Approx(0.5).epsilon(1e-9));
            CHECK(a.hi[i] - a.lo[i] == doctest::Approx(w.hi[i] - w.lo[i]));
        }
    }

    TEST_CASE("Krener property in the contact region of Martinet") {
        ControlSystem sys = martinet3();
        Point x0{0.0, 0.2, 0.0};
        // x1 advances at unit speed, so the window spans the whole circle.
        std::vector<double> sides{kTwoPi, 0.4, 0.2};
        Window w = Window::centered(sys.space(), x0, sides);
        ReachParams p = params(50000, 0.02, 3);
        p.max_time = 30.0;
        p.max_segments = 15;
        ReachGrid g = reach_grid(sys, x0, w, p);
        CHECK(krener_check(g, x0, 2));
    }

    TEST_CASE("duality on the torus") {
        ControlSystem sys = torus_system();
        Point x{0.0, 0.0};
        Window w = Window::centered(sys.space(), x, 0.8);
        ReachParams p = params(10000, 0.02);
        auto ahead = duality_check(sys, x, std::vector<double>{0.3, 0.1}, w, p);
        CHECK(ahead.verdict == DualityVerdict::AgreeYes);
        auto behind = duality_check(sys, x, std::vector<double>{kTwoPi - 0.2, 0.0}, w, p);
        CHECK(behind.verdict == DualityVerdict::AgreeNo);
        ReachGrid g = reach_grid(sys, x, w, p);
        if (krener_check(g, x, 2)) {
            auto self = duality_check(sys, x, x, w, p);
            CHECK(self.verdict == DualityVerdict::AgreeYes);
        }
        CHECK(std::string(to_string(DualityVerdict::Disagree)) == "disagree");
    }

    TEST_CASE("argument errors") {
        ControlSystem sys = torus_system();
        Point x0{0, 0};
        CHECK_THROWS_AS(reach_grid(sys, x0, Window{{0, 0}, {0, 1}}, params(10, 0.1)), ArgumentError);
        CHECK_THROWS_AS(reach_grid(sys, x0, Window{{0}, {1}}, params(10, 0.1)), DimensionError);
        CHECK_THROWS_AS(reach_grid(sys, x0, Window::centered(sys.space(), x0, 0.5), params(10, -0.1)), ArgumentError);
        CHECK_THROWS_AS(resolve_resolution(std::vector<double>{0.1, 0.1, 0.1}, 2), DimensionError);
    }

    TEST_CASE("cells csv") {
        ReachGrid g = reach_grid(line_system(), std::vector<double>{0}, Window{{-1}, {1}}, params(100, 0.1));
        std::ostringstream os;
        write_cells_csv(os, g);
        std::string text = os.str();
        CHECK(text.substr(0, text.find('\n')) == "x1");
        CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == g.occupied_count() + 1);
    }
}
