#include "doctest.h"
#include "support.hpp"

#include "orbitreach/errors.hpp"

#include <sstream>

using namespace test;

namespace {

PiecewiseControl constant(double duration, std::vector<double> u) { return {{Segment{duration, std::move(u)}}}; }

ControlSystem martinet3() {
    StateSpace s(3);
    s.set_period(0, kTwoPi);
    s.add_constraint(Constraint(parse_polynomial("x2^2 + x3^2 - 1", 3), Relation::Less));
    return ControlSystem::affine(s, field({"1", "0", "x2^3"}), {field({"0", "1", "0"})}, ControlBox{{-1}, {1}});
}

/// x' = x^2 on the line, solved by x0 / (1 - x0 t).
ControlSystem riccati() {
    return ControlSystem::finite(StateSpace(1), {field({"x1^2"})});
}

}  // namespace

TEST_SUITE("dynamics") {
    TEST_CASE("constant field closes on the torus") {
        ControlSystem sys = torus_system();
        Trajectory t = integrate(sys, std::vector<double>{0, 0}, constant(kTwoPi, {0}));
        CHECK(sys.space().dist(t.end(), t.start()) < 1e-10);
        CHECK(t.duration == doctest::Approx(kTwoPi));
        CHECK_FALSE(t.truncated);
    }

    TEST_CASE("Martinet orbit closes") {
        ControlSystem sys = martinet3();
        Trajectory t = integrate(sys, std::vector<double>{0, 0, 0}, constant(kTwoPi, {0}));
        CHECK(sys.space().dist(t.end(), std::vector<double>{0, 0, 0}) < 1e-9);
    }

    TEST_CASE("linear motion is exact") {
        ControlSystem sys = line_system();
        Point end;
        REQUIRE(integrate_endpoint(sys, std::vector<double>{0.25}, constant(1.0, {1}), 1e-3, end));
        CHECK(end[0] == doctest::Approx(1.25).epsilon(1e-12));
    }

    TEST_CASE("RK4 order on a nonlinear field") {
        ControlSystem sys = riccati();
        const double x0 = 0.5, T = 1.0, exact = x0 / (1 - x0 * T);
        auto err = [&](double h) {
            Point end;
            integrate_endpoint(sys, std::vector<double>{x0}, constant(T, {0}), h, end);
            return std::abs(end[0] - exact);
        };
        for (double h : {0.1, 0.05, 0.025}) {
            double order = std::log2(err(h) / err(h / 2));
            CHECK(order >= 3.7);
            CHECK(order <= 4.3);
        }
    }

    TEST_CASE("segment_steps uses the step when it divides the duration") {
        double dt = 0;
        CHECK(segment_steps(0.5, 1e-3, dt) == 500);
        CHECK(dt == 1e-3);
        CHECK(segment_steps(0.0105, 1e-3, dt) == 11);
        CHECK(dt == doctest::Approx(0.0105 / 11));
        segment_steps(0.0, 1e-3, dt);
        CHECK(dt == 0.0);
    }

    TEST_CASE("replaying a prefix is bit exact") {
        ControlSystem sys = martinet3();
        PiecewiseControl c{{Segment{0.3, {0.5}}, Segment{0.2, {-1}}, Segment{0.1, {0.25}}}};
        Trajectory full = integrate(sys, std::vector<double>{0.1, 0.1, 0}, c);
        PiecewiseControl prefix{{c.segments[0], c.segments[1]}};
        Point end;
        integrate_endpoint(sys, std::vector<double>{0.1, 0.1, 0}, prefix, kDefaultStep, end);
        std::size_t idx = 0;
        while (full.segment_index[idx + 1] < 2) ++idx;
        CHECK(full.states[idx] == end);
    }

    TEST_CASE("reverse system") {
        ControlSystem sys = martinet3();
        ControlSystem rev = reverse_system(sys);
        CHECK(rev.drift() == -sys.drift());
        CHECK(rev.inputs()[0] == -sys.inputs()[0]);
        CHECK(reverse_system(rev) == sys);
    }

    TEST_CASE("forward then reverse returns to the start") {
        ControlSystem sys = martinet3();
        ControlSystem rev = reverse_system(sys);
        Rng rng(17);
        for (int i = 0; i < 10; ++i) {
            Point x{rng.uniform(0, 6), rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)};
            double u = rng.uniform(-1, 1), t = rng.uniform(0.1, 0.5);
            Point y, back;
            REQUIRE(integrate_endpoint(sys, x, constant(t, {u}), kDefaultStep, y));
            REQUIRE(integrate_endpoint(rev, y, constant(t, {u}), kDefaultStep, back));
            CHECK(sys.space().dist(back, x) < 1e-8);
        }
    }

    TEST_CASE("reverse trajectory runs under the reverse system") {
        ControlSystem sys = martinet3();
        PiecewiseControl c{{Segment{0.4, {1}}, Segment{0.3, {-0.5}}}};
        Trajectory t = integrate(sys, std::vector<double>{0, 0, 0}, c);
        Trajectory r = reverse_trajectory(t);
        CHECK(r.start() == t.end());
        CHECK(r.end() == t.start());
        CHECK(r.control == c.reversed());
        Trajectory replay = integrate(reverse_system(sys), r.start(), r.control);
        CHECK(sys.space().dist(replay.end(), t.start()) < 1e-8);
    }

    TEST_CASE("concat") {
        ControlSystem sys = torus_system();
        Trajectory a = integrate(sys, std::vector<double>{0, 0}, constant(1.0, {0}));
        Trajectory b = integrate(sys, a.end(), constant(2.0, {0}));
        Trajectory ab = concat(sys, a, b);
        CHECK(ab.duration == doctest::Approx(3.0));
        CHECK(ab.control.segments.size() == 2);
        CHECK(ab.end() == b.end());
        Trajectory c = integrate(sys, ab.end(), constant(0.5, {1}));
        CHECK(concat(sys, ab, c).duration == doctest::Approx(3.5));

        Point off = a.end();
        off[1] += 1e-3;
        Trajectory far = integrate(sys, off, constant(1.0, {0}));
        CHECK_THROWS_AS(concat(sys, a, far, 1e-6), GlueError);
    }

    TEST_CASE("leaving the domain truncates") {
        ControlSystem sys = martinet3();
        Trajectory t = integrate(sys, std::vector<double>{0, 0.9, 0}, constant(1.0, {1}));
        CHECK(t.truncated);
        CHECK(t.end()[1] < 1.0);
        Point end;
        CHECK_FALSE(integrate_endpoint(sys, std::vector<double>{0, 0.9, 0}, constant(1.0, {1}), 1e-3, end));
    }

    TEST_CASE("control validation") {
        ControlSystem sys = torus_system();
        CHECK_THROWS_AS(constant(1.0, {2}).validate(sys), ArgumentError);
        CHECK_THROWS_AS(constant(-1.0, {0}).validate(sys), ArgumentError);
        CHECK_NOTHROW(constant(1.0, {-1}).validate(sys));
        ControlSystem fin = riccati();
        CHECK_THROWS_AS(constant(1.0, {1}).validate(fin), ArgumentError);
        CHECK_NOTHROW(constant(1.0, {0}).validate(fin));
    }

    TEST_CASE("control box") {
        ControlBox box{{-1, 0}, {1, 2}};
        CHECK(box.vertices().size() == 4);
        CHECK(box.vertices().front() == std::vector<double>{-1, 0});
        CHECK(box.contains(std::vector<double>{1, 0}));
        CHECK_FALSE(box.interior(std::vector<double>{1, 1}));
        CHECK(box.clamp(std::vector<double>{3, -1}) == std::vector<double>{1, 0});
    }

    TEST_CASE("trajectory csv") {
        Trajectory t = integrate(torus_system(), std::vector<double>{0, 0}, constant(0.002, {1}));
        std::ostringstream os;
        write_trajectory_csv(os, t);
        std::string header = os.str().substr(0, os.str().find('\n'));
        CHECK(header == "t,x1,x2,u1");
    }
}
