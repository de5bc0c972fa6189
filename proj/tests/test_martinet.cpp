#include "doctest.h"
#include "support.hpp"

#include "orbitreach/errors.hpp"
#include "orbitreach/martinet.hpp"

using namespace test;

TEST_SUITE("martinet") {
    TEST_CASE("construction") {
        for (unsigned k : {3u, 5u, 7u}) {
            MartinetConfig c;
            c.k = k;
            ControlSystem m = build_martinet(c);
            std::string drift3 = "x2^" + std::to_string(k);
            CHECK(m.drift() == field({"1", "0", drift3.c_str()}));
            CHECK(m.inputs().front() == field({"0", "1", "0"}));
            CHECK(m.space().is_periodic(0));
            CHECK(m.names() == std::vector<std::string>{"X", "Y"});
        }
        MartinetConfig even;
        even.k = 4;
        CHECK_THROWS_AS(even.validate(), ArgumentError);
        CHECK_THROWS_AS(build_martinet(even), ArgumentError);
        MartinetConfig one;
        one.k = 1;
        CHECK_THROWS_AS(one.validate(), ArgumentError);
    }

    TEST_CASE("bracket claims hold for odd k") {
        for (unsigned k : {3u, 5u, 7u}) {
            MartinetConfig c;
            c.k = k;
            CheckReport r = verify_bracket_claims(c);
            CHECK(r.passed());
            CHECK(r.checks.size() >= 8);
        }
    }

    TEST_CASE("singular orbit claims") {
        for (unsigned k : {3u, 5u, 7u}) {
            MartinetConfig c;
            c.k = k;
            CheckReport r = verify_singular_orbit(c);
            for (const auto& check : r.checks) {
                INFO("k=" << k << " " << check.name << ": " << check.detail);
                CHECK(check.passed);
            }
        }
    }

    TEST_CASE("surface points lie on x2 = 0") {
        auto pts = martinet_surface_points();
        CHECK(pts.size() == 5);
        for (const auto& p : pts) CHECK(p[1] == 0.0);
    }

    TEST_CASE("regularity windows are aligned at the origin") {
        ReachParams p = martinet_regularity_params(MartinetConfig{});
        auto windows = martinet_regularity_windows(p);
        REQUIRE_FALSE(windows.empty());
        const Window& w = windows.front();
        CHECK(p.h[2] == doctest::Approx(1e-6));
        CHECK(w.hi[0] - w.lo[0] == doctest::Approx(0.6));
        CHECK(w.hi[1] - w.lo[1] == doctest::Approx(0.3));
        CHECK(w.hi[2] - w.lo[2] == doctest::Approx(0.3));
        auto h = resolve_resolution(p.h, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            double cells = -w.lo[i] / h[i];
            CHECK(cells - std::floor(cells) == doctest::Approx(0.5).epsilon(1e-6));
        }
    }

    TEST_CASE("CheckReport") {
        CheckReport r;
        CHECK(r.passed() == false);
        r.add("a", true);
        CHECK(r.passed());
        r.add("b", false, "why");
        CHECK_FALSE(r.passed());
        CHECK(r.checks.back().detail == "why");
    }
}
