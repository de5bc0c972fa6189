#include "doctest.h"
#include "support.hpp"

#include "orbitreach/errors.hpp"
#include "orbitreach/martinet.hpp"

#include <filesystem>

using namespace test;

namespace {

const char* kHeader = "[space]\ndim = 3\n[fields]\n";

std::string with_fields(const std::string& fields, const std::string& system = "kind = affine\ndrift = X\n") {
    return std::string(kHeader) + fields + "[system]\n" + system;
}

ParseError parse_error(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error");
    return ParseError("", 0, 0);
}

}  // namespace

TEST_SUITE("specfile") {
    TEST_CASE("bundled Martinet file equals the built system") {
        SystemSpec spec = load_spec(data_path("systems/martinet.sys"));
        CHECK(spec.system == build_martinet(MartinetConfig{}));
        CHECK(spec.params.depth == 4u);
        REQUIRE(spec.params.orbit_period.has_value());
        CHECK(*spec.params.orbit_period == doctest::Approx(kTwoPi).epsilon(1e-15));
        CHECK(spec.params.samples->size() == 5);
        CHECK(spec.fields.size() == 2);
    }

    TEST_CASE("unclosed field list") {
        ParseError e = parse_error(with_fields("X = [1, 0, x2^3\n"));
        CHECK(e.line() == 4);
        CHECK(e.column() == 16);
        CHECK(std::string(e.what()).rfind("4:16:", 0) == 0);
    }

    TEST_CASE("rejected documents") {
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0, 0]\nX = [0, 1, 0]\n")), ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0]\n")), ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0, x4]\n")), ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0, 0]\n", "kind = affine\ndrift = X\ncolour = red\n")), ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0, 0]\n", "kind = affine\ndrift = Z\n")), ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0, 0]\n", "kind = affine\ndrift = X\ninputs = X\n")), ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0, 0]\n", "kind = affine\ndrift = X\ninputs = X\ncontrol_box = [1, -1]\n")),
                        ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0, 0]\n", "kind = finite\ncontrols =\n")), ParseError);
        CHECK_THROWS_AS(parse_spec("[fields]\nX = [1]\n"), ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0, 0]\n") + "[extra]\n"), ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1, 0, 0]\n") + "[params]\nwidth = 1\n"), ParseError);
        CHECK_THROWS_AS(parse_spec(with_fields("X = [1/x1, 0, 0]\n")), ParseError);
        CHECK_THROWS_AS(load_spec("/nonexistent/file.sys"), ArgumentError);
    }

    TEST_CASE("coefficients are exact") {
        SystemSpec s = parse_spec(with_fields("X = [0.1*x1, 2/3, 1.5e-1 - x2^2]\n"));
        const auto& X = s.system.drift();
        CHECK(X[0] == parse_polynomial("x1/10", 3));
        CHECK(X[1].constant_term() == Rational(2, 3));
        CHECK(X[2] == parse_polynomial("3/20 - x2*x2", 3));
        CHECK(parse_polynomial("0.09", 1).constant_term() == Rational(9, 100));
        CHECK(parse_polynomial("(x1 + 1)^2", 1) == parse_polynomial("x1^2 + 2*x1 + 1", 1));
        CHECK(parse_polynomial("-x1^2", 1).evaluate(std::vector<double>{3.0}) == -9.0);
    }

    TEST_CASE("comments, pi and constraints") {
        std::string text =
            "# leading comment\n[space]\ndim = 2   # two axes\nperiod x1 = 2*pi\nconstraint x2^2 < 1\n"
            "[fields]\nX = [1, 0]\nY = [0, 1]\n[system]\nkind = affine\ndrift = X\ninputs = Y\ncontrol_box = [-1/2, 1/2]\n";
        SystemSpec s = parse_spec(text);
        CHECK(*s.system.space().period(0) == doctest::Approx(kTwoPi).epsilon(1e-15));
        CHECK_FALSE(s.system.space().is_periodic(1));
        CHECK(s.system.space().constraints().size() == 1);
        CHECK(s.system.box().hi == std::vector<double>{0.5});
    }

    TEST_CASE("finite systems") {
        SystemSpec s = load_spec(data_path("systems/switched.sys"));
        CHECK_FALSE(s.system.is_affine());
        CHECK(s.system.fields().size() == 3);
        CHECK(s.system.names() == std::vector<std::string>{"F0", "F1", "F2"});
    }

    TEST_CASE("every bundled system round-trips") {
        for (const auto& entry : std::filesystem::directory_iterator(data_path("systems"))) {
            if (entry.path().extension() != ".sys") continue;
            INFO(entry.path().string());
            SystemSpec a = load_spec(entry.path().string());
            std::string text = format_spec(a);
            SystemSpec b = parse_spec(text);
            CHECK(a.system == b.system);
            CHECK(a.params == b.params);
            CHECK(format_spec(b) == text);
        }
    }
}
