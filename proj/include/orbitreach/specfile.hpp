#pragma once

#include "orbitreach/dynamics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbitreach {

/// Optional run parameters from the [params] section.
struct SpecParams {
    std::optional<double> step;
    std::optional<std::uint64_t> budget;
    std::optional<std::vector<double>> grid_h;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> depth;
    std::optional<double> max_time;
    std::optional<std::uint64_t> max_segments;
    std::optional<int> radius;
    std::optional<double> glue_tolerance;
    /// Window side lengths.
    std::optional<std::vector<double>> window;
    std::optional<Point> base_point;
    std::optional<std::vector<Point>> samples;
    /// Closed orbit through base_point: one constant control for one period.
    std::optional<double> orbit_period;
    std::optional<std::vector<double>> orbit_control;
    /// Initial covector for extremal lifts.
    std::optional<std::vector<double>> covector;

    friend bool operator==(const SpecParams&, const SpecParams&) = default;
};

struct SystemSpec {
    ControlSystem system;
    /// Named fields in declaration order.
    std::vector<std::pair<std::string, PolyVectorField>> fields;
    SpecParams params;
};

/// Parses the sectioned system description:
///
///   [space]   dim = n, `period xI = expr`, `constraint p REL q`
///   [fields]  `Name = [p1, ..., pn]`
///   [system]  kind = affine|finite, drift, inputs, control_box, controls
///   [params]  step, budget, grid_h, seed, depth, max_time, max_segments,
///             radius, glue_tolerance, window, base_point, samples,
///             orbit_period, orbit_control, covector
///
/// Polynomials use x1..xn, integer, decimal or rational coefficients and
/// + - * / ^ with parentheses. `#` starts a comment. Errors carry the line
/// and column.
SystemSpec parse_spec(std::string_view text);

/// Parses one polynomial in `nvars` variables.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

/// Canonical text that parse_spec maps back to an equal system and params.
std::string format_spec(const SystemSpec& spec);

/// Reads and parses a file; I/O failures raise ArgumentError.
SystemSpec load_spec(const std::string& path);

}  // namespace orbitreach
