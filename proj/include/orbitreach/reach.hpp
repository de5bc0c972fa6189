#pragma once

#include "orbitreach/dynamics.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace orbitreach {

/// Box neighbourhood U in chart units. On a periodic axis the interval may
/// straddle the seam (lo < 0 or hi > period); an interval at least one period
/// long covers the whole circle.
struct Window {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const noexcept { return lo.size(); }

    /// Box with the given side lengths centred at `center`. A side at least
    /// the period of a periodic axis yields a full-circle interval.
    static Window centered(const StateSpace& space, std::span<const double> center,
                           std::span<const double> sides);
    static Window centered(const StateSpace& space, std::span<const double> center, double side);

    void validate(const StateSpace& space) const;

    /// Same box shifted by less than one cell per axis so that `center`
    /// falls in the middle of its grid cell for resolution h.
    Window aligned(std::span<const double> center, std::span<const double> h) const;
};

struct ReachParams {
    /// Number of rollouts drawn from the frontier.
    std::size_t budget = 10000;
    double max_time = 2.0;
    std::size_t max_segments = 20;
    /// Cell side; a single entry applies to every axis.
    std::vector<double> h{0.02};
    std::uint64_t seed = 0;
    double step = kDefaultStep;
};

inline constexpr int kDefaultRadiusCells = 2;
inline constexpr double kDefaultGridH = 0.02;

/// Occupancy grid of sampled points of A+(x0, U), with one generating
/// control per occupied cell.
class ReachGrid {
public:
    using CellKey = std::uint64_t;
    using CellCoords = std::vector<std::int64_t>;

    ReachGrid(const StateSpace& space, Window window, std::vector<double> h, double step,
              Point origin);

    const Window& window() const noexcept { return window_; }
    const std::vector<double>& resolution() const noexcept { return h_; }
    const Point& origin() const noexcept { return origin_; }
    double step() const noexcept { return step_; }
    std::size_t dim() const noexcept { return h_.size(); }
    std::size_t axis_cells(std::size_t axis) const { return counts_.at(axis); }
    bool full_circle(std::size_t axis) const { return full_circle_.at(axis); }

    std::size_t budget() const noexcept { return budget_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Window coordinate of p on each axis (lifted across the seam), or
    /// nullopt when p lies outside the window.
    std::optional<std::vector<double>> local_coords(std::span<const double> p) const;
    std::optional<CellKey> cell_of(std::span<const double> p) const;
    CellCoords coords_of(CellKey key) const;
    /// Neighbouring cell with periodic wrap on full-circle axes; nullopt if it
    /// falls outside the window.
    std::optional<CellKey> offset(const CellCoords& c, std::span<const std::int64_t> delta) const;
    Point cell_center(CellKey key) const;
    /// Chebyshev distance between cell coordinates, wrapping on full-circle axes.
    std::int64_t chebyshev(const CellCoords& a, const CellCoords& b) const;
    /// Every cell within Chebyshev distance r of the cell lies in the window.
    bool neighborhood_inside(CellKey key, int r) const;

    bool occupied(CellKey key) const { return cells_.contains(key); }
    std::size_t occupied_count() const noexcept { return cells_.size(); }
    /// Occupied cells sorted by key.
    std::vector<CellKey> occupied_cells() const;

    /// Control that drives the system from origin() into the cell.
    PiecewiseControl witness(CellKey key) const;
    /// State recorded when the cell was first occupied.
    const Point& witness_state(CellKey key) const;

private:
    friend ReachGrid reach_grid(const ControlSystem&, std::span<const double>, const Window&,
                                const ReachParams&);

    struct Node {
        std::uint32_t parent;
        std::uint32_t parent_step;
        std::uint32_t value_offset;
    };
    struct Cell {
        std::uint32_t node;
        std::uint32_t step;
        Point state;
    };

    CellKey key_of(const CellCoords& c) const;

    Window window_;
    std::vector<double> h_;
    std::vector<std::optional<double>> periods_;
    std::vector<std::size_t> counts_;
    std::vector<bool> full_circle_;
    std::vector<CellKey> strides_;
    double step_;
    Point origin_;
    std::size_t budget_ = 0;
    std::uint64_t seed_ = 0;
    std::size_t control_dim_ = 0;
    std::vector<Node> nodes_;
    std::vector<double> values_;
    std::unordered_map<CellKey, Cell> cells_;
};

/// Frontier expansion: each rollout picks a frontier state uniformly, a
/// control (a random box vertex or a uniform box point with equal odds; a
/// uniform index for finite systems) and a whole number of steps up to
/// max_time / max_segments, then integrates until the window or domain is
/// left. The first state in each cell occupies it and joins the frontier.
/// Deterministic given params.seed.
ReachGrid reach_grid(const ControlSystem& sys, std::span<const double> x0, const Window& window,
                     const ReachParams& params);

/// reach_grid of reverse_system(sys): samples A-(x0, U).
ReachGrid backward_grid(const ControlSystem& sys, std::span<const double> x0,
                        const Window& window, const ReachParams& params);

/// True iff every cell within Chebyshev distance radius_cells of p's cell is
/// occupied. Points outside the window are never interior.
bool interior_test(const ReachGrid& grid, std::span<const double> p,
                   int radius_cells = kDefaultRadiusCells);
bool interior_cell(const ReachGrid& grid, ReachGrid::CellKey key,
                   int radius_cells = kDefaultRadiusCells);

/// Some cell within radius_cells of x0's cell passes the interior test.
bool krener_check(const ReachGrid& grid, std::span<const double> x0,
                  int radius_cells = kDefaultRadiusCells);

enum class DualityVerdict { AgreeYes, AgreeNo, Disagree };

const char* to_string(DualityVerdict v);

struct DualityResult {
    DualityVerdict verdict;
    bool forward_interior;   ///< y interior to the sampled A+(x, U)
    bool backward_interior;  ///< x interior to the sampled A-(y, U)
};

/// Compares y in int A+(x, U) against x in int A-(y, U) on one window.
DualityResult duality_check(const ControlSystem& sys, std::span<const double> x,
                            std::span<const double> y, const Window& window,
                            const ReachParams& params, int radius_cells = kDefaultRadiusCells);

/// Occupied cell centres, header `x1..xn`.
void write_cells_csv(std::ostream& os, const ReachGrid& grid);

/// Resolution vector for `dim` axes from a one-entry or per-axis list.
std::vector<double> resolve_resolution(std::span<const double> h, std::size_t dim);

}  // namespace orbitreach
