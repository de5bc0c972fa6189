#pragma once

#include "orbitreach/reach.hpp"
#include "orbitreach/shooting.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace orbitreach {

/// Edge head -> tail: the node `head` lies in the grid interior of
/// A+(tail, U). The witness drives the system from the tail node to the head
/// node, the reverse of the arrow.
struct GraphEdge {
    std::size_t head = 0;
    std::size_t tail = 0;
    PiecewiseControl witness;
    /// Distance from the witness endpoint to the head node.
    double gap = 0.0;
};

struct ReachabilityGraph {
    std::vector<Point> nodes;
    std::vector<GraphEdge> edges;  ///< sorted by (head, tail)
    /// Interior relations whose witness could not be brought within the glue
    /// tolerance of the head; these are not edges.
    std::size_t dropped = 0;

    /// Edge index for head -> tail, if present.
    std::optional<std::size_t> find_edge(std::size_t head, std::size_t tail) const;
    /// Tails of edges leaving `head`, ascending.
    std::vector<std::size_t> successors(std::size_t head) const;
};

struct GraphParams {
    ReachParams reach;
    /// Window side lengths around each node (one entry or one per axis).
    std::vector<double> window_sides{0.8};
    int radius_cells = kDefaultRadiusCells;
    double glue_tolerance = kDefaultGlueTolerance;
    ShootingOptions shooting;
};

/// Jittered lattice with `per_axis` nodes on every axis of a fully periodic
/// space; jitter is a fraction of the lattice spacing.
std::vector<Point> lattice_nodes(const StateSpace& space, std::size_t per_axis, double jitter,
                                 std::uint64_t seed);

/// One grid per node (node j uses the sub-seed derive_seed(seed, j)); edges
/// i -> j for every node i passing the interior test in node j's grid.
ReachabilityGraph build_graph(const ControlSystem& sys, std::vector<Point> nodes,
                              const GraphParams& params);

/// Walk from `start` along the lowest-index successor until a node repeats.
/// Returns the repeated tail of the walk, or nullopt if the walk reaches a
/// node without successors.
std::optional<std::vector<std::size_t>> find_cycle(const ReachabilityGraph& graph,
                                                   std::size_t start = 0);

struct ClosedOrbit {
    Trajectory trajectory;
    double period = 0.0;
    double gap = 0.0;
    double initial_gap = 0.0;
    bool closed = false;
    std::optional<bool> regular;
};

struct CloseOptions {
    double tolerance = kDefaultGlueTolerance;
    ShootingOptions shooting;
};

/// Concatenates the witnesses around the cycle, starting and ending at
/// cycle[0], then shoots on the final segments to shrink the closure gap.
ClosedOrbit close_orbit(const ControlSystem& sys, const std::vector<std::size_t>& cycle,
                        const ReachabilityGraph& graph, const CloseOptions& options = {});

/// Closes a given control from x0 (used for orbits known in advance and for
/// perturbed chains).
ClosedOrbit close_control(const ControlSystem& sys, std::span<const double> x0,
                          const PiecewiseControl& ctrl, const CloseOptions& options = {});

enum class RegularityVerdict { Regular, NotShown };

const char* to_string(RegularityVerdict v);

struct RegularityOptions {
    int radius_cells = kDefaultRadiusCells;
    /// Orbit samples whose cell is within this Chebyshev distance of the base
    /// point's cell are skipped. Negative selects 2 * radius_cells + 1.
    int exclusion_cells = -1;
};

struct RegularityReport {
    RegularityVerdict verdict = RegularityVerdict::NotShown;
    Point base_point;
    Window window;
    std::size_t occupied_cells = 0;
    std::size_t samples_in_window = 0;
    std::size_t excluded = 0;      ///< near the base point
    std::size_t near_edge = 0;     ///< test neighbourhood leaves the window
    std::size_t unoccupied = 0;    ///< outside the sampled A+(x, U)
    std::size_t interior = 0;
    std::size_t not_interior = 0;
};

/// Samples of the orbit inside the window whose cells are occupied must all
/// pass the interior test; at least one such sample is required for the
/// verdict regular.
RegularityReport regularity_test(const ControlSystem& sys, const ClosedOrbit& orbit,
                                 std::size_t base_index, const Window& window,
                                 const ReachParams& params, const RegularityOptions& options = {});

/// regularity_test of reverse_system(sys) on the reversed orbit at the same
/// base point.
RegularityReport reverse_regularity_test(const ControlSystem& sys, const ClosedOrbit& orbit,
                                         std::size_t base_index, const Window& window,
                                         const ReachParams& params,
                                         const RegularityOptions& options = {});

struct NeighborhoodOptions {
    std::size_t pairs = 25;
    std::uint64_t seed = 0;
    double glue_tolerance = kDefaultGlueTolerance;
};

struct NeighborhoodReport {
    std::size_t common_cells = 0;
    std::size_t pairs = 0;
    std::size_t connected = 0;
    std::size_t skipped = 0;
    double max_glue = 0.0;
    /// Largest distance from a pair endpoint to its cell centre.
    double max_center_offset = 0.0;

    double fraction() const { return pairs ? static_cast<double>(connected) / static_cast<double>(pairs) : 0.0; }
};

/// Grids A+ and A- from the orbit start over the window; pairs of cells
/// occupied in both are joined by the reversed A- witness of the first cell,
/// one lap of the orbit and the A+ witness of the second cell. A pair counts
/// as connected when every glue gap is within tolerance and the whole path
/// stays in the window. Pair endpoints are the states recorded in the cells.
NeighborhoodReport controllable_neighborhood_check(const ControlSystem& sys,
                                                   const ClosedOrbit& orbit, const Window& window,
                                                   const ReachParams& params,
                                                   const NeighborhoodOptions& options = {});

/// Graphviz digraph with one edge per graph edge, head -> tail.
void write_graph_dot(std::ostream& os, const ReachabilityGraph& graph);

/// State rows of the orbit with header `t,x1..xn,u1..uk`.
void write_orbit_csv(std::ostream& os, const ClosedOrbit& orbit);

}  // namespace orbitreach
