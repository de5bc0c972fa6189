#include "orbitreach/orbits.hpp"

#include "orbitreach/errors.hpp"
#include "orbitreach/parallel.hpp"
#include "orbitreach/random.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

namespace orbitreach {

std::optional<std::size_t> ReachabilityGraph::find_edge(std::size_t head, std::size_t tail) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{head, tail},
                               [](const GraphEdge& e, const std::pair<std::size_t, std::size_t>& k) {
                                   return std::pair{e.head, e.tail} < k;
                               });
    if (it == edges.end() || it->head != head || it->tail != tail) return std::nullopt;
    return static_cast<std::size_t>(it - edges.begin());
}

std::vector<std::size_t> ReachabilityGraph::successors(std::size_t head) const {
    std::vector<std::size_t> out;
    for (const auto& e : edges)
        if (e.head == head) out.push_back(e.tail);
    return out;
}

std::vector<Point> lattice_nodes(const StateSpace& space, std::size_t per_axis, double jitter,
                                 std::uint64_t seed) {
    if (!space.fully_periodic()) throw ArgumentError("lattice nodes need a fully periodic space");
    if (per_axis == 0) throw ArgumentError("lattice needs at least one node per axis");
    const std::size_t n = space.dim();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= per_axis;
    Rng rng(seed);
    std::vector<Point> nodes;
    nodes.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        Point p(n);
        std::size_t rest = idx;
        for (std::size_t i = 0; i < n; ++i) {
            double spacing = *space.period(i) / static_cast<double>(per_axis);
            double k = static_cast<double>(rest % per_axis);
            rest /= per_axis;
            p[i] = k * spacing + jitter * spacing * rng.uniform(-1.0, 1.0);
        }
        nodes.push_back(space.wrap(p));
    }
    return nodes;
}

ReachabilityGraph build_graph(const ControlSystem& sys, std::vector<Point> nodes,
                              const GraphParams& params) {
    ReachabilityGraph graph;
    graph.nodes = std::move(nodes);
    const std::size_t m = graph.nodes.size();
    std::vector<std::vector<GraphEdge>> found(m);
    std::vector<std::size_t> dropped(m, 0);

    parallel_for(m, [&](std::size_t j) {
        const Point& xj = graph.nodes[j];
        Window w = Window::centered(sys.space(), xj, params.window_sides);
        ReachParams rp = params.reach;
        rp.seed = derive_seed(params.reach.seed, j);
        ReachGrid grid = reach_grid(sys, xj, w, rp);
        ShootingOptions so = params.shooting;
        so.step = rp.step;
        so.admissible = [&grid](const double* x) {
            return grid.cell_of(std::span<const double>(x, grid.dim())).has_value();
        };
        for (std::size_t i = 0; i < m; ++i) {
            const Point& xi = graph.nodes[i];
            if (!interior_test(grid, xi, params.radius_cells)) continue;
            auto key = grid.cell_of(xi);
            GraphEdge e;
            e.head = i;
            e.tail = j;
            e.witness = grid.witness(*key);
            if (e.witness.segments.empty()) {
                e.gap = sys.space().dist(xj, xi);
            } else {
                auto r = refine_endpoint(sys, xj, e.witness, xi, so);
                e.witness = std::move(r.control);
                e.gap = r.gap;
            }
            if (e.gap <= params.glue_tolerance) found[j].push_back(std::move(e));
            else ++dropped[j];
        }
    });

    for (std::size_t j = 0; j < m; ++j) {
        for (auto& e : found[j]) graph.edges.push_back(std::move(e));
        graph.dropped += dropped[j];
    }
    std::sort(graph.edges.begin(), graph.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::pair{a.head, a.tail} < std::pair{b.head, b.tail};
    });
    return graph;
}

std::optional<std::vector<std::size_t>> find_cycle(const ReachabilityGraph& graph, std::size_t start) {
    const std::size_t m = graph.nodes.size();
    if (start >= m) return std::nullopt;
    std::vector<std::size_t> first_out(m, m);
    for (const auto& e : graph.edges)
        if (first_out[e.head] == m) first_out[e.head] = e.tail;  // edges sorted by (head, tail)

    std::vector<std::size_t> pos(m, m);
    std::vector<std::size_t> walk;
    std::size_t v = start;
    while (pos[v] == m) {
        pos[v] = walk.size();
        walk.push_back(v);
        if (first_out[v] == m) return std::nullopt;
        v = first_out[v];
    }
    return std::vector<std::size_t>(walk.begin() + static_cast<std::ptrdiff_t>(pos[v]), walk.end());
}

ClosedOrbit close_control(const ControlSystem& sys, std::span<const double> x0,
                          const PiecewiseControl& ctrl, const CloseOptions& options) {
    if (ctrl.segments.empty()) throw ArgumentError("orbit control is empty");
    Point start = sys.space().wrap(x0);
    ClosedOrbit orbit;
    Trajectory raw = integrate(sys, start, ctrl, options.shooting.step);
    orbit.initial_gap = raw.truncated ? INFINITY : sys.space().dist(raw.end(), start);
    PiecewiseControl best = ctrl;
    if (!raw.truncated && orbit.initial_gap > options.shooting.tolerance) {
        auto r = refine_endpoint(sys, start, ctrl, start, options.shooting);
        best = std::move(r.control);
    }
    orbit.trajectory = integrate(sys, start, best, options.shooting.step);
    orbit.period = best.total_time();
    orbit.gap = orbit.trajectory.truncated ? INFINITY : sys.space().dist(orbit.trajectory.end(), start);
    orbit.closed = !orbit.trajectory.truncated && orbit.gap <= options.tolerance && orbit.period > 0.0;
    return orbit;
}

ClosedOrbit close_orbit(const ControlSystem& sys, const std::vector<std::size_t>& cycle,
                        const ReachabilityGraph& graph, const CloseOptions& options) {
    if (cycle.empty()) throw ArgumentError("cycle is empty");
    const std::size_t m = cycle.size();
    PiecewiseControl ctrl;
    for (std::size_t k = m; k-- > 0;) {
        auto e = graph.find_edge(cycle[k], cycle[(k + 1) % m]);
        if (!e) throw ArgumentError("cycle uses a missing edge");
        ctrl.append(graph.edges[*e].witness);
    }
    return close_control(sys, graph.nodes.at(cycle[0]), ctrl, options);
}

const char* to_string(RegularityVerdict v) {
    return v == RegularityVerdict::Regular ? "regular" : "not_shown";
}

RegularityReport regularity_test(const ControlSystem& sys, const ClosedOrbit& orbit,
                                 std::size_t base_index, const Window& window,
                                 const ReachParams& params, const RegularityOptions& options) {
    const auto& states = orbit.trajectory.states;
    if (base_index >= states.size()) throw ArgumentError("orbit base index out of range");
    const int exclusion = options.exclusion_cells < 0 ? 2 * options.radius_cells + 1
                                                      : options.exclusion_cells;
    RegularityReport rep;
    rep.base_point = states[base_index];
    rep.window = window;
    ReachGrid grid = reach_grid(sys, rep.base_point, window, params);
    rep.occupied_cells = grid.occupied_count();
    const auto base_cell = grid.coords_of(*grid.cell_of(rep.base_point));

    for (std::size_t s = 0; s < states.size(); ++s) {
        auto key = grid.cell_of(states[s]);
        if (!key) continue;
        ++rep.samples_in_window;
        if (grid.chebyshev(grid.coords_of(*key), base_cell) <= exclusion) ++rep.excluded;
        else if (!grid.neighborhood_inside(*key, options.radius_cells)) ++rep.near_edge;
        else if (!grid.occupied(*key)) ++rep.unoccupied;
        else if (interior_cell(grid, *key, options.radius_cells)) ++rep.interior;
        else ++rep.not_interior;
    }
    rep.verdict = rep.interior > 0 && rep.not_interior == 0 ? RegularityVerdict::Regular
                                                            : RegularityVerdict::NotShown;
    return rep;
}

RegularityReport reverse_regularity_test(const ControlSystem& sys, const ClosedOrbit& orbit,
                                         std::size_t base_index, const Window& window,
                                         const ReachParams& params,
                                         const RegularityOptions& options) {
    const std::size_t n = orbit.trajectory.states.size();
    if (base_index >= n) throw ArgumentError("orbit base index out of range");
    ClosedOrbit rev = orbit;
    rev.trajectory = reverse_trajectory(orbit.trajectory);
    return regularity_test(reverse_system(sys), rev, n - 1 - base_index, window, params, options);
}

NeighborhoodReport controllable_neighborhood_check(const ControlSystem& sys,
                                                   const ClosedOrbit& orbit, const Window& window,
                                                   const ReachParams& params,
                                                   const NeighborhoodOptions& options) {
    const Point& x0 = orbit.trajectory.start();
    ReachParams fp = params, bp = params;
    fp.seed = derive_seed(options.seed, 0);
    bp.seed = derive_seed(options.seed, 1);
    ReachGrid fwd = reach_grid(sys, x0, window, fp);
    ReachGrid bwd = backward_grid(sys, x0, window, bp);

    std::vector<ReachGrid::CellKey> common;
    for (auto k : fwd.occupied_cells())
        if (bwd.occupied(k)) common.push_back(k);

    NeighborhoodReport rep;
    rep.common_cells = common.size();
    rep.pairs = options.pairs;
    if (common.empty()) {
        rep.skipped = options.pairs;
        return rep;
    }

    const double step = params.step;
    Trajectory lap = integrate(sys, x0, orbit.trajectory.control, step);
    auto in_window = [&](const Trajectory& t) {
        if (t.truncated) return false;
        for (const auto& s : t.states)
            if (!fwd.cell_of(s)) return false;
        return true;
    };

    Rng rng(derive_seed(options.seed, 2));
    for (std::size_t p = 0; p < options.pairs; ++p) {
        auto a = common[rng.below(common.size())];
        auto b = common[rng.below(common.size())];
        const Point& xa = bwd.witness_state(a);
        const Point& yb = fwd.witness_state(b);
        rep.max_center_offset = std::max({rep.max_center_offset,
                                          sys.space().dist(xa, bwd.cell_center(a)),
                                          sys.space().dist(yb, fwd.cell_center(b))});
        try {
            Trajectory path = integrate(sys, xa, bwd.witness(a).reversed(), step);
            path = concat(sys, path, lap, options.glue_tolerance);
            Trajectory tail = integrate(sys, x0, fwd.witness(b), step);
            path = concat(sys, path, tail, options.glue_tolerance);
            double end_gap = sys.space().dist(path.end(), yb);
            rep.max_glue = std::max({rep.max_glue, path.glue_gap, end_gap});
            if (in_window(path) && end_gap <= options.glue_tolerance) ++rep.connected;
        } catch (const GlueError&) {
        }
    }
    return rep;
}

void write_graph_dot(std::ostream& os, const ReachabilityGraph& graph) {
    os << "digraph reach {\n";
    auto old = os.precision(6);
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        os << "  n" << i << " [label=\"" << i << "\\n(";
        for (std::size_t k = 0; k < graph.nodes[i].size(); ++k)
            os << (k ? ", " : "") << graph.nodes[i][k];
        os << ")\"];\n";
    }
    for (const auto& e : graph.edges) os << "  n" << e.head << " -> n" << e.tail << ";\n";
    os << "}\n";
    os.precision(old);
}

void write_orbit_csv(std::ostream& os, const ClosedOrbit& orbit) {
    write_trajectory_csv(os, orbit.trajectory);
}

}  // namespace orbitreach
