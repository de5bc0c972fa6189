#include "orbitreach/reach.hpp"

#include "orbitreach/errors.hpp"
#include "orbitreach/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace orbitreach {

std::vector<double> resolve_resolution(std::span<const double> h, std::size_t dim) {
    std::vector<double> out;
    if (h.size() == 1) out.assign(dim, h[0]);
    else if (h.size() == dim) out.assign(h.begin(), h.end());
    else throw DimensionError("grid resolution needs one entry or one per axis");
    for (double v : out)
        if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError("grid resolution must be positive");
    return out;
}

Window Window::centered(const StateSpace& space, std::span<const double> center,
                        std::span<const double> sides) {
    space.check_dim(center);
    if (sides.size() != 1 && sides.size() != space.dim())
        throw DimensionError("window needs one side length or one per axis");
    Window w;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        double s = sides.size() == 1 ? sides[0] : sides[i];
        if (!(s > 0.0)) throw ArgumentError("window side must be positive");
        if (space.is_periodic(i) && s >= *space.period(i)) s = *space.period(i);
        w.lo.push_back(center[i] - 0.5 * s);
        w.hi.push_back(center[i] + 0.5 * s);
    }
    return w;
}

Window Window::centered(const StateSpace& space, std::span<const double> center, double side) {
    double s[1] = {side};
    return centered(space, center, std::span<const double>(s, 1));
}

void Window::validate(const StateSpace& space) const {
    if (lo.size() != space.dim() || hi.size() != space.dim())
        throw DimensionError("window dimension differs from space");
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
            throw ArgumentError("window interval is empty");
    }
}

Window Window::aligned(std::span<const double> center, std::span<const double> h) const {
    if (center.size() != dim() || (h.size() != 1 && h.size() != dim()))
        throw DimensionError("alignment needs a centre and resolution per axis");
    Window w = *this;
    for (std::size_t i = 0; i < dim(); ++i) {
        double hi = h.size() == 1 ? h[0] : h[i];
        double offset = center[i] - lo[i];
        double frac = offset / hi - std::floor(offset / hi);
        double shift = (frac - 0.5) * hi;
        w.lo[i] += shift;
        w.hi[i] += shift;
    }
    return w;
}

ReachGrid::ReachGrid(const StateSpace& space, Window window, std::vector<double> h, double step,
                     Point origin)
    : window_(std::move(window)), h_(std::move(h)), step_(step), origin_(std::move(origin)) {
    window_.validate(space);
    const std::size_t n = space.dim();
    if (h_.size() != n) throw DimensionError("grid resolution dimension differs from space");
    CellKey total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        periods_.push_back(space.period(i));
        double len = window_.hi[i] - window_.lo[i];
        bool full = periods_[i] && len >= *periods_[i] * (1.0 - 1e-12);
        if (full) len = *periods_[i];
        full_circle_.push_back(full);
        auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(len / h_[i] - 1e-9)));
        counts_.push_back(count);
        strides_.push_back(total);
        if (total > std::numeric_limits<CellKey>::max() / count)
            throw ArgumentError("grid has too many cells for 64-bit indexing");
        total *= count;
    }
}

std::optional<std::vector<double>> ReachGrid::local_coords(std::span<const double> p) const {
    std::vector<double> q(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (periods_[i]) {
            q[i] = window_.lo[i] + wrap_coordinate(p[i] - window_.lo[i], *periods_[i]);
            if (!full_circle_[i] && !(q[i] < window_.hi[i])) return std::nullopt;
        } else {
            if (!(p[i] > window_.lo[i] && p[i] < window_.hi[i])) return std::nullopt;
            q[i] = p[i];
        }
    }
    return q;
}

std::optional<ReachGrid::CellKey> ReachGrid::cell_of(std::span<const double> p) const {
    CellKey key = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        double q;
        if (periods_[i]) {
            q = wrap_coordinate(p[i] - window_.lo[i], *periods_[i]);
            if (!full_circle_[i] && !(q < window_.hi[i] - window_.lo[i])) return std::nullopt;
        } else {
            if (!(p[i] > window_.lo[i] && p[i] < window_.hi[i])) return std::nullopt;
            q = p[i] - window_.lo[i];
        }
        auto c = static_cast<std::int64_t>(std::floor(q / h_[i]));
        c = std::clamp<std::int64_t>(c, 0, static_cast<std::int64_t>(counts_[i]) - 1);
        key += static_cast<CellKey>(c) * strides_[i];
    }
    return key;
}

ReachGrid::CellCoords ReachGrid::coords_of(CellKey key) const {
    CellCoords c(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        c[i] = static_cast<std::int64_t>((key / strides_[i]) % counts_[i]);
    }
    return c;
}

ReachGrid::CellKey ReachGrid::key_of(const CellCoords& c) const {
    CellKey key = 0;
    for (std::size_t i = 0; i < dim(); ++i) key += static_cast<CellKey>(c[i]) * strides_[i];
    return key;
}

std::optional<ReachGrid::CellKey> ReachGrid::offset(const CellCoords& c,
                                                    std::span<const std::int64_t> delta) const {
    CellKey key = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        auto n = static_cast<std::int64_t>(counts_[i]);
        std::int64_t v = c[i] + delta[i];
        if (full_circle_[i]) {
            v %= n;
            if (v < 0) v += n;
        } else if (v < 0 || v >= n) {
            return std::nullopt;
        }
        key += static_cast<CellKey>(v) * strides_[i];
    }
    return key;
}

std::int64_t ReachGrid::chebyshev(const CellCoords& a, const CellCoords& b) const {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        std::int64_t di = std::abs(a[i] - b[i]);
        if (full_circle_[i]) di = std::min<std::int64_t>(di, static_cast<std::int64_t>(counts_[i]) - di);
        d = std::max(d, di);
    }
    return d;
}

bool ReachGrid::neighborhood_inside(CellKey key, int r) const {
    auto c = coords_of(key);
    for (std::size_t i = 0; i < dim(); ++i) {
        if (full_circle_[i]) continue;
        if (c[i] - r < 0 || c[i] + r >= static_cast<std::int64_t>(counts_[i])) return false;
    }
    return true;
}

Point ReachGrid::cell_center(CellKey key) const {
    auto c = coords_of(key);
    Point p(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        double a = window_.lo[i] + static_cast<double>(c[i]) * h_[i];
        double b = std::min(a + h_[i], full_circle_[i] ? window_.lo[i] + *periods_[i] : window_.hi[i]);
        p[i] = 0.5 * (a + b);
        if (periods_[i]) p[i] = wrap_coordinate(p[i], *periods_[i]);
    }
    return p;
}

std::vector<ReachGrid::CellKey> ReachGrid::occupied_cells() const {
    std::vector<CellKey> keys;
    keys.reserve(cells_.size());
    for (const auto& [k, c] : cells_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    return keys;
}

PiecewiseControl ReachGrid::witness(CellKey key) const {
    auto it = cells_.find(key);
    if (it == cells_.end()) throw ArgumentError("cell is not occupied");
    PiecewiseControl ctrl;
    std::uint32_t node = it->second.node;
    std::uint32_t steps = it->second.step;
    while (node != 0) {
        const Node& nd = nodes_[node];
        if (steps > 0) {
            Segment s;
            s.duration = static_cast<double>(steps) * step_;
            s.value.assign(values_.begin() + nd.value_offset,
                           values_.begin() + nd.value_offset + control_dim_);
            ctrl.segments.push_back(std::move(s));
        }
        steps = nd.parent_step;
        node = nd.parent;
    }
    std::reverse(ctrl.segments.begin(), ctrl.segments.end());
    return ctrl;
}

const Point& ReachGrid::witness_state(CellKey key) const {
    auto it = cells_.find(key);
    if (it == cells_.end()) throw ArgumentError("cell is not occupied");
    return it->second.state;
}

namespace {

struct FrontierEntry {
    std::uint32_t node;
    std::uint32_t step;
    std::uint32_t segments;
    double elapsed;
    Point state;
};

void draw_control(const ControlSystem& sys, Rng& rng, ControlValue& u) {
    if (!sys.is_affine()) {
        u[0] = static_cast<double>(rng.below(sys.fields().size()));
        return;
    }
    const auto& box = sys.box();
    if (rng.coin()) {
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = rng.coin() ? box.hi[j] : box.lo[j];
    } else {
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = rng.uniform(box.lo[j], box.hi[j]);
    }
}

}  // namespace

ReachGrid reach_grid(const ControlSystem& sys, std::span<const double> x0, const Window& window,
                     const ReachParams& params) {
    if (!(params.step > 0.0)) throw ArgumentError("integration step must be positive");
    if (params.max_segments == 0 && params.budget > 0)
        throw ArgumentError("max_segments must be positive");
    Point start = sys.space().wrap(x0);
    ReachGrid g(sys.space(), window, resolve_resolution(params.h, sys.dim()), params.step, start);
    g.budget_ = params.budget;
    g.seed_ = params.seed;
    g.control_dim_ = sys.control_dim();

    auto key0 = g.cell_of(start);
    if (!key0) throw ArgumentError("reach origin lies outside the window");
    g.nodes_.push_back({0, 0, 0});
    g.cells_.emplace(*key0, ReachGrid::Cell{0, 0, start});

    std::vector<FrontierEntry> frontier;
    frontier.push_back({0, 0, 0, 0.0, start});

    const double seg_cap = params.max_time / static_cast<double>(std::max<std::size_t>(1, params.max_segments));
    Rng rng(params.seed);
    Rk4Stepper stepper(sys);
    ControlValue u(sys.control_dim());
    Point x(sys.dim());

    for (std::size_t b = 0; b < params.budget; ++b) {
        const std::size_t pick = rng.below(frontier.size());
        draw_control(sys, rng, u);
        const double draw = rng.uniform();
        const FrontierEntry from = frontier[pick];
        double room = std::min(seg_cap, params.max_time - from.elapsed);
        auto max_steps = static_cast<std::uint64_t>(std::floor(room / params.step + 1e-9));
        if (max_steps == 0) continue;
        auto nsteps = 1 + static_cast<std::uint64_t>(draw * static_cast<double>(max_steps));
        nsteps = std::min(nsteps, max_steps);

        const auto node = static_cast<std::uint32_t>(g.nodes_.size());
        g.nodes_.push_back({from.node, from.step, static_cast<std::uint32_t>(g.values_.size())});
        g.values_.insert(g.values_.end(), u.begin(), u.end());

        x = from.state;
        const bool expandable = from.segments + 1 < params.max_segments;
        for (std::uint64_t k = 1; k <= nsteps; ++k) {
            if (advance(sys, stepper, x.data(), u.data(), params.step) == StepOutcome::LeftDomain)
                break;
            auto key = g.cell_of(x);
            if (!key) break;
            if (g.cells_.contains(*key)) continue;
            g.cells_.emplace(*key, ReachGrid::Cell{node, static_cast<std::uint32_t>(k), x});
            double elapsed = from.elapsed + static_cast<double>(k) * params.step;
            if (expandable && elapsed < params.max_time)
                frontier.push_back({node, static_cast<std::uint32_t>(k), from.segments + 1, elapsed, x});
        }
    }
    return g;
}

ReachGrid backward_grid(const ControlSystem& sys, std::span<const double> x0,
                        const Window& window, const ReachParams& params) {
    return reach_grid(reverse_system(sys), x0, window, params);
}

bool interior_cell(const ReachGrid& grid, ReachGrid::CellKey key, int radius_cells) {
    if (radius_cells < 0) throw ArgumentError("interior radius must be nonnegative");
    const std::size_t n = grid.dim();
    auto c = grid.coords_of(key);
    std::vector<std::int64_t> delta(n, -radius_cells);
    while (true) {
        auto k = grid.offset(c, delta);
        if (!k || !grid.occupied(*k)) return false;
        std::size_t i = 0;
        while (i < n && delta[i] == radius_cells) delta[i++] = -radius_cells;
        if (i == n) break;
        ++delta[i];
    }
    return true;
}

bool interior_test(const ReachGrid& grid, std::span<const double> p, int radius_cells) {
    auto key = grid.cell_of(p);
    if (!key) return false;
    return interior_cell(grid, *key, radius_cells);
}

bool krener_check(const ReachGrid& grid, std::span<const double> x0, int radius_cells) {
    auto key = grid.cell_of(x0);
    if (!key) return false;
    const std::size_t n = grid.dim();
    auto c = grid.coords_of(*key);
    std::vector<std::int64_t> delta(n, -radius_cells);
    while (true) {
        auto k = grid.offset(c, delta);
        if (k && grid.occupied(*k) && interior_cell(grid, *k, radius_cells)) return true;
        std::size_t i = 0;
        while (i < n && delta[i] == radius_cells) delta[i++] = -radius_cells;
        if (i == n) break;
        ++delta[i];
    }
    return false;
}

const char* to_string(DualityVerdict v) {
    switch (v) {
        case DualityVerdict::AgreeYes: return "agree_yes";
        case DualityVerdict::AgreeNo: return "agree_no";
        case DualityVerdict::Disagree: return "disagree";
    }
    return "disagree";
}

DualityResult duality_check(const ControlSystem& sys, std::span<const double> x,
                            std::span<const double> y, const Window& window,
                            const ReachParams& params, int radius_cells) {
    ReachGrid fwd = reach_grid(sys, x, window, params);
    ReachGrid bwd = backward_grid(sys, y, window, params);
    DualityResult r{};
    r.forward_interior = interior_test(fwd, y, radius_cells);
    r.backward_interior = interior_test(bwd, x, radius_cells);
    if (r.forward_interior && r.backward_interior) r.verdict = DualityVerdict::AgreeYes;
    else if (!r.forward_interior && !r.backward_interior) r.verdict = DualityVerdict::AgreeNo;
    else r.verdict = DualityVerdict::Disagree;
    return r;
}

void write_cells_csv(std::ostream& os, const ReachGrid& grid) {
    for (std::size_t i = 0; i < grid.dim(); ++i) os << (i ? "," : "") << "x" << (i + 1);
    os << "\n";
    auto old = os.precision(17);
    for (auto key : grid.occupied_cells()) {
        auto c = grid.cell_center(key);
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        os << "\n";
    }
    os.precision(old);
}

}  // namespace orbitreach
