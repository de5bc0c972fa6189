#include "commands.hpp"

#include "orbitreach/errors.hpp"
#include "orbitreach/extremals.hpp"
#include "orbitreach/martinet.hpp"
#include "orbitreach/orbits.hpp"
#include "orbitreach/random.hpp"
#include "orbitreach/specfile.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

namespace orbitreach {

using nlohmann::json;

namespace {

constexpr int kSchema = 1;

/// Flag values take precedence over [params] of the system file, which take
/// precedence over command defaults.
class Settings {
public:
    Settings(const json& options, const SpecParams* spec) : opt_(options), spec_(spec) {}

    const json& options() const { return opt_; }

    bool has(const char* key) const { return opt_.contains(key) && !opt_[key].is_null(); }

    template <class T>
    T get(const char* key, T fallback) const {
        if (!has(key)) return fallback;
        try {
            return opt_[key].get<T>();
        } catch (const json::exception&) {
            throw ArgumentError(std::string("option '") + key + "' has the wrong type");
        }
    }

    std::uint64_t seed() const { return get<std::uint64_t>("seed", spec_ && spec_->seed ? *spec_->seed : 0); }
    double step(double fallback = kDefaultStep) const {
        double s = get<double>("step", spec_ && spec_->step ? *spec_->step : fallback);
        if (!(s > 0.0)) throw ArgumentError("step must be positive");
        return s;
    }
    unsigned depth(unsigned fallback) const {
        return get<unsigned>("depth", spec_ && spec_->depth ? *spec_->depth : fallback);
    }
    int radius() const {
        int r = get<int>("radius", spec_ && spec_->radius ? *spec_->radius : kDefaultRadiusCells);
        if (r < 0) throw ArgumentError("radius must be nonnegative");
        return r;
    }
    double glue_tolerance() const {
        return get<double>("glue_tolerance",
                           spec_ && spec_->glue_tolerance ? *spec_->glue_tolerance : kDefaultGlueTolerance);
    }

    ReachParams reach(std::size_t budget, double max_time, std::size_t max_segments, double step) const {
        ReachParams p;
        p.budget = get<std::size_t>("budget", spec_ && spec_->budget ? *spec_->budget : budget);
        p.max_time = get<double>("max_time", spec_ && spec_->max_time ? *spec_->max_time : max_time);
        p.max_segments = get<std::size_t>("max_segments",
                                          spec_ && spec_->max_segments ? *spec_->max_segments : max_segments);
        p.h = get<std::vector<double>>("grid_h", spec_ && spec_->grid_h ? *spec_->grid_h
                                                                        : std::vector<double>{kDefaultGridH});
        p.seed = seed();
        p.step = this->step(step);
        return p;
    }

    Point point(const char* key, const StateSpace& space, const std::optional<Point>& spec_value) const {
        Point p;
        if (has(key)) p = get<std::vector<double>>(key, {});
        else if (spec_value) p = *spec_value;
        else p.assign(space.dim(), 0.0);
        space.check_dim(p);
        return p;
    }

    std::vector<double> window_sides(std::vector<double> fallback) const {
        return get<std::vector<double>>("window", spec_ && spec_->window ? *spec_->window : fallback);
    }

private:
    const json& opt_;
    const SpecParams* spec_;
};

SystemSpec require_spec(const json& options) {
    if (options.contains("spec_text")) return parse_spec(options["spec_text"].get<std::string>());
    if (!options.contains("spec") || !options["spec"].is_string())
        throw ArgumentError("a system spec file is required");
    return load_spec(options["spec"].get<std::string>());
}

std::optional<std::filesystem::path> out_dir(const json& options) {
    if (!options.contains("out") || options["out"].is_null()) return std::nullopt;
    std::filesystem::path dir = options["out"].get<std::string>();
    std::filesystem::create_directories(dir);
    return dir;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ArgumentError("cannot write '" + path.string() + "'");
    body(os);
}

json window_json(const Window& w) { return json{{"lo", w.lo}, {"hi", w.hi}}; }

json orbit_json(const ClosedOrbit& o, const Window* w) {
    json j;
    j["period"] = o.period;
    j["gap"] = o.gap;
    j["closed"] = o.closed;
    j["regular"] = o.regular ? json(*o.regular) : json(nullptr);
    j["base_point"] = o.trajectory.start();
    j["window"] = w ? window_json(*w) : json(nullptr);
    return j;
}

json check_list(const CheckReport& r) {
    json arr = json::array();
    for (const auto& c : r.checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return arr;
}

std::vector<Point> sample_points(const Settings& s, const SystemSpec& spec) {
    if (s.has("point")) return {s.point("point", spec.system.space(), std::nullopt)};
    if (spec.params.samples) return *spec.params.samples;
    return {Point(spec.system.dim(), 0.0)};
}

json rank_command(const json& options, const char* name,
                  const std::function<std::size_t(const ControlSystem&, const Point&, unsigned)>& rank,
                  unsigned default_depth_extra) {
    SystemSpec spec = require_spec(options);
    Settings s(options, &spec.params);
    const auto& sys = spec.system;
    unsigned depth = s.depth(static_cast<unsigned>(sys.dim()) + default_depth_extra);
    json pts = json::array();
    bool ok = true;
    for (const auto& p : sample_points(s, spec)) {
        std::size_t r = rank(sys, p, depth);
        ok = ok && r == sys.dim();
        pts.push_back({{"point", p}, {"rank", r}});
    }
    return json{{"command", name}, {"depth", depth}, {"dim", sys.dim()}, {"points", pts}, {"passed", ok}};
}

json cmd_larc(const json& options) {
    SystemSpec spec = require_spec(options);
    Settings s(options, &spec.params);
    const auto& sys = spec.system;
    unsigned depth = s.depth(default_depth(sys.dim()));
    auto r = larc_check(sys.generating_fields(), sample_points(s, spec), depth);
    json pts = json::array();
    for (std::size_t i = 0; i < r.points.size(); ++i) pts.push_back({{"point", r.points[i]}, {"rank", r.ranks[i]}});
    return json{{"command", "larc"}, {"depth", depth}, {"dim", r.dim}, {"points", pts}, {"passed", r.passed}};
}

json cmd_brackets(const json& options) {
    SystemSpec spec = require_spec(options);
    Settings s(options, &spec.params);
    const auto& sys = spec.system;
    unsigned depth = s.depth(default_depth(sys.dim()));
    LieHull hull = generate_hull(sys.generating_fields(), depth);
    json elems = json::array();
    for (const auto& e : hull.elements)
        elems.push_back({{"word", word_to_string(e.word, sys.names())}, {"field", e.field.to_string()}});
    json rep{{"command", "brackets"}, {"depth", depth}, {"elements", elems}, {"passed", true}};
    if (sys.is_affine()) {
        json ad = json::array();
        for (std::size_t j = 0; j < sys.inputs().size(); ++j) {
            json row = json::array();
            for (unsigned l = 0; l <= depth; ++l) row.push_back(ad_power(sys.drift(), sys.inputs()[j], l).to_string());
            ad.push_back({{"input", sys.names()[j + 1]}, {"ad_powers", row}});
        }
        rep["ad_powers"] = ad;
    }
    return rep;
}

json cmd_reach(const json& options) {
    SystemSpec spec = require_spec(options);
    Settings s(options, &spec.params);
    const auto& sys = spec.system;
    Point x0 = s.point("point", sys.space(), spec.params.base_point);
    Window w = Window::centered(sys.space(), x0, s.window_sides({0.5}));
    ReachParams rp = s.reach(10000, 2.0, 20, kDefaultStep);
    ReachGrid grid = s.get<bool>("backward", false) ? backward_grid(sys, x0, w, rp) : reach_grid(sys, x0, w, rp);
    int radius = s.radius();
    bool krener = krener_check(grid, x0, radius);
    json rep{{"command", "reach"},
             {"budget", grid.budget()},
             {"h", grid.resolution()},
             {"occupied_count", grid.occupied_count()},
             {"window", window_json(w)},
             {"base_point", grid.origin()},
             {"seed", grid.seed()},
             {"krener", krener},
             {"passed", krener}};
    if (s.has("target")) {
        Point q = s.point("target", sys.space(), std::nullopt);
        rep["query"] = {{"point", q}, {"interior", interior_test(grid, q, radius)}};
    }
    if (auto dir = out_dir(options))
        write_file(*dir / "cells.csv", [&](std::ostream& os) { write_cells_csv(os, grid); });
    return rep;
}

json cmd_duality(const json& options) {
    SystemSpec spec = require_spec(options);
    Settings s(options, &spec.params);
    const auto& sys = spec.system;
    Point x = s.point("point", sys.space(), spec.params.base_point);
    if (!s.has("target")) throw ArgumentError("duality needs a target point");
    Point y = s.point("target", sys.space(), std::nullopt);
    // Centred between the two points so that both lie inside.
    Point mid = x;
    auto d = sys.space().displacement(x, y);
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] += 0.5 * d[i];
    Window w = Window::centered(sys.space(), mid, s.window_sides({0.8}));
    ReachParams rp = s.reach(10000, 2.0, 20, kDefaultStep);
    auto r = duality_check(sys, x, y, w, rp, s.radius());
    return json{{"command", "duality"},
                {"x", x},
                {"y", y},
                {"window", window_json(w)},
                {"verdict", to_string(r.verdict)},
                {"forward_interior", r.forward_interior},
                {"backward_interior", r.backward_interior},
                {"passed", r.verdict != DualityVerdict::Disagree}};
}

json cmd_find_orbit(const json& options) {
    SystemSpec spec = require_spec(options);
    Settings s(options, &spec.params);
    const auto& sys = spec.system;
    if (!sys.space().fully_periodic()) throw ArgumentError("find-orbit needs a fully periodic space");
    auto per_axis = s.get<std::size_t>("lattice", 8);
    double jitter = s.get<double>("jitter", 0.1);
    GraphParams gp;
    gp.reach = s.reach(10000, 2.0, 4, 0.01);
    gp.window_sides = s.window_sides({2.0});
    gp.radius_cells = s.radius();
    gp.glue_tolerance = s.glue_tolerance();
    gp.shooting.step = gp.reach.step;
    auto nodes = lattice_nodes(sys.space(), per_axis, jitter, derive_seed(s.seed(), 1000));
    auto graph = build_graph(sys, nodes, gp);
    json rep{{"command", "find-orbit"},
             {"nodes", graph.nodes.size()},
             {"edges", graph.edges.size()},
             {"dropped_edges", graph.dropped}};
    auto cycle = find_cycle(graph);
    auto dir = out_dir(options);
    if (dir) write_file(*dir / "graph.dot", [&](std::ostream& os) { write_graph_dot(os, graph); });
    if (!cycle) {
        rep["cycle"] = nullptr;
        rep["orbit"] = nullptr;
        rep["passed"] = false;
        return rep;
    }
    rep["cycle"] = *cycle;
    CloseOptions co;
    co.tolerance = s.glue_tolerance();
    co.shooting.step = gp.reach.step;
    ClosedOrbit orbit = close_orbit(sys, *cycle, graph, co);
    rep["orbit"] = orbit_json(orbit, nullptr);
    rep["orbit"]["initial_gap"] = orbit.initial_gap;
    rep["passed"] = orbit.closed;
    if (dir) write_file(*dir / "orbit.csv", [&](std::ostream& os) { write_orbit_csv(os, orbit); });
    return rep;
}

ClosedOrbit spec_orbit(const Settings& s, const SystemSpec& spec, double step) {
    const auto& sys = spec.system;
    Point base = s.point("point", sys.space(), spec.params.base_point);
    double period = s.get<double>("period", spec.params.orbit_period.value_or(0.0));
    if (!(period > 0.0)) throw ArgumentError("an orbit period is required");
    std::vector<double> u = s.get<std::vector<double>>(
        "control", spec.params.orbit_control.value_or(std::vector<double>(sys.control_dim(), 0.0)));
    CloseOptions co;
    co.tolerance = s.glue_tolerance();
    co.shooting.step = step;
    return close_control(sys, base, PiecewiseControl{{Segment{period, u}}}, co);
}

json regularity_json(const RegularityReport& r) {
    return json{{"verdict", to_string(r.verdict)},
                {"occupied_cells", r.occupied_cells},
                {"samples_in_window", r.samples_in_window},
                {"excluded", r.excluded},
                {"near_edge", r.near_edge},
                {"unoccupied", r.unoccupied},
                {"interior", r.interior},
                {"not_interior", r.not_interior}};
}

json cmd_check_regular(const json& options) {
    SystemSpec spec = require_spec(options);
    Settings s(options, &spec.params);
    const auto& sys = spec.system;
    ReachParams rp = s.reach(50000, 1.0, 10, kDefaultStep);
    ClosedOrbit orbit = spec_orbit(s, spec, rp.step);
    if (!orbit.closed) throw ArgumentError("the orbit does not close");
    const Point& base = orbit.trajectory.start();
    Window w = Window::centered(sys.space(), base, s.window_sides({0.6})).aligned(base, rp.h);
    RegularityOptions ro;
    ro.radius_cells = s.radius();
    ro.exclusion_cells = s.get<int>("exclusion", -1);
    auto fwd = regularity_test(sys, orbit, 0, w, rp, ro);
    auto bwd = reverse_regularity_test(sys, orbit, 0, w, rp, ro);
    orbit.regular = fwd.verdict == RegularityVerdict::Regular;
    json rep{{"command", "check-regular"},
             {"orbit", orbit_json(orbit, &w)},
             {"forward", regularity_json(fwd)},
             {"reverse", regularity_json(bwd)},
             {"agree", fwd.verdict == bwd.verdict},
             {"passed", fwd.verdict == RegularityVerdict::Regular && bwd.verdict == RegularityVerdict::Regular}};
    if (auto dir = out_dir(options))
        write_file(*dir / "orbit.csv", [&](std::ostream& os) { write_orbit_csv(os, orbit); });
    return rep;
}

json cmd_neighborhood(const json& options) {
    SystemSpec spec = require_spec(options);
    Settings s(options, &spec.params);
    const auto& sys = spec.system;
    ReachParams rp = s.reach(50000, 30.0, 15, 0.01);
    ClosedOrbit orbit = spec_orbit(s, spec, rp.step);
    if (!orbit.closed) throw ArgumentError("the orbit does not close");
    // The window must hold the whole orbit: periodic axes default to the full circle.
    std::vector<double> fallback(sys.dim(), 0.6);
    for (std::size_t i = 0; i < sys.dim(); ++i)
        if (sys.space().period(i)) fallback[i] = *sys.space().period(i);
    Window w = Window::centered(sys.space(), orbit.trajectory.start(), s.window_sides(fallback));
    NeighborhoodOptions no;
    no.pairs = s.get<std::size_t>("pairs", 25);
    no.seed = s.seed();
    no.glue_tolerance = s.glue_tolerance();
    auto r = controllable_neighborhood_check(sys, orbit, w, rp, no);
    return json{{"command", "neighborhood"},
                {"orbit", orbit_json(orbit, &w)},
                {"common_cells", r.common_cells},
                {"pairs", r.pairs},
                {"connected", r.connected},
                {"skipped", r.skipped},
                {"fraction", r.fraction()},
                {"max_glue", r.max_glue},
                {"max_center_offset", r.max_center_offset},
                {"passed", r.fraction() >= 0.9}};
}

json cmd_extremal(const json& options) {
    SystemSpec spec = require_spec(options);
    Settings s(options, &spec.params);
    const auto& sys = spec.system;
    double step = s.step();
    Point x0 = s.point("point", sys.space(), spec.params.base_point);
    double period = s.get<double>("period", spec.params.orbit_period.value_or(0.0));
    if (!(period > 0.0)) throw ArgumentError("a duration is required");
    std::vector<double> u = s.get<std::vector<double>>(
        "control", spec.params.orbit_control.value_or(std::vector<double>(sys.control_dim(), 0.0)));
    std::vector<double> p0 = s.has("covector") ? s.get<std::vector<double>>("covector", {})
                                               : spec.params.covector.value_or(std::vector<double>{});
    sys.space().check_dim(p0);
    PiecewiseControl ctrl{{Segment{period, u}}};
    ExtremalLift lift = integrate_lift(sys, ctrl, x0, p0, step);
    auto r = check_extremal_conditions(sys, lift, ctrl, step);
    double tol = s.get<double>("tolerance", 1e-9);
    bool extremal = r.cond_i < tol && r.cond_ii < tol && r.cond_iii < tol;
    json iv = r.cond_iv ? json(*r.cond_iv) : json(nullptr);
    json singular = r.cond_iv ? json(extremal && *r.cond_iv < tol) : json("not_applicable");
    if (auto dir = out_dir(options))
        write_file(*dir / "trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, lift.base); });
    return json{{"command", "extremal"},
                {"cond_i", r.cond_i},
                {"cond_ii", r.cond_ii},
                {"cond_iii", r.cond_iii},
                {"cond_iv", iv},
                {"min_covector_norm", r.min_covector_norm},
                {"tolerance", tol},
                {"verdicts", {{"extremal", extremal}, {"singular", singular}}},
                {"passed", extremal && r.cond_iv && *r.cond_iv < tol}};
}

json cmd_verify_martinet(const json& options) {
    Settings s(options, nullptr);
    MartinetConfig cfg;
    cfg.k = s.get<unsigned>("k", 3);
    cfg.seed = s.seed();
    cfg.step = s.step();
    if (s.has("budget")) cfg.regularity_budget = s.get<std::size_t>("budget", cfg.regularity_budget);
    cfg.validate();
    auto br = verify_bracket_claims(cfg);
    auto sg = verify_singular_orbit(cfg);
    auto rg = verify_regularity(cfg);
    json rep{{"command", "verify-martinet"},
             {"k", cfg.k},
             {"seed", cfg.seed},
             {"sections",
              {{"brackets", check_list(br)}, {"singular_orbit", check_list(sg)}, {"regularity", check_list(rg)}}},
             {"passed", br.passed() && sg.passed() && rg.passed()}};
    if (auto dir = out_dir(options)) {
        ControlSystem sys = build_martinet(cfg);
        ClosedOrbit orbit = martinet_orbit(sys, cfg.step);
        write_file(*dir / "orbit.csv", [&](std::ostream& os) { write_orbit_csv(os, orbit); });
    }
    return rep;
}

using Handler = json (*)(const json&);

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table{
        {"brackets", cmd_brackets},
        {"larc", cmd_larc},
        {"arwar",
         [](const json& o) {
             return rank_command(o, "arwar",
                                 [](const ControlSystem& sys, const Point& p, unsigned d) {
                                     return arwar_rank(sys, p, d);
                                 },
                                 2);
         }},
        {"consing",
         [](const json& o) {
             return rank_command(o, "consing",
                                 [](const ControlSystem& sys, const Point& p, unsigned d) {
                                     return endpoint_image_rank(sys, p, d);
                                 },
                                 2);
         }},
        {"reach", cmd_reach},
        {"duality", cmd_duality},
        {"find-orbit", cmd_find_orbit},
        {"check-regular", cmd_check_regular},
        {"neighborhood", cmd_neighborhood},
        {"extremal", cmd_extremal},
        {"verify-martinet", cmd_verify_martinet},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, h] : handlers()) v.push_back(k);
        return v;
    }();
    return names;
}

json run_command(const std::string& name, const json& options) {
    auto it = handlers().find(name);
    if (it == handlers().end()) throw ArgumentError("unknown command '" + name + "'");
    if (!options.is_object()) throw ArgumentError("options must be a JSON object");
    json rep = it->second(options);
    json out{{"schema", kSchema}};
    out.update(rep);
    return out;
}

}  // namespace orbitreach
