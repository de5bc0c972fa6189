// Command-line front end over the C interface.

#include "orbitreach/orbitreach.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

enum ExitCode { kPassed = 0, kFailed = 1, kUsage = 2 };

struct Flags {
    std::optional<std::uint64_t> seed, budget, max_segments, pairs, lattice;
    std::optional<double> step, max_time, jitter, period, tolerance, glue_tolerance;
    std::optional<unsigned> depth, k;
    std::optional<int> radius, exclusion;
    std::vector<double> grid_h, point, target, window, control, covector;
    std::string spec, out, format = "json";
    bool backward = false;
};

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

void put(json& j, const char* key, const std::vector<double>& v) {
    if (!v.empty()) j[key] = v;
}

json to_options(const Flags& f) {
    json j = json::object();
    if (!f.spec.empty()) j["spec"] = f.spec;
    if (!f.out.empty()) j["out"] = f.out;
    put(j, "seed", f.seed);
    put(j, "budget", f.budget);
    put(j, "max_segments", f.max_segments);
    put(j, "pairs", f.pairs);
    put(j, "lattice", f.lattice);
    put(j, "step", f.step);
    put(j, "max_time", f.max_time);
    put(j, "jitter", f.jitter);
    put(j, "period", f.period);
    put(j, "tolerance", f.tolerance);
    put(j, "glue_tolerance", f.glue_tolerance);
    put(j, "depth", f.depth);
    put(j, "k", f.k);
    put(j, "radius", f.radius);
    put(j, "exclusion", f.exclusion);
    put(j, "grid_h", f.grid_h);
    put(j, "point", f.point);
    put(j, "target", f.target);
    put(j, "window", f.window);
    put(j, "control", f.control);
    put(j, "covector", f.covector);
    if (f.backward) j["backward"] = true;
    return j;
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void print_text(const json& rep, std::ostream& os) {
    os << rep.value("command", "") << ": " << (rep.value("passed", false) ? "PASS" : "FAIL") << "\n";
    for (const auto& [key, v] : rep.items()) {
        if (key == "command" || key == "passed" || key == "schema") continue;
        if (key == "sections") {
            for (const auto& [name, checks] : v.items()) {
                os << "\n[" << name << "]\n";
                for (const auto& c : checks)
                    os << (c["passed"].get<bool>() ? "  PASS  " : "  FAIL  ") << c["name"].get<std::string>()
                       << "  " << c["detail"].get<std::string>() << "\n";
            }
            continue;
        }
        if (key == "elements" || key == "points") {
            os << key << ":\n";
            for (const auto& e : v) {
                if (e.contains("word")) os << "  " << e["word"].get<std::string>() << " = " << e["field"].get<std::string>() << "\n";
                else os << "  " << e["point"].dump() << "  rank " << e["rank"].dump() << "\n";
            }
            continue;
        }
        os << key << ": " << scalar_text(v) << "\n";
    }
}

void add_reach_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--point", f.point, "Base point, comma separated")->delimiter(',');
    cmd->add_option("--window", f.window, "Window side lengths")->delimiter(',');
    cmd->add_option("--radius", f.radius, "Interior test radius in cells");
    cmd->add_option("--max-time", f.max_time, "Longest rollout duration");
    cmd->add_option("--max-segments", f.max_segments, "Segments per rollout");
}

void add_orbit_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--period", f.period, "Orbit duration");
    cmd->add_option("--control", f.control, "Constant control along the orbit")->delimiter(',');
    cmd->add_option("--glue-tolerance", f.glue_tolerance, "Largest accepted endpoint gap");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reachability, closed orbits and extremals of polynomial control systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(orx_version()));

    Flags f;
    app.add_option("--seed", f.seed, "Root seed")->capture_default_str();
    app.add_option("--budget", f.budget, "Rollout budget per grid");
    app.add_option("--step", f.step, "RK4 step");
    app.add_option("--grid-h", f.grid_h, "Cell side, one value or one per axis")->delimiter(',');
    app.add_option("--depth", f.depth, "Bracket depth");
    app.add_option("--out", f.out, "Directory for CSV and DOT files");
    app.add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    for (auto* opt : app.get_options()) opt->configurable(false);
    app.fallthrough();

    auto spec_cmd = [&](const char* name, const char* help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("spec", f.spec, "System file")->required()->check(CLI::ExistingFile);
        return cmd;
    };

    auto* larc = spec_cmd("larc", "Lie algebra rank at sample points");
    larc->add_option("--point", f.point, "Evaluate at this point only")->delimiter(',');
    auto* arwar = spec_cmd("arwar", "Rank including drift brackets of the inputs");
    arwar->add_option("--point", f.point, "Evaluate at this point only")->delimiter(',');
    auto* consing = spec_cmd("consing", "Rank of the endpoint-map image directions");
    consing->add_option("--point", f.point, "Evaluate at this point only")->delimiter(',');
    spec_cmd("brackets", "Bracket hull of the generating fields");

    auto* reach = spec_cmd("reach", "Sampled reachable set on a window");
    add_reach_flags(reach, f);
    reach->add_option("--target", f.target, "Point to test for interiority")->delimiter(',');
    reach->add_flag("--backward", f.backward, "Sample the backward reachable set");

    auto* duality = spec_cmd("duality", "Forward and backward interior tests for a pair");
    add_reach_flags(duality, f);
    duality->add_option("--target", f.target, "Second point")->delimiter(',')->required();

    auto* find_orbit = spec_cmd("find-orbit", "Closed orbit from a lattice reachability graph");
    find_orbit->add_option("--lattice", f.lattice, "Nodes per axis");
    find_orbit->add_option("--jitter", f.jitter, "Node jitter as a fraction of the spacing");
    find_orbit->add_option("--window", f.window, "Window side lengths")->delimiter(',');
    find_orbit->add_option("--radius", f.radius, "Interior test radius in cells");
    find_orbit->add_option("--max-time", f.max_time, "Longest rollout duration");
    find_orbit->add_option("--max-segments", f.max_segments, "Segments per rollout");
    find_orbit->add_option("--glue-tolerance", f.glue_tolerance, "Largest accepted gap");

    auto* regular = spec_cmd("check-regular", "Regularity of a closed orbit in both directions");
    add_reach_flags(regular, f);
    add_orbit_flags(regular, f);
    regular->add_option("--exclusion", f.exclusion, "Cells around the base point left out");

    auto* neighborhood = spec_cmd("neighborhood", "Connect random pairs through the orbit");
    add_reach_flags(neighborhood, f);
    add_orbit_flags(neighborhood, f);
    neighborhood->add_option("--pairs", f.pairs, "Number of pairs");

    auto* extremal = spec_cmd("extremal", "Extremal and singular conditions along a lift");
    extremal->add_option("--point", f.point, "Initial state")->delimiter(',');
    extremal->add_option("--period", f.period, "Duration");
    extremal->add_option("--control", f.control, "Constant control")->delimiter(',');
    extremal->add_option("--covector", f.covector, "Initial covector")->delimiter(',');
    extremal->add_option("--tolerance", f.tolerance, "Residual tolerance");

    auto* martinet = app.add_subcommand("verify-martinet", "Check table for the Martinet example");
    martinet->add_option("--k", f.k, "Odd exponent, at least 3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPassed : kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    json options = to_options(f);

    char* report = nullptr;
    int passed = 0;
    orx_status st = orx_run(command.c_str(), options.dump().c_str(), &report, &passed);
    if (st != ORX_OK) {
        std::cerr << "orbitreach: " << orx_status_name(st) << " error: " << orx_last_error() << "\n";
        return kUsage;
    }
    std::string text(report);
    orx_free_string(report);

    if (f.format == "text") print_text(json::parse(text), std::cout);
    else std::cout << text << "\n";
    if (!f.out.empty()) {
        std::ofstream os(f.out + "/report.json", std::ios::binary);
        os << text << "\n";
    }
    return passed ? kPassed : kFailed;
}
