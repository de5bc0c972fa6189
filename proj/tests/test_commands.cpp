#include "doctest.h"
#include "support.hpp"

#include "../src/commands.hpp"
#include "orbitreach/errors.hpp"

#include <filesystem>
#include <fstream>

using namespace test;
using nlohmann::json;

namespace {

json opts(std::initializer_list<std::pair<const std::string, json>> kv) { return json(std::map<std::string, json>(kv)); }

std::string sys(const char* name) { return data_path(std::string("systems/") + name); }

}  // namespace

TEST_SUITE("commands") {
    TEST_CASE("command table") {
        const auto& names = command_names();
        CHECK(names.size() == 11);
        CHECK(std::is_sorted(names.begin(), names.end()));
        CHECK_THROWS_AS(run_command("frobnicate", json::object()), ArgumentError);
        CHECK_THROWS_AS(run_command("larc", json::array()), ArgumentError);
        CHECK_THROWS_AS(run_command("larc", json::object()), ArgumentError);
    }

    TEST_CASE("rank reports") {
        json r4 = run_command("larc", opts({{"spec", sys("martinet.sys")}, {"depth", 4}}));
        CHECK(r4["schema"] == 1);
        CHECK(r4["passed"] == true);
        for (const auto& p : r4["points"]) CHECK(p["rank"] == 3);
        json r2 = run_command("larc", opts({{"spec", sys("martinet.sys")}, {"depth", 2}}));
        CHECK(r2["passed"] == false);
        for (const auto& p : r2["points"]) CHECK(p["rank"] == 2);

        json arwar = run_command("arwar", opts({{"spec", sys("martinet.sys")}, {"point", {1.0, 0.0, 0.0}}}));
        CHECK(arwar["points"][0]["rank"] == 2);
        CHECK(arwar["passed"] == false);
        json heis = run_command("consing", opts({{"spec", sys("heisenberg.sys")}}));
        CHECK(heis["points"][0]["rank"] == 2);
        json deg = run_command("larc", opts({{"spec", sys("degenerate.sys")}}));
        CHECK(deg["passed"] == false);
    }

    TEST_CASE("spec text and flag precedence") {
        std::ifstream in(sys("torus.sys"));
        std::string text((std::istreambuf_iterator<char>(in)), {});
        json a = run_command("brackets", opts({{"spec_text", text}, {"depth", 3}}));
        CHECK(a["depth"] == 3);
        CHECK(a["elements"].size() == 2);
        json b = run_command("brackets", opts({{"spec", sys("martinet.sys")}}));
        CHECK(b["depth"] == 4);
        CHECK_THROWS_AS(run_command("larc", opts({{"spec", sys("martinet.sys")}, {"depth", "four"}})), ArgumentError);
        CHECK_THROWS_AS(run_command("reach", opts({{"spec", sys("martinet.sys")}, {"point", {1.0, 2.0}}})), DimensionError);
    }

    TEST_CASE("reports are reproducible and side files are written") {
        auto dir = std::filesystem::temp_directory_path() / "orbitreach_commands_test";
        std::filesystem::remove_all(dir);
        json o = opts({{"spec", sys("torus.sys")}, {"budget", 3000}, {"seed", 7}, {"out", dir.string()}});
        json a = run_command("reach", o);
        json b = run_command("reach", o);
        CHECK(a.dump() == b.dump());
        CHECK(std::filesystem::exists(dir / "cells.csv"));
        o["seed"] = 8;
        CHECK(run_command("reach", o).dump() != a.dump());
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("orbit commands on the torus") {
        json reg = run_command("check-regular", opts({{"spec", sys("torus.sys")}}));
        CHECK(reg["passed"] == true);
        CHECK(reg["forward"]["verdict"] == "regular");
        json deg = run_command("check-regular", opts({{"spec", sys("degenerate.sys")}}));
        CHECK(deg["passed"] == false);
        CHECK(deg["agree"] == true);
        json ext = run_command("extremal", opts({{"spec", sys("martinet.sys")}}));
        CHECK(ext["passed"] == true);
        CHECK(ext["verdicts"]["singular"] == true);
        json text = run_command("extremal", opts({{"spec", sys("torus.sys")}}));
        CHECK(text["cond_iv"].get<double>() == doctest::Approx(1.0));
        CHECK(text["passed"] == false);
        json dual = run_command("duality", opts({{"spec", sys("torus.sys")}, {"target", {0.3, 0.1}}}));
        CHECK(dual["verdict"] == "agree_yes");
    }
}
