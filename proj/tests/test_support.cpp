#include "doctest.h"
#include "support.hpp"

#include "orbitreach/orbits.hpp"
#include "orbitreach/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <set>
#include <stdexcept>

using namespace test;

namespace {

struct ThreadsEnv {
    explicit ThreadsEnv(const char* v) { setenv("ORBITREACH_THREADS", v, 1); }
    ~ThreadsEnv() { unsetenv("ORBITREACH_THREADS"); }
};

}  // namespace

TEST_SUITE("support") {
    TEST_CASE("seed derivation separates streams") {
        std::set<std::uint64_t> seen;
        for (std::uint64_t root : {0ull, 1ull, 42ull})
            for (std::uint64_t s = 0; s < 100; ++s) seen.insert(derive_seed(root, s));
        CHECK(seen.size() == 300);
        static_assert(derive_seed(1, 2) == derive_seed(1, 2));
    }

    TEST_CASE("generator is reproducible and in range") {
        Rng a(5), b(5);
        for (int i = 0; i < 1000; ++i) {
            CHECK(a.next() == b.next());
            double u = a.uniform();
            b.uniform();
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
            CHECK(a.below(7) < 7);
            b.below(7);
        }
        Rng c(1);
        double mean = 0;
        for (int i = 0; i < 100000; ++i) mean += c.uniform(-1, 1);
        CHECK(std::abs(mean / 100000) < 0.01);
    }

    TEST_CASE("parallel_for visits every index once and rethrows") {
        ThreadsEnv env("4");
        CHECK(worker_count() == 4);
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) CHECK(h.load() == 1);
        CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) { if (i == 37) throw std::runtime_error("x"); }),
                        std::runtime_error);
        parallel_for(0, [](std::size_t) { FAIL("called"); });
    }

    TEST_CASE("graph does not depend on the worker count") {
        ControlSystem sys = torus_system();
        auto nodes = lattice_nodes(sys.space(), 4, 0.1, 2);
        GraphParams gp;
        gp.reach.budget = 2000;
        gp.reach.max_time = 2.0;
        gp.reach.max_segments = 4;
        gp.reach.step = 0.01;
        gp.window_sides = {2.0};
        gp.shooting.step = 0.01;
        ReachabilityGraph one, many;
        {
            ThreadsEnv env("1");
            one = build_graph(sys, nodes, gp);
        }
        {
            ThreadsEnv env("8");
            many = build_graph(sys, nodes, gp);
        }
        REQUIRE(one.edges.size() == many.edges.size());
        CHECK(one.dropped == many.dropped);
        for (std::size_t i = 0; i < one.edges.size(); ++i) {
            CHECK(one.edges[i].head == many.edges[i].head);
            CHECK(one.edges[i].tail == many.edges[i].tail);
            CHECK(one.edges[i].witness == many.edges[i].witness);
            CHECK(one.edges[i].gap == many.edges[i].gap);
        }
    }
}
