#include "navgraph/verify.hpp"

#include "doctest.h"
#include "navgraph/build.hpp"
#include "test_support.hpp"

using namespace navgraph;
using navgraph::testing::line_dataset;
using navgraph::testing::random_dataset;
using navgraph::testing::random_graph;

TEST_CASE("navigability on the 1-d chain") {
    Dataset data = line_dataset({0, 1, 2});

    SearchGraph good = SearchGraph::from_adjacency(3, {{1}, {0, 2}, {1}});
    CHECK(is_navigable(good, data).navigable);

    SearchGraph bad = SearchGraph::from_adjacency(3, {{1}, {0}, {1}});
    NavigabilityReport report = is_navigable(bad, data);
    REQUIRE_FALSE(report.navigable);
    CHECK(*report.witness == std::pair<NodeId, NodeId>{1, 2});
}

TEST_CASE("complete graphs are always navigable") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Dataset data = random_dataset(30, 1 + seed, seed);
        CHECK(is_navigable(complete_graph(30), data).navigable);
        CHECK(is_alpha_shortcut_reachable(complete_graph(30), data, 4.0).navigable);
    }
}

TEST_CASE("alpha = 1 coincides with navigability") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Dataset data = random_dataset(40, 2, seed + 10);
        SearchGraph g = random_graph(40, 4 + seed % 5, seed + 20);
        NavigabilityReport nav = is_navigable(g, data);
        NavigabilityReport alpha = is_alpha_shortcut_reachable(g, data, 1.0);
        CHECK(nav.navigable == alpha.navigable);
        if (!nav.navigable) CHECK(*nav.witness == *alpha.witness);
    }
}

TEST_CASE("alpha-shortcut reachability is stronger than navigability") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Dataset data = random_dataset(50, 3, seed + 50);
        SearchGraph g = random_graph(50, 6, seed + 60);
        if (is_alpha_shortcut_reachable(g, data, 1.3).navigable)
            CHECK(is_navigable(g, data).navigable);
    }
}

TEST_CASE("witnesses survive a direct re-check") {
    Metric metric;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Dataset data = random_dataset(45, 2, seed + 300);
        SearchGraph g = random_graph(45, 3, seed + 400);
        NavigabilityReport report = is_navigable(g, data);
        if (report.navigable) continue;
        const auto [x, y] = *report.witness;
        const double dxy = distance(metric, data.vec(x), data.vec(y));
        REQUIRE(dxy > 0.0);
        for (NodeId z : g.neighbors(x))
            CHECK(distance(metric, data.vec(z), data.vec(y)) >= dxy);
    }
}

TEST_CASE("witness is the lexicographically first failing pair") {
    Dataset data = line_dataset({0, 1, 2, 3});
    // Node 3 is a sink for navigation: 0 and 2 both fail toward several targets.
    SearchGraph g = SearchGraph::from_adjacency(4, {{3}, {0, 2}, {1}, {2}});
    NavigabilityReport report = is_navigable(g, data);
    REQUIRE_FALSE(report.navigable);
    // Check all pairs smaller than the witness really are fine.
    const auto witness = *report.witness;
    for (NodeId x = 0; x < 4; ++x) {
        for (NodeId y = 0; y < 4; ++y) {
            if (x == y) continue;
            if (std::pair<NodeId, NodeId>{x, y} >= witness) continue;
            bool ok = false;
            for (NodeId z : g.neighbors(x))
                ok = ok || distance({}, data.vec(z), data.vec(y)) <
                               distance({}, data.vec(x), data.vec(y));
            CHECK(ok);
        }
    }
}

TEST_CASE("alpha below one is rejected") {
    Dataset data = line_dataset({0, 1});
    CHECK_THROWS_AS(is_alpha_shortcut_reachable(complete_graph(2), data, 0.9),
                    std::invalid_argument);
}

TEST_CASE("verifier is schedule independent") {
    Dataset data = random_dataset(60, 2, 91);
    SearchGraph g = random_graph(60, 3, 92);
    NavigabilityReport one = is_navigable(g, data, {}, 1);
    NavigabilityReport four = is_navigable(g, data, {}, 4);
    CHECK(one.navigable == four.navigable);
    if (!one.navigable) CHECK(*one.witness == *four.witness);
}
