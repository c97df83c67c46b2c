#include "navgraph/build.hpp"

#include <set>

#include "doctest.h"
#include "navgraph/verify.hpp"
#include "test_support.hpp"

using namespace navgraph;
using navgraph::testing::line_dataset;
using navgraph::testing::random_dataset;

namespace {

std::set<std::pair<NodeId, NodeId>> edge_set(const SearchGraph& g) {
    std::set<std::pair<NodeId, NodeId>> edges;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        for (NodeId u : g.neighbors(v)) edges.insert({v, u});
    return edges;
}

}  // namespace

TEST_CASE("degree parameters") {
    // floor(sqrt(3 n ln n)) and ceil(3 n ln n / m)
    CHECK(navigable_degree_params(10).nearest == 8);
    CHECK(navigable_degree_params(10).random == 9);
    CHECK(navigable_degree_params(100000).nearest == 1858);
    CHECK(navigable_degree_params(100000).random == 1859);
    // Reported average degrees on 100K/50K subsamples are ~3682 and ~2516;
    // the formula lands within 2%.
    CHECK(double(navigable_degree_params(100000).nearest +
                 navigable_degree_params(100000).random) == doctest::Approx(3682).epsilon(0.02));
    CHECK(double(navigable_degree_params(50000).nearest +
                 navigable_degree_params(50000).random) == doctest::Approx(2516).epsilon(0.02));
    CHECK_THROWS_AS(navigable_degree_params(1), std::invalid_argument);
}

TEST_CASE("small n yields the complete graph") {
    Dataset data = random_dataset(10, 3, 1);
    SearchGraph g = build_navigable(data, 0);
    CHECK(g == complete_graph(10));
}

TEST_CASE("construction respects the degree budget and is deterministic") {
    Dataset data = random_dataset(300, 4, 9);
    const NavigableDegrees deg = navigable_degree_params(300);
    REQUIRE(deg.nearest + deg.random < 299);

    SearchGraph g = build_navigable(data, 42);
    for (NodeId v = 0; v < 300; ++v) CHECK(g.out_degree(v) == deg.nearest + deg.random);

    CHECK(build_navigable(data, 42) == g);
    CHECK(build_navigable(data, 42, {}, /*threads=*/3) == g);
    CHECK_FALSE(build_navigable(data, 43) == g);
}

TEST_CASE("built graphs are navigable at small n") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const std::size_t n = 50 + 60 * seed;
        Dataset data = random_dataset(n, 2 + seed % 6, seed + 100);
        SearchGraph g = build_navigable(data, seed);
        NavigabilityReport report = is_navigable(g, data);
        CHECK(report.navigable);
    }
}

TEST_CASE("pruning the complete graph over three line points") {
    Dataset data = line_dataset({0, 1, 2});
    SearchGraph pruned = prune_navigable(complete_graph(3), data);
    const std::set<std::pair<NodeId, NodeId>> expected{{0, 1}, {1, 0}, {1, 2}, {2, 1}};
    CHECK(edge_set(pruned) == expected);
}

TEST_CASE("pruning keeps navigability, shrinks edges, and is idempotent") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t n = 40 + 45 * seed;
        Dataset data = random_dataset(n, 2 + seed % 4, seed + 900);
        SearchGraph g = build_navigable(data, seed);
        REQUIRE(is_navigable(g, data).navigable);

        SearchGraph pruned = prune_navigable(g, data);
        auto before = edge_set(g);
        auto after = edge_set(pruned);
        CHECK(after.size() <= before.size());
        for (const auto& e : after) CHECK(before.count(e) == 1);
        CHECK(is_navigable(pruned, data).navigable);
        CHECK(prune_navigable(pruned, data) == pruned);
    }
}

TEST_CASE("pruned graphs are much sparser") {
    Dataset data = random_dataset(600, 8, 31);
    SearchGraph g = build_navigable(data, 5);
    SearchGraph pruned = prune_navigable(g, data);
    CHECK(pruned.average_out_degree() < 0.2 * g.average_out_degree());
}

TEST_CASE("pruning is independent of the memory budget path") {
    Dataset data = random_dataset(120, 3, 77);
    SearchGraph g = build_navigable(data, 6);
    SearchGraph with_matrix = prune_navigable(g, data, {}, kDefaultPruneMemoryBudget);
    SearchGraph on_the_fly = prune_navigable(g, data, {}, /*memory_budget_bytes=*/0);
    CHECK(with_matrix == on_the_fly);
}

TEST_CASE("pruning a non-navigable graph reports a witness") {
    Dataset data = line_dataset({0, 1, 2});
    SearchGraph g = SearchGraph::from_adjacency(3, {{1}, {0}, {1}});  // 1 cannot reach toward 2
    try {
        prune_navigable(g, data);
        FAIL("expected NotNavigableError");
    } catch (const NotNavigableError& e) {
        CHECK(e.source == 1);
        CHECK(e.target == 2);
        // Witness re-check: no out-neighbor of `source` is closer to `target`.
        const double dst = distance({}, data.vec(e.source), data.vec(e.target));
        for (NodeId z : g.neighbors(e.source))
            CHECK(distance({}, data.vec(z), data.vec(e.target)) >= dst);
    }
}
