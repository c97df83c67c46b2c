#include "navgraph/instances.hpp"

#include "doctest.h"
#include "navgraph/build.hpp"
#include "navgraph/verify.hpp"
#include "test_support.hpp"

using namespace navgraph;

TEST_CASE("counterexample instance shape") {
    CounterexampleInstance inst = counterexample_instance(100, 50.0);
    CHECK(inst.data.n == 100);
    CHECK(inst.data.dim == 2);
    CHECK(inst.query.vec.size() == 2);

    // The planted neighbor sits at distance exactly 1 from the query.
    CHECK(brute_force_knn(inst.data, {}, inst.query, 1) == std::vector<NodeId>{2});
    CHECK(distance({}, inst.query.vec, inst.data.vec(2)) == 1.0);

    // Decoys cluster near (1, 0).
    for (NodeId v = 3; v < 100; ++v) {
        CHECK(distance({}, inst.data.vec(v), std::vector<float>{1.0f, 0.0f}) <= 1.1e-3);
    }
}

TEST_CASE("counterexample instance is navigable") {
    for (std::size_t n : {5u, 20u, 100u}) {
        CounterexampleInstance inst = counterexample_instance(n, 10.0);
        CHECK(is_navigable(inst.graph, inst.data).navigable);
    }
}

TEST_CASE("counterexample instance is reproducible byte for byte") {
    CounterexampleInstance a = counterexample_instance(50, 25.0, 3);
    CounterexampleInstance b = counterexample_instance(50, 25.0, 3);
    CHECK(a.data.values == b.data.values);
    CHECK(a.graph == b.graph);
    CHECK(a.query.vec == b.query.vec);
    CounterexampleInstance c = counterexample_instance(50, 25.0, 4);
    CHECK_FALSE(a.data.values == c.data.values);
}

TEST_CASE("counterexample argument validation") {
    CHECK_THROWS_AS(counterexample_instance(4, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(counterexample_instance(10, 1.0), std::invalid_argument);
}

TEST_CASE("hypercube dimension formula") {
    // ceil(64 ln n / (1 - 1/alpha)^2)
    CHECK(hypercube_dimension(50, 1.5) == 2254);
    CHECK(hypercube_dimension(200, 1.05) == 149541);
    CHECK_THROWS_AS(hypercube_dimension(10, 1.0), std::invalid_argument);
}

TEST_CASE("hypercube instance properties at a cheap scale") {
    const std::size_t n = 100;
    const double alpha = 1.5;
    Dataset data = random_hypercube_instance(n, alpha, 7);
    REQUIRE(data.n == n);
    REQUIRE(data.dim == hypercube_dimension(n, alpha));

    // Normalized squared pairwise distances in (1/alpha, 1], all distinct.
    std::vector<double> sq;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            sq.push_back(squared_distance(data.vec(i), data.vec(j)));
    for (double d : sq) {
        CHECK(d > 1.0 / alpha);
        CHECK(d <= 1.0);
    }
    std::sort(sq.begin(), sq.end());
    CHECK(std::adjacent_find(sq.begin(), sq.end()) == sq.end());

    // The complete graph is alpha-shortcut reachable; dropping any edge
    // breaks it, so no proper subgraph qualifies.
    SearchGraph complete = complete_graph(n);
    CHECK(is_alpha_shortcut_reachable(complete, data, alpha).navigable);
    std::vector<std::vector<NodeId>> adj(n);
    for (NodeId v = 0; v < n; ++v) {
        auto nb = complete.neighbors(v);
        adj[v].assign(nb.begin(), nb.end());
    }
    adj[3].erase(adj[3].begin());  // drop one edge
    CHECK_FALSE(
        is_alpha_shortcut_reachable(SearchGraph::from_adjacency(n, adj), data, alpha).navigable);

    // A sparse navigable graph still exists for the same points.
    SearchGraph nav = navgraph::testing::certified_navigable(data, 1);
    CHECK(nav.num_edges() < complete.num_edges());
}

TEST_CASE("hypercube instance is deterministic given the seed") {
    Dataset a = random_hypercube_instance(30, 1.6, 11);
    Dataset b = random_hypercube_instance(30, 1.6, 11);
    CHECK(a.values == b.values);
}
