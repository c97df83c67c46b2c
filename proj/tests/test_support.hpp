#pragma once

// Shared fixtures for unit and acceptance tests.

#include <random>
#include <stdexcept>
#include <vector>

#include "navgraph/build.hpp"
#include "navgraph/dataset.hpp"
#include "navgraph/graph.hpp"
#include "navgraph/verify.hpp"

namespace navgraph::testing {

inline Dataset line_dataset(std::initializer_list<float> coords) {
    return make_dataset(1, std::vector<float>(coords));
}

inline Dataset random_dataset(std::size_t n, std::size_t dim, std::uint64_t seed,
                              bool integer_coords = false) {
    std::mt19937_64 rng(seed);
    std::vector<float> values(n * dim);
    if (integer_coords) {
        // Small integer lattice: many exact distance ties.
        std::uniform_int_distribution<int> coord(0, 4);
        for (float& v : values) v = float(coord(rng));
    } else {
        std::uniform_real_distribution<float> coord(-1.0f, 1.0f);
        for (float& v : values) v = coord(rng);
    }
    return make_dataset(dim, std::move(values));
}

inline Query random_query(const Dataset& data, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, data.n - 1);
    std::normal_distribution<float> jitter(0.0f, 0.25f);
    auto base = data.vec(NodeId(pick(rng)));
    Query q;
    q.vec.assign(base.begin(), base.end());
    for (float& v : q.vec) v += jitter(rng);
    return q;
}

// Builds a navigable graph and certifies it, re-seeding on the rare failure
// of the randomized construction.
inline SearchGraph certified_navigable(const Dataset& data, std::uint64_t seed,
                                       int* attempts_out = nullptr) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        SearchGraph g = build_navigable(data, seed + std::uint64_t(attempt));
        if (is_navigable(g, data).navigable) {
            if (attempts_out) *attempts_out += attempt;
            return g;
        }
    }
    throw std::runtime_error("certified_navigable: construction kept failing certification");
}

// Arbitrary directed graph: `degree` distinct random out-neighbors per node.
// No navigability guarantee; may be weakly connected or not.
inline SearchGraph random_graph(std::size_t n, std::size_t degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::vector<NodeId>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::uint8_t> taken(n, 0);
        taken[v] = 1;
        std::size_t want = std::min(degree, n - 1);
        while (adj[v].size() < want) {
            std::size_t u = pick(rng);
            if (taken[u]) continue;
            taken[u] = 1;
            adj[v].push_back(NodeId(u));
        }
    }
    return SearchGraph::from_adjacency(n, adj);
}

}  // namespace navgraph::testing
