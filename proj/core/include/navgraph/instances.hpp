#pragma once

#include <cstdint>

#include "navgraph/dataset.hpp"
#include "navgraph/graph.hpp"

namespace navgraph {

/// Planar instance on which width-bounded beam search fails: a cluster of
/// decoys sits one unit from the start while the true nearest neighbor hides
/// behind a single bridge node. The graph is navigable, yet beam search with
/// width b <= n-3 started at node 0 never expands the bridge and returns a
/// decoy at distance >= C times the optimum. Adaptive termination with
/// gamma = 2 recovers the exact neighbor.
struct CounterexampleInstance {
    Dataset data;       // node 0 = start, 1 = bridge, 2 = true neighbor, 3.. = decoys
    SearchGraph graph;  // navigable by construction
    Query query;
    double offset_x;    // horizontal position of the query and true neighbor
};

/// n >= 5, C > 1. Reproducible byte-for-byte for a given seed.
CounterexampleInstance counterexample_instance(std::size_t n, double C, std::uint64_t seed = 0);

/// Random sign-vector instance in ceil(64 ln n / (1 - 1/alpha)^2) dimensions,
/// scaled so every normalized squared pairwise distance lies in (1/alpha, 1]
/// and perturbed (magnitude 1e-9) so all pairwise distances are unique. Both
/// properties are checked at build time; the generator re-seeds and retries
/// on the rare failure. On such data the only alpha-shortcut reachable graph
/// is the complete graph, while sparse navigable graphs still exist.
Dataset random_hypercube_instance(std::size_t n, double alpha, std::uint64_t rng_seed);

/// Dimension used by random_hypercube_instance for the given n and alpha.
std::size_t hypercube_dimension(std::size_t n, double alpha);

}  // namespace navgraph
