#pragma once

#include <optional>
#include <utility>

#include "navgraph/dataset.hpp"
#include "navgraph/graph.hpp"

namespace navgraph {

/// Outcome of a navigability / alpha-shortcut check. On failure, `witness` is
/// the lexicographically first ordered pair (x, y) with d(x,y) > 0 for which
/// no out-neighbor z of x satisfies alpha * d(z,y) < d(x,y).
struct NavigabilityReport {
    bool navigable = true;
    std::optional<std::pair<NodeId, NodeId>> witness;
};

/// Brute-force check over all ordered pairs: from every node x, some
/// out-neighbor must be strictly closer to every other node y.
NavigabilityReport is_navigable(const SearchGraph& graph, const Dataset& data,
                                const Metric& metric = {}, unsigned threads = 0);

/// Strengthened check requiring alpha * d(z,y) < d(x,y) for some out-neighbor
/// z. alpha = 1 coincides with is_navigable; alpha < 1 is rejected.
NavigabilityReport is_alpha_shortcut_reachable(const SearchGraph& graph, const Dataset& data,
                                               double alpha, const Metric& metric = {},
                                               unsigned threads = 0);

}  // namespace navgraph
