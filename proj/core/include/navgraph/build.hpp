#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "navgraph/dataset.hpp"
#include "navgraph/graph.hpp"

namespace navgraph {

/// Out-edge budget of the randomized navigable construction:
/// `nearest` = floor(sqrt(3 n ln n)) nearest neighbors per node and
/// `random` = ceil(3 n ln n / nearest) uniformly random extra edges.
struct NavigableDegrees {
    std::size_t nearest = 0;
    std::size_t random = 0;
};

NavigableDegrees navigable_degree_params(std::size_t n);

/// Randomized navigable construction: per node, edges to its `nearest`
/// closest neighbors (distance, id tie-break) plus `random` nodes sampled
/// uniformly without replacement from the rest. When the budget reaches n-1
/// the result is the complete graph. Deterministic given the seed; navigable
/// with high probability (certify with is_navigable and re-seed on the rare
/// failure).
SearchGraph build_navigable(const Dataset& data, std::uint64_t rng_seed,
                            const Metric& metric = {}, unsigned threads = 0);

/// Raised when pruning discovers that its input violates navigability; the
/// offending (source, target) pair is attached.
struct NotNavigableError : std::runtime_error {
    NodeId source;
    NodeId target;
    NotNavigableError(NodeId s, NodeId t)
        : std::runtime_error("graph is not navigable: no out-neighbor of node " +
                             std::to_string(s) + " is closer to node " + std::to_string(t)),
          source(s),
          target(t) {}
};

inline constexpr std::size_t kDefaultPruneMemoryBudget = std::size_t(2) << 30;  // 2 GiB

/// Keeps, per node, a minimal out-edge subset that preserves navigability:
/// targets and removable neighbors are both scanned in ascending distance
/// from the source (id tie-break), and an edge is kept only when no already
/// kept edge covers the target. Pairwise distances are precomputed when
/// n*n*8 bytes fit the memory budget. The edge set never grows; the result
/// is navigable and pruning is idempotent. Throws NotNavigableError when the
/// input is not navigable.
SearchGraph prune_navigable(const SearchGraph& graph, const Dataset& data,
                            const Metric& metric = {},
                            std::size_t memory_budget_bytes = kDefaultPruneMemoryBudget,
                            unsigned threads = 0);

}  // namespace navgraph
