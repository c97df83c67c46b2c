#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navgraph/dataset.hpp"
#include "navgraph/graph.hpp"

namespace navgraph {

enum class RuleKind { Greedy, Beam, Adaptive, AdaptiveV2, Hybrid };

/// Termination rule for generalized beam search, checked against the popped
/// node x with discovered distances d(q, j), j != x:
///   Greedy      - k discovered items with d(q,j) <= d(q,x)
///   Beam        - b discovered items with d(q,j) <= d(q,x)
///   Adaptive    - k discovered items with (1+gamma) * d(q,j) <= d(q,x)
///   AdaptiveV2  - at least k discovered and d(q,x) >= d1 + gamma * dk, where
///                 d1/dk are the 1st/kth smallest discovered distances
///   Hybrid      - b discovered items with (1+gamma) * d(q,j) <= d(q,x)
struct TerminationRule {
    RuleKind kind = RuleKind::Greedy;
    std::uint32_t b = 0;  // Beam/Hybrid width, must be >= k at query time
    double gamma = 0.0;   // Adaptive/AdaptiveV2/Hybrid slack, must be >= 0

    static TerminationRule greedy() { return {RuleKind::Greedy, 0, 0.0}; }
    static TerminationRule beam(std::uint32_t b) { return {RuleKind::Beam, b, 0.0}; }
    static TerminationRule adaptive(double gamma) { return {RuleKind::Adaptive, 0, gamma}; }
    static TerminationRule adaptive_v2(double gamma) { return {RuleKind::AdaptiveV2, 0, gamma}; }
    static TerminationRule hybrid(std::uint32_t b, double gamma) {
        return {RuleKind::Hybrid, b, gamma};
    }
};

std::string rule_name(RuleKind kind);

struct SearchStats {
    std::uint64_t distance_computations = 0;  // equals |D|, the discovered set size
    std::uint32_t expanded_count = 0;
    bool terminated_early = false;  // true iff the rule fired; false if the queue drained
    bool truncated = false;         // fewer than k nodes were reachable
};

/// k returned ids ascending by (distance, id) with matching true distances.
struct SearchResult {
    std::vector<NodeId> ids;
    std::vector<double> distances;
    SearchStats stats;
};

/// Optional capture of the expansion order (diagnostics and property tests).
struct SearchTrace {
    std::vector<NodeId> expanded;
};

/// Reference implementation: best-first traversal that inserts every
/// discovered node into the candidate queue and checks the rule only on the
/// popped node. Deterministic under the global (distance, id) tie-break.
SearchResult generalized_beam_search(const SearchGraph& graph, const Dataset& data,
                                     CountedEvaluator& eval, NodeId start, const Query& q,
                                     std::size_t k, const TerminationRule& rule,
                                     SearchTrace* trace = nullptr);

/// Optimized adaptive search: bounded best-result structure plus queue
/// insertion skipping for nodes that would certainly trigger termination.
/// Returns the same id set and distance-computation count as the generalized
/// form with rule Adaptive(gamma) on every input.
SearchResult adaptive_beam_search(const SearchGraph& graph, const Dataset& data,
                                  CountedEvaluator& eval, NodeId start, const Query& q,
                                  std::size_t k, double gamma, SearchTrace* trace = nullptr);

/// Optimized classic beam search with width b >= k; same equivalence
/// guarantee against the generalized form with rule Beam(b).
SearchResult classic_beam_search(const SearchGraph& graph, const Dataset& data,
                                 CountedEvaluator& eval, NodeId start, const Query& q,
                                 std::size_t k, std::uint32_t b, SearchTrace* trace = nullptr);

/// Dispatches to the optimized implementation matching `rule`.
SearchResult run_search(const SearchGraph& graph, const Dataset& data, CountedEvaluator& eval,
                        NodeId start, const Query& q, std::size_t k, const TerminationRule& rule,
                        SearchTrace* trace = nullptr);

}  // namespace navgraph
