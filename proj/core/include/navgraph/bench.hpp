#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "navgraph/dataset.hpp"
#include "navgraph/graph.hpp"
#include "navgraph/search.hpp"

namespace navgraph {

/// Fraction of the true k nearest present in the result: |ids ∩ truth[0..k]| / k.
double recall(const SearchResult& result, std::span<const NodeId> truth, std::size_t k);

/// Exact nearest ids per query at the given depth, cached by callers in ivecs
/// form. Queries are the rows of `queries`.
GroundTruth compute_ground_truth(const Dataset& data, const Metric& metric,
                                 const Dataset& queries, std::size_t depth,
                                 unsigned threads = 0);

struct QueryRunStats {
    std::uint64_t distance_computations = 0;
    std::uint32_t expanded_count = 0;
    double recall = 0.0;
};

struct BatchResult {
    std::vector<QueryRunStats> per_query;  // in query order, schedule-independent
    double mean_recall = 0.0;
    double mean_distance_computations = 0.0;
};

/// Runs the optimized search matching `rule` for every query and aggregates.
/// Queries run independently over the shared read-only graph and dataset.
BatchResult run_queries(const SearchGraph& graph, const Dataset& data, const Dataset& queries,
                        const GroundTruth& truth, const TerminationRule& rule, std::size_t k,
                        NodeId start, unsigned threads = 0);

/// One parameter sweep: a rule family and the grid of rules to evaluate.
struct SweepSpec {
    RuleKind family = RuleKind::Beam;
    std::vector<TerminationRule> grid;  // non-empty, every entry of `family`
    std::size_t k = 1;
};

struct CurvePoint {
    std::string param;  // grid value: b, gamma, or "b;gamma" for Hybrid
    double mean_recall = 0.0;
    double mean_distance_computations = 0.0;
    std::uint32_t num_queries = 0;
};

struct TradeoffCurve {
    std::vector<CurvePoint> points;  // in grid order
};

TradeoffCurve sweep(const SearchGraph& graph, const Dataset& data, const Dataset& queries,
                    const GroundTruth& truth, const SweepSpec& spec, NodeId start,
                    unsigned threads = 0);

/// Counts of queries per distance-computation bin; bin i covers
/// [i * bin_width, (i+1) * bin_width).
struct Histogram {
    double bin_width = 0.0;
    std::vector<std::uint64_t> counts;
    double mean_recall = 0.0;
};

Histogram histogram(std::span<const QueryRunStats> stats, double bin_width);

/// Population variance of per-query distance computations.
double distance_computation_variance(std::span<const QueryRunStats> stats);

/// Checks the approximation guarantee of adaptive termination on a navigable
/// graph: every node v outside the returned set must satisfy
/// d(q,v) >= (gamma/2) * max_{j in result} d(q,j). Requires 0 < gamma <= 2.
struct TheoremVerdict {
    bool pass = true;
    std::optional<NodeId> violator;
    double bound = 0.0;
};

TheoremVerdict verify_theorem1(const Dataset& data, const Metric& metric, const Query& q,
                               double gamma, const SearchResult& result);

/// Matched-recall tuning: bisection on b (Beam) or gamma (Adaptive) until the
/// mean recall is within `tolerance` of `target`, capped at `max_iterations`
/// evaluations. The achieved recall is reported alongside.
struct TunedRun {
    TerminationRule rule;
    double achieved_recall = 0.0;
    BatchResult batch;
    bool converged = false;
};

TunedRun tune_beam_to_recall(const SearchGraph& graph, const Dataset& data,
                             const Dataset& queries, const GroundTruth& truth, std::size_t k,
                             NodeId start, double target, double tolerance = 0.005,
                             int max_iterations = 30, unsigned threads = 0);

TunedRun tune_adaptive_to_recall(const SearchGraph& graph, const Dataset& data,
                                 const Dataset& queries, const GroundTruth& truth, std::size_t k,
                                 NodeId start, double target, double tolerance = 0.005,
                                 int max_iterations = 30, unsigned threads = 0);

/// CSV emission. Curves: header `param,recall,mean_distance_computations,
/// num_queries`; histograms: `bin_start,count` with non-empty bins only.
/// Floats are written in shortest round-trip decimal form.
void write_csv(const TradeoffCurve& curve, const std::string& path);
void write_csv(const Histogram& hist, const std::string& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace navgraph
