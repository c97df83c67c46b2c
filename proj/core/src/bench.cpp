#include "navgraph/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "navgraph/parallel.hpp"

namespace navgraph {

double recall(const SearchResult& result, std::span<const NodeId> truth, std::size_t k) {
    if (k == 0) throw std::invalid_argument("recall: k must be at least 1");
    if (truth.size() < k)
        throw std::invalid_argument("recall: ground truth depth " + std::to_string(truth.size()) +
                                    " is below k=" + std::to_string(k));
    std::unordered_set<NodeId> wanted(truth.begin(), truth.begin() + k);
    std::size_t hits = 0;
    for (NodeId id : result.ids)
        if (wanted.count(id)) ++hits;
    return double(hits) / double(k);
}

GroundTruth compute_ground_truth(const Dataset& data, const Metric& metric,
                                 const Dataset& queries, std::size_t depth, unsigned threads) {
    if (depth == 0 || depth > data.n)
        throw std::invalid_argument("ground truth depth must be in [1, n]");
    GroundTruth truth(queries.n);
    parallel_for(0, queries.n, threads, [&](std::size_t qi) {
        Query q{{queries.vec(NodeId(qi)).begin(), queries.vec(NodeId(qi)).end()},
                std::uint32_t(qi)};
        truth[qi] = brute_force_knn(data, metric, q, depth);
    });
    return truth;
}

BatchResult run_queries(const SearchGraph& graph, const Dataset& data, const Dataset& queries,
                        const GroundTruth& truth, const TerminationRule& rule, std::size_t k,
                        NodeId start, unsigned threads) {
    if (queries.n == 0) throw std::invalid_argument("run_queries: empty query set");
    if (truth.size() < queries.n)
        throw std::invalid_argument("run_queries: ground truth missing for some queries");

    BatchResult batch;
    batch.per_query.resize(queries.n);
    parallel_for(0, queries.n, threads, [&](std::size_t qi) {
        Query q{{queries.vec(NodeId(qi)).begin(), queries.vec(NodeId(qi)).end()},
                std::uint32_t(qi)};
        CountedEvaluator eval;
        const SearchResult result = run_search(graph, data, eval, start, q, k, rule);
        QueryRunStats s;
        s.distance_computations = result.stats.distance_computations;
        s.expanded_count = result.stats.expanded_count;
        s.recall = recall(result, truth[qi], k);
        batch.per_query[qi] = s;
    });

    double recall_sum = 0.0;
    double cost_sum = 0.0;
    for (const QueryRunStats& s : batch.per_query) {
        recall_sum += s.recall;
        cost_sum += double(s.distance_computations);
    }
    batch.mean_recall = recall_sum / double(queries.n);
    batch.mean_distance_computations = cost_sum / double(queries.n);
    return batch;
}

namespace {

std::string format_u32(std::uint32_t v) { return std::to_string(v); }

std::string rule_param_label(const TerminationRule& rule) {
    switch (rule.kind) {
        case RuleKind::Greedy: return "greedy";
        case RuleKind::Beam: return format_u32(rule.b);
        case RuleKind::Adaptive:
        case RuleKind::AdaptiveV2: return format_double(rule.gamma);
        case RuleKind::Hybrid: return format_u32(rule.b) + ";" + format_double(rule.gamma);
    }
    return "?";
}

}  // namespace

TradeoffCurve sweep(const SearchGraph& graph, const Dataset& data, const Dataset& queries,
                    const GroundTruth& truth, const SweepSpec& spec, NodeId start,
                    unsigned threads) {
    if (spec.grid.empty()) throw std::invalid_argument("sweep: empty parameter grid");
    for (const TerminationRule& rule : spec.grid)
        if (rule.kind != spec.family)
            throw std::invalid_argument("sweep: grid entry does not match the rule family");

    TradeoffCurve curve;
    curve.points.reserve(spec.grid.size());
    for (const TerminationRule& rule : spec.grid) {
        const BatchResult batch = run_queries(graph, data, queries, truth, rule, spec.k, start,
                                              threads);
        CurvePoint point;
        point.param = rule_param_label(rule);
        point.mean_recall = batch.mean_recall;
        point.mean_distance_computations = batch.mean_distance_computations;
        point.num_queries = std::uint32_t(queries.n);
        curve.points.push_back(std::move(point));
    }
    return curve;
}

Histogram histogram(std::span<const QueryRunStats> stats, double bin_width) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("histogram: bin width must be positive");
    Histogram h;
    h.bin_width = bin_width;
    double recall_sum = 0.0;
    for (const QueryRunStats& s : stats) {
        const std::size_t bin = std::size_t(std::floor(double(s.distance_computations) / bin_width));
        if (h.counts.size() <= bin) h.counts.resize(bin + 1, 0);
        ++h.counts[bin];
        recall_sum += s.recall;
    }
    h.mean_recall = stats.empty() ? 0.0 : recall_sum / double(stats.size());
    return h;
}

double distance_computation_variance(std::span<const QueryRunStats> stats) {
    if (stats.empty()) return 0.0;
    double mean = 0.0;
    for (const QueryRunStats& s : stats) mean += double(s.distance_computations);
    mean /= double(stats.size());
    double var = 0.0;
    for (const QueryRunStats& s : stats) {
        const double diff = double(s.distance_computations) - mean;
        var += diff * diff;
    }
    return var / double(stats.size());
}

TheoremVerdict verify_theorem1(const Dataset& data, const Metric& metric, const Query& q,
                               double gamma, const SearchResult& result) {
    if (!(gamma > 0.0 && gamma <= 2.0))
        throw std::invalid_argument("verify_theorem1: gamma must be in (0, 2]");
    if (result.ids.empty()) throw std::invalid_argument("verify_theorem1: empty result");

    double worst = 0.0;
    for (NodeId id : result.ids) worst = std::max(worst, distance(metric, q.vec, data.vec(id)));

    TheoremVerdict verdict;
    verdict.bound = 0.5 * gamma * worst;

    std::vector<std::uint8_t> returned(data.n, 0);
    for (NodeId id : result.ids) returned[id] = 1;
    for (std::size_t v = 0; v < data.n; ++v) {
        if (returned[v]) continue;
        if (distance(metric, q.vec, data.vec(NodeId(v))) < verdict.bound) {
            verdict.pass = false;
            verdict.violator = NodeId(v);
            return verdict;
        }
    }
    return verdict;
}

namespace {

struct TuneEval {
    double recall;
    BatchResult batch;
};

// Shared bisection driver over an integer or real parameter with recall
// non-decreasing in the parameter.
template <typename Param, typename MakeRule, typename Midpoint, typename Stop>
TunedRun tune_to_recall(const SearchGraph& graph, const Dataset& data, const Dataset& queries,
                        const GroundTruth& truth, std::size_t k, NodeId start, double target,
                        double tolerance, int max_iterations, unsigned threads, Param lo,
                        Param hi_start, Param hi_cap, MakeRule make_rule, Midpoint midpoint,
                        Stop stop) {
    int evals = 0;
    TunedRun result;
    result.converged = false;

    auto evaluate = [&](Param p) {
        ++evals;
        const TerminationRule rule = make_rule(p);
        BatchResult batch = run_queries(graph, data, queries, truth, rule, k, start, threads);
        const double r = batch.mean_recall;
        const double err = std::abs(r - target);
        if (!result.converged &&
            (result.batch.per_query.empty() || err < std::abs(result.achieved_recall - target))) {
            result.rule = rule;
            result.achieved_recall = r;
            result.batch = std::move(batch);
        }
        if (err <= tolerance) result.converged = true;
        return r;
    };

    if (evaluate(lo) >= target - tolerance || result.converged) return result;

    Param hi = hi_start;
    double hi_recall = evaluate(hi);
    while (!result.converged && hi_recall < target - tolerance && hi < hi_cap &&
           evals < max_iterations) {
        hi = std::min(hi_cap, Param(hi * 2));
        hi_recall = evaluate(hi);
    }
    if (result.converged) return result;
    if (hi_recall < target - tolerance) return result;  // target unreachable; report closest

    Param low = lo;
    Param high = hi;
    while (!result.converged && evals < max_iterations && !stop(low, high)) {
        const Param mid = midpoint(low, high);
        if (evaluate(mid) < target) low = mid;
        else high = mid;
    }
    return result;
}

}  // namespace

TunedRun tune_beam_to_recall(const SearchGraph& graph, const Dataset& data,
                             const Dataset& queries, const GroundTruth& truth, std::size_t k,
                             NodeId start, double target, double tolerance, int max_iterations,
                             unsigned threads) {
    const std::uint32_t n = std::uint32_t(graph.num_nodes());
    return tune_to_recall<std::uint32_t>(
        graph, data, queries, truth, k, start, target, tolerance, max_iterations, threads,
        std::uint32_t(k), std::uint32_t(std::min<std::size_t>(n, 2 * k)), n,
        [](std::uint32_t b) { return TerminationRule::beam(b); },
        [](std::uint32_t lo, std::uint32_t hi) { return lo + (hi - lo) / 2; },
        [](std::uint32_t lo, std::uint32_t hi) { return hi - lo <= 1; });
}

TunedRun tune_adaptive_to_recall(const SearchGraph& graph, const Dataset& data,
                                 const Dataset& queries, const GroundTruth& truth, std::size_t k,
                                 NodeId start, double target, double tolerance,
                                 int max_iterations, unsigned threads) {
    return tune_to_recall<double>(
        graph, data, queries, truth, k, start, target, tolerance, max_iterations, threads, 0.0,
        0.25, 16.0, [](double gamma) { return TerminationRule::adaptive(gamma); },
        [](double lo, double hi) { return 0.5 * (lo + hi); },
        [](double lo, double hi) { return hi - lo <= 1e-9; });
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    return out;
}

}  // namespace

void write_csv(const TradeoffCurve& curve, const std::string& path) {
    std::ofstream out = open_csv(path);
    out << "param,recall,mean_distance_computations,num_queries\n";
    for (const CurvePoint& p : curve.points) {
        out << p.param << ',' << format_double(p.mean_recall) << ','
            << format_double(p.mean_distance_computations) << ',' << p.num_queries << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

void write_csv(const Histogram& hist, const std::string& path) {
    std::ofstream out = open_csv(path);
    out << "bin_start,count\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        if (hist.counts[i] == 0) continue;
        out << format_double(double(i) * hist.bin_width) << ',' << hist.counts[i] << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace navgraph
