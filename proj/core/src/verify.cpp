#include "navgraph/verify.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "navgraph/parallel.hpp"

namespace navgraph {

namespace {

NavigabilityReport shortcut_check(const SearchGraph& graph, const Dataset& data, double alpha,
                                  const Metric& metric, unsigned threads) {
    const std::size_t n = graph.num_nodes();
    if (data.n != n)
        throw std::invalid_argument("verify: graph has " + std::to_string(n) +
                                    " nodes but dataset has " + std::to_string(data.n));

    std::optional<std::pair<NodeId, NodeId>> witness;
    std::mutex witness_mutex;

    // One task per target y: a row d(., y) serves every source x.
    parallel_for(0, n, threads, [&](std::size_t yi) {
        const NodeId y = NodeId(yi);
        std::vector<double> row(n);
        const auto vy = data.vec(y);
        for (std::size_t v = 0; v < n; ++v) row[v] = distance(metric, data.vec(NodeId(v)), vy);

        std::optional<NodeId> first_bad_x;
        for (std::size_t xi = 0; xi < n; ++xi) {
            if (xi == yi) continue;
            const double dxy = row[xi];
            if (!(dxy > 0.0)) continue;  // coincident points carry no requirement
            bool ok = false;
            for (NodeId z : graph.neighbors(NodeId(xi))) {
                if (alpha * row[z] < dxy) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                first_bad_x = NodeId(xi);
                break;
            }
        }
        if (first_bad_x) {
            std::lock_guard<std::mutex> lock(witness_mutex);
            std::pair<NodeId, NodeId> cand{*first_bad_x, y};
            if (!witness || cand < *witness) witness = cand;
        }
    });

    NavigabilityReport report;
    if (witness) {
        report.navigable = false;
        report.witness = witness;
    }
    return report;
}

}  // namespace

NavigabilityReport is_navigable(const SearchGraph& graph, const Dataset& data,
                                const Metric& metric, unsigned threads) {
    return shortcut_check(graph, data, 1.0, metric, threads);
}

NavigabilityReport is_alpha_shortcut_reachable(const SearchGraph& graph, const Dataset& data,
                                               double alpha, const Metric& metric,
                                               unsigned threads) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be >= 1");
    return shortcut_check(graph, data, alpha, metric, threads);
}

}  // namespace navgraph
