#include "navgraph/build.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "navgraph/parallel.hpp"

namespace navgraph {

namespace {

// splitmix64 of (seed, stream): per-node RNG streams that do not depend on
// the parallel schedule.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

NavigableDegrees navigable_degree_params(std::size_t n) {
    if (n < 2) throw std::invalid_argument("navigable construction needs n >= 2");
    const double budget = 3.0 * double(n) * std::log(double(n));
    NavigableDegrees d;
    d.nearest = std::size_t(std::floor(std::sqrt(budget)));
    d.random = std::size_t(std::ceil(budget / double(d.nearest)));
    return d;
}

SearchGraph build_navigable(const Dataset& data, std::uint64_t rng_seed, const Metric& metric,
                            unsigned threads) {
    (void)metric;
    const std::size_t n = data.n;
    const NavigableDegrees deg = navigable_degree_params(n);
    if (deg.nearest + deg.random >= n - 1) return complete_graph(n);

    std::vector<std::vector<NodeId>> adj(n);
    parallel_for(0, n, threads, [&](std::size_t si) {
        const NodeId s = NodeId(si);
        const auto vs = data.vec(s);

        // m nearest by (distance, id), excluding s.
        std::vector<std::pair<double, NodeId>> order;
        order.reserve(n - 1);
        for (std::size_t v = 0; v < n; ++v) {
            if (v == si) continue;
            order.emplace_back(squared_distance(vs, data.vec(NodeId(v))), NodeId(v));
        }
        std::nth_element(order.begin(), order.begin() + (deg.nearest - 1), order.end());

        std::vector<NodeId> edges;
        edges.reserve(deg.nearest + deg.random);
        std::vector<std::uint8_t> taken(n, 0);
        taken[si] = 1;
        for (std::size_t i = 0; i < deg.nearest; ++i) {
            edges.push_back(order[i].second);
            taken[order[i].second] = 1;
        }

        // `random` extra edges sampled uniformly without replacement from the
        // remaining nodes. Rejection sampling is fine while the pool is
        // comfortably larger than the request; otherwise shuffle the pool.
        std::mt19937_64 rng(mix_seed(rng_seed, si));
        const std::size_t pool = n - 1 - deg.nearest;
        if (deg.random * 2 >= pool) {
            std::vector<NodeId> remaining;
            remaining.reserve(pool);
            for (std::size_t v = 0; v < n; ++v)
                if (!taken[v]) remaining.push_back(NodeId(v));
            for (std::size_t i = 0; i < deg.random; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, remaining.size() - 1);
                std::swap(remaining[i], remaining[pick(rng)]);
                edges.push_back(remaining[i]);
            }
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            std::size_t added = 0;
            while (added < deg.random) {
                const std::size_t v = pick(rng);
                if (taken[v]) continue;
                taken[v] = 1;
                edges.push_back(NodeId(v));
                ++added;
            }
        }

        std::sort(edges.begin(), edges.end());
        adj[si] = std::move(edges);
    });

    return SearchGraph::from_adjacency(n, adj);
}

namespace {

// Distance oracle for pruning: full matrix when the budget allows, otherwise
// per-pair computation. Both paths evaluate the same double expression so the
// pruned graph does not depend on the budget.
class PairDistances {
public:
    PairDistances(const Dataset& data, const Metric& metric, std::size_t budget_bytes,
                  unsigned threads)
        : data_(data), metric_(metric) {
        const std::size_t n = data.n;
        if (n > 0 && n <= budget_bytes / n / sizeof(double)) {
            matrix_.resize(n * n);
            parallel_for(0, n, threads, [&](std::size_t i) {
                const auto vi = data_.vec(NodeId(i));
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double d = distance(metric_, vi, data_.vec(NodeId(j)));
                    matrix_[i * n + j] = d;
                    matrix_[j * n + i] = d;
                }
                matrix_[i * n + i] = 0.0;
            });
        }
    }

    double operator()(NodeId a, NodeId b) const {
        if (!matrix_.empty()) return matrix_[std::size_t(a) * data_.n + b];
        return distance(metric_, data_.vec(a), data_.vec(b));
    }

private:
    const Dataset& data_;
    const Metric& metric_;
    std::vector<double> matrix_;
};

}  // namespace

SearchGraph prune_navigable(const SearchGraph& graph, const Dataset& data, const Metric& metric,
                            std::size_t memory_budget_bytes, unsigned threads) {
    const std::size_t n = graph.num_nodes();
    if (data.n != n)
        throw std::invalid_argument("prune: graph has " + std::to_string(n) +
                                    " nodes but dataset has " + std::to_string(data.n));

    const PairDistances dist(data, metric, memory_budget_bytes, threads);

    std::vector<std::vector<NodeId>> kept_adj(n);
    std::optional<std::pair<NodeId, NodeId>> violation;
    std::mutex violation_mutex;

    parallel_for(0, n, threads, [&](std::size_t si) {
        const NodeId s = NodeId(si);

        std::vector<std::pair<double, NodeId>> targets;
        targets.reserve(n - 1);
        for (std::size_t t = 0; t < n; ++t)
            if (t != si) targets.emplace_back(dist(s, NodeId(t)), NodeId(t));
        std::sort(targets.begin(), targets.end());

        auto nbrs = graph.neighbors(s);
        std::vector<std::pair<double, NodeId>> removable;
        removable.reserve(nbrs.size());
        for (NodeId y : nbrs) removable.emplace_back(dist(s, y), y);
        std::sort(removable.begin(), removable.end());

        std::vector<std::uint8_t> is_kept(removable.size(), 0);
        std::vector<NodeId> keep;
        for (const auto& [dst, t] : targets) {
            if (!(dst > 0.0)) continue;  // coincident points carry no requirement
            bool covered = false;
            for (NodeId y : keep) {
                if (dist(y, t) < dst) {
                    covered = true;
                    break;
                }
            }
            if (covered) continue;
            bool found = false;
            for (std::size_t i = 0; i < removable.size(); ++i) {
                if (is_kept[i]) continue;
                const NodeId y = removable[i].second;
                if (dist(y, t) < dst) {
                    is_kept[i] = 1;
                    keep.push_back(y);
                    found = true;
                    break;
                }
            }
            if (!found) {
                std::lock_guard<std::mutex> lock(violation_mutex);
                std::pair<NodeId, NodeId> cand{s, t};
                if (!violation || cand < *violation) violation = cand;
                return;  // this source cannot be pruned; input is not navigable
            }
        }
        std::sort(keep.begin(), keep.end());
        kept_adj[si] = std::move(keep);
    });

    if (violation) throw NotNavigableError(violation->first, violation->second);
    return SearchGraph::from_adjacency(n, kept_adj);
}

}  // namespace navgraph
