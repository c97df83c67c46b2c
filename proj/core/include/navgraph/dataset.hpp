#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace navgraph {

using NodeId = std::uint32_t;

/// In-memory vector database. Vectors are stored row-major and contiguous;
/// ids are implicit 0..n-1.
struct Dataset {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<float> values;  // n * dim entries

    std::span<const float> vec(NodeId id) const {
        return {values.data() + std::size_t(id) * dim, dim};
    }
};

/// Builds a dataset from row-major values, checking shape and finiteness.
Dataset make_dataset(std::size_t dim, std::vector<float> values);

/// A query point. `id` is carried for reporting only.
struct Query {
    std::vector<float> vec;
    std::optional<std::uint32_t> id;
};

enum class MetricKind { Euclidean };

/// Distance descriptor. Euclidean is the only built-in kind; the enum leaves
/// room for future metrics without changing call sites.
struct Metric {
    MetricKind kind = MetricKind::Euclidean;
};

/// True (non-squared) Euclidean distance, accumulated in double.
double distance(const Metric& metric, std::span<const float> a, std::span<const float> b);

/// Squared Euclidean distance. Only for ordering fast paths; termination
/// rules and reported distances always use the true distance.
double squared_distance(std::span<const float> a, std::span<const float> b);

/// Per-query distance evaluation with exact cost accounting: the counter is
/// incremented exactly once per call. Not shareable between concurrent
/// queries. `trace`, when set, records every evaluated node id (test hook).
struct CountedEvaluator {
    Metric metric;
    std::uint64_t count = 0;
    std::vector<NodeId>* trace = nullptr;
};

double counted_distance(CountedEvaluator& eval, const Query& q, NodeId id, const Dataset& data);

/// Exact k nearest ids: ascending distance, ties broken by ascending id.
std::vector<NodeId> brute_force_knn(const Dataset& data, const Metric& metric,
                                    const Query& q, std::size_t k);

/// Database point closest to the coordinate-wise mean (ties to the smaller
/// id). Used as the deterministic entry point for searches.
NodeId medoid(const Dataset& data, const Metric& metric);

/// Per-query lists of true nearest ids, each sorted ascending by
/// (distance, id). Depth must cover any k used for recall.
using GroundTruth = std::vector<std::vector<NodeId>>;

}  // namespace navgraph
