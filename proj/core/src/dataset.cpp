#include "navgraph/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace navgraph {

Dataset make_dataset(std::size_t dim, std::vector<float> values) {
    if (values.empty() && dim == 0) return {};
    if (dim == 0) throw std::invalid_argument("dataset dimension must be at least 1");
    if (values.size() % dim != 0)
        throw std::invalid_argument("dataset values are not a multiple of dim=" + std::to_string(dim));
    for (float v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("dataset contains a non-finite value");
    }
    Dataset d;
    d.dim = dim;
    d.n = values.size() / dim;
    d.values = std::move(values);
    return d;
}

double distance(const Metric& metric, std::span<const float> a, std::span<const float> b) {
    (void)metric;  // Euclidean is the only kind
    if (a.size() != b.size())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = double(a[i]) - double(b[i]);
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double squared_distance(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = double(a[i]) - double(b[i]);
        sum += diff * diff;
    }
    return sum;
}

double counted_distance(CountedEvaluator& eval, const Query& q, NodeId id, const Dataset& data) {
    if (id >= data.n)
        throw std::out_of_range("node id " + std::to_string(id) + " out of range (n=" +
                                std::to_string(data.n) + ")");
    ++eval.count;
    if (eval.trace) eval.trace->push_back(id);
    return distance(eval.metric, q.vec, data.vec(id));
}

std::vector<NodeId> brute_force_knn(const Dataset& data, const Metric& metric,
                                    const Query& q, std::size_t k) {
    (void)metric;
    if (data.n == 0) throw std::invalid_argument("brute_force_knn: empty dataset");
    if (k == 0) throw std::invalid_argument("brute_force_knn: k must be at least 1");
    if (k > data.n)
        throw std::invalid_argument("brute_force_knn: k=" + std::to_string(k) +
                                    " exceeds n=" + std::to_string(data.n));
    if (q.vec.size() != data.dim)
        throw std::invalid_argument("brute_force_knn: query dimension mismatch");

    // Squared distances order identically to true distances.
    std::vector<std::pair<double, NodeId>> order(data.n);
    for (std::size_t i = 0; i < data.n; ++i)
        order[i] = {squared_distance(q.vec, data.vec(NodeId(i))), NodeId(i)};
    std::nth_element(order.begin(), order.begin() + (k - 1), order.end());
    std::sort(order.begin(), order.begin() + k);

    std::vector<NodeId> ids(k);
    for (std::size_t i = 0; i < k; ++i) ids[i] = order[i].second;
    return ids;
}

NodeId medoid(const Dataset& data, const Metric& metric) {
    (void)metric;
    if (data.n == 0) throw std::invalid_argument("medoid: empty dataset");
    std::vector<double> mean(data.dim, 0.0);
    for (std::size_t i = 0; i < data.n; ++i) {
        auto v = data.vec(NodeId(i));
        for (std::size_t d = 0; d < data.dim; ++d) mean[d] += v[d];
    }
    for (double& m : mean) m /= double(data.n);

    NodeId best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < data.n; ++i) {
        auto v = data.vec(NodeId(i));
        double sum = 0.0;
        for (std::size_t d = 0; d < data.dim; ++d) {
            const double diff = double(v[d]) - mean[d];
            sum += diff * diff;
        }
        if (sum < best_dist) {
            best_dist = sum;
            best = NodeId(i);
        }
    }
    return best;
}

}  // namespace navgraph
