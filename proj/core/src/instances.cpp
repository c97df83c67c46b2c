#include "navgraph/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace navgraph {

namespace {

constexpr double kClusterRadius = 1e-3;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterexampleInstance counterexample_instance(std::size_t n, double C, std::uint64_t seed) {
    if (n < 5) throw std::invalid_argument("counterexample instance needs n >= 5");
    if (!(C > 1.0)) throw std::invalid_argument("counterexample instance needs C > 1");

    // The decoys sit at distance ~ offset_x - 1 from the query while the true
    // neighbor is at exactly 1, so the approximation factor of a decoy answer
    // is at least offset_x - 1 - radius > C, with one extra radius of slack
    // to absorb float rounding of the coordinates.
    const double offset_x = C + 1.0 + 2.0 * kClusterRadius;

    std::vector<float> values;
    values.reserve(n * 2);
    auto push_point = [&](double x, double y) {
        values.push_back(float(x));
        values.push_back(float(y));
    };
    push_point(0.0, 0.0);       // start
    push_point(1.0, 1.0);       // bridge
    push_point(offset_x, 1.0);  // true nearest neighbor

    std::mt19937_64 rng(mix_seed(seed, 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 3; i < n; ++i) {
        const double r = kClusterRadius * std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        push_point(1.0 + r * std::cos(theta), r * std::sin(theta));
    }

    std::vector<std::vector<NodeId>> adj(n);
    auto connect = [&](NodeId a, NodeId b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    connect(1, 2);  // bridge <-> true neighbor
    for (std::size_t j = 3; j < n; ++j) {
        connect(0, NodeId(j));
        connect(1, NodeId(j));
        for (std::size_t i = j + 1; i < n; ++i) connect(NodeId(j), NodeId(i));
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    CounterexampleInstance inst;
    inst.data = make_dataset(2, std::move(values));
    inst.graph = SearchGraph::from_adjacency(n, adj);
    inst.query = Query{{float(offset_x), 0.0f}, std::nullopt};
    inst.offset_x = offset_x;
    return inst;
}

std::size_t hypercube_dimension(std::size_t n, double alpha) {
    if (n < 2) throw std::invalid_argument("hypercube instance needs n >= 2");
    if (!(alpha > 1.0)) throw std::invalid_argument("hypercube instance needs alpha > 1");
    constexpr double c = 64.0;
    const double margin = 1.0 - 1.0 / alpha;
    return std::size_t(std::ceil(c * std::log(double(n)) / (margin * margin)));
}

namespace {

// Squared pairwise distances of `data`, row-major upper triangle flattened
// to (i, j) with i < j.
std::vector<double> pairwise_squared(const Dataset& data) {
    std::vector<double> out;
    out.reserve(data.n * (data.n - 1) / 2);
    for (std::size_t i = 0; i < data.n; ++i)
        for (std::size_t j = i + 1; j < data.n; ++j)
            out.push_back(squared_distance(data.vec(NodeId(i)), data.vec(NodeId(j))));
    return out;
}

bool hypercube_properties_hold(const Dataset& data, double alpha) {
    std::vector<double> sq = pairwise_squared(data);
    const double lower = 1.0 / alpha;
    for (double d : sq)
        if (!(d > lower && d <= 1.0)) return false;
    std::sort(sq.begin(), sq.end());
    return std::adjacent_find(sq.begin(), sq.end()) == sq.end();
}

}  // namespace

Dataset random_hypercube_instance(std::size_t n, double alpha, std::uint64_t rng_seed) {
    const std::size_t dim = hypercube_dimension(n, alpha);
    constexpr int kMaxAttempts = 32;
    constexpr double kNoise = 1e-9;

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(mix_seed(rng_seed, std::uint64_t(attempt)));
        std::vector<float> values(n * dim);
        std::bernoulli_distribution sign(0.5);
        for (float& v : values) v = sign(rng) ? 1.0f : -1.0f;

        Dataset data = make_dataset(dim, std::move(values));

        double max_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                max_sq = std::max(max_sq,
                                  squared_distance(data.vec(NodeId(i)), data.vec(NodeId(j))));
        const double scale = 1.0 / std::sqrt(max_sq);

        std::uniform_real_distribution<double> noise(-kNoise, kNoise);
        for (float& v : data.values) v = float(double(v) * scale + noise(rng));

        if (hypercube_properties_hold(data, alpha)) return data;
    }
    throw std::runtime_error("hypercube instance: distance range/uniqueness checks kept failing");
}

}  // namespace navgraph
