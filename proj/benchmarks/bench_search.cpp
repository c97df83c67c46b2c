// Microbenchmarks for the search kernels. Distance computations dominate
// query cost, so counters are reported alongside wall time.

#include <benchmark/benchmark.h>

#include <random>

#include "navgraph/build.hpp"
#include "navgraph/dataset.hpp"
#include "navgraph/graph.hpp"
#include "navgraph/search.hpp"

namespace {

using namespace navgraph;

struct Fixture {
    Dataset data;
    SearchGraph graph;
    NodeId start;
    std::vector<Query> queries;

    static const Fixture& instance() {
        static Fixture f = make();
        return f;
    }

    static Fixture make() {
        constexpr std::size_t n = 4000;
        constexpr std::size_t dim = 32;
        std::mt19937_64 rng(7);
        std::normal_distribution<float> gauss(0.0f, 1.0f);
        std::vector<float> values(n * dim);
        for (float& v : values) v = gauss(rng);

        Fixture f;
        f.data = make_dataset(dim, std::move(values));
        f.graph = build_navigable(f.data, 7);
        f.start = medoid(f.data, {});
        for (int i = 0; i < 64; ++i) {
            Query q;
            q.vec.resize(dim);
            for (float& v : q.vec) v = gauss(rng);
            f.queries.push_back(std::move(q));
        }
        return f;
    }
};

void run_rule(benchmark::State& state, const TerminationRule& rule, std::size_t k) {
    const Fixture& f = Fixture::instance();
    std::size_t qi = 0;
    std::uint64_t total_dc = 0;
    std::uint64_t runs = 0;
    for (auto _ : state) {
        CountedEvaluator eval;
        const SearchResult r =
            run_search(f.graph, f.data, eval, f.start, f.queries[qi], k, rule);
        benchmark::DoNotOptimize(r.ids.data());
        total_dc += r.stats.distance_computations;
        ++runs;
        qi = (qi + 1) % f.queries.size();
    }
    state.counters["distance_computations"] =
        benchmark::Counter(double(total_dc) / double(runs));
}

void BM_GreedySearch(benchmark::State& state) {
    run_rule(state, TerminationRule::greedy(), 1);
}

void BM_ClassicBeamSearch(benchmark::State& state) {
    run_rule(state, TerminationRule::beam(std::uint32_t(state.range(0))), 10);
}

void BM_AdaptiveBeamSearch(benchmark::State& state) {
    run_rule(state, TerminationRule::adaptive(double(state.range(0)) / 100.0), 10);
}

void BM_BruteForce(benchmark::State& state) {
    const Fixture& f = Fixture::instance();
    std::size_t qi = 0;
    for (auto _ : state) {
        auto ids = brute_force_knn(f.data, {}, f.queries[qi], 10);
        benchmark::DoNotOptimize(ids.data());
        qi = (qi + 1) % f.queries.size();
    }
}

BENCHMARK(BM_GreedySearch);
BENCHMARK(BM_ClassicBeamSearch)->Arg(10)->Arg(40)->Arg(160);
BENCHMARK(BM_AdaptiveBeamSearch)->Arg(10)->Arg(50)->Arg(200);
BENCHMARK(BM_BruteForce);

}  // namespace

BENCHMARK_MAIN();
