// navgraph: build, prune, verify, search, and benchmark navigable search
// graphs for approximate nearest neighbor queries.
//
// Exit codes: 0 success, 1 verification failure (non-navigable graph or a
// violated approximation guarantee), 2 usage or IO error.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "navgraph/bench.hpp"
#include "navgraph/build.hpp"
#include "navgraph/dataset.hpp"
#include "navgraph/graph.hpp"
#include "navgraph/instances.hpp"
#include "navgraph/io.hpp"
#include "navgraph/search.hpp"
#include "navgraph/verify.hpp"

namespace {

using namespace navgraph;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RuleKind parse_rule_kind(const std::string& name) {
    if (name == "greedy") return RuleKind::Greedy;
    if (name == "beam") return RuleKind::Beam;
    if (name == "adaptive") return RuleKind::Adaptive;
    if (name == "adaptive-v2") return RuleKind::AdaptiveV2;
    if (name == "hybrid") return RuleKind::Hybrid;
    throw UsageError("unknown rule '" + name + "'");
}

TerminationRule make_rule(RuleKind kind, std::uint32_t b, bool has_b, double gamma,
                          bool has_gamma) {
    switch (kind) {
        case RuleKind::Greedy:
            return TerminationRule::greedy();
        case RuleKind::Beam:
            if (!has_b) throw UsageError("rule 'beam' requires --b");
            return TerminationRule::beam(b);
        case RuleKind::Adaptive:
            if (!has_gamma) throw UsageError("rule 'adaptive' requires --gamma");
            return TerminationRule::adaptive(gamma);
        case RuleKind::AdaptiveV2:
            if (!has_gamma) throw UsageError("rule 'adaptive-v2' requires --gamma");
            return TerminationRule::adaptive_v2(gamma);
        case RuleKind::Hybrid:
            if (!has_b || !has_gamma) throw UsageError("rule 'hybrid' requires --b and --gamma");
            return TerminationRule::hybrid(b, gamma);
    }
    throw UsageError("unknown rule");
}

NodeId resolve_start(const std::string& start, const Dataset& data, const Metric& metric) {
    if (start == "medoid") return medoid(data, metric);
    std::size_t pos = 0;
    const unsigned long id = std::stoul(start, &pos);
    if (pos != start.size()) throw UsageError("--start must be 'medoid' or a node id");
    if (id >= data.n) throw UsageError("--start node id out of range");
    return NodeId(id);
}

Query query_row(const Dataset& queries, std::size_t qi) {
    auto v = queries.vec(NodeId(qi));
    return Query{{v.begin(), v.end()}, std::uint32_t(qi)};
}

GroundTruth load_ground_truth(const std::string& path, std::size_t n) {
    GroundTruth truth;
    for (const auto& row : load_ivecs(path)) {
        std::vector<NodeId> ids;
        ids.reserve(row.size());
        for (std::int32_t v : row) {
            if (v < 0 || std::size_t(v) >= n)
                throw std::runtime_error(path + ": ground truth id out of range");
            ids.push_back(NodeId(v));
        }
        truth.push_back(std::move(ids));
    }
    return truth;
}

GroundTruth obtain_ground_truth(const std::string& path, const Dataset& data,
                                const Dataset& queries, std::size_t k, unsigned threads) {
    if (!path.empty()) return load_ground_truth(path, data.n);
    return compute_ground_truth(data, {}, queries, std::max<std::size_t>(k, 100), threads);
}

std::vector<TerminationRule> parse_grid(RuleKind family, const std::string& grid) {
    std::vector<TerminationRule> rules;
    std::stringstream ss(grid);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        switch (family) {
            case RuleKind::Beam:
                rules.push_back(TerminationRule::beam(std::uint32_t(std::stoul(token))));
                break;
            case RuleKind::Adaptive:
                rules.push_back(TerminationRule::adaptive(std::stod(token)));
                break;
            case RuleKind::AdaptiveV2:
                rules.push_back(TerminationRule::adaptive_v2(std::stod(token)));
                break;
            case RuleKind::Hybrid: {
                const auto sep = token.find(':');
                if (sep == std::string::npos)
                    throw UsageError("hybrid grid entries take the form b:gamma");
                rules.push_back(TerminationRule::hybrid(
                    std::uint32_t(std::stoul(token.substr(0, sep))),
                    std::stod(token.substr(sep + 1))));
                break;
            }
            case RuleKind::Greedy:
                throw UsageError("rule 'greedy' has no parameter to sweep");
        }
    }
    if (rules.empty()) throw UsageError("--grid is empty");
    return rules;
}

struct Options {
    std::string dataset, queries, graph, out, out_prefix, ground_truth;
    std::string rule = "greedy", start = "medoid";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::size_t k = 1;
    std::uint32_t b = 0;
    double gamma = 0.0;
    double alpha = 1.0;
    double target_recall = 0.9;
    double bin_width = 100.0;
    std::size_t memory_budget = kDefaultPruneMemoryBudget;
    std::size_t n = 100;
    double C = 50.0;
    std::string grid;
    bool exact = false;
    bool has_b = false, has_gamma = false;
};

int cmd_build_navigable(const Options& opt) {
    const Dataset data = load_fvecs(opt.dataset);
    const SearchGraph graph = build_navigable(data, opt.seed, {}, opt.threads);
    save_graph(opt.out, graph);
    const NavigableDegrees deg = navigable_degree_params(data.n);
    std::cout << "seed: " << opt.seed << "\n"
              << "nodes: " << graph.num_nodes() << "\n"
              << "nearest_edges: " << deg.nearest << "\n"
              << "random_edges: " << deg.random << "\n"
              << "average_out_degree: " << format_double(graph.average_out_degree()) << "\n"
              << "graph: " << opt.out << "\n";
    return kExitOk;
}

int cmd_prune(const Options& opt) {
    const Dataset data = load_fvecs(opt.dataset);
    const SearchGraph graph = load_graph(opt.graph);
    const SearchGraph pruned = prune_navigable(graph, data, {}, opt.memory_budget, opt.threads);
    save_graph(opt.out, pruned);
    std::cout << "nodes: " << pruned.num_nodes() << "\n"
              << "average_out_degree_before: " << format_double(graph.average_out_degree())
              << "\n"
              << "average_out_degree_after: " << format_double(pruned.average_out_degree())
              << "\n"
              << "graph: " << opt.out << "\n";
    return kExitOk;
}

int cmd_check(const Options& opt, bool alpha_variant) {
    const Dataset data = load_fvecs(opt.dataset);
    const SearchGraph graph = load_graph(opt.graph);
    const NavigabilityReport report =
        alpha_variant ? is_alpha_shortcut_reachable(graph, data, opt.alpha, {}, opt.threads)
                      : is_navigable(graph, data, {}, opt.threads);
    if (report.navigable) {
        std::cout << (alpha_variant ? "alpha_shortcut_reachable: true\n" : "navigable: true\n");
        return kExitOk;
    }
    std::cout << (alpha_variant ? "alpha_shortcut_reachable: false\n" : "navigable: false\n")
              << "witness: " << report.witness->first << " " << report.witness->second << "\n";
    return kExitVerificationFailure;
}

int cmd_ground_truth(const Options& opt) {
    const Dataset data = load_fvecs(opt.dataset);
    const Dataset queries = load_fvecs(opt.queries);
    const GroundTruth truth = compute_ground_truth(data, {}, queries, opt.k, opt.threads);
    std::vector<std::vector<std::int32_t>> rows;
    rows.reserve(truth.size());
    for (const auto& ids : truth) rows.emplace_back(ids.begin(), ids.end());
    save_ivecs(opt.out, rows);
    std::cout << "queries: " << truth.size() << "\n"
              << "depth: " << opt.k << "\n"
              << "ground_truth: " << opt.out << "\n";
    return kExitOk;
}

int cmd_search(const Options& opt) {
    const Dataset data = load_fvecs(opt.dataset);
    const SearchGraph graph = load_graph(opt.graph);
    const Dataset queries = load_fvecs(opt.queries);
    const Metric metric{};
    const TerminationRule rule =
        make_rule(parse_rule_kind(opt.rule), opt.b, opt.has_b, opt.gamma, opt.has_gamma);
    const NodeId start = resolve_start(opt.start, data, metric);

    double cost_sum = 0.0;
    for (std::size_t qi = 0; qi < queries.n; ++qi) {
        const Query q = query_row(queries, qi);
        CountedEvaluator eval;
        const SearchResult result = run_search(graph, data, eval, start, q, opt.k, rule);
        cost_sum += double(result.stats.distance_computations);

        std::cout << "query " << qi << ": ids";
        for (NodeId id : result.ids) std::cout << ' ' << id;
        std::cout << "\nquery " << qi << ": distances";
        for (double d : result.distances) std::cout << ' ' << format_double(d);
        std::cout << "\nquery " << qi
                  << ": distance_computations " << result.stats.distance_computations
                  << " expanded " << result.stats.expanded_count << " terminated_early "
                  << (result.stats.terminated_early ? 1 : 0) << "\n";
        if (result.stats.truncated)
            std::cout << "query " << qi << ": warning fewer than k nodes reachable\n";
        if (opt.exact) {
            const std::vector<NodeId> exact = brute_force_knn(data, metric, q, 1);
            const double true_d = distance(metric, q.vec, data.vec(exact[0]));
            const double got_d = result.distances.empty() ? 0.0 : result.distances[0];
            const double factor = true_d > 0.0 ? got_d / true_d : (got_d > 0.0 ? 0.0 : 1.0);
            std::cout << "query " << qi << ": approximation_factor "
                      << (true_d > 0.0 || got_d == 0.0 ? format_double(factor) : "inf") << "\n";
        }
    }
    std::cout << "queries: " << queries.n << "\n"
              << "mean_distance_computations: "
              << format_double(queries.n ? cost_sum / double(queries.n) : 0.0) << "\n";
    return kExitOk;
}

int cmd_sweep(const Options& opt) {
    const Dataset data = load_fvecs(opt.dataset);
    const SearchGraph graph = load_graph(opt.graph);
    const Dataset queries = load_fvecs(opt.queries);
    SweepSpec spec;
    spec.family = parse_rule_kind(opt.rule);
    spec.grid = parse_grid(spec.family, opt.grid);
    spec.k = opt.k;
    const GroundTruth truth =
        obtain_ground_truth(opt.ground_truth, data, queries, opt.k, opt.threads);
    const NodeId start = resolve_start(opt.start, data, {});
    const TradeoffCurve curve = sweep(graph, data, queries, truth, spec, start, opt.threads);
    write_csv(curve, opt.out);
    std::cout << "seed: " << opt.seed << "\n"
              << "points: " << curve.points.size() << "\n"
              << "curve: " << opt.out << "\n";
    return kExitOk;
}

int cmd_histogram(const Options& opt) {
    const Dataset data = load_fvecs(opt.dataset);
    const SearchGraph graph = load_graph(opt.graph);
    const Dataset queries = load_fvecs(opt.queries);
    const RuleKind family = parse_rule_kind(opt.rule);
    if (family != RuleKind::Beam && family != RuleKind::Adaptive)
        throw UsageError("histogram tuning supports --rule beam or adaptive");
    const GroundTruth truth =
        obtain_ground_truth(opt.ground_truth, data, queries, opt.k, opt.threads);
    const NodeId start = resolve_start(opt.start, data, {});

    const TunedRun tuned =
        family == RuleKind::Beam
            ? tune_beam_to_recall(graph, data, queries, truth, opt.k, start, opt.target_recall,
                                  0.005, 30, opt.threads)
            : tune_adaptive_to_recall(graph, data, queries, truth, opt.k, start,
                                      opt.target_recall, 0.005, 30, opt.threads);
    const Histogram hist = histogram(tuned.batch.per_query, opt.bin_width);
    write_csv(hist, opt.out);
    std::cout << "target_recall: " << format_double(opt.target_recall) << "\n"
              << "achieved_recall: " << format_double(tuned.achieved_recall) << "\n"
              << "converged: " << (tuned.converged ? 1 : 0) << "\n"
              << "tuned_param: "
              << (family == RuleKind::Beam ? std::to_string(tuned.rule.b)
                                           : format_double(tuned.rule.gamma))
              << "\n"
              << "mean_distance_computations: "
              << format_double(tuned.batch.mean_distance_computations) << "\n"
              << "histogram: " << opt.out << "\n";
    return kExitOk;
}

int cmd_counterexample(const Options& opt) {
    const CounterexampleInstance inst = counterexample_instance(opt.n, opt.C, opt.seed);
    save_fvecs(opt.out_prefix + ".fvecs", inst.data);
    save_graph(opt.out_prefix + ".navg", inst.graph);
    Dataset queries;
    queries.n = 1;
    queries.dim = 2;
    queries.values = inst.query.vec;
    save_fvecs(opt.out_prefix + "-queries.fvecs", queries);
    std::cout << "seed: " << opt.seed << "\n"
              << "n: " << opt.n << "\n"
              << "C: " << format_double(opt.C) << "\n"
              << "dataset: " << opt.out_prefix << ".fvecs\n"
              << "graph: " << opt.out_prefix << ".navg\n"
              << "queries: " << opt.out_prefix << "-queries.fvecs\n";
    return kExitOk;
}

int cmd_verify_theorem1(const Options& opt) {
    const Dataset data = load_fvecs(opt.dataset);
    const SearchGraph graph = load_graph(opt.graph);
    const Dataset queries = load_fvecs(opt.queries);
    const Metric metric{};
    const RuleKind family = opt.rule == "greedy" ? RuleKind::Adaptive : parse_rule_kind(opt.rule);
    if (family != RuleKind::Adaptive && family != RuleKind::AdaptiveV2)
        throw UsageError("verify-theorem1 supports --rule adaptive or adaptive-v2");
    const TerminationRule rule = family == RuleKind::Adaptive
                                     ? TerminationRule::adaptive(opt.gamma)
                                     : TerminationRule::adaptive_v2(opt.gamma);
    const NodeId start = resolve_start(opt.start, data, metric);

    bool all_pass = true;
    for (std::size_t qi = 0; qi < queries.n; ++qi) {
        const Query q = query_row(queries, qi);
        CountedEvaluator eval;
        const SearchResult result = run_search(graph, data, eval, start, q, opt.k, rule);
        const TheoremVerdict verdict = verify_theorem1(data, metric, q, opt.gamma, result);
        if (verdict.pass) {
            std::cout << "query " << qi << ": pass\n";
        } else {
            all_pass = false;
            std::cout << "query " << qi << ": fail violator " << *verdict.violator << " bound "
                      << format_double(verdict.bound) << "\n";
        }
    }
    std::cout << (all_pass ? "verdict: pass\n" : "verdict: fail\n");
    return all_pass ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"navigable-graph nearest neighbor search toolkit"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    };
    auto add_rule_flags = [&](CLI::App* sub) {
        sub->add_option("--rule", opt.rule, "greedy|beam|adaptive|adaptive-v2|hybrid");
        sub->add_option("--k", opt.k, "number of neighbors");
        sub->add_option("--b", opt.b, "beam width")->each([&](const std::string&) {
            opt.has_b = true;
        });
        sub->add_option("--gamma", opt.gamma, "adaptive slack")->each([&](const std::string&) {
            opt.has_gamma = true;
        });
        sub->add_option("--start", opt.start, "entry point: 'medoid' or a node id");
    };

    CLI::App* build = app.add_subcommand("build-navigable", "build a navigable graph");
    build->add_option("--dataset", opt.dataset)->required();
    build->add_option("--out", opt.out)->required();
    build->add_option("--seed", opt.seed, "construction seed");
    add_common(build);

    CLI::App* prune = app.add_subcommand("prune", "sparsify while keeping navigability");
    prune->add_option("--dataset", opt.dataset)->required();
    prune->add_option("--graph", opt.graph)->required();
    prune->add_option("--out", opt.out)->required();
    prune->add_option("--memory-budget", opt.memory_budget,
                      "bytes allowed for the pairwise distance matrix");
    add_common(prune);

    CLI::App* checknav = app.add_subcommand("check-navigable", "verify navigability");
    checknav->add_option("--dataset", opt.dataset)->required();
    checknav->add_option("--graph", opt.graph)->required();
    add_common(checknav);

    CLI::App* checkalpha = app.add_subcommand("check-alpha", "verify alpha-shortcut reachability");
    checkalpha->add_option("--dataset", opt.dataset)->required();
    checkalpha->add_option("--graph", opt.graph)->required();
    checkalpha->add_option("--alpha", opt.alpha)->required();
    add_common(checkalpha);

    CLI::App* gt = app.add_subcommand("ground-truth", "compute exact nearest neighbors");
    gt->add_option("--dataset", opt.dataset)->required();
    gt->add_option("--queries", opt.queries)->required();
    gt->add_option("--k", opt.k, "ground truth depth");
    gt->add_option("--out", opt.out)->required();
    add_common(gt);

    CLI::App* search = app.add_subcommand("search", "run graph search for each query");
    search->add_option("--dataset", opt.dataset)->required();
    search->add_option("--graph", opt.graph)->required();
    search->add_option("--queries", opt.queries)->required();
    search->add_flag("--exact", opt.exact, "also report the brute-force approximation factor");
    add_rule_flags(search);
    add_common(search);

    CLI::App* sweepcmd = app.add_subcommand("sweep", "recall/cost curve over a parameter grid");
    sweepcmd->add_option("--dataset", opt.dataset)->required();
    sweepcmd->add_option("--graph", opt.graph)->required();
    sweepcmd->add_option("--queries", opt.queries)->required();
    sweepcmd->add_option("--grid", opt.grid)->required();
    sweepcmd->add_option("--out", opt.out)->required();
    sweepcmd->add_option("--ground-truth", opt.ground_truth, "ivecs cache (computed if absent)");
    sweepcmd->add_option("--seed", opt.seed);
    add_rule_flags(sweepcmd);
    add_common(sweepcmd);

    CLI::App* hist = app.add_subcommand("histogram", "per-query cost histogram at matched recall");
    hist->add_option("--dataset", opt.dataset)->required();
    hist->add_option("--graph", opt.graph)->required();
    hist->add_option("--queries", opt.queries)->required();
    hist->add_option("--target-recall", opt.target_recall)->required();
    hist->add_option("--bin-width", opt.bin_width);
    hist->add_option("--out", opt.out)->required();
    hist->add_option("--ground-truth", opt.ground_truth, "ivecs cache (computed if absent)");
    add_rule_flags(hist);
    add_common(hist);

    CLI::App* counter = app.add_subcommand("counterexample",
                                           "emit the beam-search failure instance");
    counter->add_option("--n", opt.n)->required();
    counter->add_option("--C", opt.C)->required();
    counter->add_option("--out-prefix", opt.out_prefix)->required();
    counter->add_option("--seed", opt.seed);

    CLI::App* verify = app.add_subcommand("verify-theorem1",
                                          "check the adaptive approximation guarantee");
    verify->add_option("--dataset", opt.dataset)->required();
    verify->add_option("--graph", opt.graph)->required();
    verify->add_option("--queries", opt.queries)->required();
    verify->add_option("--gamma", opt.gamma)->required();
    add_rule_flags(verify);
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (build->parsed()) return cmd_build_navigable(opt);
        if (prune->parsed()) return cmd_prune(opt);
        if (checknav->parsed()) return cmd_check(opt, false);
        if (checkalpha->parsed()) return cmd_check(opt, true);
        if (gt->parsed()) return cmd_ground_truth(opt);
        if (search->parsed()) return cmd_search(opt);
        if (sweepcmd->parsed()) return cmd_sweep(opt);
        if (hist->parsed()) return cmd_histogram(opt);
        if (counter->parsed()) return cmd_counterexample(opt);
        if (verify->parsed()) return cmd_verify_theorem1(opt);
    } catch (const NotNavigableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
