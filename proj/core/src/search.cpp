#include "navgraph/search.hpp"

#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>

namespace navgraph {

namespace {

using Entry = std::pair<double, NodeId>;  // (distance, id), the global tie-break order

// Bounded set of the `cap` closest discovered nodes under (distance, id)
// order, tracking the best entry that fell outside. The tracked reject is the
// (cap+1)-th smallest of everything inserted, which rule checks need when the
// popped node itself sits inside the best set.
class BoundedBest {
public:
    explicit BoundedBest(std::size_t cap) : cap_(cap) {}

    // Returns true when the entry is kept among the cap best.
    bool insert(double d, NodeId id) {
        Entry e{d, id};
        if (items_.size() < cap_) {
            items_.insert(e);
            return true;
        }
        auto worst = std::prev(items_.end());
        if (e < *worst) {
            note_reject(*worst);
            items_.erase(worst);
            items_.insert(e);
            return true;
        }
        note_reject(e);
        return false;
    }

    bool contains(double d, NodeId id) const { return items_.count({d, id}) > 0; }
    std::size_t size() const { return items_.size(); }
    double best_distance() const { return items_.begin()->first; }
    double worst_distance() const { return std::prev(items_.end())->first; }
    bool has_reject() const { return has_reject_; }
    double reject_distance() const { return reject_.first; }
    const std::set<Entry>& items() const { return items_; }

private:
    void note_reject(const Entry& e) {
        if (!has_reject_ || e < reject_) {
            reject_ = e;
            has_reject_ = true;
        }
    }

    std::set<Entry> items_;
    std::size_t cap_;
    Entry reject_{};
    bool has_reject_ = false;
};

struct RuleParams {
    RuleKind kind;
    std::size_t cap;     // k for Greedy/Adaptive/AdaptiveV2, b for Beam/Hybrid
    double multiplier;   // 1 or 1+gamma
    double gamma;
};

RuleParams resolve_rule(const TerminationRule& rule, std::size_t k, std::size_t n) {
    RuleParams p{rule.kind, k, 1.0, rule.gamma};
    switch (rule.kind) {
        case RuleKind::Greedy:
            break;
        case RuleKind::Beam:
        case RuleKind::Hybrid:
            if (rule.b < k)
                throw std::invalid_argument("beam width b=" + std::to_string(rule.b) +
                                            " must be at least k=" + std::to_string(k));
            p.cap = rule.b;
            if (rule.kind == RuleKind::Hybrid) {
                if (!(rule.gamma >= 0.0))
                    throw std::invalid_argument("gamma must be >= 0");
                p.multiplier = 1.0 + rule.gamma;
            }
            break;
        case RuleKind::Adaptive:
            if (!(rule.gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
            p.multiplier = 1.0 + rule.gamma;
            break;
        case RuleKind::AdaptiveV2:
            if (!(rule.gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
            break;
    }
    (void)n;
    return p;
}

// Termination check against the popped node. For all rules except
// AdaptiveV2 the witnesses range over discovered nodes other than x: the
// smallest such cap-th distance is best.worst_distance() when x is outside
// the best set and the tracked reject when x is inside it.
bool rule_fires(const RuleParams& p, double dx, NodeId x, const BoundedBest& best,
                std::size_t discovered) {
    if (p.kind == RuleKind::AdaptiveV2) {
        if (best.size() < p.cap) return false;  // fewer than k discovered
        return dx >= best.best_distance() + p.gamma * best.worst_distance();
    }
    if (discovered - 1 < p.cap) return false;
    double kth_other;
    if (best.contains(dx, x)) {
        kth_other = best.reject_distance();  // reject exists: discovered > cap
    } else {
        kth_other = best.worst_distance();
    }
    return p.multiplier * kth_other <= dx;
}

// Queue-insertion filter for the optimized variants: skip y only when it is
// certain that popping y later would fire the rule. Thresholds only shrink as
// more nodes are discovered, so a comparison against the current best set is
// a safe proof. `kept` tells whether y just entered the best set.
bool can_skip_queue(const RuleParams& p, double dy, bool kept, const BoundedBest& best) {
    if (best.size() < p.cap) return false;
    if (p.kind == RuleKind::AdaptiveV2)
        return dy >= best.best_distance() + p.gamma * best.worst_distance();
    if (p.multiplier == 1.0) return !kept;  // tie-aware via the (distance, id) order
    return !kept && dy >= p.multiplier * best.worst_distance();
}

SearchResult search_engine(const SearchGraph& graph, const Dataset& data, CountedEvaluator& eval,
                           NodeId start, const Query& q, std::size_t k,
                           const TerminationRule& rule, bool filter_queue, SearchTrace* trace) {
    const std::size_t n = graph.num_nodes();
    if (n == 0) throw std::invalid_argument("search: empty graph");
    if (data.n != n)
        throw std::invalid_argument("search: graph has " + std::to_string(n) +
                                    " nodes but dataset has " + std::to_string(data.n));
    if (start >= n) throw std::out_of_range("search: start node out of range");
    if (k == 0) throw std::invalid_argument("search: k must be at least 1");
    if (k > n)
        throw std::invalid_argument("search: k=" + std::to_string(k) +
                                    " exceeds n=" + std::to_string(n));
    if (q.vec.size() != data.dim) throw std::invalid_argument("search: query dimension mismatch");
    for (float v : q.vec)
        if (!std::isfinite(v)) throw std::invalid_argument("search: non-finite query value");

    const RuleParams params = resolve_rule(rule, k, n);

    std::vector<std::uint8_t> discovered(n, 0);
    std::size_t discovered_count = 0;
    BoundedBest best(params.cap);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> candidates;

    auto discover = [&](NodeId y) {
        discovered[y] = 1;
        ++discovered_count;
        const double dy = counted_distance(eval, q, y, data);
        const bool kept = best.insert(dy, y);
        if (!filter_queue || !can_skip_queue(params, dy, kept, best)) candidates.emplace(dy, y);
    };

    discover(start);

    SearchStats stats;
    while (!candidates.empty()) {
        const auto [dx, x] = candidates.top();
        candidates.pop();
        if (rule_fires(params, dx, x, best, discovered_count)) {
            stats.terminated_early = true;
            break;
        }
        ++stats.expanded_count;
        if (trace) trace->expanded.push_back(x);
        for (NodeId y : graph.neighbors(x))
            if (!discovered[y]) discover(y);
    }

    SearchResult result;
    const std::size_t take = std::min(k, best.size());
    result.ids.reserve(take);
    result.distances.reserve(take);
    for (const Entry& e : best.items()) {
        if (result.ids.size() == take) break;
        result.ids.push_back(e.second);
        result.distances.push_back(e.first);
    }
    stats.distance_computations = discovered_count;
    stats.truncated = result.ids.size() < k;
    result.stats = stats;
    return result;
}

}  // namespace

std::string rule_name(RuleKind kind) {
    switch (kind) {
        case RuleKind::Greedy: return "greedy";
        case RuleKind::Beam: return "beam";
        case RuleKind::Adaptive: return "adaptive";
        case RuleKind::AdaptiveV2: return "adaptive-v2";
        case RuleKind::Hybrid: return "hybrid";
    }
    return "unknown";
}

SearchResult generalized_beam_search(const SearchGraph& graph, const Dataset& data,
                                     CountedEvaluator& eval, NodeId start, const Query& q,
                                     std::size_t k, const TerminationRule& rule,
                                     SearchTrace* trace) {
    return search_engine(graph, data, eval, start, q, k, rule, /*filter_queue=*/false, trace);
}

SearchResult adaptive_beam_search(const SearchGraph& graph, const Dataset& data,
                                  CountedEvaluator& eval, NodeId start, const Query& q,
                                  std::size_t k, double gamma, SearchTrace* trace) {
    return search_engine(graph, data, eval, start, q, k, TerminationRule::adaptive(gamma),
                         /*filter_queue=*/true, trace);
}

SearchResult classic_beam_search(const SearchGraph& graph, const Dataset& data,
                                 CountedEvaluator& eval, NodeId start, const Query& q,
                                 std::size_t k, std::uint32_t b, SearchTrace* trace) {
    return search_engine(graph, data, eval, start, q, k, TerminationRule::beam(b),
                         /*filter_queue=*/true, trace);
}

SearchResult run_search(const SearchGraph& graph, const Dataset& data, CountedEvaluator& eval,
                        NodeId start, const Query& q, std::size_t k, const TerminationRule& rule,
                        SearchTrace* trace) {
    return search_engine(graph, data, eval, start, q, k, rule, /*filter_queue=*/true, trace);
}

}  // namespace navgraph
