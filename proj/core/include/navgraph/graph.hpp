#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "navgraph/dataset.hpp"

namespace navgraph {

/// Directed adjacency in compact offset + neighbor-list (CSR) form.
/// Immutable after construction; safe to share across concurrent readers.
class SearchGraph {
public:
    SearchGraph() = default;

    /// Validates and packs adjacency lists: ids in range, no self-loops,
    /// no duplicates within one node's list. List order is preserved.
    static SearchGraph from_adjacency(std::size_t n,
                                      const std::vector<std::vector<NodeId>>& adjacency);

    std::size_t num_nodes() const { return offsets_.size() - 1; }
    std::uint64_t num_edges() const { return neighbors_.size(); }
    double average_out_degree() const {
        return num_nodes() == 0 ? 0.0 : double(num_edges()) / double(num_nodes());
    }
    std::span<const NodeId> neighbors(NodeId v) const {
        return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    std::size_t out_degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    const std::vector<std::uint64_t>& offsets() const { return offsets_; }
    const std::vector<NodeId>& neighbor_ids() const { return neighbors_; }

    bool operator==(const SearchGraph&) const = default;

private:
    std::vector<std::uint64_t> offsets_{0};
    std::vector<NodeId> neighbors_;
};

/// Complete directed graph on n nodes (every ordered pair, no self-loops).
SearchGraph complete_graph(std::size_t n);

/// Binary graph format: magic "NAVG", u32 version=1, u32 node count, then per
/// node a u32 out-degree followed by that many u32 neighbor ids, all
/// little-endian. This is also the import path for externally built graphs.
SearchGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const SearchGraph& graph);

}  // namespace navgraph
