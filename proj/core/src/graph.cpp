#include "navgraph/graph.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace navgraph {

SearchGraph SearchGraph::from_adjacency(std::size_t n,
                                        const std::vector<std::vector<NodeId>>& adjacency) {
    if (adjacency.size() != n)
        throw std::invalid_argument("adjacency has " + std::to_string(adjacency.size()) +
                                    " lists for n=" + std::to_string(n));
    if (n > std::numeric_limits<NodeId>::max())
        throw std::invalid_argument("node count exceeds 32-bit id range");

    SearchGraph g;
    g.offsets_.assign(1, 0);
    g.offsets_.reserve(n + 1);
    std::vector<NodeId> seen;
    for (std::size_t v = 0; v < n; ++v) {
        seen.assign(adjacency[v].begin(), adjacency[v].end());
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw std::invalid_argument("duplicate neighbor in list of node " + std::to_string(v));
        for (NodeId u : adjacency[v]) {
            if (u >= n)
                throw std::invalid_argument("neighbor id " + std::to_string(u) +
                                            " out of range at node " + std::to_string(v));
            if (u == v)
                throw std::invalid_argument("self-loop at node " + std::to_string(v));
            g.neighbors_.push_back(u);
        }
        g.offsets_.push_back(g.neighbors_.size());
    }
    return g;
}

SearchGraph complete_graph(std::size_t n) {
    std::vector<std::vector<NodeId>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        adj[v].reserve(n - 1);
        for (std::size_t u = 0; u < n; ++u)
            if (u != v) adj[v].push_back(NodeId(u));
    }
    return SearchGraph::from_adjacency(n, adj);
}

namespace {

constexpr char kMagic[4] = {'N', 'A', 'V', 'G'};
constexpr std::uint32_t kVersion = 1;

std::uint32_t read_u32(const std::string& buf, std::size_t offset) {
    std::uint32_t v;
    std::memcpy(&v, buf.data() + offset, 4);
    return v;
}

void require_bytes(const std::string& path, const std::string& buf, std::size_t offset,
                   std::size_t need, const char* what) {
    if (buf.size() - offset < need)
        throw std::runtime_error(path + ": truncated " + what + " at byte " +
                                 std::to_string(offset));
}

}  // namespace

SearchGraph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw std::runtime_error(path + ": read failed");

    require_bytes(path, buf, 0, 4, "magic");
    if (std::memcmp(buf.data(), kMagic, 4) != 0)
        throw std::runtime_error(path + ": bad magic at byte 0");
    require_bytes(path, buf, 4, 4, "version field");
    const std::uint32_t version = read_u32(buf, 4);
    if (version != kVersion)
        throw std::runtime_error(path + ": unsupported version " + std::to_string(version) +
                                 " at byte 4");
    require_bytes(path, buf, 8, 4, "node count");
    const std::uint32_t n = read_u32(buf, 8);

    std::vector<std::vector<NodeId>> adj(n);
    std::size_t offset = 12;
    for (std::uint32_t v = 0; v < n; ++v) {
        require_bytes(path, buf, offset, 4, "degree field");
        const std::uint32_t degree = read_u32(buf, offset);
        offset += 4;
        if ((buf.size() - offset) / 4 < degree)
            throw std::runtime_error(path + ": neighbor list of node " + std::to_string(v) +
                                     " overflows remaining bytes at byte " +
                                     std::to_string(offset));
        adj[v].resize(degree);
        if (degree > 0) std::memcpy(adj[v].data(), buf.data() + offset, std::size_t(degree) * 4);
        offset += std::size_t(degree) * 4;
    }
    if (offset != buf.size())
        throw std::runtime_error(path + ": trailing data at byte " + std::to_string(offset));

    try {
        return SearchGraph::from_adjacency(n, adj);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_graph(const std::string& path, const SearchGraph& graph) {
    if (graph.num_nodes() > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument(path + ": graph too large for 32-bit node count");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");

    auto put_u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    out.write(kMagic, 4);
    put_u32(kVersion);
    put_u32(std::uint32_t(graph.num_nodes()));
    for (std::size_t v = 0; v < graph.num_nodes(); ++v) {
        auto nbrs = graph.neighbors(NodeId(v));
        put_u32(std::uint32_t(nbrs.size()));
        if (!nbrs.empty())
            out.write(reinterpret_cast<const char*>(nbrs.data()), std::streamsize(nbrs.size() * 4));
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace navgraph
