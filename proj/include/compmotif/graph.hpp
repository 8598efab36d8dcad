#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace compmotif {

using NodeId = std::uint64_t;

struct Link {
    NodeId from = 0;
    NodeId to = 0;

    friend bool operator==(const Link &, const Link &) = default;
    friend auto operator<=>(const Link &, const Link &) = default;
};

/// Counts of input entries discarded while building a simple graph.
struct CleanupStats {
    std::uint64_t self_loops = 0;
    std::uint64_t duplicates = 0;
};

/// Compressed sparse adjacency for one direction: the neighbors of node i are
/// targets[offsets[i] .. offsets[i+1]), sorted ascending.
struct Adjacency {
    std::span<const NodeId> offsets;
    std::span<const NodeId> targets;
};

/// Immutable simple graph, directed or undirected.
///
/// Undirected links are stored in both endpoint lists of the forward adjacency
/// and there is no separate backward adjacency. Directed graphs keep outgoing
/// neighbors in the forward adjacency and incoming ones in the backward
/// adjacency. The storage may be owned vectors or a memory-mapped store; copies
/// share it.
class Graph {
public:
    Graph();

    /// Builds a simple graph on nodes 0..n-1. Self-loops and duplicate links
    /// (for undirected graphs, in either orientation) are dropped and counted.
    static Graph from_links(bool directed, NodeId n, std::vector<Link> links, CleanupStats * stats = nullptr);

    /// Wraps externally owned CSR arrays. `owner` keeps the arrays alive.
    static Graph from_adjacency(bool directed, NodeId n, std::uint64_t m, Adjacency forward,
                                Adjacency backward, std::shared_ptr<const void> owner);

    bool directed() const noexcept { return directed_; }
    NodeId num_nodes() const noexcept { return n_; }
    std::uint64_t num_links() const noexcept { return m_; }

    /// Outgoing neighbors (all neighbors when undirected).
    std::span<const NodeId> out(NodeId node) const noexcept
    {
        return forward_.targets.subspan(forward_.offsets[node], forward_.offsets[node + 1] - forward_.offsets[node]);
    }

    /// Incoming neighbors (all neighbors when undirected).
    std::span<const NodeId> in(NodeId node) const noexcept
    {
        const Adjacency & adj = directed_ ? backward_ : forward_;
        return adj.targets.subspan(adj.offsets[node], adj.offsets[node + 1] - adj.offsets[node]);
    }

    std::uint64_t out_degree(NodeId node) const noexcept { return forward_.offsets[node + 1] - forward_.offsets[node]; }
    std::uint64_t in_degree(NodeId node) const noexcept
    {
        const Adjacency & adj = directed_ ? backward_ : forward_;
        return adj.offsets[node + 1] - adj.offsets[node];
    }

    /// Number of link-sides at `node`: in + out when directed.
    std::uint64_t degree(NodeId node) const noexcept
    {
        return directed_ ? out_degree(node) + in_degree(node) : out_degree(node);
    }

    bool has_link(NodeId from, NodeId to) const noexcept;

    /// Every link once: (from, to) order when directed, (min, max) when undirected,
    /// sorted lexicographically.
    std::vector<Link> links() const;

    const Adjacency & forward() const noexcept { return forward_; }
    const Adjacency & backward() const noexcept { return backward_; }

    friend bool operator==(const Graph & a, const Graph & b);

private:
    bool directed_ = false;
    NodeId n_ = 0;
    std::uint64_t m_ = 0;
    Adjacency forward_;
    Adjacency backward_;
    std::shared_ptr<const void> owner_;
};

struct DegreeSequence {
    bool directed = false;
    std::vector<std::uint64_t> degrees;  // undirected
    std::vector<std::uint64_t> in;       // directed
    std::vector<std::uint64_t> out;      // directed
};

DegreeSequence degree_sequence(const Graph & g);

/// G[S]: node i of the result is nodes[i]; link (i, j) iff (nodes[i], nodes[j]) is a link of g.
Graph induced_subgraph(const Graph & g, std::span<const NodeId> nodes);

/// Reads whitespace-separated integer pairs, one link per line. Lines starting
/// with '#' or '%' and blank lines are skipped; tokens after the first two are
/// ignored. Node ids that already form exactly 0..n-1 are kept; any other id
/// set is compacted to 0..n-1 in order of first appearance.
Graph load_edgelist(std::istream & input, bool directed, CleanupStats * stats = nullptr);
Graph load_edgelist(const std::filesystem::path & path, bool directed, CleanupStats * stats = nullptr);

/// Writes one "from to" line per link in links() order.
void write_edgelist(const Graph & g, std::ostream & output);

}  // namespace compmotif
