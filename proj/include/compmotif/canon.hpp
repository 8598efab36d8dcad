#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compmotif/graph.hpp"

namespace compmotif {

/// Largest graph canonicalize() accepts.
inline constexpr int kMaxCanonNodes = 12;

using AdjacencyMask = std::uint16_t;
static_assert(sizeof(AdjacencyMask) * 8 >= kMaxCanonNodes);

/// A small graph with its nodes in canonical order.
///
/// The key is the graph's text form: graph6 for undirected graphs, digraph6
/// ('&' prefix, row-major adjacency matrix) for directed ones. Isomorphic
/// inputs to canonicalize() produce identical keys.
class CanonicalGraph {
public:
    CanonicalGraph() = default;

    /// Builds from adjacency rows that are already in canonical order.
    CanonicalGraph(bool directed, int size, std::span<const AdjacencyMask> out_rows);

    /// Parses graph6 / digraph6 text. Does not canonicalize.
    static CanonicalGraph from_text(std::string_view text);

    bool directed() const noexcept { return directed_; }
    int size() const noexcept { return size_; }
    bool has_link(int from, int to) const noexcept { return (out_[from] >> to) & 1u; }
    AdjacencyMask out_row(int node) const noexcept { return out_[node]; }
    std::uint64_t num_links() const noexcept;

    /// Links in canonical order: (from, to) when directed, (min, max) when
    /// undirected, sorted lexicographically.
    std::vector<Link> links() const;

    Graph to_graph() const;

    const std::string & key() const noexcept { return key_; }

    friend bool operator==(const CanonicalGraph & a, const CanonicalGraph & b) { return a.key_ == b.key_; }
    friend bool operator<(const CanonicalGraph & a, const CanonicalGraph & b) { return a.key_ < b.key_; }

private:
    bool directed_ = false;
    int size_ = 0;
    std::array<AdjacencyMask, kMaxCanonNodes> out_{};
    std::string key_;
};

struct Canonization {
    CanonicalGraph graph;
    /// order[p] is the input node placed at canonical position p.
    std::vector<int> order;
};

/// Canonical labeling by ordered-partition refinement plus backtracking over
/// the remaining cells. The canonical order is the one whose adjacency code is
/// lexicographically smallest among all leaves of the search tree; the code
/// lists, for each position p in turn, the links between p and positions
/// before it. Throws InvalidArgument when the graph has more than
/// kMaxCanonNodes nodes.
Canonization canonicalize(const Graph & g);

/// Same, from adjacency rows: bit j of out_rows[i] set iff link i -> j.
Canonization canonicalize(bool directed, std::span<const AdjacencyMask> out_rows);

/// True iff the graph has exactly one weakly connected component.
bool is_connected(const Graph & g);

/// Adjacency rows of G[nodes]; nodes.size() <= kMaxCanonNodes.
std::array<AdjacencyMask, kMaxCanonNodes> induced_rows(const Graph & g, std::span<const NodeId> nodes);

}  // namespace compmotif
