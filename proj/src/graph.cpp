#include "compmotif/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>

#include "compmotif/error.hpp"
#include "edgelist_parse.hpp"

namespace compmotif {

namespace {

    struct OwnedStorage {
        std::vector<NodeId> forward_offsets;
        std::vector<NodeId> forward_targets;
        std::vector<NodeId> backward_offsets;
        std::vector<NodeId> backward_targets;
    };

    // Fills CSR arrays from links sorted by (from, to). `mirror` adds the reverse
    // entry to the same adjacency (undirected graphs).
    void fill_csr(NodeId n, const std::vector<Link> & links, bool mirror, std::vector<NodeId> & offsets,
                  std::vector<NodeId> & targets)
    {
        offsets.assign(n + 1, 0);
        for (const Link & l : links) {
            ++offsets[l.from + 1];
            if (mirror)
                ++offsets[l.to + 1];
        }
        for (NodeId i = 0; i < n; ++i)
            offsets[i + 1] += offsets[i];
        targets.resize(offsets[n]);
        std::vector<NodeId> cursor(offsets.begin(), offsets.end() - 1);
        // For a fixed node, entries arrive in increasing order: reverse entries
        // (from < node) come from earlier links than forward ones (from == node).
        for (const Link & l : links) {
            targets[cursor[l.from]++] = l.to;
            if (mirror)
                targets[cursor[l.to]++] = l.from;
        }
    }

}  // namespace

Graph::Graph()
{
    static const NodeId zero = 0;
    forward_.offsets = std::span<const NodeId>(&zero, 1);
    backward_.offsets = std::span<const NodeId>(&zero, 1);
}

Graph Graph::from_links(bool directed, NodeId n, std::vector<Link> links, CleanupStats * stats)
{
    CleanupStats local;
    std::erase_if(links, [&](const Link & l) {
        if (l.from >= n || l.to >= n)
            throw InvalidArgument("link endpoint out of range");
        if (l.from == l.to) {
            ++local.self_loops;
            return true;
        }
        return false;
    });
    if (!directed)
        for (Link & l : links)
            if (l.from > l.to)
                std::swap(l.from, l.to);
    std::sort(links.begin(), links.end());
    auto last = std::unique(links.begin(), links.end());
    local.duplicates = static_cast<std::uint64_t>(links.end() - last);
    links.erase(last, links.end());
    if (stats)
        *stats = local;

    auto storage = std::make_shared<OwnedStorage>();
    fill_csr(n, links, !directed, storage->forward_offsets, storage->forward_targets);
    if (directed) {
        std::vector<Link> reversed;
        reversed.reserve(links.size());
        for (const Link & l : links)
            reversed.push_back({l.to, l.from});
        std::sort(reversed.begin(), reversed.end());
        fill_csr(n, reversed, false, storage->backward_offsets, storage->backward_targets);
    }
    else {
        storage->backward_offsets.assign(n + 1, 0);
    }

    Adjacency fwd{storage->forward_offsets, storage->forward_targets};
    Adjacency bwd{storage->backward_offsets, storage->backward_targets};
    return from_adjacency(directed, n, links.size(), fwd, bwd, std::move(storage));
}

Graph Graph::from_adjacency(bool directed, NodeId n, std::uint64_t m, Adjacency forward, Adjacency backward,
                            std::shared_ptr<const void> owner)
{
    Graph g;
    g.directed_ = directed;
    g.n_ = n;
    g.m_ = m;
    g.forward_ = forward;
    g.backward_ = backward;
    g.owner_ = std::move(owner);
    return g;
}

bool Graph::has_link(NodeId from, NodeId to) const noexcept
{
    if (from >= n_ || to >= n_)
        return false;
    auto a = out(from);
    if (!directed_) {
        auto b = out(to);
        if (b.size() < a.size())
            return std::binary_search(b.begin(), b.end(), from);
    }
    return std::binary_search(a.begin(), a.end(), to);
}

std::vector<Link> Graph::links() const
{
    std::vector<Link> result;
    result.reserve(m_);
    for (NodeId i = 0; i < n_; ++i)
        for (NodeId j : out(i))
            if (directed_ || i < j)
                result.push_back({i, j});
    return result;
}

bool operator==(const Graph & a, const Graph & b)
{
    if (a.directed_ != b.directed_ || a.n_ != b.n_ || a.m_ != b.m_)
        return false;
    auto same = [](std::span<const NodeId> x, std::span<const NodeId> y) {
        return std::equal(x.begin(), x.end(), y.begin(), y.end());
    };
    if (!same(a.forward_.offsets, b.forward_.offsets) || !same(a.forward_.targets, b.forward_.targets))
        return false;
    return !a.directed_ ||
        (same(a.backward_.offsets, b.backward_.offsets) && same(a.backward_.targets, b.backward_.targets));
}

DegreeSequence degree_sequence(const Graph & g)
{
    DegreeSequence d;
    d.directed = g.directed();
    const NodeId n = g.num_nodes();
    if (g.directed()) {
        d.in.resize(n);
        d.out.resize(n);
        for (NodeId i = 0; i < n; ++i) {
            d.in[i] = g.in_degree(i);
            d.out[i] = g.out_degree(i);
        }
    }
    else {
        d.degrees.resize(n);
        for (NodeId i = 0; i < n; ++i)
            d.degrees[i] = g.out_degree(i);
    }
    return d;
}

Graph induced_subgraph(const Graph & g, std::span<const NodeId> nodes)
{
    std::unordered_set<NodeId> seen;
    for (NodeId v : nodes) {
        if (v >= g.num_nodes())
            throw InvalidArgument("induced_subgraph: node id " + std::to_string(v) + " out of range");
        if (!seen.insert(v).second)
            throw InvalidArgument("induced_subgraph: duplicate node id " + std::to_string(v));
    }
    std::vector<Link> links;
    for (NodeId i = 0; i < nodes.size(); ++i)
        for (NodeId j = 0; j < nodes.size(); ++j) {
            if (i == j || (!g.directed() && j < i))
                continue;
            if (g.has_link(nodes[i], nodes[j]))
                links.push_back({i, j});
        }
    return Graph::from_links(g.directed(), nodes.size(), std::move(links));
}

Graph load_edgelist(std::istream & input, bool directed, CleanupStats * stats)
{
    detail::IdCompactor ids;
    std::vector<Link> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        NodeId from, to;
        if (!detail::parse_edge_line(line, line_no, from, to))
            continue;
        ids.add(from);
        ids.add(to);
        raw.push_back({from, to});
    }
    if (input.bad())
        throw IoError("read error while loading edge list");
    if (raw.empty())
        throw ParseError("edge list contains no links", 0);
    if (!ids.already_compact())
        for (Link & l : raw)
            l = {ids.final_id(l.from), ids.final_id(l.to)};
    return Graph::from_links(directed, ids.size(), std::move(raw), stats);
}

Graph load_edgelist(const std::filesystem::path & path, bool directed, CleanupStats * stats)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    return load_edgelist(in, directed, stats);
}

void write_edgelist(const Graph & g, std::ostream & output)
{
    for (const Link & l : g.links())
        output << l.from << ' ' << l.to << '\n';
}

}  // namespace compmotif
