#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "compmotif/graph.hpp"
#include "compmotif/random.hpp"

namespace testutil {

using namespace compmotif;

inline Graph make_graph(bool directed, NodeId n, std::vector<Link> links) { return Graph::from_links(directed, n, std::move(links)); }

inline Graph triangle() { return make_graph(false, 3, {{0, 1}, {1, 2}, {0, 2}}); }

/// G(n, p) style graph with each pair present independently.
inline Graph random_graph(NodeId n, double p, Rng & rng, bool directed = false)
{
    std::bernoulli_distribution coin(p);
    std::vector<Link> links;
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = directed ? 0 : a + 1; b < n; ++b)
            if (a != b && coin(rng))
                links.push_back({a, b});
    return Graph::from_links(directed, n, std::move(links));
}

/// Graph with exactly m distinct random links.
inline Graph random_graph_m(NodeId n, std::uint64_t m, Rng & rng, bool directed = false)
{
    std::vector<Link> links;
    std::uniform_int_distribution<NodeId> node(0, n - 1);
    Graph g;
    do {
        links = g.links();
        while (links.size() < m + m / 4 + 4) {
            NodeId a = node(rng), b = node(rng);
            if (a != b)
                links.push_back({a, b});
        }
        g = Graph::from_links(directed, n, links);
    } while (g.num_links() < m);
    links = g.links();
    std::shuffle(links.begin(), links.end(), rng);
    links.resize(m);
    return Graph::from_links(directed, n, std::move(links));
}

inline std::vector<NodeId> random_permutation(NodeId n, Rng & rng)
{
    std::vector<NodeId> p(n);
    std::iota(p.begin(), p.end(), NodeId{0});
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline Graph permute(const Graph & g, const std::vector<NodeId> & perm)
{
    std::vector<Link> links;
    for (const Link & l : g.links())
        links.push_back({perm[l.from], perm[l.to]});
    return Graph::from_links(g.directed(), g.num_nodes(), std::move(links));
}

/// Every simple graph on n labeled nodes; n is small.
inline std::vector<Graph> all_graphs(NodeId n, bool directed)
{
    std::vector<Link> pairs;
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = directed ? 0 : a + 1; b < n; ++b)
            if (a != b)
                pairs.push_back({a, b});
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
        std::vector<Link> links;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1)
                links.push_back(pairs[i]);
        out.push_back(Graph::from_links(directed, n, std::move(links)));
    }
    return out;
}

inline bool same_degrees(const DegreeSequence & a, const DegreeSequence & b)
{
    return a.directed == b.directed && (a.directed ? a.in == b.in && a.out == b.out : a.degrees == b.degrees);
}

/// Labeled graphs with degree sequence d, by exhaustive enumeration.
inline std::vector<Graph> graphs_with_degrees(const DegreeSequence & d)
{
    const NodeId n = d.directed ? d.in.size() : d.degrees.size();
    std::vector<Graph> out;
    for (Graph & g : all_graphs(n, d.directed))
        if (same_degrees(degree_sequence(g), d))
            out.push_back(std::move(g));
    return out;
}

inline DegreeSequence undirected_degrees(std::vector<std::uint64_t> deg)
{
    DegreeSequence d;
    d.directed = false;
    d.degrees = std::move(deg);
    return d;
}

inline DegreeSequence directed_degrees(std::vector<std::uint64_t> in, std::vector<std::uint64_t> out)
{
    DegreeSequence d;
    d.directed = true;
    d.in = std::move(in);
    d.out = std::move(out);
    return d;
}

}  // namespace testutil
