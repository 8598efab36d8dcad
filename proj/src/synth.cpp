#include "compmotif/synth.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <unordered_set>

#include "compmotif/error.hpp"
#include "compmotif/null_models.hpp"

namespace compmotif {

Graph uniform_graph(NodeId n, std::uint64_t m, Rng & rng)
{
    const std::uint64_t mm = max_links(n, false);
    if (m > mm)
        throw InvalidArgument("uniform_graph: m=" + std::to_string(m) + " exceeds " + std::to_string(mm));
    const bool complement = m > mm / 2;
    const std::uint64_t draws = complement ? mm - m : m;
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(draws * 2);
    std::uniform_int_distribution<NodeId> node(0, n == 0 ? 0 : n - 1);
    while (chosen.size() < draws) {
        NodeId a = node(rng), b = node(rng);
        if (a == b)
            continue;
        if (a > b)
            std::swap(a, b);
        chosen.insert(a * n + b);
    }
    std::vector<Link> links;
    links.reserve(m);
    if (complement) {
        for (NodeId a = 0; a < n; ++a)
            for (NodeId b = a + 1; b < n; ++b)
                if (!chosen.count(a * n + b))
                    links.push_back({a, b});
    } else {
        for (std::uint64_t code : chosen)
            links.push_back({code / n, code % n});
    }
    return Graph::from_links(false, n, std::move(links));
}

SynthResult generate_injected(const Graph & motif, std::uint64_t instances, Rng & rng, const SynthOptions & options)
{
    if (motif.directed())
        throw InvalidArgument("motif injection is defined for undirected motifs only");
    if (!is_connected(motif))
        throw InvalidArgument("the injected motif must be connected");
    const NodeId k = motif.num_nodes();
    const std::uint64_t mk = motif.num_links();
    if (options.label_range < 1 || options.label_range > k)
        throw InvalidArgument("label range must lie in 1..motif size");
    if ((k - 1) * instances > options.nodes || mk * instances > options.links)
        throw InvalidArgument("too many instances for the target graph size");
    const NodeId n = options.nodes - (k - 1) * instances;
    const std::uint64_t m = options.links - mk * instances;

    SynthResult result;
    Canonization canon = canonicalize(motif);
    result.motif = canon.graph;

    Graph h;
    std::vector<NodeId> chosen;
    for (;;) {
        h = uniform_graph(n, m, rng);
        std::vector<NodeId> eligible;
        for (NodeId v = 0; v < n; ++v)
            if (h.degree(v) <= options.max_degree)
                eligible.push_back(v);
        if (eligible.size() >= instances) {
            std::shuffle(eligible.begin(), eligible.end(), rng);
            chosen.assign(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(instances));
            break;
        }
        if (++result.regenerations > options.max_regenerations)
            throw Error("could not find " + std::to_string(instances) + " nodes of degree <= " +
                        std::to_string(options.max_degree));
    }

    // categorical distribution drawn uniformly from the simplex
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> weights(options.label_range);
    for (double & w : weights)
        w = expo(rng);
    std::discrete_distribution<std::uint64_t> label(weights.begin(), weights.end());

    // expanded[i][j]: node id for motif node j of instance i (node 0 keeps the H id)
    std::vector<std::vector<NodeId>> expanded(instances);
    std::vector<std::int64_t> instance_of(n, -1);
    NodeId next = n;
    for (std::uint64_t i = 0; i < instances; ++i) {
        instance_of[chosen[i]] = static_cast<std::int64_t>(i);
        expanded[i].push_back(chosen[i]);
        for (NodeId j = 1; j < k; ++j)
            expanded[i].push_back(next++);
    }
    auto side = [&](NodeId v) {
        std::int64_t i = instance_of[v];
        return i < 0 ? v : expanded[static_cast<std::size_t>(i)][label(rng)];
    };

    std::vector<Link> links;
    links.reserve(options.links);
    for (const Link & l : h.links()) {
        NodeId a = side(l.from);
        NodeId b = side(l.to);
        links.push_back({a, b});
    }
    for (const auto & nodes : expanded)
        for (const Link & l : motif.links())
            links.push_back({nodes[l.from], nodes[l.to]});

    std::vector<NodeId> perm(next);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Link & l : links)
        l = {perm[l.from], perm[l.to]};
    CleanupStats stats;
    result.graph = Graph::from_links(false, next, std::move(links), &stats);
    if (stats.duplicates || stats.self_loops || result.graph.num_links() != options.links)
        throw Error("motif expansion produced a non-simple graph (internal error)");

    for (const auto & nodes : expanded) {
        Instance inst;
        for (int p : canon.order)
            inst.push_back(perm[nodes[static_cast<std::size_t>(p)]]);
        result.instances.push_back(std::move(inst));
    }
    return result;
}

void write_ground_truth(const SynthResult & result, std::ostream & out)
{
    out << "# motif " << result.motif.key() << '\n';
    for (const Instance & inst : result.instances) {
        for (std::size_t i = 0; i < inst.size(); ++i)
            out << (i ? " " : "") << inst[i];
        out << '\n';
    }
}

}  // namespace compmotif
