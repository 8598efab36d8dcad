#include "compmotif/census.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "compmotif/canon.hpp"
#include "compmotif/error.hpp"

namespace compmotif {

namespace {

    class Esu {
    public:
        Esu(const Graph & g, int k, std::map<std::string, InstanceList> & out) : g_(g), k_(k), out_(out) {}

        void run()
        {
            for (NodeId v = 0; v < g_.num_nodes(); ++v) {
                std::vector<NodeId> extension;
                for (NodeId u : neighbors(v))
                    if (u > v)
                        extension.push_back(u);
                std::vector<NodeId> sub{v};
                extend(sub, extension, v);
            }
        }

    private:
        std::vector<NodeId> neighbors(NodeId v) const
        {
            std::vector<NodeId> nb(g_.out(v).begin(), g_.out(v).end());
            if (g_.directed()) {
                nb.insert(nb.end(), g_.in(v).begin(), g_.in(v).end());
                std::sort(nb.begin(), nb.end());
                nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            }
            return nb;
        }

        bool in_neighborhood(NodeId w, const std::vector<NodeId> & sub) const
        {
            for (NodeId s : sub) {
                if (s == w)
                    return true;
                auto nb = neighbors(s);
                if (std::binary_search(nb.begin(), nb.end(), w))
                    return true;
            }
            return false;
        }

        void emit(const std::vector<NodeId> & sub)
        {
            auto rows = induced_rows(g_, sub);
            Canonization c = canonicalize(g_.directed(), std::span<const AdjacencyMask>(rows.data(), sub.size()));
            auto [it, inserted] = out_.try_emplace(c.graph.key());
            if (inserted)
                it->second.motif = c.graph;
            Instance inst;
            for (int p : c.order)
                inst.push_back(sub[static_cast<std::size_t>(p)]);
            it->second.instances.push_back(std::move(inst));
        }

        void extend(std::vector<NodeId> & sub, std::vector<NodeId> extension, NodeId root)
        {
            if (static_cast<int>(sub.size()) == k_) {
                emit(sub);
                return;
            }
            while (!extension.empty()) {
                NodeId w = extension.back();
                extension.pop_back();
                std::vector<NodeId> next = extension;
                for (NodeId u : neighbors(w))
                    if (u > root && !in_neighborhood(u, sub) &&
                        std::find(next.begin(), next.end(), u) == next.end())
                        next.push_back(u);
                sub.push_back(w);
                extend(sub, std::move(next), root);
                sub.pop_back();
            }
        }

        const Graph & g_;
        int k_;
        std::map<std::string, InstanceList> & out_;
    };

    struct Counter {
        bool directed;
        NodeId n;
        std::vector<std::int64_t> out_left, in_left;  // undirected: out_left only
        std::vector<std::pair<NodeId, NodeId>> pairs;
        std::uint64_t count = 0;

        void search(std::size_t idx)
        {
            if (idx == pairs.size()) {
                for (NodeId v = 0; v < n; ++v)
                    if (out_left[v] != 0 || (directed && in_left[v] != 0))
                        return;
                ++count;
                return;
            }
            auto [a, b] = pairs[idx];
            auto & head = directed ? in_left : out_left;
            if (out_left[a] > 0 && head[b] > 0) {
                --out_left[a];
                --head[b];
                if (feasible(idx))
                    search(idx + 1);
                ++out_left[a];
                ++head[b];
            }
            if (feasible(idx))
                search(idx + 1);
        }

        /// Pairs are ordered by source; once all of a's pairs are decided its
        /// residual must be zero.
        bool feasible(std::size_t idx) const
        {
            auto [a, b] = pairs[idx];
            (void)b;
            if (idx + 1 == pairs.size() || pairs[idx + 1].first != a) {
                if (out_left[a] != 0)
                    return false;
            }
            return true;
        }
    };

}  // namespace

std::map<std::string, InstanceList> exact_census(const Graph & g, int k)
{
    if (g.num_nodes() > kCensusMaxNodes || k < 1 || k > kCensusMaxSize)
        throw InvalidArgument("exact_census supports at most " + std::to_string(kCensusMaxNodes) +
                              " nodes and subgraph sizes 1.." + std::to_string(kCensusMaxSize));
    std::map<std::string, InstanceList> out;
    Esu(g, k, out).run();
    return out;
}

std::uint64_t exact_graph_count(const DegreeSequence & d)
{
    Counter c;
    c.directed = d.directed;
    c.n = d.directed ? d.in.size() : d.degrees.size();
    if (c.n > kCountMaxNodes)
        throw InvalidArgument("exact_graph_count supports at most " + std::to_string(kCountMaxNodes) + " nodes");
    if (d.directed) {
        if (d.out.size() != d.in.size())
            throw InvalidArgument("in/out degree lists differ in length");
        c.out_left.assign(d.out.begin(), d.out.end());
        c.in_left.assign(d.in.begin(), d.in.end());
        for (NodeId a = 0; a < c.n; ++a)
            for (NodeId b = 0; b < c.n; ++b)
                if (a != b)
                    c.pairs.push_back({a, b});
    } else {
        c.out_left.assign(d.degrees.begin(), d.degrees.end());
        for (NodeId a = 0; a < c.n; ++a)
            for (NodeId b = a + 1; b < c.n; ++b)
                c.pairs.push_back({a, b});
    }
    if (c.pairs.empty()) {
        for (auto v : c.out_left)
            if (v)
                return 0;
        for (auto v : c.in_left)
            if (v)
                return 0;
        return 1;
    }
    c.search(0);
    return c.count;
}

}  // namespace compmotif
