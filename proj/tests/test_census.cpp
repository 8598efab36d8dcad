#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "compmotif/census.hpp"
#include "compmotif/error.hpp"
#include "helpers.hpp"

using namespace compmotif;
using namespace testutil;

namespace {

/// Census by checking every k-subset.
std::map<std::string, std::size_t> brute_census(const Graph & g, int k)
{
    std::map<std::string, std::size_t> out;
    const NodeId n = g.num_nodes();
    std::vector<NodeId> pick;
    std::function<void(NodeId)> rec = [&](NodeId from) {
        if (pick.size() == static_cast<std::size_t>(k)) {
            Graph h = induced_subgraph(g, pick);
            if (is_connected(h))
                ++out[canonicalize(h).graph.key()];
            return;
        }
        for (NodeId v = from; v < n; ++v) {
            pick.push_back(v);
            rec(v + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

std::map<std::string, std::size_t> counts(const std::map<std::string, InstanceList> & census)
{
    std::map<std::string, std::size_t> out;
    for (const auto & [key, list] : census)
        out[key] = list.instances.size();
    return out;
}

}  // namespace

TEST_CASE("census examples")
{
    auto tri = exact_census(triangle(), 3);
    REQUIRE(tri.size() == 1);
    CHECK(tri.begin()->first == "Bw");
    CHECK(tri.begin()->second.instances.size() == 1);

    Graph k4 = make_graph(false, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto c = exact_census(k4, 3);
    REQUIRE(c.size() == 1);
    CHECK(c.begin()->second.instances.size() == 4);

    Graph path = make_graph(false, 4, {{0, 1}, {1, 2}, {2, 3}});
    auto p = exact_census(path, 3);
    REQUIRE(p.size() == 1);
    CHECK(p.begin()->second.instances.size() == 2);
    CHECK(exact_census(path, 4).begin()->second.instances.size() == 1);

    CHECK_THROWS_AS(exact_census(path, 7), InvalidArgument);
    CHECK_THROWS_AS(exact_census(make_graph(false, kCensusMaxNodes + 1, {}), 3), InvalidArgument);
}

TEST_CASE("census matches subset enumeration")
{
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const bool directed = trial % 2;
        Graph g = random_graph(11, directed ? 0.18 : 0.3, rng, directed);
        for (int k = 3; k <= 5; ++k) {
            auto census = exact_census(g, k);
            REQUIRE(counts(census) == brute_census(g, k));
            std::set<std::set<NodeId>> seen;
            for (const auto & [key, list] : census)
                for (const Instance & inst : list.instances) {
                    REQUIRE(matches_motif(g, list.motif, inst));
                    REQUIRE(seen.insert(std::set<NodeId>(inst.begin(), inst.end())).second);
                }
        }
    }
}

TEST_CASE("census is invariant under relabeling")
{
    Rng rng(4);
    Graph g = random_graph(20, 0.2, rng, false);
    Graph h = permute(g, random_permutation(20, rng));
    for (int k = 3; k <= 4; ++k)
        CHECK(counts(exact_census(g, k)) == counts(exact_census(h, k)));
}

TEST_CASE("exact graph counts")
{
    CHECK(exact_graph_count(undirected_degrees({2, 2, 2})) == 1);
    CHECK(exact_graph_count(undirected_degrees({1, 1, 1, 1})) == 3);
    // only the two paths 2-0-1-3 and 2-1-0-3
    CHECK(exact_graph_count(undirected_degrees({2, 2, 1, 1})) == 2);
    CHECK(exact_graph_count(undirected_degrees({2, 2, 2, 2})) == 3);
    CHECK(exact_graph_count(undirected_degrees({1, 1, 1})) == 0);
    CHECK(exact_graph_count(directed_degrees({1, 1}, {1, 1})) == 1);
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const bool directed = trial % 2;
        const NodeId n = 3 + trial % (directed ? 2 : 4);
        Graph g = random_graph(n, 0.5, rng, directed);
        DegreeSequence d = degree_sequence(g);
        const std::uint64_t count = graphs_with_degrees(d).size();
        REQUIRE(exact_graph_count(d) == count);
        // relabeling the sequence does not change the count
        auto perm = random_permutation(n, rng);
        DegreeSequence p = d;
        for (NodeId v = 0; v < n; ++v) {
            if (directed) {
                p.in[perm[v]] = d.in[v];
                p.out[perm[v]] = d.out[v];
            } else {
                p.degrees[perm[v]] = d.degrees[v];
            }
        }
        REQUIRE(exact_graph_count(p) == count);
    }
}
