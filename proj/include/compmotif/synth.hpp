#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "compmotif/canon.hpp"
#include "compmotif/graph.hpp"
#include "compmotif/motif_code.hpp"
#include "compmotif/random.hpp"

namespace compmotif {

struct SynthOptions {
    NodeId nodes = 5000;
    std::uint64_t links = 10000;
    /// Only nodes of H with at most this degree become instance nodes.
    std::uint64_t max_degree = 5;
    /// Link-sides are attached to motif positions 1..label_range.
    std::uint64_t label_range = 5;
    int max_regenerations = 100;
};

struct SynthResult {
    Graph graph;
    CanonicalGraph motif;
    /// Injected instances in the motif's canonical order.
    std::vector<Instance> instances;
    int regenerations = 0;
};

/// Uniform random simple undirected graph with exactly n nodes and m links.
Graph uniform_graph(NodeId n, std::uint64_t m, Rng & rng);

/// Motif injection: samples H uniformly with n - (n'-1) n_i nodes and
/// m - m' n_i links, picks n_i nodes of degree <= max_degree as instance
/// nodes, labels every link-side at an instance node with a draw from a
/// categorical distribution taken uniformly from the simplex, and expands each
/// instance node into a copy of the motif, attaching each side to the labeled
/// motif node. Node ids are shuffled at the end.
SynthResult generate_injected(const Graph & motif, std::uint64_t instances, Rng & rng, const SynthOptions & options = {});

/// "# motif <key>" followed by one line of space-separated node ids per instance.
void write_ground_truth(const SynthResult & result, std::ostream & out);

}  // namespace compmotif
