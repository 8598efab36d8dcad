#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "compmotif/graph.hpp"
#include "compmotif/random.hpp"

namespace compmotif {

/// Erdős–Gallai test for an undirected degree sequence.
bool is_graphical(std::span<const std::uint64_t> degrees);

/// Fulkerson–Chen–Anstee test for a directed (in, out) degree sequence.
bool is_graphical(std::span<const std::uint64_t> in, std::span<const std::uint64_t> out);

bool is_graphical(const DegreeSequence & d);

/// One draw of the sequential importance sampler.
///
/// log_q is ln(c(Y) * sigma(Y)): sigma is the probability of the exact
/// sequence of choices made, c the number of orderings of each hub's links
/// that yield the same graph. exp(-log_q) is an unbiased estimate of the
/// number of simple graphs with the degree sequence.
struct DsSample {
    Graph graph;
    double log_q = 0.0;
};

/// Builds a random simple graph with exactly the given degrees, never
/// backtracking. The hub is the unfinished node with the smallest positive
/// residual degree (residual out-degree when directed), lowest id first; its
/// links are placed one at a time to a partner drawn with probability
/// proportional to the partner's residual degree (residual in-degree when
/// directed) among all partners that keep the remaining sequence realizable
/// given the hub's already-chosen partners. Throws InvalidArgument for a
/// non-graphical sequence.
DsSample ds_sample(const DegreeSequence & d, Rng & rng);

/// Same sampler, returning only -log_q (no graph is built).
double ds_sample_log_weight(const DegreeSequence & d, Rng & rng);

}  // namespace compmotif
