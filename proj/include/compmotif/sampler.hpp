#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "compmotif/canon.hpp"
#include "compmotif/graph.hpp"
#include "compmotif/motif_code.hpp"
#include "compmotif/random.hpp"

namespace compmotif {

struct SampledInstance {
    CanonicalGraph motif;
    /// Nodes in the motif's canonical order.
    Instance nodes;
};

/// Grows a connected node set from a uniform random node by repeatedly adding
/// a random neighbor (in or out) of a random member. Restarts when the set
/// cannot grow; returns nullopt after max_attempts failed starts.
std::optional<SampledInstance> sample_instance(const Graph & g, int k, Rng & rng, int max_attempts = 100);

struct SamplingOptions {
    std::uint64_t samples = 1000000;
    int size_min = 3;
    int size_max = 6;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    int max_attempts = 100;
};

struct SamplingResult {
    /// Canonical key -> distinct instances in the order first drawn.
    std::map<std::string, InstanceList> buckets;
    std::uint64_t skipped = 0;
    std::uint64_t duplicates = 0;
};

/// Draws samples in fixed-size chunks, chunk i using derive_rng(seed, i), and
/// merges them in chunk order; the result does not depend on threads.
SamplingResult run_sampling(const Graph & g, const SamplingOptions & options);

struct Candidate {
    const InstanceList * list = nullptr;
    RankedInstances ranked;
};

/// The `count` buckets with the most instances left after overlap removal;
/// ties broken by key.
std::vector<Candidate> top_candidates(const Graph & g, const SamplingResult & sampling, std::size_t count = 100,
                                      unsigned threads = 1);

}  // namespace compmotif
