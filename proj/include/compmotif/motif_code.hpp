#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "compmotif/canon.hpp"
#include "compmotif/codes.hpp"
#include "compmotif/graph.hpp"
#include "compmotif/null_models.hpp"

namespace compmotif {

using Instance = std::vector<NodeId>;

/// Instances of one motif, each listed in the motif's canonical node order.
struct InstanceList {
    CanonicalGraph motif;
    std::vector<Instance> instances;
};

/// Links with exactly one endpoint in `nodes` (either direction).
std::uint64_t exdegree(const Graph & g, std::span<const NodeId> nodes);

/// True iff G[instance] equals the motif link for link under the given order.
bool matches_motif(const Graph & g, const CanonicalGraph & motif, std::span<const NodeId> instance);

struct RankedInstances {
    std::vector<Instance> instances;
    std::vector<std::uint64_t> exdegrees;
};

/// Greedy overlap removal: sorts by (exdegree, node sequence) and keeps each
/// instance that shares no node with an instance kept before it.
RankedInstances remove_overlaps(const Graph & g, std::vector<Instance> instances);

/// The template graph and side information of the motif code.
struct TemplateParts {
    /// H after collapsing multi-edges.
    Graph template_graph;
    /// W: motif position (1-based) of the original endpoint, one entry per
    /// link-side at an instance node. Links of H incident to instance nodes
    /// are enumerated in links() order; the original links behind one H link
    /// are enumerated by their (position, position) pair.
    std::vector<std::uint64_t> rewiring;
    /// R: removed copies per H link incident to an instance node, same order.
    std::vector<std::uint64_t> multiplicities;
    /// H id of each instance node, in instance order.
    std::vector<NodeId> instance_nodes;
    /// Original id of each H node (instance node: the instance's first node).
    std::vector<NodeId> original_ids;
    /// Full original node sequence of each instance; fixes where the
    /// remaining motif nodes are inserted.
    std::vector<Instance> instances;
    NodeId original_nodes = 0;
};

/// Collapses each instance to its first node. Throws InvalidArgument when
/// instances overlap or an instance does not induce the motif.
TemplateParts build_template(const Graph & g, const CanonicalGraph & motif, std::span<const Instance> instances);

/// Decodes TemplateParts back into the original graph.
Graph reconstruct(const CanonicalGraph & motif, const TemplateParts & parts);

/// Per-component codelength of the motif code.
struct MotifCode {
    std::uint64_t instances = 0;
    IntervalBits subgraph;
    IntervalBits template_bits;
    double rewiring = 0.0;
    double multi_edges = 0.0;
    double instance_nodes = 0.0;
    double insertions = 0.0;
    IntervalBits total;
    NodeId template_nodes = 0;
    std::uint64_t template_links = 0;
};

/// Degree histograms of the data graph, computed once and shared between
/// motifs by the parameter-delta codelength.
struct GraphSummary {
    /// Undirected: histogram of degrees. Directed: in- and out-degree histograms.
    std::vector<std::uint64_t> degree_hist, in_hist, out_hist;

    explicit GraphSummary(const Graph & g);
};

/// Evaluates the motif code on prefixes of a fixed, disjoint instance list.
class MotifCoder {
public:
    /// `instances` must be pairwise disjoint and each must induce the motif
    /// (checked). `seed` drives the DS estimator; evaluation of prefix c
    /// always uses the same stream.
    MotifCoder(const Graph & g, const GraphSummary & summary, const CanonicalGraph & motif,
               std::vector<Instance> instances, NullModel base, const DsOptions & ds = {}, std::uint64_t seed = 0);

    std::size_t size() const noexcept { return instances_.size(); }

    /// Code using the first min(c, size()) instances. ER and EL use the
    /// parameter delta; DS builds the template graph.
    MotifCode evaluate(std::size_t c) const;

    /// Same code computed by building the template graph.
    MotifCode evaluate_materialized(std::size_t c) const;

    /// Links rewired to instance nodes by the first c instances.
    std::uint64_t rewritten_links(std::size_t c) const;

private:
    struct External {
        std::uint32_t position;  // 1-based
        bool outgoing;           // link leaves the instance (directed only)
        NodeId other;
    };

    MotifCode finish(std::size_t c, IntervalBits subgraph, IntervalBits template_bits,
                     std::span<const std::uint64_t> w_counts, std::span<const std::uint64_t> r_values,
                     NodeId n_h) const;
    IntervalBits subgraph_bits() const;

    const Graph & g_;
    const GraphSummary & summary_;
    CanonicalGraph motif_;
    std::vector<Instance> instances_;
    NullModel base_;
    DsOptions ds_;
    std::uint64_t seed_;
    std::vector<std::vector<External>> external_;
    std::vector<std::uint64_t> rewritten_prefix_;
};

/// Fibonacci numbers 0, 1, 1, 2, 3, 5, ...
std::uint64_t next_fib(std::uint64_t n);  // first F >= n
std::uint64_t prev_fib(std::uint64_t n);  // last F < n; requires n >= 1

struct PruneResult {
    std::size_t best_c = 0;
    IntervalBits best;
    std::size_t evaluations = 0;
};

/// Fibonacci search over prefix lengths 0..n: find(0, next_fib(n) + 1) with
/// memoized evaluations (c > n evaluates the full list). Codelengths are
/// compared by their upper bound; the smallest observed is returned.
/// depth_limit 0 means unlimited.
PruneResult prune_search(std::size_t n, const std::function<IntervalBits(std::size_t)> & evaluate, int depth_limit = 0);

struct ScoreConfig {
    NullModel null_model = NullModel::ER;
    DsOptions ds;
    int search_depth = 0;
    std::uint64_t max_rewired = 500000;
    /// Significance threshold in bits, -log2(alpha).
    double min_gain = 9.965784284662087;
    std::uint64_t seed = 0;
};

struct MotifScore {
    std::string key;
    std::uint64_t instances_found = 0;
    std::uint64_t disjoint = 0;
    /// Disjoint instances admitted by the rewritten-link cap.
    std::uint64_t searchable = 0;
    std::uint64_t kept = 0;
    IntervalBits null_bits;
    MotifCode code;
    double log_factor = 0.0;
    bool significant = false;
    std::size_t evaluations = 0;
};

/// Scores one motif against a precomputed null bound: prune search over the
/// capped, overlap-free instance list, then null.lower - motif.upper.
MotifScore score_motif(const Graph & g, const GraphSummary & summary, const CanonicalGraph & motif,
                       const RankedInstances & ranked, std::uint64_t instances_found, const IntervalBits & null_bits,
                       const ScoreConfig & config);

/// Full pipeline from raw instances: overlap removal, null bound, scoring.
MotifScore log_factor(const Graph & g, const CanonicalGraph & motif, std::vector<Instance> raw,
                      const ScoreConfig & config);

}  // namespace compmotif
