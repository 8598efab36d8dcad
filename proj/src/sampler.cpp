#include "compmotif/sampler.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "compmotif/error.hpp"
#include "compmotif/parallel.hpp"

namespace compmotif {

namespace {

    constexpr std::uint64_t kChunkSize = 1024;

    struct InstanceHash {
        std::size_t operator()(const Instance & nodes) const noexcept
        {
            std::uint64_t h = 0;
            for (NodeId v : nodes)
                h = mix_seed(h ^ v);
            return static_cast<std::size_t>(h);
        }
    };

    NodeId neighbor_at(const Graph & g, NodeId v, std::uint64_t index)
    {
        auto out = g.out(v);
        if (index < out.size())
            return out[index];
        return g.in(v)[index - out.size()];
    }

    bool can_grow(const Graph & g, const Instance & members)
    {
        auto outside = [&](NodeId x) { return std::find(members.begin(), members.end(), x) == members.end(); };
        for (NodeId v : members) {
            for (NodeId x : g.out(v))
                if (outside(x))
                    return true;
            if (g.directed())
                for (NodeId x : g.in(v))
                    if (outside(x))
                        return true;
        }
        return false;
    }

    struct ChunkOutput {
        std::vector<SampledInstance> found;
        std::uint64_t skipped = 0;
    };

}  // namespace

std::optional<SampledInstance> sample_instance(const Graph & g, int k, Rng & rng, int max_attempts)
{
    if (k < 1 || k > kMaxCanonNodes)
        throw InvalidArgument("sample size must lie in 1.." + std::to_string(kMaxCanonNodes));
    if (g.num_nodes() < static_cast<NodeId>(k))
        return std::nullopt;
    std::uniform_int_distribution<NodeId> start(0, g.num_nodes() - 1);
    Instance members;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        members.assign(1, start(rng));
        int misses = 0;
        while (members.size() < static_cast<std::size_t>(k)) {
            NodeId v = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
            const std::uint64_t deg = g.degree(v);
            if (deg > 0) {
                NodeId x = neighbor_at(g, v, std::uniform_int_distribution<std::uint64_t>(0, deg - 1)(rng));
                if (std::find(members.begin(), members.end(), x) == members.end()) {
                    members.push_back(x);
                    misses = 0;
                    continue;
                }
            }
            if (++misses >= 32 * k) {
                if (!can_grow(g, members))
                    break;
                misses = 0;
            }
        }
        if (members.size() < static_cast<std::size_t>(k))
            continue;
        auto rows = induced_rows(g, members);
        Canonization canon = canonicalize(g.directed(), std::span<const AdjacencyMask>(rows.data(), members.size()));
        SampledInstance out;
        out.motif = std::move(canon.graph);
        out.nodes.reserve(members.size());
        for (int p : canon.order)
            out.nodes.push_back(members[static_cast<std::size_t>(p)]);
        return out;
    }
    return std::nullopt;
}

SamplingResult run_sampling(const Graph & g, const SamplingOptions & options)
{
    if (options.size_min < 3 || options.size_min > options.size_max || options.size_max > kMaxCanonNodes)
        throw InvalidArgument("sample sizes must satisfy 3 <= min <= max <= " + std::to_string(kMaxCanonNodes));
    SamplingResult result;
    if (options.samples == 0)
        return result;

    const std::uint64_t chunks = (options.samples + kChunkSize - 1) / kChunkSize;
    const unsigned threads = resolve_threads(options.threads);
    const std::uint64_t batch = std::max<std::uint64_t>(1, 4ull * threads);
    std::map<std::string, std::unordered_set<Instance, InstanceHash>> seen;

    for (std::uint64_t first = 0; first < chunks; first += batch) {
        const std::uint64_t count = std::min(batch, chunks - first);
        std::vector<ChunkOutput> outputs(count);
        parallel_for(count, threads, [&](std::size_t b) {
            const std::uint64_t chunk = first + b;
            const std::uint64_t begin = chunk * kChunkSize;
            const std::uint64_t end = std::min(options.samples, begin + kChunkSize);
            Rng rng = derive_rng(options.seed, chunk);
            std::uniform_int_distribution<int> size(options.size_min, options.size_max);
            ChunkOutput & out = outputs[b];
            for (std::uint64_t s = begin; s < end; ++s) {
                auto sample = sample_instance(g, size(rng), rng, options.max_attempts);
                if (sample)
                    out.found.push_back(std::move(*sample));
                else
                    ++out.skipped;
            }
        });
        for (ChunkOutput & out : outputs) {
            result.skipped += out.skipped;
            for (SampledInstance & s : out.found) {
                Instance sorted = s.nodes;
                std::sort(sorted.begin(), sorted.end());
                const std::string & key = s.motif.key();
                if (!seen[key].insert(std::move(sorted)).second) {
                    ++result.duplicates;
                    continue;
                }
                auto [it, inserted] = result.buckets.try_emplace(key);
                if (inserted)
                    it->second.motif = s.motif;
                it->second.instances.push_back(std::move(s.nodes));
            }
        }
    }
    return result;
}

std::vector<Candidate> top_candidates(const Graph & g, const SamplingResult & sampling, std::size_t count,
                                      unsigned threads)
{
    std::vector<Candidate> all;
    all.reserve(sampling.buckets.size());
    for (const auto & [key, list] : sampling.buckets)
        all.push_back({&list, {}});
    parallel_for(all.size(), threads, [&](std::size_t i) { all[i].ranked = remove_overlaps(g, all[i].list->instances); });
    std::stable_sort(all.begin(), all.end(), [](const Candidate & a, const Candidate & b) {
        if (a.ranked.instances.size() != b.ranked.instances.size())
            return a.ranked.instances.size() > b.ranked.instances.size();
        return a.list->motif.key() < b.list->motif.key();
    });
    if (all.size() > count)
        all.resize(count);
    return all;
}

}  // namespace compmotif
