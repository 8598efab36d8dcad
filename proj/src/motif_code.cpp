#include "compmotif/motif_code.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "compmotif/error.hpp"
#include "compmotif/random.hpp"

namespace compmotif {

namespace {

    struct PairHash {
        std::size_t operator()(const std::pair<NodeId, NodeId> & p) const noexcept
        {
            return static_cast<std::size_t>(mix_seed(p.first * 0x9e3779b97f4a7c15ULL ^ p.second));
        }
    };

    std::vector<std::uint64_t> histogram(std::span<const std::uint64_t> values)
    {
        std::uint64_t top = 0;
        for (std::uint64_t v : values)
            top = std::max(top, v);
        std::vector<std::uint64_t> hist(top + 1, 0);
        for (std::uint64_t v : values)
            ++hist[v];
        return hist;
    }

    /// Histogram with a movable top, for degree updates.
    struct DeltaHistogram {
        std::vector<std::int64_t> counts;

        explicit DeltaHistogram(std::span<const std::uint64_t> base) : counts(base.begin(), base.end())
        {
            if (counts.empty())
                counts.push_back(0);
        }
        void remove(std::uint64_t d) { --counts[d]; }
        void add(std::uint64_t d)
        {
            if (d >= counts.size())
                counts.resize(d + 1, 0);
            ++counts[d];
        }
        /// Counts for degrees 0..max with nonzero max entry (or the single entry 0).
        std::vector<std::uint64_t> trimmed() const
        {
            std::size_t top = counts.size();
            while (top > 1 && counts[top - 1] == 0)
                --top;
            std::vector<std::uint64_t> out(top);
            for (std::size_t d = 0; d < top; ++d) {
                if (counts[d] < 0)
                    throw Error("degree histogram underflow (internal error)");
                out[d] = static_cast<std::uint64_t>(counts[d]);
            }
            return out;
        }
    };

    double sum_log_factorials(std::span<const std::uint64_t> hist)
    {
        double total = 0.0;
        for (std::size_t d = 2; d < hist.size(); ++d)
            if (hist[d])
                total += static_cast<double>(hist[d]) * log_factorial(d);
        return total;
    }

    double header_from_hist(std::span<const std::uint64_t> hist)
    {
        return nat_codelength(hist.size() - 1) + dm_codelength_from_counts(hist);
    }

    /// Complete EL code from degree histograms (in, out or single).
    double el_complete_from_hists(bool directed, NodeId n, std::uint64_t m, std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b)
    {
        double bits = nat_codelength(n);
        if (directed)
            return bits + header_from_hist(a) + header_from_hist(b) + log_factorial(m) - sum_log_factorials(a) -
                   sum_log_factorials(b);
        return bits + header_from_hist(a) + log_factorial(2 * m) - log_factorial(m) - static_cast<double>(m) -
               sum_log_factorials(a);
    }

    double multi_edge_bits(std::span<const std::uint64_t> r)
    {
        std::uint64_t top = 0;
        for (std::uint64_t v : r)
            top = std::max(top, v);
        return nat_codelength(top) + dm_codelength(r, top + 1);
    }

    bool less_instance(const std::pair<std::uint64_t, const Instance *> & a,
                       const std::pair<std::uint64_t, const Instance *> & b)
    {
        if (a.first != b.first)
            return a.first < b.first;
        return *a.second < *b.second;
    }

}  // namespace

std::uint64_t exdegree(const Graph & g, std::span<const NodeId> nodes)
{
    for (NodeId v : nodes)
        if (v >= g.num_nodes())
            throw InvalidArgument("exdegree: node id out of range");
    auto inside = [&](NodeId x) { return std::find(nodes.begin(), nodes.end(), x) != nodes.end(); };
    std::uint64_t count = 0;
    for (NodeId v : nodes) {
        for (NodeId x : g.out(v))
            count += !inside(x);
        if (g.directed())
            for (NodeId x : g.in(v))
                count += !inside(x);
    }
    return count;
}

bool matches_motif(const Graph & g, const CanonicalGraph & motif, std::span<const NodeId> instance)
{
    if (instance.size() != static_cast<std::size_t>(motif.size()) || g.directed() != motif.directed())
        return false;
    for (std::size_t i = 0; i < instance.size(); ++i)
        if (instance[i] >= g.num_nodes())
            return false;
    auto rows = induced_rows(g, instance);
    for (int i = 0; i < motif.size(); ++i)
        if (rows[static_cast<std::size_t>(i)] != motif.out_row(i))
            return false;
    return true;
}

RankedInstances remove_overlaps(const Graph & g, std::vector<Instance> instances)
{
    std::vector<std::pair<std::uint64_t, const Instance *>> order;
    order.reserve(instances.size());
    for (const Instance & inst : instances)
        order.emplace_back(exdegree(g, inst), &inst);
    std::sort(order.begin(), order.end(), less_instance);

    RankedInstances out;
    std::unordered_set<NodeId> used;
    for (const auto & [ex, inst] : order) {
        bool overlaps = std::any_of(inst->begin(), inst->end(), [&](NodeId v) { return used.count(v) > 0; });
        if (overlaps)
            continue;
        used.insert(inst->begin(), inst->end());
        out.instances.push_back(*inst);
        out.exdegrees.push_back(ex);
    }
    return out;
}

TemplateParts build_template(const Graph & g, const CanonicalGraph & motif, std::span<const Instance> instances)
{
    const bool directed = g.directed();
    // owner[v] = (instance index, 1-based position)
    std::unordered_map<NodeId, std::pair<std::uint32_t, std::uint32_t>> owner;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (!matches_motif(g, motif, instances[i]))
            throw InvalidArgument("instance " + std::to_string(i) + " does not induce the motif");
        for (std::size_t p = 0; p < instances[i].size(); ++p)
            if (!owner.emplace(instances[i][p], std::pair{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(p + 1)})
                     .second)
                throw InvalidArgument("instances overlap at node " + std::to_string(instances[i][p]));
    }

    TemplateParts parts;
    parts.original_nodes = g.num_nodes();
    parts.instances.assign(instances.begin(), instances.end());

    // H ids: surviving nodes in original order
    std::vector<NodeId> h_id(g.num_nodes(), 0);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        auto it = owner.find(v);
        if (it != owner.end() && it->second.second != 1)
            continue;
        h_id[v] = parts.original_ids.size();
        parts.original_ids.push_back(v);
    }
    for (const Instance & inst : instances)
        parts.instance_nodes.push_back(h_id[inst[0]]);

    // (hu, hv, position at hu, position at hv); position 0 = not an instance node
    std::vector<std::tuple<NodeId, NodeId, std::uint32_t, std::uint32_t>> rewired;
    std::vector<Link> plain;
    for (const Link & l : g.links()) {
        auto a = owner.find(l.from);
        auto b = owner.find(l.to);
        const bool ia = a != owner.end(), ib = b != owner.end();
        if (ia && ib && a->second.first == b->second.first)
            continue;  // internal
        NodeId hu = ia ? h_id[instances[a->second.first][0]] : h_id[l.from];
        NodeId hv = ib ? h_id[instances[b->second.first][0]] : h_id[l.to];
        if (!ia && !ib) {
            plain.push_back({hu, hv});
            continue;
        }
        std::uint32_t pu = ia ? a->second.second : 0;
        std::uint32_t pv = ib ? b->second.second : 0;
        if (!directed && hu > hv) {
            std::swap(hu, hv);
            std::swap(pu, pv);
        }
        rewired.emplace_back(hu, hv, pu, pv);
    }
    std::sort(rewired.begin(), rewired.end());
    for (std::size_t i = 0; i < rewired.size();) {
        std::size_t j = i;
        const auto [hu, hv, pu0, pv0] = rewired[i];
        while (j < rewired.size() && std::get<0>(rewired[j]) == hu && std::get<1>(rewired[j]) == hv) {
            if (pu0)
                parts.rewiring.push_back(std::get<2>(rewired[j]));
            if (pv0)
                parts.rewiring.push_back(std::get<3>(rewired[j]));
            ++j;
        }
        parts.multiplicities.push_back(j - i - 1);
        plain.push_back({hu, hv});
        i = j;
    }
    parts.template_graph = Graph::from_links(directed, parts.original_ids.size(), std::move(plain));
    return parts;
}

Graph reconstruct(const CanonicalGraph & motif, const TemplateParts & parts)
{
    const Graph & h = parts.template_graph;
    const std::size_t k = static_cast<std::size_t>(motif.size());
    if (parts.original_ids.size() != h.num_nodes() || parts.instance_nodes.size() != parts.instances.size())
        throw InvalidArgument("reconstruct: inconsistent template parts");
    std::unordered_map<NodeId, std::size_t> instance_of;
    for (std::size_t i = 0; i < parts.instance_nodes.size(); ++i) {
        if (parts.instances[i].size() != k || parts.original_ids[parts.instance_nodes[i]] != parts.instances[i][0])
            throw InvalidArgument("reconstruct: instance record does not match the template");
        instance_of.emplace(parts.instance_nodes[i], i);
    }

    std::vector<Link> links;
    std::size_t w = 0, r = 0;
    auto endpoint = [&](NodeId hnode, bool is_instance) -> NodeId {
        if (!is_instance)
            return parts.original_ids[hnode];
        if (w >= parts.rewiring.size())
            throw InvalidArgument("reconstruct: rewiring sequence too short");
        std::uint64_t pos = parts.rewiring[w++];
        if (pos < 1 || pos > k)
            throw InvalidArgument("reconstruct: rewiring position out of range");
        return parts.instances[instance_of.at(hnode)][pos - 1];
    };
    for (const Link & l : h.links()) {
        const bool iu = instance_of.count(l.from) > 0, iv = instance_of.count(l.to) > 0;
        if (!iu && !iv) {
            links.push_back({parts.original_ids[l.from], parts.original_ids[l.to]});
            continue;
        }
        if (r >= parts.multiplicities.size())
            throw InvalidArgument("reconstruct: multiplicity sequence too short");
        std::uint64_t copies = parts.multiplicities[r++] + 1;
        for (std::uint64_t c = 0; c < copies; ++c) {
            NodeId a = endpoint(l.from, iu);
            NodeId b = endpoint(l.to, iv);
            links.push_back({a, b});
        }
    }
    if (w != parts.rewiring.size() || r != parts.multiplicities.size())
        throw InvalidArgument("reconstruct: unused side information");
    for (const Instance & inst : parts.instances)
        for (const Link & l : motif.links())
            links.push_back({inst[l.from], inst[l.to]});
    return Graph::from_links(h.directed(), parts.original_nodes, std::move(links));
}

GraphSummary::GraphSummary(const Graph & g)
{
    DegreeSequence d = degree_sequence(g);
    if (d.directed) {
        in_hist = histogram(d.in);
        out_hist = histogram(d.out);
    } else {
        degree_hist = histogram(d.degrees);
    }
}

MotifCoder::MotifCoder(const Graph & g, const GraphSummary & summary, const CanonicalGraph & motif,
                       std::vector<Instance> instances, NullModel base, const DsOptions & ds, std::uint64_t seed)
    : g_(g), summary_(summary), motif_(motif), instances_(std::move(instances)), base_(base), ds_(ds), seed_(seed)
{
    std::unordered_set<NodeId> seen;
    external_.resize(instances_.size());
    rewritten_prefix_.assign(instances_.size() + 1, 0);
    for (std::size_t i = 0; i < instances_.size(); ++i) {
        const Instance & inst = instances_[i];
        if (!matches_motif(g, motif_, inst))
            throw InvalidArgument("instance " + std::to_string(i) + " does not induce the motif");
        for (NodeId v : inst)
            if (!seen.insert(v).second)
                throw InvalidArgument("instances overlap at node " + std::to_string(v));
        auto inside = [&](NodeId x) { return std::find(inst.begin(), inst.end(), x) != inst.end(); };
        for (std::size_t p = 0; p < inst.size(); ++p) {
            const auto pos = static_cast<std::uint32_t>(p + 1);
            for (NodeId x : g.out(inst[p]))
                if (!inside(x))
                    external_[i].push_back({pos, true, x});
            if (g.directed())
                for (NodeId x : g.in(inst[p]))
                    if (!inside(x))
                        external_[i].push_back({pos, false, x});
        }
        rewritten_prefix_[i + 1] = rewritten_prefix_[i] + external_[i].size();
    }
}

std::uint64_t MotifCoder::rewritten_links(std::size_t c) const
{
    return rewritten_prefix_[std::min(c, instances_.size())];
}

IntervalBits MotifCoder::subgraph_bits() const
{
    const auto k = static_cast<std::uint64_t>(motif_.size());
    switch (base_) {
    case NullModel::ER:
        return IntervalBits::exact_value(er_complete(k, motif_.num_links(), motif_.directed()));
    case NullModel::EL:
        return IntervalBits::exact_value(el_complete(motif_.to_graph()));
    case NullModel::DS:
        return IntervalBits::exact_value(degree_header_codelength(degree_sequence(motif_.to_graph())));
    }
    throw Error("unknown null model");
}

MotifCode MotifCoder::finish(std::size_t c, IntervalBits subgraph, IntervalBits template_bits,
                             std::span<const std::uint64_t> w_counts, std::span<const std::uint64_t> r_values,
                             NodeId n_h) const
{
    MotifCode code;
    code.instances = c;
    code.subgraph = subgraph;
    code.template_bits = template_bits;
    code.rewiring = dm_codelength_from_counts(w_counts);
    code.multi_edges = multi_edge_bits(r_values);
    code.instance_nodes = nat_codelength(c) + log_binomial(n_h, c);
    code.insertions = log_factorial(g_.num_nodes()) - log_factorial(n_h);
    code.total = subgraph + template_bits;
    code.total += code.rewiring + code.multi_edges + code.instance_nodes + code.insertions;
    code.template_nodes = n_h;
    return code;
}

MotifCode MotifCoder::evaluate_materialized(std::size_t c) const
{
    c = std::min(c, instances_.size());
    TemplateParts parts = build_template(g_, motif_, std::span<const Instance>(instances_.data(), c));
    const Graph & h = parts.template_graph;
    std::vector<std::uint64_t> w_counts(static_cast<std::size_t>(motif_.size()), 0);
    for (std::uint64_t j : parts.rewiring)
        ++w_counts[j - 1];

    IntervalBits subgraph = subgraph_bits();
    IntervalBits template_bits;
    switch (base_) {
    case NullModel::ER:
        template_bits = IntervalBits::exact_value(er_complete(h));
        break;
    case NullModel::EL:
        template_bits = IntervalBits::exact_value(el_complete(h));
        break;
    case NullModel::DS: {
        DegreeSequence dm = degree_sequence(motif_.to_graph());
        DegreeSequence dh = degree_sequence(h);
        Rng rng = derive_rng(seed_, c);
        LogNormalEstimate est = combined_ds_estimate(dm, dh, ds_, rng);
        template_bits = est.bits + degree_header_codelength(dh);
        break;
    }
    }
    MotifCode code = finish(c, subgraph, template_bits, w_counts, parts.multiplicities, h.num_nodes());
    code.template_links = h.num_links();
    return code;
}

MotifCode MotifCoder::evaluate(std::size_t c) const
{
    if (base_ == NullModel::DS)
        return evaluate_materialized(c);
    c = std::min(c, instances_.size());
    const bool directed = g_.directed();
    const std::uint64_t k = static_cast<std::uint64_t>(motif_.size());

    std::unordered_map<NodeId, std::pair<std::uint32_t, std::uint32_t>> owner;
    owner.reserve(c * k);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t p = 0; p < instances_[i].size(); ++p)
            owner.emplace(instances_[i][p], std::pair{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(p + 1)});

    // H link (by original ids of its endpoints) -> number of original links
    std::unordered_map<std::pair<NodeId, NodeId>, std::uint64_t, PairHash> multiplicity;
    // per outside node: original links lost to instances (out, in)
    std::unordered_map<NodeId, std::pair<std::uint64_t, std::uint64_t>> lost;
    std::vector<std::uint64_t> w_counts(k, 0);
    std::uint64_t external_links = 0;

    for (std::size_t i = 0; i < c; ++i) {
        const NodeId self = instances_[i][0];
        for (const External & e : external_[i]) {
            auto it = owner.find(e.other);
            NodeId other_h = e.other;
            if (it != owner.end()) {
                if (it->second.first < i)
                    continue;  // counted from the earlier instance
                other_h = instances_[it->second.first][0];
                ++w_counts[it->second.second - 1];
            } else if (e.outgoing || !directed) {
                ++lost[e.other].second;
            } else {
                ++lost[e.other].first;
            }
            ++w_counts[e.position - 1];
            ++external_links;
            std::pair<NodeId, NodeId> key = e.outgoing ? std::pair{self, other_h} : std::pair{other_h, self};
            if (!directed && key.first > key.second)
                std::swap(key.first, key.second);
            ++multiplicity[key];
        }
    }

    const NodeId n_h = g_.num_nodes() - c * (k - 1);
    const std::uint64_t m_h = g_.num_links() - c * motif_.num_links() - external_links + multiplicity.size();

    std::vector<std::uint64_t> r_values;
    r_values.reserve(multiplicity.size());
    // per H node touched: new (out, in) degree contributions from collapsed links
    std::unordered_map<NodeId, std::pair<std::uint64_t, std::uint64_t>> gained;
    for (const auto & [key, count] : multiplicity) {
        r_values.push_back(count - 1);
        ++gained[key.first].first;
        ++gained[key.second].second;
    }

    auto old_out = [&](NodeId v) { return g_.out_degree(v); };
    auto old_in = [&](NodeId v) { return g_.in_degree(v); };

    IntervalBits template_bits;
    if (base_ == NullModel::ER) {
        template_bits = IntervalBits::exact_value(er_complete(n_h, m_h, directed));
    } else if (!directed) {
        DeltaHistogram hist(summary_.degree_hist);
        for (std::size_t i = 0; i < c; ++i)
            for (NodeId v : instances_[i])
                hist.remove(old_out(v));
        for (std::size_t i = 0; i < c; ++i) {
            auto it = gained.find(instances_[i][0]);
            hist.add(it == gained.end() ? 0 : it->second.first + it->second.second);
        }
        for (const auto & [x, loss] : lost) {
            const auto & gain = gained.at(x);
            hist.remove(old_out(x));
            hist.add(old_out(x) - loss.second + gain.first + gain.second);
        }
        auto h = hist.trimmed();
        template_bits = IntervalBits::exact_value(el_complete_from_hists(false, n_h, m_h, h, {}));
    } else {
        DeltaHistogram in_hist(summary_.in_hist), out_hist(summary_.out_hist);
        for (std::size_t i = 0; i < c; ++i)
            for (NodeId v : instances_[i]) {
                in_hist.remove(old_in(v));
                out_hist.remove(old_out(v));
            }
        for (std::size_t i = 0; i < c; ++i) {
            auto it = gained.find(instances_[i][0]);
            out_hist.add(it == gained.end() ? 0 : it->second.first);
            in_hist.add(it == gained.end() ? 0 : it->second.second);
        }
        for (const auto & [x, loss] : lost) {
            auto it = gained.find(x);
            const std::uint64_t gain_out = it == gained.end() ? 0 : it->second.first;
            const std::uint64_t gain_in = it == gained.end() ? 0 : it->second.second;
            out_hist.remove(old_out(x));
            out_hist.add(old_out(x) - loss.first + gain_out);
            in_hist.remove(old_in(x));
            in_hist.add(old_in(x) - loss.second + gain_in);
        }
        auto hi = in_hist.trimmed();
        auto ho = out_hist.trimmed();
        template_bits = IntervalBits::exact_value(el_complete_from_hists(true, n_h, m_h, hi, ho));
    }

    MotifCode code = finish(c, subgraph_bits(), template_bits, w_counts, r_values, n_h);
    code.template_links = m_h;
    return code;
}

std::uint64_t next_fib(std::uint64_t n)
{
    std::uint64_t a = 0, b = 1;
    while (a < n) {
        std::uint64_t t = a + b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t prev_fib(std::uint64_t n)
{
    if (n == 0)
        throw InvalidArgument("prev_fib(0) is undefined");
    std::uint64_t a = 0, b = 1;
    while (b < n) {
        std::uint64_t t = a + b;
        a = b;
        b = t;
    }
    return a;
}

PruneResult prune_search(std::size_t n, const std::function<IntervalBits(std::size_t)> & evaluate, int depth_limit)
{
    std::map<std::size_t, IntervalBits> memo;
    PruneResult result;
    bool have = false;
    auto eval = [&](std::size_t c) -> const IntervalBits & {
        c = std::min(c, n);
        auto it = memo.find(c);
        if (it != memo.end())
            return it->second;
        IntervalBits bits = evaluate(c);
        ++result.evaluations;
        if (!have || bits.upper < result.best.upper) {
            result.best = bits;
            result.best_c = c;
            have = true;
        }
        return memo.emplace(c, bits).first->second;
    };

    if (n == 0) {
        eval(0);
        return result;
    }
    std::size_t f = 0, t = next_fib(n) + 1;
    for (int depth = 0; f + 1 < t; ++depth) {
        if (depth_limit > 0 && depth >= depth_limit)
            break;
        const std::size_t m = prev_fib(t - f);
        eval(f);
        eval(t);
        const double mid1 = eval(t - m).upper;
        const double mid2 = eval(f + m).upper;
        if (mid1 > mid2)
            f = t - m;
        else
            t = f + m;
    }
    if (!have)
        eval(0);
    return result;
}

MotifScore score_motif(const Graph & g, const GraphSummary & summary, const CanonicalGraph & motif,
                       const RankedInstances & ranked, std::uint64_t instances_found, const IntervalBits & null_bits,
                       const ScoreConfig & config)
{
    MotifScore score;
    score.key = motif.key();
    score.instances_found = instances_found;
    score.disjoint = ranked.instances.size();
    score.null_bits = null_bits;

    std::size_t admitted = 0;
    std::uint64_t rewired = 0;
    while (admitted < ranked.exdegrees.size() && rewired + ranked.exdegrees[admitted] <= config.max_rewired)
        rewired += ranked.exdegrees[admitted++];
    score.searchable = admitted;

    std::vector<Instance> prefix(ranked.instances.begin(), ranked.instances.begin() + static_cast<std::ptrdiff_t>(admitted));
    const std::uint64_t seed = mix_seed(config.seed ^ stable_hash(motif.key()) ^
                                        (static_cast<std::uint64_t>(config.null_model) << 56));
    MotifCoder coder(g, summary, motif, std::move(prefix), config.null_model, config.ds, seed);

    std::map<std::size_t, MotifCode> codes;
    PruneResult best = prune_search(
        admitted,
        [&](std::size_t c) {
            MotifCode code = coder.evaluate(c);
            IntervalBits total = code.total;
            codes.emplace(c, std::move(code));
            return total;
        },
        config.search_depth);

    score.code = codes.at(best.best_c);
    score.kept = best.best_c;
    score.evaluations = best.evaluations;
    score.log_factor = null_bits.lower - score.code.total.upper;
    score.significant = score.log_factor >= config.min_gain;
    return score;
}

MotifScore log_factor(const Graph & g, const CanonicalGraph & motif, std::vector<Instance> raw,
                      const ScoreConfig & config)
{
    const std::uint64_t found = raw.size();
    RankedInstances ranked = remove_overlaps(g, std::move(raw));
    GraphSummary summary(g);
    Rng rng = derive_rng(config.seed, 0x6e756c6cULL);
    IntervalBits null_bits = null_bound(g, config.null_model, config.ds, rng);
    return score_motif(g, summary, motif, ranked, found, null_bits, config);
}

}  // namespace compmotif
