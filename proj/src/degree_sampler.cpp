#include "compmotif/degree_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "compmotif/error.hpp"

namespace compmotif {

namespace {

    /// Erdős–Gallai on a degree histogram: counts[d] = number of nodes of degree d.
    /// Only block ends of the sorted sequence need checking.
    bool erdos_gallai_counts(std::span<const std::int64_t> counts)
    {
        const std::size_t top = counts.size();
        std::int64_t total = 0;
        for (std::size_t d = 0; d < top; ++d) {
            if (counts[d] < 0)
                return false;
            total += counts[d] * static_cast<std::int64_t>(d);
        }
        if (total % 2 != 0)
            return false;
        // below_count[x] = #nodes with degree < x, below_sum[x] = their degree sum
        std::vector<std::int64_t> below_count(top + 1, 0), below_sum(top + 1, 0);
        for (std::size_t d = 0; d < top; ++d) {
            below_count[d + 1] = below_count[d] + counts[d];
            below_sum[d + 1] = below_sum[d] + counts[d] * static_cast<std::int64_t>(d);
        }
        std::int64_t k = 0, lhs = 0;
        for (std::size_t d = top; d-- > 1;) {
            if (counts[d] == 0)
                continue;
            k += counts[d];
            lhs += counts[d] * static_cast<std::int64_t>(d);
            // nodes after position k all have degree < d
            std::int64_t tail;
            if (k >= static_cast<std::int64_t>(d))
                tail = below_sum[d];
            else
                tail = below_sum[k] + k * (below_count[d] - below_count[k]);
            if (lhs > k * (k - 1) + tail)
                return false;
        }
        return true;
    }

    struct Fenwick {
        explicit Fenwick(std::size_t n) : tree(n + 1, 0) {}
        void add(std::size_t i) { for (++i; i < tree.size(); i += i & (~i + 1)) ++tree[i]; }
        std::int64_t prefix(std::size_t i) const  // count of values < i
        {
            std::int64_t s = 0;
            for (i = std::min(i, tree.size() - 1); i > 0; i -= i & (~i + 1))
                s += tree[i];
            return s;
        }
        std::vector<std::int64_t> tree;
    };

    struct BiDegree {
        std::uint64_t in = 0;
        std::uint64_t out = 0;
    };

    /// Fulkerson–Chen–Anstee. Sorts `pairs` in place (out desc, then in desc).
    bool fulkerson_chen_anstee(std::vector<BiDegree> & pairs)
    {
        std::uint64_t sum_in = 0, sum_out = 0, max_in = 0;
        for (const BiDegree & p : pairs) {
            sum_in += p.in;
            sum_out += p.out;
            max_in = std::max(max_in, p.in);
        }
        if (sum_in != sum_out)
            return false;
        std::sort(pairs.begin(), pairs.end(), [](const BiDegree & x, const BiDegree & y) {
            return x.out != y.out ? x.out > y.out : x.in > y.in;
        });
        const std::size_t n = pairs.size();
        const std::size_t top = static_cast<std::size_t>(max_in) + 1;
        std::vector<std::int64_t> below_count(top + 1, 0), below_sum(top + 1, 0);
        {
            std::vector<std::int64_t> cnt(top, 0);
            for (const BiDegree & p : pairs)
                ++cnt[p.in];
            for (std::size_t v = 0; v < top; ++v) {
                below_count[v + 1] = below_count[v] + cnt[v];
                below_sum[v + 1] = below_sum[v] + cnt[v] * static_cast<std::int64_t>(v);
            }
        }
        Fenwick first_k(top);
        std::int64_t lhs = 0;
        for (std::size_t k = 1; k <= n && pairs[k - 1].out > 0; ++k) {
            first_k.add(pairs[k - 1].in);
            lhs += static_cast<std::int64_t>(pairs[k - 1].out);
            const std::size_t cut = std::min(k, top);
            const std::int64_t kk = static_cast<std::int64_t>(k);
            std::int64_t sum_min = below_sum[cut] + kk * (static_cast<std::int64_t>(n) - below_count[cut]);
            std::int64_t heads_at_least_k = static_cast<std::int64_t>(k) - first_k.prefix(k);
            if (lhs > sum_min - heads_at_least_k)
                return false;
        }
        return true;
    }

    [[noreturn]] void stuck()
    {
        throw Error("degree sampler reached a state without valid partners (internal error)");
    }

    class UndirectedSampler {
    public:
        UndirectedSampler(std::span<const std::uint64_t> degrees, Rng & rng, std::vector<Link> * links)
            : r_(degrees.begin(), degrees.end()), rng_(rng), links_(links)
        {
            const std::uint64_t top = r_.empty() ? 0 : *std::max_element(r_.begin(), r_.end());
            hist_.assign(top + 1, 0);
            forb_hist_.assign(top + 1, 0);
            scratch_avail_.assign(top + 1, 0);
            scratch_used_.assign(top + 1, 0);
            scratch_counts_.assign(top + 1, 0);
            forbidden_.assign(r_.size(), 0);
            for (NodeId i = 0; i < r_.size(); ++i) {
                ++hist_[r_[i]];
                if (r_[i] > 0)
                    active_.insert({r_[i], i});
            }
        }

        double run()
        {
            double log_q = 0.0;
            std::vector<NodeId> chosen;
            while (!active_.empty()) {
                const NodeId hub = active_.begin()->second;
                log_q += std::lgamma(static_cast<double>(r_[hub]) + 1.0);
                chosen.clear();
                while (r_[hub] > 0) {
                    NodeId partner = choose_partner(hub, log_q);
                    connect(hub, partner);
                    chosen.push_back(partner);
                }
                for (NodeId j : chosen) {
                    forbidden_[j] = 0;
                    --forb_hist_[r_[j]];
                }
            }
            return log_q;
        }

    private:
        std::int64_t available(std::uint64_t value, NodeId hub) const
        {
            return hist_[value] - (r_[hub] == value ? 1 : 0) - forb_hist_[value];
        }

        /// Star-constrained realizability after linking the hub to some
        /// available node of residual degree `value`: the remaining hub links
        /// go greedily to the highest available degrees, then Erdős–Gallai.
        bool feasible(NodeId hub, std::uint64_t value)
        {
            const std::uint64_t top = r_[hub] >= 1 ? hist_.size() - 1 : 0;
            for (std::uint64_t d = 0; d <= top; ++d) {
                scratch_avail_[d] = available(d, hub);
                scratch_used_[d] = forb_hist_[d];
            }
            --scratch_avail_[value];
            ++scratch_used_[value - 1];
            std::uint64_t stubs = r_[hub] - 1;
            for (std::uint64_t d = top; d >= 1 && stubs > 0; --d) {
                std::uint64_t take = std::min<std::uint64_t>(static_cast<std::uint64_t>(scratch_avail_[d]), stubs);
                scratch_avail_[d] -= static_cast<std::int64_t>(take);
                scratch_used_[d - 1] += static_cast<std::int64_t>(take);
                stubs -= take;
            }
            if (stubs > 0)
                return false;
            for (std::uint64_t d = 0; d <= top; ++d)
                scratch_counts_[d] = scratch_avail_[d] + scratch_used_[d];
            return erdos_gallai_counts(std::span<const std::int64_t>(scratch_counts_.data(), top + 1));
        }

        NodeId choose_partner(NodeId hub, double & log_q)
        {
            const std::uint64_t top = hist_.size() - 1;
            allowed_.assign(top + 1, 0);
            std::uint64_t total_weight = 0;
            for (std::uint64_t v = 1; v <= top; ++v) {
                std::int64_t avail = available(v, hub);
                if (avail > 0 && feasible(hub, v)) {
                    allowed_[v] = 1;
                    total_weight += v * static_cast<std::uint64_t>(avail);
                }
            }
            if (total_weight == 0)
                stuck();
            std::uniform_int_distribution<std::uint64_t> pick(0, total_weight - 1);
            std::uint64_t target = pick(rng_);
            for (NodeId j = 0; j < r_.size(); ++j) {
                if (j == hub || forbidden_[j] || r_[j] == 0 || !allowed_[r_[j]])
                    continue;
                if (target < r_[j]) {
                    log_q += std::log(static_cast<double>(r_[j]) / static_cast<double>(total_weight));
                    return j;
                }
                target -= r_[j];
            }
            stuck();
        }

        void decrement(NodeId v)
        {
            --hist_[r_[v]];
            active_.erase({r_[v], v});
            --r_[v];
            ++hist_[r_[v]];
            if (r_[v] > 0)
                active_.insert({r_[v], v});
        }

        void connect(NodeId hub, NodeId partner)
        {
            decrement(hub);
            decrement(partner);
            forbidden_[partner] = 1;
            ++forb_hist_[r_[partner]];
            if (links_)
                links_->push_back({hub, partner});
        }

        std::vector<std::uint64_t> r_;
        Rng & rng_;
        std::vector<Link> * links_;
        std::vector<std::int64_t> hist_, forb_hist_;
        std::vector<std::int64_t> scratch_avail_, scratch_used_, scratch_counts_;
        std::vector<char> forbidden_, allowed_;
        std::set<std::pair<std::uint64_t, NodeId>> active_;
    };

    class DirectedSampler {
    public:
        DirectedSampler(std::span<const std::uint64_t> in, std::span<const std::uint64_t> out, Rng & rng,
                        std::vector<Link> * links)
            : rin_(in.begin(), in.end()), rout_(out.begin(), out.end()), rng_(rng), links_(links)
        {
            forbidden_.assign(rin_.size(), 0);
            for (NodeId i = 0; i < rout_.size(); ++i)
                if (rout_[i] > 0)
                    active_.insert({rout_[i], i});
        }

        double run()
        {
            double log_q = 0.0;
            std::vector<NodeId> chosen;
            while (!active_.empty()) {
                const NodeId hub = active_.begin()->second;
                active_.erase(active_.begin());
                log_q += std::lgamma(static_cast<double>(rout_[hub]) + 1.0);
                chosen.clear();
                while (rout_[hub] > 0) {
                    NodeId partner = choose_partner(hub, log_q);
                    --rout_[hub];
                    --rin_[partner];
                    forbidden_[partner] = 1;
                    chosen.push_back(partner);
                    if (links_)
                        links_->push_back({hub, partner});
                }
                for (NodeId j : chosen)
                    forbidden_[j] = 0;
            }
            return log_q;
        }

    private:
        bool candidate(NodeId hub, NodeId j) const { return j != hub && !forbidden_[j] && rin_[j] > 0; }

        /// Star-constrained realizability after hub -> j: the hub's other links go
        /// to the remaining candidates in normal order (in desc, out desc), then
        /// Fulkerson–Chen–Anstee on the result.
        bool feasible(NodeId hub, NodeId j, const std::vector<NodeId> & normal_order)
        {
            std::uint64_t stubs = rout_[hub] - 1;
            pairs_.resize(rin_.size());
            for (NodeId v = 0; v < rin_.size(); ++v)
                pairs_[v] = {rin_[v], rout_[v]};
            pairs_[hub].out = 0;
            --pairs_[j].in;
            for (NodeId v : normal_order) {
                if (stubs == 0)
                    break;
                if (v == j)
                    continue;
                --pairs_[v].in;
                --stubs;
            }
            if (stubs > 0)
                return false;
            return fulkerson_chen_anstee(pairs_);
        }

        NodeId choose_partner(NodeId hub, double & log_q)
        {
            std::vector<NodeId> normal_order;
            for (NodeId v = 0; v < rin_.size(); ++v)
                if (candidate(hub, v))
                    normal_order.push_back(v);
            std::sort(normal_order.begin(), normal_order.end(), [&](NodeId a, NodeId b) {
                if (rin_[a] != rin_[b])
                    return rin_[a] > rin_[b];
                if (rout_[a] != rout_[b])
                    return rout_[a] > rout_[b];
                return a < b;
            });

            // Candidates with equal (in, out) residuals are interchangeable.
            std::vector<std::pair<BiDegree, bool>> verdicts;
            auto allowed = [&](NodeId j) {
                for (const auto & [key, ok] : verdicts)
                    if (key.in == rin_[j] && key.out == rout_[j])
                        return ok;
                bool ok = feasible(hub, j, normal_order);
                verdicts.push_back({{rin_[j], rout_[j]}, ok});
                return ok;
            };

            std::uint64_t total_weight = 0;
            allowed_nodes_.clear();
            for (NodeId j : normal_order)
                if (allowed(j)) {
                    allowed_nodes_.push_back(j);
                    total_weight += rin_[j];
                }
            if (total_weight == 0)
                stuck();
            std::sort(allowed_nodes_.begin(), allowed_nodes_.end());
            std::uniform_int_distribution<std::uint64_t> pick(0, total_weight - 1);
            std::uint64_t target = pick(rng_);
            for (NodeId j : allowed_nodes_) {
                if (target < rin_[j]) {
                    log_q += std::log(static_cast<double>(rin_[j]) / static_cast<double>(total_weight));
                    return j;
                }
                target -= rin_[j];
            }
            stuck();
        }

        std::vector<std::uint64_t> rin_, rout_;
        Rng & rng_;
        std::vector<Link> * links_;
        std::vector<char> forbidden_;
        std::vector<NodeId> allowed_nodes_;
        std::vector<BiDegree> pairs_;
        std::set<std::pair<std::uint64_t, NodeId>> active_;
    };

    void require_graphical(const DegreeSequence & d)
    {
        if (!is_graphical(d))
            throw InvalidArgument("degree sequence is not graphical");
    }

    double run_sampler(const DegreeSequence & d, Rng & rng, std::vector<Link> * links)
    {
        require_graphical(d);
        if (d.directed)
            return DirectedSampler(d.in, d.out, rng, links).run();
        return UndirectedSampler(d.degrees, rng, links).run();
    }

}  // namespace

bool is_graphical(std::span<const std::uint64_t> degrees)
{
    std::uint64_t top = 0;
    for (std::uint64_t d : degrees) {
        if (d >= degrees.size())
            return false;
        top = std::max(top, d);
    }
    std::vector<std::int64_t> counts(top + 1, 0);
    for (std::uint64_t d : degrees)
        ++counts[d];
    return erdos_gallai_counts(counts);
}

bool is_graphical(std::span<const std::uint64_t> in, std::span<const std::uint64_t> out)
{
    if (in.size() != out.size())
        return false;
    std::vector<BiDegree> pairs(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i] >= in.size() || out[i] >= in.size())
            return false;
        pairs[i] = {in[i], out[i]};
    }
    return fulkerson_chen_anstee(pairs);
}

bool is_graphical(const DegreeSequence & d)
{
    return d.directed ? is_graphical(d.in, d.out) : is_graphical(d.degrees);
}

DsSample ds_sample(const DegreeSequence & d, Rng & rng)
{
    std::vector<Link> links;
    double log_q = run_sampler(d, rng, &links);
    const NodeId n = d.directed ? d.in.size() : d.degrees.size();
    return {Graph::from_links(d.directed, n, std::move(links)), log_q};
}

double ds_sample_log_weight(const DegreeSequence & d, Rng & rng) { return -run_sampler(d, rng, nullptr); }

}  // namespace compmotif
