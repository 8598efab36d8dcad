#include "compmotif/canon.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

#include "compmotif/error.hpp"

namespace compmotif {

namespace {

    constexpr int kCodeWords = 3;  // 12 * 11 = 132 bits for directed graphs
    using Code = std::array<std::uint64_t, kCodeWords>;

    void set_code_bit(Code & code, int bit) { code[bit / 64] |= std::uint64_t{1} << (63 - bit % 64); }

    /// Compares the first `bits` bits of two codes.
    int compare_prefix(const Code & a, const Code & b, int bits)
    {
        for (int w = 0; w < kCodeWords && bits > 0; ++w, bits -= 64) {
            std::uint64_t mask = bits >= 64 ? ~std::uint64_t{0} : ~(~std::uint64_t{0} >> bits);
            std::uint64_t x = a[w] & mask, y = b[w] & mask;
            if (x != y)
                return x < y ? -1 : 1;
        }
        return 0;
    }

    int code_bits(bool directed, int positions) { return directed ? positions * (positions - 1) : positions * (positions - 1) / 2; }

    struct Problem {
        bool directed;
        int k;
        std::array<AdjacencyMask, kMaxCanonNodes> out{};
        std::array<AdjacencyMask, kMaxCanonNodes> in{};
    };

    /// Ordered partition: vertices in `v`, cell boundaries marked in `cell_end`
    /// (bit i set when position i is the last position of its cell).
    struct Partition {
        std::array<std::int8_t, kMaxCanonNodes> v{};
        std::uint32_t cell_end = 0;

        bool is_end(int pos) const { return (cell_end >> pos) & 1u; }
    };

    /// Code of the first `positions` positions of the partition order.
    Code prefix_code(const Problem & pb, const Partition & p, int positions)
    {
        Code code{};
        int bit = 0;
        for (int pos = 1; pos < positions; ++pos) {
            const int u = p.v[pos];
            for (int q = 0; q < pos; ++q) {
                const int w = p.v[q];
                if (pb.directed) {
                    if ((pb.out[w] >> u) & 1u)
                        set_code_bit(code, bit);
                    ++bit;
                    if ((pb.out[u] >> w) & 1u)
                        set_code_bit(code, bit);
                    ++bit;
                }
                else {
                    if ((pb.out[w] >> u) & 1u)
                        set_code_bit(code, bit);
                    ++bit;
                }
            }
        }
        return code;
    }

    /// Splits cells by counts of out- and in-neighbors per current cell until
    /// the partition is equitable. Sub-cells are ordered by signature, so the
    /// result commutes with relabeling.
    void refine(const Problem & pb, Partition & p)
    {
        const int k = pb.k;
        while (true) {
            std::array<AdjacencyMask, kMaxCanonNodes> cell_mask{};
            std::array<int, kMaxCanonNodes> cell_start{};
            int cells = 0;
            for (int pos = 0, start = 0; pos < k; ++pos) {
                cell_mask[cells] |= AdjacencyMask(1u << p.v[pos]);
                if (p.is_end(pos)) {
                    cell_start[cells] = start;
                    start = pos + 1;
                    ++cells;
                }
            }
            if (cells == k)
                return;

            // signature[v] = (out count, in count) per cell, packed for comparison
            std::array<std::array<std::uint8_t, 2 * kMaxCanonNodes>, kMaxCanonNodes> sig{};
            for (int x = 0; x < k; ++x)
                for (int c = 0; c < cells; ++c) {
                    sig[x][2 * c] = static_cast<std::uint8_t>(std::popcount<unsigned>(pb.out[x] & cell_mask[c]));
                    sig[x][2 * c + 1] =
                        pb.directed ? static_cast<std::uint8_t>(std::popcount<unsigned>(pb.in[x] & cell_mask[c])) : 0;
                }
            auto less = [&](std::int8_t a, std::int8_t b) {
                return std::lexicographical_compare(sig[a].begin(), sig[a].begin() + 2 * cells, sig[b].begin(),
                                                    sig[b].begin() + 2 * cells);
            };
            auto same = [&](std::int8_t a, std::int8_t b) {
                return std::equal(sig[a].begin(), sig[a].begin() + 2 * cells, sig[b].begin());
            };

            bool changed = false;
            std::uint32_t new_end = p.cell_end;
            for (int c = 0; c < cells; ++c) {
                int s = cell_start[c];
                int e = s;
                while (!p.is_end(e))
                    ++e;
                if (e == s)
                    continue;
                std::sort(p.v.begin() + s, p.v.begin() + e + 1, less);
                for (int pos = s; pos < e; ++pos)
                    if (!same(p.v[pos], p.v[pos + 1])) {
                        new_end |= 1u << pos;
                        changed = true;
                    }
            }
            p.cell_end = new_end;
            if (!changed)
                return;
        }
    }

    bool are_twins(const Problem & pb, int u, int w)
    {
        const AdjacencyMask bu = AdjacencyMask(1u << u), bw = AdjacencyMask(1u << w);
        if ((pb.out[u] & ~bw) != (pb.out[w] & ~bu))
            return false;
        if (!pb.directed)
            return true;
        if ((pb.in[u] & ~bw) != (pb.in[w] & ~bu))
            return false;
        return bool(pb.out[u] & bw) == bool(pb.out[w] & bu);
    }

    class Search {
    public:
        explicit Search(const Problem & pb) : pb_(pb) {}

        void run(Partition p) { visit(p); }

        const Partition & best() const { return *best_partition_; }

    private:
        void visit(Partition p)
        {
            refine(pb_, p);
            int fixed = 0;
            while (fixed < pb_.k && p.is_end(fixed) && (fixed == 0 || p.is_end(fixed - 1)))
                ++fixed;
            // `fixed` counts leading singleton cells
            Code code = prefix_code(pb_, p, fixed);
            if (best_partition_) {
                int cmp = compare_prefix(code, best_code_, code_bits(pb_.directed, fixed));
                if (cmp > 0)
                    return;
            }
            if (fixed == pb_.k) {
                if (!best_partition_ || compare_prefix(code, best_code_, code_bits(pb_.directed, pb_.k)) < 0) {
                    best_code_ = code;
                    best_partition_ = p;
                }
                return;
            }

            // first non-singleton cell
            int s = fixed;
            int e = s;
            while (!p.is_end(e))
                ++e;
            std::array<std::int8_t, kMaxCanonNodes> tried{};
            int n_tried = 0;
            for (int pos = s; pos <= e; ++pos) {
                const int u = p.v[pos];
                bool redundant = false;
                for (int t = 0; t < n_tried && !redundant; ++t)
                    redundant = are_twins(pb_, tried[t], u);
                if (redundant)
                    continue;
                tried[n_tried++] = static_cast<std::int8_t>(u);

                Partition child = p;
                std::swap(child.v[s], child.v[pos]);
                child.cell_end |= 1u << s;
                visit(child);
            }
        }

        const Problem & pb_;
        Code best_code_{};
        std::optional<Partition> best_partition_;
    };

    std::string encode_text(bool directed, int k, const std::array<AdjacencyMask, kMaxCanonNodes> & out)
    {
        std::string text;
        std::vector<bool> bits;
        if (directed) {
            text.push_back('&');
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    bits.push_back((out[i] >> j) & 1u);
        }
        else {
            for (int j = 1; j < k; ++j)
                for (int i = 0; i < j; ++i)
                    bits.push_back((out[i] >> j) & 1u);
        }
        text.push_back(static_cast<char>(63 + k));
        while (bits.size() % 6 != 0)
            bits.push_back(false);
        for (std::size_t i = 0; i < bits.size(); i += 6) {
            int value = 0;
            for (int b = 0; b < 6; ++b)
                value = (value << 1) | (bits[i + b] ? 1 : 0);
            text.push_back(static_cast<char>(63 + value));
        }
        return text;
    }

}  // namespace

CanonicalGraph::CanonicalGraph(bool directed, int size, std::span<const AdjacencyMask> out_rows)
    : directed_(directed), size_(size)
{
    if (size < 0 || size > kMaxCanonNodes || static_cast<int>(out_rows.size()) < size)
        throw InvalidArgument("CanonicalGraph: invalid size " + std::to_string(size));
    const AdjacencyMask valid = AdjacencyMask((1u << size) - 1u);
    for (int i = 0; i < size; ++i) {
        out_[i] = AdjacencyMask(out_rows[i] & valid & ~AdjacencyMask(1u << i));
    }
    if (!directed)
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j)
                if ((out_[i] >> j) & 1u)
                    out_[j] |= AdjacencyMask(1u << i);
    key_ = encode_text(directed_, size_, out_);
}

CanonicalGraph CanonicalGraph::from_text(std::string_view text)
{
    bool directed = false;
    if (!text.empty() && text.front() == '&') {
        directed = true;
        text.remove_prefix(1);
    }
    if (text.empty())
        throw InvalidArgument("graph text is empty");
    const int k = text[0] - 63;
    if (k < 0 || k > kMaxCanonNodes)
        throw InvalidArgument("graph text: unsupported node count");
    const int nbits = directed ? k * k : k * (k - 1) / 2;
    const std::size_t nchars = static_cast<std::size_t>((nbits + 5) / 6);
    if (text.size() != 1 + nchars)
        throw InvalidArgument("graph text: wrong length for " + std::to_string(k) + " nodes");
    auto bit = [&](int index) {
        int c = text[1 + index / 6] - 63;
        if (c < 0 || c > 63)
            throw InvalidArgument("graph text: invalid character");
        return (c >> (5 - index % 6)) & 1;
    };
    std::array<AdjacencyMask, kMaxCanonNodes> out{};
    int index = 0;
    if (directed) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j, ++index)
                if (bit(index) && i != j)
                    out[i] |= AdjacencyMask(1u << j);
    }
    else {
        for (int j = 1; j < k; ++j)
            for (int i = 0; i < j; ++i, ++index)
                if (bit(index))
                    out[i] |= AdjacencyMask(1u << j);
    }
    return CanonicalGraph(directed, k, std::span<const AdjacencyMask>(out.data(), static_cast<std::size_t>(k)));
}

std::uint64_t CanonicalGraph::num_links() const noexcept
{
    std::uint64_t total = 0;
    for (int i = 0; i < size_; ++i)
        total += static_cast<std::uint64_t>(std::popcount<unsigned>(out_[i]));
    return directed_ ? total : total / 2;
}

std::vector<Link> CanonicalGraph::links() const
{
    std::vector<Link> result;
    for (int i = 0; i < size_; ++i)
        for (int j = directed_ ? 0 : i + 1; j < size_; ++j)
            if (i != j && has_link(i, j))
                result.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
    return result;
}

Graph CanonicalGraph::to_graph() const { return Graph::from_links(directed_, static_cast<NodeId>(size_), links()); }

Canonization canonicalize(bool directed, std::span<const AdjacencyMask> out_rows)
{
    const int k = static_cast<int>(out_rows.size());
    if (k > kMaxCanonNodes)
        throw InvalidArgument("canonicalize: " + std::to_string(k) + " nodes exceeds the limit of " +
                              std::to_string(kMaxCanonNodes));
    Problem pb;
    pb.directed = directed;
    pb.k = k;
    for (int i = 0; i < k; ++i)
        pb.out[i] = AdjacencyMask(out_rows[i] & ~AdjacencyMask(1u << i));
    if (!directed) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if ((pb.out[i] >> j) & 1u)
                    pb.out[j] |= AdjacencyMask(1u << i);
        pb.in = pb.out;
    }
    else {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if ((pb.out[i] >> j) & 1u)
                    pb.in[j] |= AdjacencyMask(1u << i);
    }

    Canonization result;
    if (k == 0) {
        result.graph = CanonicalGraph(directed, 0, {});
        return result;
    }
    Partition start;
    for (int i = 0; i < k; ++i)
        start.v[i] = static_cast<std::int8_t>(i);
    start.cell_end = 1u << (k - 1);
    Search search(pb);
    search.run(start);
    const Partition & best = search.best();

    result.order.resize(k);
    std::array<int, kMaxCanonNodes> position{};
    for (int p = 0; p < k; ++p) {
        result.order[p] = best.v[p];
        position[best.v[p]] = p;
    }
    std::array<AdjacencyMask, kMaxCanonNodes> rows{};
    for (int p = 0; p < k; ++p) {
        AdjacencyMask row = pb.out[best.v[p]];
        while (row) {
            int target = std::countr_zero<unsigned>(row);
            row = AdjacencyMask(row & (row - 1));
            rows[p] |= AdjacencyMask(1u << position[target]);
        }
    }
    result.graph = CanonicalGraph(directed, k, std::span<const AdjacencyMask>(rows.data(), static_cast<std::size_t>(k)));
    return result;
}

std::array<AdjacencyMask, kMaxCanonNodes> induced_rows(const Graph & g, std::span<const NodeId> nodes)
{
    std::array<AdjacencyMask, kMaxCanonNodes> rows{};
    const int k = static_cast<int>(nodes.size());
    for (int i = 0; i < k; ++i) {
        auto nbrs = g.out(nodes[i]);
        for (int j = 0; j < k; ++j) {
            if (i == j)
                continue;
            if (std::binary_search(nbrs.begin(), nbrs.end(), nodes[j]))
                rows[i] |= AdjacencyMask(1u << j);
        }
    }
    return rows;
}

Canonization canonicalize(const Graph & g)
{
    if (g.num_nodes() > static_cast<NodeId>(kMaxCanonNodes))
        throw InvalidArgument("canonicalize: " + std::to_string(g.num_nodes()) + " nodes exceeds the limit of " +
                              std::to_string(kMaxCanonNodes));
    const int k = static_cast<int>(g.num_nodes());
    std::array<AdjacencyMask, kMaxCanonNodes> rows{};
    for (int i = 0; i < k; ++i)
        for (NodeId j : g.out(static_cast<NodeId>(i)))
            rows[i] |= AdjacencyMask(1u << j);
    return canonicalize(g.directed(), std::span<const AdjacencyMask>(rows.data(), static_cast<std::size_t>(k)));
}

bool is_connected(const Graph & g)
{
    const NodeId n = g.num_nodes();
    if (n == 0)
        return false;
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    NodeId reached = 1;
    auto visit = [&](NodeId w) {
        if (!seen[w]) {
            seen[w] = true;
            ++reached;
            stack.push_back(w);
        }
    };
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : g.out(v))
            visit(w);
        if (g.directed())
            for (NodeId w : g.in(v))
                visit(w);
    }
    return reached == n;
}

}  // namespace compmotif
