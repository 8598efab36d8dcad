#include "compmotif/binary_store.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstring>
#include <fstream>
#include <queue>
#include <string>
#include <vector>

#include "compmotif/error.hpp"
#include "edgelist_parse.hpp"

static_assert(std::endian::native == std::endian::little, "binary store assumes a little-endian host");

namespace compmotif {

namespace {

    constexpr std::array<char, 8> kMagic{'C', 'M', 'G', 'R', 'A', 'P', 'H', '\0'};
    constexpr std::size_t kHeaderSize = 32;

    struct Header {
        std::uint32_t version = kStoreVersion;
        std::uint32_t flags = 0;
        std::uint64_t n = 0;
        std::uint64_t m = 0;
    };

    std::array<unsigned char, kHeaderSize> encode_header(const Header & h)
    {
        std::array<unsigned char, kHeaderSize> bytes{};
        std::memcpy(bytes.data(), kMagic.data(), 8);
        std::memcpy(bytes.data() + 8, &h.version, 4);
        std::memcpy(bytes.data() + 12, &h.flags, 4);
        std::memcpy(bytes.data() + 16, &h.n, 8);
        std::memcpy(bytes.data() + 24, &h.m, 8);
        return bytes;
    }

    /// Output file that tracks the running CRC of everything written.
    class ChecksummedWriter {
    public:
        explicit ChecksummedWriter(const std::filesystem::path & path) : out_(path, std::ios::binary | std::ios::trunc)
        {
            if (!out_)
                throw IoError("cannot create " + path.string());
        }

        void write(const void * data, std::size_t bytes)
        {
            const auto * p = static_cast<const unsigned char *>(data);
            std::size_t left = bytes;
            while (left > 0) {
                auto chunk = static_cast<uInt>(std::min<std::size_t>(left, 1u << 30));
                crc_ = crc32(crc_, p, chunk);
                p += chunk;
                left -= chunk;
            }
            out_.write(static_cast<const char *>(data), static_cast<std::streamsize>(bytes));
        }

        void write_u64s(std::span<const std::uint64_t> values) { write(values.data(), values.size_bytes()); }

        void copy_from(const std::filesystem::path & path)
        {
            std::ifstream in(path, std::ios::binary);
            std::vector<char> buffer(1 << 20);
            while (in) {
                in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
                if (auto got = in.gcount(); got > 0)
                    write(buffer.data(), static_cast<std::size_t>(got));
            }
        }

        void finish()
        {
            std::uint64_t crc = crc_;
            out_.write(reinterpret_cast<const char *>(&crc), 8);
            out_.flush();
            if (!out_)
                throw IoError("write failed");
        }

    private:
        std::ofstream out_;
        uLong crc_ = crc32(0L, Z_NULL, 0);
    };

    class MappedFile {
    public:
        explicit MappedFile(const std::filesystem::path & path)
        {
            int fd = ::open(path.c_str(), O_RDONLY);
            if (fd < 0)
                throw IoError("cannot open " + path.string());
            struct stat st {};
            if (::fstat(fd, &st) != 0) {
                ::close(fd);
                throw IoError("cannot stat " + path.string());
            }
            size_ = static_cast<std::size_t>(st.st_size);
            if (size_ > 0) {
                void * p = ::mmap(nullptr, size_, PROT_READ, MAP_SHARED, fd, 0);
                if (p == MAP_FAILED) {
                    ::close(fd);
                    throw IoError("cannot map " + path.string());
                }
                data_ = static_cast<const unsigned char *>(p);
            }
            ::close(fd);
        }

        MappedFile(const MappedFile &) = delete;
        MappedFile & operator=(const MappedFile &) = delete;

        ~MappedFile()
        {
            if (data_)
                ::munmap(const_cast<unsigned char *>(data_), size_);
        }

        const unsigned char * data() const noexcept { return data_; }
        std::size_t size() const noexcept { return size_; }

    private:
        const unsigned char * data_ = nullptr;
        std::size_t size_ = 0;
    };

    std::span<const NodeId> u64_span(const unsigned char * base, std::size_t offset, std::size_t count)
    {
        return {reinterpret_cast<const NodeId *>(base + offset), count};
    }

    void write_u64_file(const std::filesystem::path & path, std::span<const std::uint64_t> values)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char *>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
        if (!out)
            throw IoError("cannot write temporary file " + path.string());
    }

    /// Sequential reader over a file of (u64, u64) pairs.
    class PairReader {
    public:
        explicit PairReader(const std::filesystem::path & path) : in_(path, std::ios::binary) { advance(); }

        bool done() const noexcept { return done_; }
        const Link & current() const noexcept { return current_; }

        void advance()
        {
            std::uint64_t pair[2];
            if (in_.read(reinterpret_cast<char *>(pair), sizeof pair))
                current_ = {pair[0], pair[1]};
            else
                done_ = true;
        }

    private:
        std::ifstream in_;
        Link current_;
        bool done_ = false;
    };

    template <typename Fn>
    void for_each_edge_line(const std::filesystem::path & path, Fn && fn)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open " + path.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            NodeId from, to;
            if (detail::parse_edge_line(line, line_no, from, to))
                fn(from, to);
        }
        if (in.bad())
            throw IoError("read error on " + path.string());
    }

    struct SortedPass {
        std::vector<NodeId> offsets;
        std::uint64_t entries = 0;
        std::uint64_t runs = 0;
    };

    /// External sort of the (possibly reversed / mirrored) link list by source,
    /// de-duplicated, written as a flat targets file.
    SortedPass sorted_pass(const std::filesystem::path & edgelist, const detail::IdCompactor & ids, bool directed,
                           bool reverse, const ConvertOptions & options, const std::filesystem::path & temp_prefix,
                           const std::filesystem::path & targets_path)
    {
        SortedPass pass;
        std::vector<std::filesystem::path> run_paths;
        std::vector<Link> buffer;
        buffer.reserve(std::min<std::uint64_t>(options.run_links, std::uint64_t{1} << 24));

        auto flush = [&] {
            if (buffer.empty())
                return;
            std::sort(buffer.begin(), buffer.end());
            buffer.erase(std::unique(buffer.begin(), buffer.end()), buffer.end());
            auto path = temp_prefix;
            path += ".run" + std::to_string(run_paths.size()) + ".tmp";
            std::vector<std::uint64_t> flat;
            flat.reserve(buffer.size() * 2);
            for (const Link & l : buffer) {
                flat.push_back(l.from);
                flat.push_back(l.to);
            }
            write_u64_file(path, flat);
            run_paths.push_back(path);
            buffer.clear();
        };
        auto push = [&](NodeId a, NodeId b) {
            buffer.push_back({a, b});
            if (buffer.size() >= options.run_links)
                flush();
        };

        for_each_edge_line(edgelist, [&](NodeId raw_from, NodeId raw_to) {
            NodeId a = ids.final_id(raw_from);
            NodeId b = ids.final_id(raw_to);
            if (a == b)
                return;
            if (!directed) {
                push(a, b);
                push(b, a);
            }
            else if (reverse)
                push(b, a);
            else
                push(a, b);
        });
        flush();
        pass.runs = run_paths.size();

        const NodeId n = ids.size();
        pass.offsets.assign(n + 1, 0);
        {
            std::vector<std::unique_ptr<PairReader>> readers;
            for (const auto & p : run_paths)
                readers.push_back(std::make_unique<PairReader>(p));
            auto cmp = [&](std::size_t x, std::size_t y) { return readers[y]->current() < readers[x]->current(); };
            std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
            for (std::size_t i = 0; i < readers.size(); ++i)
                if (!readers[i]->done())
                    heap.push(i);

            std::ofstream targets(targets_path, std::ios::binary | std::ios::trunc);
            if (!targets)
                throw IoError("cannot write temporary file " + targets_path.string());
            std::vector<std::uint64_t> out_buffer;
            out_buffer.reserve(1 << 16);
            bool have_last = false;
            Link last{};
            while (!heap.empty()) {
                std::size_t i = heap.top();
                heap.pop();
                Link l = readers[i]->current();
                readers[i]->advance();
                if (!readers[i]->done())
                    heap.push(i);
                if (have_last && l == last)
                    continue;
                have_last = true;
                last = l;
                ++pass.offsets[l.from + 1];
                out_buffer.push_back(l.to);
                if (out_buffer.size() == out_buffer.capacity()) {
                    targets.write(reinterpret_cast<const char *>(out_buffer.data()),
                                  static_cast<std::streamsize>(out_buffer.size() * 8));
                    out_buffer.clear();
                }
            }
            targets.write(reinterpret_cast<const char *>(out_buffer.data()),
                          static_cast<std::streamsize>(out_buffer.size() * 8));
            if (!targets)
                throw IoError("cannot write temporary file " + targets_path.string());
        }
        for (const auto & p : run_paths)
            std::filesystem::remove(p);
        for (NodeId i = 0; i < n; ++i)
            pass.offsets[i + 1] += pass.offsets[i];
        pass.entries = pass.offsets[n];
        return pass;
    }

}  // namespace

void write_binary_store(const Graph & g, const std::filesystem::path & path)
{
    ChecksummedWriter out(path);
    Header h;
    h.flags = g.directed() ? 1u : 0u;
    h.n = g.num_nodes();
    h.m = g.num_links();
    auto header = encode_header(h);
    out.write(header.data(), header.size());
    out.write_u64s(g.forward().offsets);
    out.write_u64s(g.forward().targets);
    if (g.directed()) {
        out.write_u64s(g.backward().offsets);
        out.write_u64s(g.backward().targets);
    }
    out.finish();
}

Graph open_binary_store(const std::filesystem::path & path, bool verify_checksum)
{
    auto file = std::make_shared<MappedFile>(path);
    const unsigned char * base = file->data();
    const std::size_t size = file->size();
    if (size < kHeaderSize + 8)
        throw IoError(path.string() + ": truncated store");
    if (std::memcmp(base, kMagic.data(), 8) != 0)
        throw IoError(path.string() + ": not a graph store (bad magic)");
    Header h;
    std::memcpy(&h.version, base + 8, 4);
    std::memcpy(&h.flags, base + 12, 4);
    std::memcpy(&h.n, base + 16, 8);
    std::memcpy(&h.m, base + 24, 8);
    if (h.version != kStoreVersion)
        throw IoError(path.string() + ": unsupported store version " + std::to_string(h.version));
    const bool directed = (h.flags & 1u) != 0;

    const std::uint64_t forward_entries = directed ? h.m : 2 * h.m;
    // Guard the size arithmetic against absurd headers before multiplying.
    if (h.n > size || h.m > size)
        throw IoError(path.string() + ": truncated store");
    std::uint64_t expected = kHeaderSize + 8 * (h.n + 1) + 8 * forward_entries + 8;
    if (directed)
        expected += 8 * (h.n + 1) + 8 * h.m;
    if (size != expected)
        throw IoError(path.string() + ": truncated store (size " + std::to_string(size) + ", expected " +
                      std::to_string(expected) + ")");

    if (verify_checksum) {
        uLong crc = crc32(0L, Z_NULL, 0);
        std::size_t left = size - 8;
        const unsigned char * p = base;
        while (left > 0) {
            auto chunk = static_cast<uInt>(std::min<std::size_t>(left, 1u << 30));
            crc = crc32(crc, p, chunk);
            p += chunk;
            left -= chunk;
        }
        std::uint64_t stored;
        std::memcpy(&stored, base + size - 8, 8);
        if (stored != crc)
            throw IoError(path.string() + ": checksum mismatch");
    }

    std::size_t offset = kHeaderSize;
    Adjacency fwd{u64_span(base, offset, h.n + 1), {}};
    offset += 8 * (h.n + 1);
    fwd.targets = u64_span(base, offset, forward_entries);
    offset += 8 * forward_entries;
    Adjacency bwd;
    if (directed) {
        bwd.offsets = u64_span(base, offset, h.n + 1);
        offset += 8 * (h.n + 1);
        bwd.targets = u64_span(base, offset, h.m);
    }
    else {
        static const NodeId zero = 0;
        bwd.offsets = std::span<const NodeId>(&zero, 1);
    }
    if (fwd.offsets[h.n] != forward_entries || (directed && bwd.offsets[h.n] != h.m))
        throw IoError(path.string() + ": inconsistent offsets");
    return Graph::from_adjacency(directed, h.n, h.m, fwd, bwd, std::move(file));
}

ConvertStats bulk_convert(const std::filesystem::path & edgelist, const std::filesystem::path & out, bool directed,
                          const ConvertOptions & options)
{
    if (options.run_links == 0)
        throw InvalidArgument("bulk_convert: run_links must be positive");
    const auto start = std::chrono::steady_clock::now();
    ConvertStats stats;

    detail::IdCompactor ids;
    std::uint64_t lines = 0;
    for_each_edge_line(edgelist, [&](NodeId from, NodeId to) {
        ids.add(from);
        ids.add(to);
        ++lines;
        if (from == to)
            ++stats.self_loops;
    });
    if (lines == 0)
        throw ParseError("edge list contains no links", 0);

    auto temp_dir = options.temp_dir.empty() ? std::filesystem::absolute(out).parent_path() : options.temp_dir;
    auto prefix = temp_dir / (out.filename().string() + "." + std::to_string(::getpid()));
    auto forward_targets = prefix;
    forward_targets += ".fwd.tmp";
    auto backward_targets = prefix;
    backward_targets += ".bwd.tmp";

    SortedPass forward = sorted_pass(edgelist, ids, directed, false, options, prefix, forward_targets);
    SortedPass backward;
    if (directed)
        backward = sorted_pass(edgelist, ids, directed, true, options, prefix, backward_targets);

    Header h;
    h.flags = directed ? 1u : 0u;
    h.n = ids.size();
    h.m = directed ? forward.entries : forward.entries / 2;
    {
        ChecksummedWriter writer(out);
        auto header = encode_header(h);
        writer.write(header.data(), header.size());
        writer.write_u64s(forward.offsets);
        writer.copy_from(forward_targets);
        if (directed) {
            writer.write_u64s(backward.offsets);
            writer.copy_from(backward_targets);
        }
        writer.finish();
    }
    std::filesystem::remove(forward_targets);
    if (directed)
        std::filesystem::remove(backward_targets);

    stats.nodes = h.n;
    stats.links = h.m;
    stats.duplicates = lines - stats.self_loops - h.m;
    stats.runs = forward.runs + backward.runs;
    stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return stats;
}

}  // namespace compmotif
