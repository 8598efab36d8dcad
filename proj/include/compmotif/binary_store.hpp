#pragma once

#include <cstdint>
#include <filesystem>

#include "compmotif/graph.hpp"

namespace compmotif {

/// On-disk adjacency store, all integers little-endian:
///
///   offset  size  field
///   0       8     magic "CMGRAPH\0"
///   8       4     format version (1)
///   12      4     flags (bit 0: directed)
///   16      8     n
///   24      8     m
///   32      ...   forward offsets, n+1 u64
///           ...   forward targets, u64 (2m entries undirected, m directed)
///           ...   directed only: backward offsets (n+1 u64), backward targets (m u64)
///   end-8   8     CRC-32 (zlib) of every preceding byte, zero-extended to u64
inline constexpr std::uint32_t kStoreVersion = 1;

void write_binary_store(const Graph & g, const std::filesystem::path & path);

/// Memory-maps a store and returns a read-only view. Throws IoError on a bad
/// magic or version, a size that does not match the header, or a checksum
/// mismatch (skipped when verify_checksum is false).
Graph open_binary_store(const std::filesystem::path & path, bool verify_checksum = true);

struct ConvertOptions {
    /// Maximum links held in memory per sorted run.
    std::uint64_t run_links = std::uint64_t{1} << 22;
    /// Directory for temporary run files; defaults to the output's directory.
    std::filesystem::path temp_dir;
};

struct ConvertStats {
    NodeId nodes = 0;
    std::uint64_t links = 0;
    std::uint64_t self_loops = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t runs = 0;
    double seconds = 0.0;
};

/// Converts an edge-list file to a binary store with an external merge sort:
/// one pass assigns node ids, then a sort by source fills the forward lists
/// and (directed) a sort by target fills the backward lists. Only the id map
/// and one run of `run_links` links are held in memory. The result opens to
/// a graph equal to load_edgelist on the same file.
ConvertStats bulk_convert(const std::filesystem::path & edgelist, const std::filesystem::path & out, bool directed,
                          const ConvertOptions & options = {});

}  // namespace compmotif
