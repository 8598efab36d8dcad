#pragma once

#include <charconv>
#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "compmotif/error.hpp"
#include "compmotif/graph.hpp"

namespace compmotif::detail {

/// Parses one edge-list line. Returns false for comments and blank lines.
inline bool parse_edge_line(std::string_view line, std::size_t line_no, NodeId & from, NodeId & to)
{
    auto skip_space = [&](std::size_t pos) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r' || line[pos] == ','))
            ++pos;
        return pos;
    };
    std::size_t pos = skip_space(0);
    if (pos == line.size() || line[pos] == '#' || line[pos] == '%')
        return false;

    auto read_id = [&](NodeId & out) {
        pos = skip_space(pos);
        const char * begin = line.data() + pos;
        const char * end = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t' && *ptr != '\r' && *ptr != ','))
            throw ParseError("expected two non-negative integer node ids", line_no);
        pos = static_cast<std::size_t>(ptr - line.data());
    };
    read_id(from);
    read_id(to);
    return true;
}

/// Assigns compact ids in order of first appearance and remembers whether the
/// raw ids already were exactly 0..n-1.
class IdCompactor {
public:
    NodeId add(NodeId raw)
    {
        auto [it, inserted] = index_.try_emplace(raw, index_.size());
        if (inserted && raw > max_raw_)
            max_raw_ = raw;
        return it->second;
    }

    NodeId size() const noexcept { return index_.size(); }

    bool already_compact() const noexcept { return index_.empty() || max_raw_ + 1 == index_.size(); }

    /// Final id for a raw id seen earlier.
    NodeId final_id(NodeId raw) const
    {
        return already_compact() ? raw : index_.at(raw);
    }

private:
    std::unordered_map<NodeId, NodeId> index_;
    NodeId max_raw_ = 0;
};

}  // namespace compmotif::detail
