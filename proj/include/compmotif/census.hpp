#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "compmotif/graph.hpp"
#include "compmotif/motif_code.hpp"

namespace compmotif {

inline constexpr NodeId kCensusMaxNodes = 300;
inline constexpr int kCensusMaxSize = 6;
inline constexpr NodeId kCountMaxNodes = 8;

/// Every connected induced k-node subgraph exactly once (ESU enumeration),
/// bucketed by canonical key. Instances are in canonical order.
std::map<std::string, InstanceList> exact_census(const Graph & g, int k);

/// Number of simple graphs on labeled nodes with exactly this degree sequence.
std::uint64_t exact_graph_count(const DegreeSequence & d);

}  // namespace compmotif
