#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "scnet/network.hpp"

namespace scnet {

struct TopologyStats {
    std::map<std::int64_t, std::int64_t> degree_histogram; // total degree -> firm count
    std::optional<double> tail_exponent; // Hill estimate of the CCDF tail index
    double gscc_share = 0.0;
    double avg_path_length_sampled = 0.0;
    std::int64_t path_sample_sources = 0;
};

// Strongly connected component id per firm (ids are arbitrary but
// deterministic); returns the number of components.
std::size_t strongly_connected_components(const Network& net, std::vector<std::int32_t>& comp);

// Degree histogram, power-law tail fit, GSCC share, and a BFS-sampled mean
// shortest-path length over at least `min_sources` seeds. Deterministic per
// seed. Throws on an empty network.
TopologyStats topology_stats(const Network& net, std::uint64_t seed, int min_sources = 100);

}  // namespace scnet
