#pragma once

// Prefecture-level aggregation of firm-level structure: isolation, loop
// intensity, upstreamness, and supplier substitutability.

#include <optional>
#include <span>
#include <vector>

#include "scnet/hhd.hpp"
#include "scnet/network.hpp"

namespace scnet {

// Denominator convention for the flow-based intensities. The reference
// definitions divide flow sums by a link count; flow_sum divides by the
// total absolute net flow incident to the region instead, which keeps the
// ratio dimensionless.
enum class IntensityDenominator { link_count, flow_sum };

struct RegionProfile {
    int region = 0;
    std::int64_t total_degree = 0;   // F_a: links incident to the region, intra counted once
    std::int64_t intra_links = 0;
    std::int64_t out_links = 0;      // supplier inside, customer outside
    std::int64_t in_links = 0;       // supplier outside, customer inside
    double in_link_share = 0.0;
    double in_loop_share = 0.0;
    double out_link_share = 0.0;
    double avg_potential = 0.0;
    double grp = 0.0;                // baseline daily value added
    std::optional<double> substitutability;
};

struct RegionPairProfile {
    int region_a = 0;
    int region_b = 0;
    double link_ab = 0.0;
    double link_ba = 0.0;
    double pot_ab = 0.0;
    double pot_ba = 0.0;
    double loop_ab = 0.0;
    std::int64_t bi_links = 0;       // inter-region links, direction ignored
    std::optional<double> sub_ab;    // substitutability of a by b
};

// Value-added weights default to 1 per firm when empty.
RegionProfile region_profile(const Network& net, const FlowGraph& fg, const HhdResult& hhd,
                             int region,
                             IntensityDenominator denom = IntensityDenominator::link_count,
                             std::span<const double> value_added_weight = {});

RegionPairProfile pair_profile(const Network& net, const FlowGraph& fg, const HhdResult& hhd,
                               int region_a, int region_b,
                               IntensityDenominator denom = IntensityDenominator::link_count);

// Fraction of a region's outside suppliers that are replaceable by an
// already-connected same-sector supplier inside the region. Undefined when
// the region has no outside suppliers.
std::optional<double> substitutability_one(const Network& net, int region);

// Fraction of region a's suppliers outside a and b that are replaceable by
// an already-connected same-sector supplier in region b.
std::optional<double> substitutability_two(const Network& net, int region_a, int region_b);

// Batch versions: one sweep over the edges instead of one per region/pair.
std::vector<RegionProfile> all_region_profiles(
    const Network& net, const FlowGraph& fg, const HhdResult& hhd,
    IntensityDenominator denom = IntensityDenominator::link_count,
    std::span<const double> value_added_weight = {});

std::vector<RegionPairProfile> all_pair_profiles(
    const Network& net, const FlowGraph& fg, const HhdResult& hhd,
    IntensityDenominator denom = IntensityDenominator::link_count);

}  // namespace scnet
