#pragma once

// Construction, weighting, validation, and synthetic generation of the
// supply-chain network.

#include <cstdint>
#include <vector>

#include "scnet/csv.hpp"
#include "scnet/network.hpp"

namespace scnet {

// Two-step transaction-value estimation. Step one splits each supplier's
// yearly sales across its customers in proportion to customer sales. Step
// two rescales every tentative value so that sector-pair aggregates match
// the IO table, then converts yearly values to daily (÷365).
//
// Throws ConfigError when a supplier's customers have zero total sales, or
// when a sector pair with a nonzero tentative aggregate is missing from the
// IO table.
std::vector<SupplyLink> estimate_link_values(const std::vector<Firm>& firms,
                                             const std::vector<RawLink>& raw_links,
                                             const IoTable& io);

// Per-firm daily final consumption: sector final demand split by sales
// weights. Throws when a sector has positive demand but zero total sales.
std::vector<double> allocate_final_consumption(const std::vector<Firm>& firms,
                                               const IoTable& io);

struct SynthParams {
    std::int64_t n_firms = 10000;
    int n_regions = 8;
    int n_sectors = 20;
    double mean_links = 4.0;        // expected new links per firm
    double attachment_exponent = 1.0;
    double intra_region_bias = 0.6; // probability a link stays in-region
    double reciprocity_bias = 0.2;  // probability a link gains a reverse twin
    double region_bias_jitter = 0.3; // per-region spread of the intra bias
    double sales_pareto_alpha = 1.5;
    std::uint64_t seed = 1;
};

// Deterministic scale-free directed generator. Regions and sectors are
// assigned at birth; attachment is degree-preferential with a same-region
// bias; link values come from estimate_link_values against a synthetic IO
// table so downstream code sees the same invariants as loaded data.
Network generate_synthetic(const SynthParams& params);

// The generator's intermediate products, for callers that need to persist
// firms.csv / links.csv / io_table.csv.
struct SynthOutput {
    std::vector<Firm> firms;
    std::vector<SupplyLink> links;
    IoTable io;
    std::vector<double> final_consumption;
};
SynthOutput generate_synthetic_parts(const SynthParams& params);

// Assembles a Network from loaded parts: drops firms without sales,
// reindexes ids densely, estimates missing link values, allocates final
// consumption, and rejects firms with zero initial production.
struct LoadResult {
    Network net;
    std::vector<FirmId> kept_original_ids; // dense id -> original id
    std::size_t dropped_saleless = 0;
};
LoadResult assemble_network(std::vector<Firm> firms, std::vector<RawLink> raw_links,
                            const IoTable& io);

}  // namespace scnet
