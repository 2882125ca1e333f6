#pragma once

// Static firm-level supply-chain network.
//
// Links are stored once, indexed by edge id in customer-major order, with a
// supplier-major permutation on top. Edge ids are shared between the two
// views so per-link state (inventories, orders) lives in flat arrays.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scnet/error.hpp"

namespace scnet {

using FirmId = std::int32_t;
using EdgeId = std::int64_t;

struct Firm {
    FirmId id = 0;
    int sector = 0;     // JSIC two-digit code, plus 560/561/569
    int region = 0;     // prefecture code, 1..47 for the real data
    double sales = 0.0; // currency per year
};

struct SupplyLink {
    FirmId supplier = 0;
    FirmId customer = 0;
    double baseline_flow = 0.0; // currency per day
};

// Inter-sector transaction table (currency per year).
struct IoTable {
    std::map<std::pair<int, int>, double> sector_pair_value;
    std::map<int, double> final_demand;

    double pair_value(int from, int to) const {
        auto it = sector_pair_value.find({from, to});
        return it == sector_pair_value.end() ? -1.0 : it->second;
    }
};

constexpr double kDaysPerYear = 365.0;

class Network {
public:
    // Firms must have dense ids 0..n-1. Duplicate links (same ordered pair)
    // are merged by summing their flows. Self-loops are rejected.
    static Network build(std::vector<Firm> firms, std::vector<SupplyLink> links,
                         std::vector<double> final_consumption);

    std::size_t firm_count() const { return sector_.size(); }
    std::size_t link_count() const { return edge_customer_.size(); }
    std::size_t region_count() const { return region_firms_.size(); }

    int sector(FirmId i) const { return sector_[i]; }
    int region(FirmId i) const { return region_[i]; }
    double sales(FirmId i) const { return sales_[i]; }
    double final_consumption(FirmId i) const { return final_consumption_[i]; }
    double initial_production(FirmId i) const { return p_ini_[i]; }

    std::span<const int> sectors() const { return sector_; }
    std::span<const int> regions() const { return region_; }
    std::span<const double> sales_all() const { return sales_; }
    std::span<const double> final_consumption_all() const { return final_consumption_; }
    std::span<const double> initial_production_all() const { return p_ini_; }

    // Edge arrays, customer-major edge-id order.
    std::span<const FirmId> edge_supplier() const { return edge_supplier_; }
    std::span<const FirmId> edge_customer() const { return edge_customer_; }
    std::span<const double> edge_flow() const { return edge_flow_; }

    // Incoming links of a customer: contiguous edge-id range
    // [in_offset(i), in_offset(i+1)), sorted by (supplier sector, supplier id).
    EdgeId in_offset(FirmId i) const { return in_offsets_[i]; }
    std::span<const EdgeId> in_offsets() const { return in_offsets_; }

    // Input-sector groups of a customer: incoming edges grouped by supplier
    // sector; group g of firm i spans edge ids
    // [group_edge_begin[group_offset[i]+g], ...begin[...+g+1]).
    std::span<const std::int64_t> group_offsets() const { return group_offsets_; }
    std::span<const EdgeId> group_edge_begin() const { return group_edge_begin_; }
    std::span<const double> group_baseline_total() const { return group_baseline_total_; }

    // Outgoing links of a supplier: edge ids via the supplier-major
    // permutation, customers ascending.
    std::int64_t out_offset(FirmId i) const { return out_offsets_[i]; }
    std::span<const std::int64_t> out_offsets() const { return out_offsets_; }
    std::span<const EdgeId> out_edges() const { return out_edges_; }

    // Firms of each region, ascending id; regions indexed by dense position
    // in region_ids() (sorted ascending region code).
    const std::vector<int>& region_ids() const { return region_ids_; }
    const std::vector<std::vector<FirmId>>& region_firms() const { return region_firms_; }
    int region_index(int region_code) const; // -1 when absent

    // Consistency checks used by --self-check: verifies the two adjacency
    // views are transposes and P_ini matches a fresh accumulation.
    void verify() const;

private:
    std::vector<int> sector_;
    std::vector<int> region_;
    std::vector<double> sales_;
    std::vector<double> final_consumption_;
    std::vector<double> p_ini_;

    std::vector<FirmId> edge_supplier_;
    std::vector<FirmId> edge_customer_;
    std::vector<double> edge_flow_;

    std::vector<EdgeId> in_offsets_;
    std::vector<std::int64_t> group_offsets_;
    std::vector<EdgeId> group_edge_begin_;
    std::vector<double> group_baseline_total_;

    std::vector<std::int64_t> out_offsets_;
    std::vector<EdgeId> out_edges_;

    std::vector<int> region_ids_;
    std::vector<std::vector<FirmId>> region_firms_;
};

}  // namespace scnet
