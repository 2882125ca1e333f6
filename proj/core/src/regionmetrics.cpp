#include "scnet/regionmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

namespace scnet {

namespace {

struct RegionAccum {
    std::int64_t intra = 0, out = 0, in = 0;
    double intra_loop_pos = 0.0;  // sum of |F^c| over intra pairs
    double abs_flow = 0.0;        // sum of |F| over incident pairs
    double phi_sum = 0.0;
    double grp = 0.0;
    std::int64_t firms = 0;
};

// Per-region link counts come from the directed network; flow sums come
// from the pair graph so a reciprocal link pair contributes once.
std::vector<RegionAccum> accumulate_regions(const Network& net, const FlowGraph& fg,
                                            const HhdResult& hhd,
                                            std::span<const double> va_weight) {
    const std::size_t n_regions = net.region_count();
    std::vector<RegionAccum> acc(n_regions);

    const auto regions = net.regions();
    for (std::size_t e = 0; e < net.link_count(); ++e) {
        const int rs = net.region_index(regions[net.edge_supplier()[e]]);
        const int rc = net.region_index(regions[net.edge_customer()[e]]);
        if (rs == rc) {
            acc[rs].intra++;
        } else {
            acc[rs].out++;
            acc[rc].in++;
        }
    }
    for (std::size_t p = 0; p < fg.pair_u.size(); ++p) {
        const int ru = net.region_index(regions[fg.pair_u[p]]);
        const int rv = net.region_index(regions[fg.pair_v[p]]);
        const double af = std::abs(fg.net_flow[p]);
        if (ru == rv) {
            acc[ru].abs_flow += af;
            acc[ru].intra_loop_pos += std::abs(hhd.loop_flow[p]);
        } else {
            acc[ru].abs_flow += af;
            acc[rv].abs_flow += af;
        }
    }
    for (std::size_t i = 0; i < net.firm_count(); ++i) {
        const int r = net.region_index(regions[i]);
        acc[r].phi_sum += hhd.phi[i];
        acc[r].firms++;
        const double w = va_weight.empty() ? 1.0 : va_weight[i];
        acc[r].grp += w * net.initial_production(i);
    }
    return acc;
}

RegionProfile profile_from_accum(const Network& net, int region, const RegionAccum& a,
                                 IntensityDenominator denom) {
    RegionProfile p;
    p.region = region;
    p.intra_links = a.intra;
    p.out_links = a.out;
    p.in_links = a.in;
    p.total_degree = a.intra + a.out + a.in;
    const double link_denom = static_cast<double>(p.total_degree);
    const double flow_denom = denom == IntensityDenominator::link_count ? link_denom : a.abs_flow;
    if (link_denom > 0.0) {
        p.in_link_share = static_cast<double>(a.intra) / link_denom;
        p.out_link_share = static_cast<double>(a.out) / link_denom;
    }
    if (flow_denom > 0.0) p.in_loop_share = a.intra_loop_pos / flow_denom;
    p.avg_potential = a.firms > 0 ? a.phi_sum / static_cast<double>(a.firms) : 0.0;
    p.grp = a.grp;
    return p;
}

}  // namespace

RegionProfile region_profile(const Network& net, const FlowGraph& fg, const HhdResult& hhd,
                             int region, IntensityDenominator denom,
                             std::span<const double> value_added_weight) {
    const int idx = net.region_index(region);
    if (idx < 0) throw ConfigError("region_profile: region " + std::to_string(region) +
                                   " has no firms");
    auto acc = accumulate_regions(net, fg, hhd, value_added_weight);
    RegionProfile p = profile_from_accum(net, region, acc[idx], denom);
    p.substitutability = substitutability_one(net, region);
    return p;
}

std::vector<RegionProfile> all_region_profiles(const Network& net, const FlowGraph& fg,
                                               const HhdResult& hhd, IntensityDenominator denom,
                                               std::span<const double> value_added_weight) {
    auto acc = accumulate_regions(net, fg, hhd, value_added_weight);
    std::vector<RegionProfile> out;
    out.reserve(net.region_count());
    for (std::size_t r = 0; r < net.region_count(); ++r) {
        RegionProfile p = profile_from_accum(net, net.region_ids()[r], acc[r], denom);
        p.substitutability = substitutability_one(net, p.region);
        out.push_back(p);
    }
    return out;
}

RegionPairProfile pair_profile(const Network& net, const FlowGraph& fg, const HhdResult& hhd,
                               int region_a, int region_b, IntensityDenominator denom) {
    if (region_a == region_b) throw ConfigError("pair_profile: regions must differ");
    const int ia = net.region_index(region_a);
    const int ib = net.region_index(region_b);
    if (ia < 0 || ib < 0) throw ConfigError("pair_profile: region has no firms");

    const auto regions = net.regions();
    RegionPairProfile p;
    p.region_a = region_a;
    p.region_b = region_b;

    double denom_a;
    {
        auto acc = accumulate_regions(net, fg, hhd, {});
        denom_a = denom == IntensityDenominator::link_count
                      ? static_cast<double>(acc[ia].intra + acc[ia].out + acc[ia].in)
                      : acc[ia].abs_flow;
    }

    for (std::size_t k = 0; k < fg.pair_u.size(); ++k) {
        const int ru = net.region_index(regions[fg.pair_u[k]]);
        const int rv = net.region_index(regions[fg.pair_v[k]]);
        const bool forward = ru == ia && rv == ib;   // pair oriented a -> b
        const bool backward = ru == ib && rv == ia;  // pair oriented b -> a
        if (!forward && !backward) continue;
        const double f_ab = forward ? fg.net_flow[k] : -fg.net_flow[k];
        const double fp_ab = forward ? hhd.pot_flow[k] : -hhd.pot_flow[k];
        const double fc_ab = forward ? hhd.loop_flow[k] : -hhd.loop_flow[k];
        p.link_ab += std::max(f_ab, 0.0);
        p.link_ba += std::max(-f_ab, 0.0);
        p.pot_ab += std::max(fp_ab, 0.0);
        p.pot_ba += std::max(-fp_ab, 0.0);
        p.loop_ab += std::max(fc_ab, 0.0);
    }
    for (std::size_t e = 0; e < net.link_count(); ++e) {
        const int rs = net.region_index(regions[net.edge_supplier()[e]]);
        const int rc = net.region_index(regions[net.edge_customer()[e]]);
        if ((rs == ia && rc == ib) || (rs == ib && rc == ia)) p.bi_links++;
    }
    if (denom_a > 0.0) {
        p.link_ab /= denom_a;
        p.link_ba /= denom_a;
        p.pot_ab /= denom_a;
        p.pot_ba /= denom_a;
        p.loop_ab /= denom_a;
    }
    p.sub_ab = substitutability_two(net, region_a, region_b);
    return p;
}

std::vector<RegionPairProfile> all_pair_profiles(const Network& net, const FlowGraph& fg,
                                                 const HhdResult& hhd,
                                                 IntensityDenominator denom) {
    const std::size_t n_regions = net.region_count();
    const auto regions = net.regions();
    auto acc = accumulate_regions(net, fg, hhd, {});
    std::vector<double> denom_r(n_regions);
    for (std::size_t r = 0; r < n_regions; ++r) {
        denom_r[r] = denom == IntensityDenominator::link_count
                         ? static_cast<double>(acc[r].intra + acc[r].out + acc[r].in)
                         : acc[r].abs_flow;
    }

    // Ordered-pair accumulators, indexed a * n_regions + b.
    auto at = [n_regions](std::size_t a, std::size_t b) { return a * n_regions + b; };
    std::vector<RegionPairProfile> grid(n_regions * n_regions);
    for (std::size_t a = 0; a < n_regions; ++a) {
        for (std::size_t b = 0; b < n_regions; ++b) {
            grid[at(a, b)].region_a = net.region_ids()[a];
            grid[at(a, b)].region_b = net.region_ids()[b];
        }
    }

    for (std::size_t k = 0; k < fg.pair_u.size(); ++k) {
        const std::size_t ru = net.region_index(regions[fg.pair_u[k]]);
        const std::size_t rv = net.region_index(regions[fg.pair_v[k]]);
        if (ru == rv) continue;
        const double f = fg.net_flow[k];
        const double fp = hhd.pot_flow[k];
        const double fc = hhd.loop_flow[k];
        auto& fwd = grid[at(ru, rv)];  // u -> v direction
        auto& bwd = grid[at(rv, ru)];
        fwd.link_ab += std::max(f, 0.0);
        fwd.link_ba += std::max(-f, 0.0);
        fwd.pot_ab += std::max(fp, 0.0);
        fwd.pot_ba += std::max(-fp, 0.0);
        fwd.loop_ab += std::max(fc, 0.0);
        bwd.link_ab += std::max(-f, 0.0);
        bwd.link_ba += std::max(f, 0.0);
        bwd.pot_ab += std::max(-fp, 0.0);
        bwd.pot_ba += std::max(fp, 0.0);
        bwd.loop_ab += std::max(-fc, 0.0);
    }
    for (std::size_t e = 0; e < net.link_count(); ++e) {
        const std::size_t rs = net.region_index(regions[net.edge_supplier()[e]]);
        const std::size_t rc = net.region_index(regions[net.edge_customer()[e]]);
        if (rs == rc) continue;
        grid[at(rs, rc)].bi_links++;
        grid[at(rc, rs)].bi_links++;
    }

    std::vector<RegionPairProfile> out;
    out.reserve(n_regions * (n_regions - 1));
    for (std::size_t a = 0; a < n_regions; ++a) {
        for (std::size_t b = 0; b < n_regions; ++b) {
            if (a == b) continue;
            RegionPairProfile p = grid[at(a, b)];
            if (denom_r[a] > 0.0) {
                p.link_ab /= denom_r[a];
                p.link_ba /= denom_r[a];
                p.pot_ab /= denom_r[a];
                p.pot_ba /= denom_r[a];
                p.loop_ab /= denom_r[a];
            }
            p.sub_ab = substitutability_two(net, p.region_a, p.region_b);
            out.push_back(p);
        }
    }
    return out;
}

std::optional<double> substitutability_one(const Network& net, int region) {
    const int idx = net.region_index(region);
    if (idx < 0) return std::nullopt;
    const auto regions = net.regions();
    const auto sectors = net.sectors();

    std::int64_t denom = 0, numer = 0;
    std::unordered_set<int> in_region_supplier_sectors;
    for (FirmId i : net.region_firms()[idx]) {
        in_region_supplier_sectors.clear();
        for (EdgeId e = net.in_offset(i); e < net.in_offset(i + 1); ++e) {
            const FirmId j = net.edge_supplier()[e];
            if (regions[j] == region) in_region_supplier_sectors.insert(sectors[j]);
        }
        for (EdgeId e = net.in_offset(i); e < net.in_offset(i + 1); ++e) {
            const FirmId j = net.edge_supplier()[e];
            if (regions[j] == region) continue;
            ++denom;
            if (in_region_supplier_sectors.count(sectors[j])) ++numer;
        }
    }
    if (denom == 0) return std::nullopt;
    return static_cast<double>(numer) / static_cast<double>(denom);
}

std::optional<double> substitutability_two(const Network& net, int region_a, int region_b) {
    if (region_a == region_b) throw ConfigError("substitutability_two: regions must differ");
    const int ia = net.region_index(region_a);
    if (ia < 0) return std::nullopt;
    const auto regions = net.regions();
    const auto sectors = net.sectors();

    std::int64_t denom = 0, numer = 0;
    std::unordered_set<int> b_supplier_sectors;
    for (FirmId i : net.region_firms()[ia]) {
        b_supplier_sectors.clear();
        for (EdgeId e = net.in_offset(i); e < net.in_offset(i + 1); ++e) {
            const FirmId j = net.edge_supplier()[e];
            if (regions[j] == region_b) b_supplier_sectors.insert(sectors[j]);
        }
        for (EdgeId e = net.in_offset(i); e < net.in_offset(i + 1); ++e) {
            const FirmId j = net.edge_supplier()[e];
            if (regions[j] == region_a || regions[j] == region_b) continue;
            ++denom;
            if (b_supplier_sectors.count(sectors[j])) ++numer;
        }
    }
    if (denom == 0) return std::nullopt;
    return static_cast<double>(numer) / static_cast<double>(denom);
}

}  // namespace scnet
