#include "scnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scnet {

Network Network::build(std::vector<Firm> firms, std::vector<SupplyLink> links,
                       std::vector<double> final_consumption) {
    const std::size_t n = firms.size();
    if (final_consumption.size() != n) {
        throw ConfigError("network: final consumption vector size does not match firm count");
    }

    Network net;
    net.sector_.resize(n);
    net.region_.resize(n);
    net.sales_.resize(n);
    net.final_consumption_ = std::move(final_consumption);

    std::vector<bool> seen(n, false);
    for (const Firm& f : firms) {
        if (f.id < 0 || static_cast<std::size_t>(f.id) >= n || seen[f.id]) {
            throw ConfigError("network: firm ids must be unique and contiguous from 0");
        }
        seen[f.id] = true;
        if (f.sales < 0.0) {
            throw ConfigError("network: negative sales for firm " + std::to_string(f.id));
        }
        net.sector_[f.id] = f.sector;
        net.region_[f.id] = f.region;
        net.sales_[f.id] = f.sales;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (net.final_consumption_[i] < 0.0) {
            throw ConfigError("network: negative final consumption for firm " + std::to_string(i));
        }
    }

    for (const SupplyLink& l : links) {
        if (l.supplier < 0 || static_cast<std::size_t>(l.supplier) >= n ||
            l.customer < 0 || static_cast<std::size_t>(l.customer) >= n) {
            throw ConfigError("network: link endpoint out of range");
        }
        if (l.supplier == l.customer) {
            throw ConfigError("network: self-link on firm " + std::to_string(l.supplier));
        }
        if (!(l.baseline_flow > 0.0) || !std::isfinite(l.baseline_flow)) {
            throw ConfigError("network: link flow must be positive and finite (supplier " +
                              std::to_string(l.supplier) + " -> customer " +
                              std::to_string(l.customer) + ")");
        }
    }

    // Customer-major edge order: (customer, supplier sector, supplier).
    // Sector-contiguous incoming edges make the per-sector inventory sums
    // of the production step a linear scan.
    std::sort(links.begin(), links.end(), [&](const SupplyLink& a, const SupplyLink& b) {
        if (a.customer != b.customer) return a.customer < b.customer;
        const int sa = net.sector_[a.supplier];
        const int sb = net.sector_[b.supplier];
        if (sa != sb) return sa < sb;
        return a.supplier < b.supplier;
    });

    // Merge duplicate ordered pairs by summing flows.
    std::size_t m = 0;
    for (std::size_t k = 0; k < links.size(); ++k) {
        if (m > 0 && links[m - 1].customer == links[k].customer &&
            links[m - 1].supplier == links[k].supplier) {
            links[m - 1].baseline_flow += links[k].baseline_flow;
        } else {
            links[m++] = links[k];
        }
    }
    links.resize(m);

    net.edge_supplier_.resize(m);
    net.edge_customer_.resize(m);
    net.edge_flow_.resize(m);
    for (std::size_t e = 0; e < m; ++e) {
        net.edge_supplier_[e] = links[e].supplier;
        net.edge_customer_[e] = links[e].customer;
        net.edge_flow_[e] = links[e].baseline_flow;
    }

    net.in_offsets_.assign(n + 1, 0);
    for (std::size_t e = 0; e < m; ++e) net.in_offsets_[net.edge_customer_[e] + 1]++;
    for (std::size_t i = 0; i < n; ++i) net.in_offsets_[i + 1] += net.in_offsets_[i];

    // Input-sector groups per customer.
    net.group_offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t groups = 0;
        for (EdgeId e = net.in_offsets_[i]; e < net.in_offsets_[i + 1]; ++e) {
            if (e == net.in_offsets_[i] ||
                net.sector_[net.edge_supplier_[e]] != net.sector_[net.edge_supplier_[e - 1]]) {
                ++groups;
            }
        }
        net.group_offsets_[i + 1] = net.group_offsets_[i] + groups;
    }
    net.group_edge_begin_.resize(net.group_offsets_[n] + 1);
    net.group_baseline_total_.assign(net.group_offsets_[n], 0.0);
    {
        std::int64_t g = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (EdgeId e = net.in_offsets_[i]; e < net.in_offsets_[i + 1]; ++e) {
                if (e == net.in_offsets_[i] ||
                    net.sector_[net.edge_supplier_[e]] != net.sector_[net.edge_supplier_[e - 1]]) {
                    net.group_edge_begin_[g++] = e;
                }
            }
        }
        net.group_edge_begin_[g] = static_cast<EdgeId>(m);
        for (std::int64_t k = 0; k < net.group_offsets_[n]; ++k) {
            double tot = 0.0;
            for (EdgeId e = net.group_edge_begin_[k]; e < net.group_edge_begin_[k + 1]; ++e) {
                tot += net.edge_flow_[e];
            }
            net.group_baseline_total_[k] = tot;
        }
    }

    // Supplier-major view, customers ascending. P_ini accumulates in this
    // exact order; the simulation's demand reduction mirrors it so that the
    // pre-shock state is a bitwise fixed point.
    net.out_offsets_.assign(n + 1, 0);
    for (std::size_t e = 0; e < m; ++e) net.out_offsets_[net.edge_supplier_[e] + 1]++;
    for (std::size_t i = 0; i < n; ++i) net.out_offsets_[i + 1] += net.out_offsets_[i];
    net.out_edges_.resize(m);
    {
        std::vector<std::int64_t> cursor(net.out_offsets_.begin(), net.out_offsets_.end() - 1);
        // Edge ids are primarily sorted by customer, so a forward sweep fills
        // each supplier bucket with its customers already ascending.
        for (std::size_t e = 0; e < m; ++e) {
            net.out_edges_[cursor[net.edge_supplier_[e]]++] = static_cast<EdgeId>(e);
        }
    }

    net.p_ini_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0.0;
        for (std::int64_t k = net.out_offsets_[i]; k < net.out_offsets_[i + 1]; ++k) {
            total += net.edge_flow_[net.out_edges_[k]];
        }
        total += net.final_consumption_[i];
        if (!std::isfinite(total)) {
            throw ConfigError("network: non-finite initial production for firm " + std::to_string(i));
        }
        net.p_ini_[i] = total;
    }

    std::vector<int> codes(net.region_.begin(), net.region_.end());
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    net.region_ids_ = codes;
    net.region_firms_.assign(codes.size(), {});
    for (std::size_t i = 0; i < n; ++i) {
        net.region_firms_[net.region_index(net.region_[i])].push_back(static_cast<FirmId>(i));
    }

    return net;
}

int Network::region_index(int region_code) const {
    auto it = std::lower_bound(region_ids_.begin(), region_ids_.end(), region_code);
    if (it == region_ids_.end() || *it != region_code) return -1;
    return static_cast<int>(it - region_ids_.begin());
}

void Network::verify() const {
    const std::size_t n = firm_count();
    const std::size_t m = link_count();

    // The supplier-major permutation must cover every edge exactly once
    // and agree with the edge arrays.
    std::vector<bool> hit(m, false);
    for (std::size_t i = 0; i < n; ++i) {
        FirmId prev_customer = -1;
        for (std::int64_t k = out_offsets_[i]; k < out_offsets_[i + 1]; ++k) {
            const EdgeId e = out_edges_[k];
            if (e < 0 || static_cast<std::size_t>(e) >= m || hit[e]) {
                throw Error("network verify: broken supplier-major permutation");
            }
            hit[e] = true;
            if (edge_supplier_[e] != static_cast<FirmId>(i)) {
                throw Error("network verify: supplier mismatch in adjacency");
            }
            if (edge_customer_[e] <= prev_customer) {
                throw Error("network verify: customers not ascending for supplier " +
                            std::to_string(i));
            }
            prev_customer = edge_customer_[e];
        }
    }
    for (std::size_t e = 0; e < m; ++e) {
        if (!hit[e]) throw Error("network verify: edge missing from supplier view");
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (EdgeId e = in_offsets_[i]; e < in_offsets_[i + 1]; ++e) {
            if (edge_customer_[e] != static_cast<FirmId>(i)) {
                throw Error("network verify: customer mismatch in adjacency");
            }
        }
        double total = 0.0;
        for (std::int64_t k = out_offsets_[i]; k < out_offsets_[i + 1]; ++k) {
            total += edge_flow_[out_edges_[k]];
        }
        total += final_consumption_[i];
        if (total != p_ini_[i]) {
            throw Error("network verify: P_ini does not reproduce (firm " + std::to_string(i) + ")");
        }
    }
}

}  // namespace scnet
