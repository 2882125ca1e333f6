#include "scnet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "scnet/rng.hpp"

namespace scnet {

std::vector<SupplyLink> estimate_link_values(const std::vector<Firm>& firms,
                                             const std::vector<RawLink>& raw_links,
                                             const IoTable& io) {
    const std::size_t n = firms.size();
    std::vector<double> sales(n, 0.0);
    std::vector<int> sector(n, 0);
    for (const Firm& f : firms) {
        if (f.id < 0 || static_cast<std::size_t>(f.id) >= n) {
            throw ConfigError("estimate_link_values: firm ids must be dense 0..n-1");
        }
        sales[f.id] = f.sales;
        sector[f.id] = f.sector;
    }

    // Dedupe raw pairs; an unweighted edge listed twice is the same edge.
    std::vector<std::pair<FirmId, FirmId>> pairs;
    pairs.reserve(raw_links.size());
    for (const RawLink& l : raw_links) {
        if (l.supplier < 0 || static_cast<std::size_t>(l.supplier) >= n ||
            l.customer < 0 || static_cast<std::size_t>(l.customer) >= n) {
            throw ConfigError("estimate_link_values: link endpoint out of range");
        }
        if (l.supplier == l.customer) continue;
        pairs.emplace_back(l.supplier, l.customer);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    // Step 1: tentative split of supplier sales by customer sales.
    std::vector<double> customer_sales_total(n, 0.0);
    for (const auto& [s, c] : pairs) customer_sales_total[s] += sales[c];

    std::vector<SupplyLink> out;
    out.reserve(pairs.size());
    std::map<std::pair<int, int>, double> tentative_by_sector;
    for (const auto& [s, c] : pairs) {
        if (customer_sales_total[s] <= 0.0) {
            throw ConfigError("estimate_link_values: supplier " + std::to_string(s) +
                              " has customers with zero total sales; split is degenerate");
        }
        const double tentative = sales[s] * sales[c] / customer_sales_total[s];
        out.push_back({s, c, tentative});
        tentative_by_sector[{sector[s], sector[c]}] += tentative;
    }

    // Step 2: rescale so sector-pair aggregates reproduce the IO table,
    // then convert yearly to daily.
    std::map<std::pair<int, int>, double> ratio;
    for (const auto& [key, agg] : tentative_by_sector) {
        if (agg <= 0.0) continue; // all-zero-sales edges were already rejected
        const double io_value = io.pair_value(key.first, key.second);
        if (io_value <= 0.0) {
            // A zero entry would scale real transactions to nothing and
            // silently delete links, so both absent and zero are rejected.
            throw ConfigError("estimate_link_values: IO table has no positive value for sector "
                              "pair (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + ") with nonzero tentative aggregate");
        }
        ratio[key] = io_value / agg;
    }
    for (SupplyLink& l : out) {
        const auto key = std::pair<int, int>{sector[l.supplier], sector[l.customer]};
        l.baseline_flow = l.baseline_flow * ratio.at(key) / kDaysPerYear;
    }
    return out;
}

std::vector<double> allocate_final_consumption(const std::vector<Firm>& firms,
                                               const IoTable& io) {
    const std::size_t n = firms.size();
    std::vector<double> c(n, 0.0);
    std::map<int, double> sector_sales;
    for (const Firm& f : firms) sector_sales[f.sector] += f.sales;

    for (const auto& [s, demand] : io.final_demand) {
        if (demand <= 0.0) continue;
        auto it = sector_sales.find(s);
        if (it == sector_sales.end() || it->second <= 0.0) {
            throw ConfigError("allocate_final_consumption: sector " + std::to_string(s) +
                              " has positive final demand but zero total sales");
        }
    }
    for (const Firm& f : firms) {
        auto it = io.final_demand.find(f.sector);
        if (it == io.final_demand.end() || it->second <= 0.0) continue;
        c[f.id] = it->second * f.sales / sector_sales[f.sector] / kDaysPerYear;
    }
    return c;
}

namespace {

void validate_params(const SynthParams& p) {
    if (p.n_firms < 10) throw ConfigError("generate_synthetic: n_firms must be >= 10");
    if (p.n_regions < 1 || p.n_regions > 47) {
        throw ConfigError("generate_synthetic: n_regions must be in 1..47");
    }
    if (p.n_sectors < 1 || p.n_sectors > 101) {
        throw ConfigError("generate_synthetic: n_sectors must be in 1..101");
    }
    if (p.mean_links < 1.0) throw ConfigError("generate_synthetic: mean_links must be >= 1");
    if (p.attachment_exponent <= 0.0 || p.attachment_exponent > 2.0) {
        throw ConfigError("generate_synthetic: attachment_exponent must be in (0, 2]");
    }
    if (p.intra_region_bias < 0.0 || p.intra_region_bias > 1.0 ||
        p.reciprocity_bias < 0.0 || p.reciprocity_bias > 1.0 ||
        p.region_bias_jitter < 0.0 || p.region_bias_jitter > 1.0) {
        throw ConfigError("generate_synthetic: biases must be in [0, 1]");
    }
    if (p.sales_pareto_alpha <= 1.0) {
        throw ConfigError("generate_synthetic: sales_pareto_alpha must exceed 1");
    }
}

// JSIC two-digit codes as used by the sector policy table: 56 is replaced by
// the three-digit retail splits 560/561/569.
const std::vector<int>& all_sector_codes() {
    static const std::vector<int> codes = [] {
        std::vector<int> v;
        for (int c = 1; c <= 55; ++c) v.push_back(c);
        v.push_back(560);
        v.push_back(561);
        v.push_back(569);
        for (int c = 57; c <= 99; ++c) v.push_back(c);
        return v;
    }();
    return codes;
}

}  // namespace

SynthOutput generate_synthetic_parts(const SynthParams& params) {
    validate_params(params);
    const std::int64_t n = params.n_firms;
    Rng root(params.seed);

    // Region sizes follow a mild power decay so regional GRP varies.
    std::vector<double> region_cdf(params.n_regions, 0.0);
    {
        double acc = 0.0;
        for (int r = 0; r < params.n_regions; ++r) {
            acc += std::pow(static_cast<double>(r + 1), -0.6);
            region_cdf[r] = acc;
        }
        for (double& v : region_cdf) v /= acc;
    }
    // Per-region attachment bias: heterogeneity across regions gives the
    // region-level metrics something to vary with.
    std::vector<double> intra_bias(params.n_regions, params.intra_region_bias);
    {
        Rng rb = root.substream("region-bias");
        for (int r = 0; r < params.n_regions; ++r) {
            const double jitter = (rb.next_double() * 2.0 - 1.0) * params.region_bias_jitter;
            intra_bias[r] = std::clamp(params.intra_region_bias + jitter, 0.05, 0.95);
        }
    }

    SynthOutput result;
    result.firms.resize(n);
    {
        Rng ra = root.substream("attributes");
        const auto& codes = all_sector_codes();
        for (std::int64_t i = 0; i < n; ++i) {
            Firm& f = result.firms[i];
            f.id = static_cast<FirmId>(i);
            const double u = ra.next_double();
            f.region = 1 + static_cast<int>(std::lower_bound(region_cdf.begin(), region_cdf.end(), u) -
                                            region_cdf.begin());
            f.region = std::min(f.region, params.n_regions);
            f.sector = codes[ra.next_below(static_cast<std::uint64_t>(params.n_sectors))];
            f.sales = 100.0 * ra.next_pareto(params.sales_pareto_alpha, 1.0);
        }
    }

    // Growth with degree-preferential attachment. The endpoint list holds
    // each firm once at birth plus once per incident link, so a uniform
    // pick is proportional to degree + 1.
    Rng rg = root.substream("growth");
    std::vector<FirmId> endpoints;
    endpoints.reserve(static_cast<std::size_t>(n * (1.0 + 2.5 * params.mean_links)));
    std::vector<std::vector<FirmId>> region_endpoints(params.n_regions);
    std::vector<std::int64_t> degree(n, 0);
    std::int64_t max_degree = 1;

    std::vector<std::pair<FirmId, FirmId>> pairs;
    pairs.reserve(static_cast<std::size_t>(n * params.mean_links * 1.2));

    auto push_endpoint = [&](FirmId f) {
        endpoints.push_back(f);
        region_endpoints[result.firms[f].region - 1].push_back(f);
    };
    auto add_edge = [&](FirmId s, FirmId c) {
        pairs.emplace_back(s, c);
        degree[s]++;
        degree[c]++;
        max_degree = std::max({max_degree, degree[s] + 1, degree[c] + 1});
        push_endpoint(s);
        push_endpoint(c);
    };

    // Out-link counts per firm: a discretized Pareto makes the total-degree
    // tail heavier than pure preferential attachment alone would.
    const double m_alpha = 1.6;
    const double m_scale = params.mean_links * (m_alpha - 1.0) / m_alpha;
    auto draw_link_count = [&](Rng& r) {
        const double v = r.next_pareto(m_alpha, std::max(0.5, m_scale));
        return std::max<std::int64_t>(1, std::min<std::int64_t>(static_cast<std::int64_t>(v), 2000));
    };

    const double beta = params.attachment_exponent;
    auto sample_target = [&](const std::vector<FirmId>& pool, Rng& r) -> FirmId {
        for (int attempt = 0; attempt < 64; ++attempt) {
            const FirmId cand = pool[r.next_below(pool.size())];
            if (beta == 1.0) return cand;
            const double w = static_cast<double>(degree[cand] + 1);
            const double accept = beta < 1.0 ? std::pow(w, beta - 1.0)
                                             : std::pow(w / static_cast<double>(max_degree), beta - 1.0);
            if (r.next_double() < accept) return cand;
        }
        return pool[r.next_below(pool.size())];
    };

    const std::int64_t n_seed = std::min<std::int64_t>(3, n);
    for (FirmId i = 0; i < n_seed; ++i) push_endpoint(i);
    for (FirmId i = 0; i < n_seed; ++i) add_edge(i, static_cast<FirmId>((i + 1) % n_seed));

    for (std::int64_t i = n_seed; i < n; ++i) {
        const FirmId f = static_cast<FirmId>(i);
        const int reg = result.firms[i].region - 1;
        push_endpoint(f);
        const std::int64_t m_links = draw_link_count(rg);
        for (std::int64_t k = 0; k < m_links; ++k) {
            const bool intra = rg.next_double() < intra_bias[reg] && region_endpoints[reg].size() > 1;
            const auto& pool = intra ? region_endpoints[reg] : endpoints;
            FirmId other = sample_target(pool, rg);
            if (other == f) continue;
            FirmId s = f, c = other;
            if (rg.next_double() >= 0.5) std::swap(s, c);
            add_edge(s, c);
            if (rg.next_double() < params.reciprocity_bias) add_edge(c, s);
        }
    }

    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    // Synthetic IO table: sector-pair totals near the tentative aggregates
    // (lognormal factor), final demand a seeded share of sector sales.
    std::vector<double> customer_sales_total(n, 0.0);
    for (const auto& [s, c] : pairs) customer_sales_total[s] += result.firms[c].sales;
    std::map<std::pair<int, int>, double> tentative_by_sector;
    for (const auto& [s, c] : pairs) {
        tentative_by_sector[{result.firms[s].sector, result.firms[c].sector}] +=
            result.firms[s].sales * result.firms[c].sales / customer_sales_total[s];
    }
    {
        Rng rio = root.substream("io-table");
        for (const auto& [key, agg] : tentative_by_sector) {
            result.io.sector_pair_value[key] = agg * std::exp(rio.next_normal(0.0, 0.2));
        }
        std::map<int, double> sector_sales;
        for (const Firm& f : result.firms) sector_sales[f.sector] += f.sales;
        for (const auto& [s, total] : sector_sales) {
            result.io.final_demand[s] = (0.15 + 0.2 * rio.next_double()) * total;
        }
    }

    std::vector<RawLink> raw;
    raw.reserve(pairs.size());
    for (const auto& [s, c] : pairs) raw.push_back({s, c, std::nullopt});
    result.links = estimate_link_values(result.firms, raw, result.io);
    result.final_consumption = allocate_final_consumption(result.firms, result.io);
    return result;
}

Network generate_synthetic(const SynthParams& params) {
    SynthOutput parts = generate_synthetic_parts(params);
    return Network::build(std::move(parts.firms), std::move(parts.links),
                          std::move(parts.final_consumption));
}

LoadResult assemble_network(std::vector<Firm> firms, std::vector<RawLink> raw_links,
                            const IoTable& io) {
    // Drop firms without sales before weighting.
    std::vector<bool> keep(firms.size(), true);
    std::size_t dropped_saleless = 0;
    for (const Firm& f : firms) {
        if (f.sales <= 0.0) {
            keep[f.id] = false;
            ++dropped_saleless;
        }
    }

    auto compact = [&](std::vector<Firm>& fs, std::vector<RawLink>& ls,
                       std::vector<FirmId>& dense_to_orig) {
        std::vector<FirmId> remap(fs.size(), -1);
        std::vector<Firm> kept;
        std::vector<FirmId> orig;
        kept.reserve(fs.size());
        for (const Firm& f : fs) {
            if (!keep[f.id]) continue;
            remap[f.id] = static_cast<FirmId>(kept.size());
            Firm g = f;
            orig.push_back(dense_to_orig.empty() ? f.id : dense_to_orig[f.id]);
            g.id = remap[f.id];
            kept.push_back(g);
        }
        std::vector<RawLink> kept_links;
        kept_links.reserve(ls.size());
        for (const RawLink& l : ls) {
            if (remap[l.supplier] < 0 || remap[l.customer] < 0) continue;
            kept_links.push_back({remap[l.supplier], remap[l.customer], l.value});
        }
        fs = std::move(kept);
        ls = std::move(kept_links);
        dense_to_orig = std::move(orig);
    };

    std::vector<FirmId> dense_to_orig;
    compact(firms, raw_links, dense_to_orig);
    if (firms.empty()) throw ConfigError("assemble_network: no firms with sales remain");

    const bool needs_weights =
        std::any_of(raw_links.begin(), raw_links.end(), [](const RawLink& l) { return !l.value; });
    std::vector<SupplyLink> links;
    if (needs_weights) {
        links = estimate_link_values(firms, raw_links, io);
    } else {
        links.reserve(raw_links.size());
        for (const RawLink& l : raw_links) {
            if (*l.value <= 0.0) {
                throw ConfigError("assemble_network: nonpositive link value on supplier " +
                                  std::to_string(l.supplier));
            }
            links.push_back({l.supplier, l.customer, *l.value});
        }
    }
    std::vector<double> consumption = allocate_final_consumption(firms, io);

    // Firms with zero initial production cannot place orders (the order rule
    // divides by P_ini); remove them and cascade, since each removal can zero
    // a supplier's remaining output.
    for (;;) {
        std::vector<double> p_ini(firms.size(), 0.0);
        for (const SupplyLink& l : links) p_ini[l.supplier] += l.baseline_flow;
        for (const Firm& f : firms) p_ini[f.id] += consumption[f.id];
        keep.assign(firms.size(), true);
        std::size_t removed = 0;
        for (const Firm& f : firms) {
            if (p_ini[f.id] <= 0.0) {
                keep[f.id] = false;
                ++removed;
            }
        }
        if (removed == 0) break;
        std::vector<FirmId> remap(firms.size(), -1);
        std::vector<Firm> kept;
        std::vector<FirmId> orig;
        std::vector<double> kept_consumption;
        for (const Firm& f : firms) {
            if (!keep[f.id]) continue;
            remap[f.id] = static_cast<FirmId>(kept.size());
            orig.push_back(dense_to_orig[f.id]);
            kept_consumption.push_back(consumption[f.id]);
            Firm g = f;
            g.id = remap[f.id];
            kept.push_back(g);
        }
        std::vector<SupplyLink> kept_links;
        for (const SupplyLink& l : links) {
            if (remap[l.supplier] < 0 || remap[l.customer] < 0) continue;
            kept_links.push_back({remap[l.supplier], remap[l.customer], l.baseline_flow});
        }
        firms = std::move(kept);
        links = std::move(kept_links);
        consumption = std::move(kept_consumption);
        dense_to_orig = std::move(orig);
        if (firms.empty()) {
            throw ConfigError("assemble_network: every firm has zero initial production");
        }
    }

    LoadResult out{Network::build(std::move(firms), std::move(links), std::move(consumption)),
                   std::move(dense_to_orig), dropped_saleless};
    return out;
}

}  // namespace scnet
