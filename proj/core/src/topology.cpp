#include "scnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "scnet/rng.hpp"

namespace scnet {

// Iterative Tarjan; the explicit frame stack keeps million-node graphs from
// blowing the call stack.
std::size_t strongly_connected_components(const Network& net, std::vector<std::int32_t>& comp) {
    const std::size_t n = net.firm_count();
    comp.assign(n, -1);

    std::vector<std::int32_t> index(n, -1);
    std::vector<std::int32_t> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<FirmId> stack;
    stack.reserve(n);

    struct Frame {
        FirmId v;
        std::int64_t next_edge;
    };
    std::vector<Frame> frames;

    const auto out_offsets = net.out_offsets();
    const auto out_edges = net.out_edges();
    const auto edge_customer = net.edge_customer();

    std::int32_t counter = 0;
    std::int32_t comp_count = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({static_cast<FirmId>(root), out_offsets[root]});
        index[root] = lowlink[root] = counter++;
        stack.push_back(static_cast<FirmId>(root));
        on_stack[root] = true;

        while (!frames.empty()) {
            Frame& fr = frames.back();
            const FirmId v = fr.v;
            if (fr.next_edge < out_offsets[v + 1]) {
                const FirmId w = edge_customer[out_edges[fr.next_edge++]];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, out_offsets[w]});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    FirmId w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comp_count;
                    } while (w != v);
                    ++comp_count;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
                }
            }
        }
    }
    return static_cast<std::size_t>(comp_count);
}

TopologyStats topology_stats(const Network& net, std::uint64_t seed, int min_sources) {
    const std::size_t n = net.firm_count();
    if (n == 0) throw ConfigError("topology_stats: empty network");

    TopologyStats stats;

    std::vector<std::int64_t> degree(n, 0);
    for (FirmId c : net.edge_customer()) degree[c]++;
    for (FirmId s : net.edge_supplier()) degree[s]++;
    for (std::int64_t d : degree) stats.degree_histogram[d]++;

    // Hill estimator over degrees >= d_min: the Pareto tail index of the
    // complementary CDF. Needs a reasonable number of tail samples to mean
    // anything, otherwise left unset.
    {
        const std::int64_t d_min = 10;
        double log_sum = 0.0;
        std::int64_t tail_n = 0;
        for (std::int64_t d : degree) {
            if (d >= d_min) {
                log_sum += std::log(static_cast<double>(d) / static_cast<double>(d_min));
                ++tail_n;
            }
        }
        if (tail_n >= 10 && log_sum > 0.0) {
            stats.tail_exponent = static_cast<double>(tail_n) / log_sum;
        }
    }

    std::vector<std::int32_t> comp;
    const std::size_t n_comp = strongly_connected_components(net, comp);
    std::vector<std::int64_t> comp_size(n_comp, 0);
    for (std::int32_t c : comp) comp_size[c]++;
    stats.gscc_share =
        static_cast<double>(*std::max_element(comp_size.begin(), comp_size.end())) /
        static_cast<double>(n);

    // Mean directed shortest-path length from a seeded source sample.
    {
        Rng rng = Rng(seed).substream("path-sample");
        const std::size_t sources = std::min<std::size_t>(n, static_cast<std::size_t>(min_sources));
        std::vector<std::int32_t> dist(n);
        std::deque<FirmId> queue;
        double total = 0.0;
        std::int64_t reached = 0;
        const auto out_offsets = net.out_offsets();
        const auto out_edges = net.out_edges();
        const auto edge_customer = net.edge_customer();
        for (std::size_t k = 0; k < sources; ++k) {
            const FirmId src = static_cast<FirmId>(rng.next_below(n));
            std::fill(dist.begin(), dist.end(), -1);
            dist[src] = 0;
            queue.clear();
            queue.push_back(src);
            while (!queue.empty()) {
                const FirmId v = queue.front();
                queue.pop_front();
                for (std::int64_t e = out_offsets[v]; e < out_offsets[v + 1]; ++e) {
                    const FirmId w = edge_customer[out_edges[e]];
                    if (dist[w] == -1) {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for (std::size_t v = 0; v < n; ++v) {
                if (dist[v] > 0) {
                    total += dist[v];
                    ++reached;
                }
            }
        }
        stats.path_sample_sources = static_cast<std::int64_t>(sources);
        stats.avg_path_length_sampled = reached == 0 ? 0.0 : total / static_cast<double>(reached);
    }

    return stats;
}

}  // namespace scnet
