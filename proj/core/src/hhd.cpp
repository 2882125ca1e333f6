#include "scnet/hhd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scnet/parallel.hpp"

namespace scnet {

FlowGraph build_flow_graph(std::size_t node_count, const std::vector<FirmId>& suppliers,
                           const std::vector<FirmId>& customers,
                           const std::vector<double>& flows) {
    struct DirectedEntry {
        FirmId u, v;   // canonical u < v
        double f;      // contribution to F_uv
        bool forward;  // original direction was u -> v
    };
    std::vector<DirectedEntry> entries;
    entries.reserve(suppliers.size());
    for (std::size_t k = 0; k < suppliers.size(); ++k) {
        const FirmId s = suppliers[k];
        const FirmId c = customers[k];
        if (s == c) throw ConfigError("build_flow_graph: self-loop");
        const FirmId u = std::min(s, c);
        const FirmId v = std::max(s, c);
        entries.push_back({u, v, s == u ? flows[k] : -flows[k], s == u});
    }
    std::sort(entries.begin(), entries.end(), [](const DirectedEntry& a, const DirectedEntry& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });

    FlowGraph fg;
    fg.node_count = node_count;
    for (std::size_t k = 0; k < entries.size();) {
        std::size_t j = k;
        double f = 0.0;
        bool fwd = false, bwd = false;
        while (j < entries.size() && entries[j].u == entries[k].u && entries[j].v == entries[k].v) {
            f += entries[j].f;
            (entries[j].forward ? fwd : bwd) = true;
            ++j;
        }
        fg.pair_u.push_back(entries[k].u);
        fg.pair_v.push_back(entries[k].v);
        fg.net_flow.push_back(f);
        fg.weight.push_back((fwd ? 1.0 : 0.0) + (bwd ? 1.0 : 0.0));
        fg.max_abs_flow = std::max(fg.max_abs_flow, std::abs(f));
        k = j;
    }

    // Symmetric CSR adjacency.
    const std::size_t n = node_count;
    const std::size_t m = fg.pair_u.size();
    fg.offsets.assign(n + 1, 0);
    for (std::size_t e = 0; e < m; ++e) {
        fg.offsets[fg.pair_u[e] + 1]++;
        fg.offsets[fg.pair_v[e] + 1]++;
    }
    for (std::size_t i = 0; i < n; ++i) fg.offsets[i + 1] += fg.offsets[i];
    fg.neighbor.resize(2 * m);
    fg.adj_flow.resize(2 * m);
    fg.adj_weight.resize(2 * m);
    std::vector<std::int64_t> cursor(fg.offsets.begin(), fg.offsets.end() - 1);
    for (std::size_t e = 0; e < m; ++e) {
        const FirmId u = fg.pair_u[e];
        const FirmId v = fg.pair_v[e];
        fg.neighbor[cursor[u]] = v;
        fg.adj_flow[cursor[u]] = fg.net_flow[e];
        fg.adj_weight[cursor[u]] = fg.weight[e];
        ++cursor[u];
        fg.neighbor[cursor[v]] = u;
        fg.adj_flow[cursor[v]] = -fg.net_flow[e];
        fg.adj_weight[cursor[v]] = fg.weight[e];
        ++cursor[v];
    }
    return fg;
}

FlowGraph build_flow_graph(const Network& net) {
    std::vector<FirmId> s(net.edge_supplier().begin(), net.edge_supplier().end());
    std::vector<FirmId> c(net.edge_customer().begin(), net.edge_customer().end());
    std::vector<double> f(net.edge_flow().begin(), net.edge_flow().end());
    return build_flow_graph(net.firm_count(), s, c, f);
}

namespace {

// Weakly connected components over the pair structure.
std::int32_t label_components(const FlowGraph& fg, std::vector<std::int32_t>& comp) {
    const std::size_t n = fg.node_count;
    comp.assign(n, -1);
    std::vector<FirmId> stack;
    std::int32_t count = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (comp[root] != -1) continue;
        comp[root] = count;
        stack.push_back(static_cast<FirmId>(root));
        while (!stack.empty()) {
            const FirmId v = stack.back();
            stack.pop_back();
            for (std::int64_t k = fg.offsets[v]; k < fg.offsets[v + 1]; ++k) {
                const FirmId w = fg.neighbor[k];
                if (comp[w] == -1) {
                    comp[w] = count;
                    stack.push_back(w);
                }
            }
        }
        ++count;
    }
    return count;
}

}  // namespace

std::vector<double> solve_potentials(const FlowGraph& fg, std::vector<std::int32_t>& component,
                                     const HhdOptions& opts, int& iterations, double& residual,
                                     int threads) {
    const std::size_t n = fg.node_count;
    if (n == 0) throw ConfigError("solve_potentials: empty flow graph");

    const std::int32_t n_comp = label_components(fg, component);

    // b_i = sum_j F_ij (divergence of the net flow); diag_i = sum_j w_ij.
    std::vector<double> b(n, 0.0), diag(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double bi = 0.0, di = 0.0;
        for (std::int64_t k = fg.offsets[i]; k < fg.offsets[i + 1]; ++k) {
            bi += fg.adj_flow[k];
            di += fg.adj_weight[k];
        }
        b[i] = bi;
        diag[i] = di;
    }

    const double scale = fg.max_abs_flow;
    std::vector<double> phi(n, 0.0);
    iterations = 0;
    residual = 0.0;
    if (scale == 0.0) return phi; // no flow anywhere: phi = 0 solves exactly

    // Laplacian is singular with one constant null vector per component; b is
    // orthogonal to them by antisymmetry of F, and iterates are re-centred
    // per component so CG stays in the solvable subspace.
    std::vector<double> comp_count(static_cast<std::size_t>(n_comp), 0.0);
    for (std::size_t i = 0; i < n; ++i) comp_count[component[i]] += 1.0;

    auto center = [&](std::vector<double>& x) {
        std::vector<double> mean(static_cast<std::size_t>(n_comp), 0.0);
        for (std::size_t i = 0; i < n; ++i) mean[component[i]] += x[i];
        for (std::size_t c = 0; c < mean.size(); ++c) mean[c] /= comp_count[c];
        for (std::size_t i = 0; i < n; ++i) x[i] -= mean[component[i]];
    };

    auto apply_laplacian = [&](const std::vector<double>& x, std::vector<double>& y) {
        parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                double acc = diag[i] * x[i];
                for (std::int64_t k = fg.offsets[i]; k < fg.offsets[i + 1]; ++k) {
                    acc -= fg.adj_weight[k] * x[fg.neighbor[k]];
                }
                y[i] = acc;
            }
        });
    };

    const int max_iter = opts.max_iter > 0
                             ? opts.max_iter
                             : std::max(200, static_cast<int>(10.0 * std::sqrt(static_cast<double>(n))));
    const double target = opts.tol * scale;

    std::vector<double> r = b, z(n), p(n), ap(n);
    auto precondition = [&](const std::vector<double>& rin, std::vector<double>& zout) {
        for (std::size_t i = 0; i < n; ++i) zout[i] = diag[i] > 0.0 ? rin[i] / diag[i] : 0.0;
    };

    double rinf = 0.0;
    for (double v : r) rinf = std::max(rinf, std::abs(v));
    if (rinf <= target) return phi;

    precondition(r, z);
    p = z;
    double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);

    for (int it = 1; it <= max_iter; ++it) {
        apply_laplacian(p, ap);
        const double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
        if (pap <= 0.0) break; // p in the null space; nothing left to correct
        const double alpha = rz / pap;
        for (std::size_t i = 0; i < n; ++i) phi[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];

        rinf = 0.0;
        for (double v : r) rinf = std::max(rinf, std::abs(v));
        iterations = it;
        if (rinf <= target) {
            center(phi);
            residual = rinf;
            return phi;
        }

        precondition(r, z);
        const double rz_next = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    residual = rinf;
    throw NumericError("solve_potentials: no convergence after " + std::to_string(max_iter) +
                           " iterations (residual " + std::to_string(rinf) + ", target " +
                           std::to_string(target) + ")",
                       rinf);
}

HhdResult decompose_flows(const FlowGraph& fg, const HhdOptions& opts, int threads) {
    HhdResult result;
    result.phi = solve_potentials(fg, result.component, opts, result.iterations, result.residual,
                                  threads);
    const std::size_t m = fg.pair_u.size();
    result.pot_flow.resize(m);
    result.loop_flow.resize(m);
    for (std::size_t e = 0; e < m; ++e) {
        const double fp = fg.weight[e] * (result.phi[fg.pair_u[e]] - result.phi[fg.pair_v[e]]);
        result.pot_flow[e] = fp;
        result.loop_flow[e] = fg.net_flow[e] - fp;
    }
    return result;
}

}  // namespace scnet
