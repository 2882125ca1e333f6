#pragma once

// Helmholtz-Hodge decomposition of the network's net flows: a per-node
// potential whose differences generate the gradient component, plus a
// divergence-free loop remainder.

#include <cstdint>
#include <vector>

#include "scnet/network.hpp"

namespace scnet {

// Undirected pair graph built from directed base flows. Each unordered
// firm pair {u, v} with at least one link becomes one entry, oriented
// u -> v with u < v:
//   net_flow  F_uv = B_uv - B_vu      (antisymmetric)
//   weight    w_uv = [B_uv>0] + [B_vu>0]  in {1, 2}
// Pairs where both directions carry equal flow keep F = 0 but weight 2;
// they still shape the potentials.
struct FlowGraph {
    std::size_t node_count = 0;
    std::vector<FirmId> pair_u;    // u < v
    std::vector<FirmId> pair_v;
    std::vector<double> net_flow;  // F_uv
    std::vector<double> weight;    // w_uv

    // CSR over the undirected pair structure: for node i, neighbors j with
    // signed flow F_ij and weight w_ij.
    std::vector<std::int64_t> offsets;
    std::vector<FirmId> neighbor;
    std::vector<double> adj_flow;   // F_ij seen from i
    std::vector<double> adj_weight; // w_ij

    double max_abs_flow = 0.0;
};

FlowGraph build_flow_graph(const Network& net);

// Build directly from explicit directed flows (tests and tools).
FlowGraph build_flow_graph(std::size_t node_count, const std::vector<FirmId>& suppliers,
                           const std::vector<FirmId>& customers,
                           const std::vector<double>& flows);

struct HhdResult {
    std::vector<double> phi;            // per node, zero mean per component
    std::vector<std::int32_t> component; // weakly connected component id
    std::vector<double> pot_flow;        // per pair, F^(p)_uv
    std::vector<double> loop_flow;       // per pair, F^(c)_uv
    int iterations = 0;
    double residual = 0.0;               // final infinity-norm residual
};

struct HhdOptions {
    double tol = 1e-10;  // relative to max |F|
    int max_iter = 0;    // 0 means 10 * sqrt(n), the default policy
};

// Solves sum_j w_ij (phi_i - phi_j) = sum_j F_ij per weakly connected
// component with a Jacobi-preconditioned conjugate gradient, gauge fixed to
// zero mean per component. Throws NumericError if the residual target is
// not met within the iteration budget.
std::vector<double> solve_potentials(const FlowGraph& fg, std::vector<std::int32_t>& component,
                                     const HhdOptions& opts, int& iterations, double& residual,
                                     int threads = 1);

// Potential component w_ij (phi_i - phi_j) per pair; loop component is the
// remainder.
HhdResult decompose_flows(const FlowGraph& fg, const HhdOptions& opts = {}, int threads = 1);

// Signed loop/potential flow from u to v for a pair index, as seen in the
// direction (from, to).
inline double oriented(double value, FirmId pair_u, FirmId from) {
    return from == pair_u ? value : -value;
}

}  // namespace scnet
