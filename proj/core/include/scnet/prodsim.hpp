#pragma once

// Daily agent-based production dynamics: order placement, capacity and
// inventory limits, scarcity rationing, and inventory updates.
//
// Within a day each phase is a parallel map over firms (or suppliers) with
// disjoint writes; per-firm reductions run in ascending neighbor order, so
// results are bit-identical for any thread count.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "scnet/network.hpp"

namespace scnet {

struct ModelParams {
    double tau = 6.0;          // inventory gap closing time, days
    double n_mean = 10.0;      // Poisson mean of per-firm inventory target days
    int n_min = 4;             // lower clip of the target draw
    bool order_floor_zero = true;
    int consumption_lag = 1;   // 1: inventories consume P_act(t-1); 0: same day

    void validate() const {
        if (tau < 1.0) throw ConfigError("params: tau must be >= 1");
        if (n_min < 0) throw ConfigError("params: n_min must be >= 0");
        if (n_mean < 0.0) throw ConfigError("params: n_mean must be >= 0");
        if (consumption_lag != 0 && consumption_lag != 1) {
            throw ConfigError("params: consumption_lag must be 0 or 1");
        }
    }
};

// Per-firm capacity malfunction fraction delta_i(t), stored as
// (group x day) multipliers times a per-firm rate so a million-firm profile
// stays small. delta is 0 beyond n_days.
struct CapacityProfile {
    int n_days = 0;
    std::vector<std::int32_t> firm_group; // per firm; -1 means never affected
    std::vector<double> group_day;        // group-major: g * n_days + t
    std::vector<double> firm_rate;        // per firm, in [0, 1]

    static CapacityProfile none(std::size_t n_firms);

    double delta(FirmId i, int day) const {
        if (day < 0 || day >= n_days) return 0.0;
        const std::int32_t g = firm_group[i];
        if (g < 0) return 0.0;
        return group_day[static_cast<std::size_t>(g) * n_days + day] * firm_rate[i];
    }

    void validate(std::size_t n_firms) const;
};

struct SimState {
    int day = 0;

    // Per incoming edge (customer-major edge ids).
    std::vector<double> inventory;        // S_ij(t)
    std::vector<double> orders;           // O_ij(t)
    std::vector<double> realized_orders;  // O*_ij(t)

    // Per firm.
    std::vector<int> target_days;              // n_i
    std::vector<double> realized_demand_prev;  // D*_i(t-1)
    std::vector<double> realized_demand;       // D*_i(t)
    std::vector<double> demand;                // D_i(t)
    std::vector<double> p_cap;
    std::vector<double> p_max;
    std::vector<double> p_act;       // P_act(t)
    std::vector<double> p_act_prev;  // P_act(t-1)
    std::vector<double> realized_consumption; // C*_i(t)
};

// Targets n_i ~ Poisson(n_mean) clipped below at n_min; inventories start at
// target (the pre-shock fixed point); previous-day demand and production
// start at P_ini. Rejects firms that place orders but have P_ini = 0.
SimState initialize_state(const Network& net, const ModelParams& params, std::uint64_t seed);

// O_ij = A_ij D*_i(t-1)/P_ini_i + (n_i A_ij - S_ij)/tau, optionally floored
// at zero.
void place_orders(SimState& state, const Network& net, const ModelParams& params,
                  int threads = 1);

// D_i = sum of customer orders + C_i.
void aggregate_demand(SimState& state, const Network& net, int threads = 1);

// P_cap = P_ini (1 - delta); per input sector P_pro = S_tot/A_tot * P_ini;
// P_max = min(P_cap, min_s P_pro); P_act = min(P_max, D). Firms without
// inputs have P_max = P_cap.
void production_limits(SimState& state, const Network& net, const CapacityProfile& capacity,
                       int threads = 1);

// Water-filling rationing for one supplier. Claimants are (order, baseline)
// pairs plus an optional final consumer; every claimant receives
// baseline * min(order/baseline, fill) where the common fill level exhausts
// min(supply, total requested). Returns the consumer's allocation.
//
// Matches the sequential smallest-ratio-first procedure: claimants asking
// for the smallest fraction of their baseline are served fully first.
double ration(double supply, std::span<const double> orders, std::span<const double> baselines,
              std::span<double> allocations, double consumer_request, double consumer_baseline,
              std::vector<std::pair<double, std::int32_t>>& scratch);

// S_ij(t+1) = S_ij(t) + O*_ij(t) - A_ij P_act_i(t-lag)/P_ini_i, floored at 0.
void update_inventories(SimState& state, const Network& net, const ModelParams& params,
                        int threads = 1);

// One full day: orders -> demand -> limits -> rationing -> realized demand
// -> inventories. After the call state.p_act / state.realized_demand hold
// day-t values and state.day == t+1.
void step_day(SimState& state, const Network& net, const CapacityProfile& capacity,
              const ModelParams& params, int threads = 1);

// Observer sees the state right after each completed day.
using DayObserver = std::function<void(int day, const SimState&)>;

void run_simulation(const Network& net, const CapacityProfile& capacity,
                    const ModelParams& params, int horizon_days, std::uint64_t seed,
                    const DayObserver& observer, int threads = 1);

// Convenience for small nets and tests: per-day per-firm P_act.
std::vector<std::vector<double>> run_collect_production(const Network& net,
                                                        const CapacityProfile& capacity,
                                                        const ModelParams& params,
                                                        int horizon_days, std::uint64_t seed,
                                                        int threads = 1);

}  // namespace scnet
