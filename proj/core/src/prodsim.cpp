#include "scnet/prodsim.hpp"

#include <algorithm>
#include <cmath>

#include "scnet/parallel.hpp"
#include "scnet/rng.hpp"

namespace scnet {

CapacityProfile CapacityProfile::none(std::size_t n_firms) {
    CapacityProfile p;
    p.n_days = 0;
    p.firm_group.assign(n_firms, -1);
    p.firm_rate.assign(n_firms, 0.0);
    return p;
}

void CapacityProfile::validate(std::size_t n_firms) const {
    if (firm_group.size() != n_firms || firm_rate.size() != n_firms) {
        throw ConfigError("capacity profile: size does not match firm count");
    }
    for (double r : firm_rate) {
        if (r < 0.0 || r > 1.0) throw ConfigError("capacity profile: rate outside [0, 1]");
    }
    for (double m : group_day) {
        if (m < 0.0 || m > 1.0) throw ConfigError("capacity profile: multiplier outside [0, 1]");
    }
    for (std::int32_t g : firm_group) {
        if (g >= 0 && static_cast<std::size_t>(g + 1) * n_days > group_day.size()) {
            throw ConfigError("capacity profile: group index out of range");
        }
    }
}

SimState initialize_state(const Network& net, const ModelParams& params, std::uint64_t seed) {
    params.validate();
    const std::size_t n = net.firm_count();
    const std::size_t m = net.link_count();

    for (std::size_t i = 0; i < n; ++i) {
        if (net.initial_production(i) <= 0.0 && net.in_offset(i + 1) > net.in_offset(i)) {
            throw ConfigError("initialize_state: firm " + std::to_string(i) +
                              " has zero initial production but places orders; "
                              "filter such firms at load");
        }
    }

    SimState st;
    st.day = 0;
    st.target_days.resize(n);
    Rng rng = Rng(seed).substream("inventory-target");
    for (std::size_t i = 0; i < n; ++i) {
        st.target_days[i] = std::max(params.n_min, rng.next_poisson(params.n_mean));
    }

    st.inventory.resize(m);
    const auto in_offsets = net.in_offsets();
    const auto flow = net.edge_flow();
    for (std::size_t i = 0; i < n; ++i) {
        const double n_i = static_cast<double>(st.target_days[i]);
        for (EdgeId e = in_offsets[i]; e < in_offsets[i + 1]; ++e) {
            st.inventory[e] = n_i * flow[e];
        }
    }

    st.orders.assign(m, 0.0);
    st.realized_orders.assign(m, 0.0);
    const auto p_ini = net.initial_production_all();
    st.realized_demand_prev.assign(p_ini.begin(), p_ini.end());
    st.realized_demand.assign(n, 0.0);
    st.demand.assign(n, 0.0);
    st.p_cap.assign(p_ini.begin(), p_ini.end());
    st.p_max.assign(p_ini.begin(), p_ini.end());
    st.p_act.assign(p_ini.begin(), p_ini.end());
    st.p_act_prev.assign(p_ini.begin(), p_ini.end());
    st.realized_consumption.assign(net.final_consumption_all().begin(),
                                   net.final_consumption_all().end());
    return st;
}

void place_orders(SimState& state, const Network& net, const ModelParams& params, int threads) {
    const auto in_offsets = net.in_offsets();
    const auto flow = net.edge_flow();
    const auto p_ini = net.initial_production_all();
    const double inv_tau = 1.0 / params.tau;
    const bool floor_zero = params.order_floor_zero;

    parallel_for(net.firm_count(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            if (in_offsets[i] == in_offsets[i + 1]) continue;
            const double ratio = state.realized_demand_prev[i] / p_ini[i];
            const double n_i = static_cast<double>(state.target_days[i]);
            for (EdgeId e = in_offsets[i]; e < in_offsets[i + 1]; ++e) {
                double o = flow[e] * ratio + inv_tau * (n_i * flow[e] - state.inventory[e]);
                if (floor_zero && o < 0.0) o = 0.0;
                state.orders[e] = o;
            }
        }
    });
}

void aggregate_demand(SimState& state, const Network& net, int threads) {
    const auto out_offsets = net.out_offsets();
    const auto out_edges = net.out_edges();
    const auto consumption = net.final_consumption_all();

    parallel_for(net.firm_count(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double d = 0.0;
            for (std::int64_t k = out_offsets[i]; k < out_offsets[i + 1]; ++k) {
                d += state.orders[out_edges[k]];
            }
            state.demand[i] = d + consumption[i];
        }
    });
}

void production_limits(SimState& state, const Network& net, const CapacityProfile& capacity,
                       int threads) {
    const auto p_ini = net.initial_production_all();
    const auto group_offsets = net.group_offsets();
    const auto group_begin = net.group_edge_begin();
    const auto group_total = net.group_baseline_total();
    const int day = state.day;

    parallel_for(net.firm_count(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double cap = p_ini[i] * (1.0 - capacity.delta(static_cast<FirmId>(i), day));
            double pmax = cap;
            for (std::int64_t g = group_offsets[i]; g < group_offsets[i + 1]; ++g) {
                double s_tot = 0.0;
                for (EdgeId e = group_begin[g]; e < group_begin[g + 1]; ++e) {
                    s_tot += state.inventory[e];
                }
                const double p_pro = s_tot / group_total[g] * p_ini[i];
                pmax = std::min(pmax, p_pro);
            }
            state.p_cap[i] = cap;
            state.p_max[i] = pmax;
            state.p_act[i] = std::min(pmax, state.demand[i]);
        }
    });
}

double ration(double supply, std::span<const double> orders, std::span<const double> baselines,
              std::span<double> allocations, double consumer_request, double consumer_baseline,
              std::vector<std::pair<double, std::int32_t>>& scratch) {
    const std::size_t k = orders.size();
    if (supply < 0.0) throw ConfigError("ration: negative supply");

    // Same accumulation order as the demand aggregation so that
    // "supply >= total" is an exact comparison at the pre-shock fixed point.
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        if (orders[j] < 0.0) throw ConfigError("ration: negative order");
        total += orders[j];
    }
    if (consumer_request < 0.0) throw ConfigError("ration: negative consumer request");
    total += consumer_request;

    // No scarcity: everyone gets exactly what they asked for.
    if (supply >= total) {
        for (std::size_t j = 0; j < k; ++j) allocations[j] = orders[j];
        return consumer_request;
    }

    // Water-filling over relative fill f: claimant j receives
    // baseline_j * min(order_j/baseline_j, f*), consumer included with its
    // baseline; f* exhausts the supply. Ascending-ratio scan finds f*.
    scratch.clear();
    for (std::size_t j = 0; j < k; ++j) {
        scratch.emplace_back(orders[j] / baselines[j], static_cast<std::int32_t>(j));
    }
    const bool has_consumer = consumer_baseline > 0.0;
    if (has_consumer) {
        scratch.emplace_back(consumer_request / consumer_baseline, static_cast<std::int32_t>(k));
    }
    std::sort(scratch.begin(), scratch.end());

    double remaining_baseline = 0.0;
    for (std::size_t j = 0; j < k; ++j) remaining_baseline += baselines[j];
    if (has_consumer) remaining_baseline += consumer_baseline;

    double fill = 0.0;
    double served = 0.0;
    for (const auto& [ratio, idx] : scratch) {
        const double step_cost = (ratio - fill) * remaining_baseline;
        if (served + step_cost >= supply) {
            fill += remaining_baseline > 0.0 ? (supply - served) / remaining_baseline : 0.0;
            break;
        }
        served += step_cost;
        fill = ratio;
        remaining_baseline -= idx == static_cast<std::int32_t>(k)
                                  ? consumer_baseline
                                  : baselines[static_cast<std::size_t>(idx)];
    }

    for (std::size_t j = 0; j < k; ++j) {
        allocations[j] = baselines[j] * std::min(orders[j] / baselines[j], fill);
    }
    return has_consumer
               ? consumer_baseline * std::min(consumer_request / consumer_baseline, fill)
               : 0.0;
}

namespace {

// Rationing pass: each supplier splits its actual production among the
// orders it received plus its final consumer, then realized demand is the
// accepted total. Writes O* (per edge), C* and D* (per firm).
void ration_all(SimState& state, const Network& net, int threads) {
    const auto out_offsets = net.out_offsets();
    const auto out_edges = net.out_edges();
    const auto flow = net.edge_flow();
    const auto consumption = net.final_consumption_all();

    parallel_for(net.firm_count(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> orders, baselines, alloc;
        std::vector<std::pair<double, std::int32_t>> scratch;
        for (std::size_t i = begin; i < end; ++i) {
            const std::int64_t lo = out_offsets[i];
            const std::int64_t hi = out_offsets[i + 1];
            const std::size_t deg = static_cast<std::size_t>(hi - lo);
            orders.resize(deg);
            baselines.resize(deg);
            alloc.resize(deg);
            for (std::int64_t kk = lo; kk < hi; ++kk) {
                orders[kk - lo] = state.orders[out_edges[kk]];
                baselines[kk - lo] = flow[out_edges[kk]];
            }
            const double c_req = consumption[i]; // consumers always ask the baseline
            const double c_star =
                ration(state.p_act[i], orders, baselines, alloc, c_req, consumption[i], scratch);
            double accepted = 0.0;
            for (std::int64_t kk = lo; kk < hi; ++kk) {
                state.realized_orders[out_edges[kk]] = alloc[kk - lo];
                accepted += alloc[kk - lo];
            }
            state.realized_consumption[i] = c_star;
            state.realized_demand[i] = accepted + c_star;
        }
    });
}

}  // namespace

void update_inventories(SimState& state, const Network& net, const ModelParams& params,
                        int threads) {
    const auto in_offsets = net.in_offsets();
    const auto flow = net.edge_flow();
    const auto p_ini = net.initial_production_all();
    const auto& past_production = params.consumption_lag == 1 ? state.p_act_prev : state.p_act;

    parallel_for(net.firm_count(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            if (in_offsets[i] == in_offsets[i + 1]) continue;
            const double use_ratio = past_production[i] / p_ini[i];
            for (EdgeId e = in_offsets[i]; e < in_offsets[i + 1]; ++e) {
                // Grouped so the pre-shock state is an exact fixed point:
                // O* == A and use_ratio == 1 give a zero increment.
                const double next =
                    state.inventory[e] + (state.realized_orders[e] - flow[e] * use_ratio);
                state.inventory[e] = next < 0.0 ? 0.0 : next;
            }
        }
    });
}

void step_day(SimState& state, const Network& net, const CapacityProfile& capacity,
              const ModelParams& params, int threads) {
    place_orders(state, net, params, threads);
    aggregate_demand(state, net, threads);
    production_limits(state, net, capacity, threads);
    ration_all(state, net, threads);
    update_inventories(state, net, params, threads);
    state.p_act_prev = state.p_act;
    state.realized_demand_prev = state.realized_demand;
    state.day += 1;
}

void run_simulation(const Network& net, const CapacityProfile& capacity,
                    const ModelParams& params, int horizon_days, std::uint64_t seed,
                    const DayObserver& observer, int threads) {
    if (horizon_days < 1) throw ConfigError("run_simulation: horizon must be >= 1");
    capacity.validate(net.firm_count());
    SimState state = initialize_state(net, params, seed);
    for (int t = 0; t < horizon_days; ++t) {
        step_day(state, net, capacity, params, threads);
        if (observer) observer(t, state);
    }
}

std::vector<std::vector<double>> run_collect_production(const Network& net,
                                                        const CapacityProfile& capacity,
                                                        const ModelParams& params,
                                                        int horizon_days, std::uint64_t seed,
                                                        int threads) {
    std::vector<std::vector<double>> series;
    series.reserve(static_cast<std::size_t>(horizon_days));
    run_simulation(
        net, capacity, params, horizon_days, seed,
        [&](int, const SimState& st) { series.push_back(st.p_act); }, threads);
    return series;
}

}  // namespace scnet
