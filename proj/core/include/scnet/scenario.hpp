#pragma once

// Lockdown policies, capacity profiles, and the Monte Carlo experiment
// drivers: replicate, multiplier grid, lift-one, lift-two.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scnet/network.hpp"
#include "scnet/prodsim.hpp"

namespace scnet {

struct SectorPolicy {
    int sector = 0;
    std::string name;            // optional abbreviation, informational
    double exposure = 0.0;       // one of {0, 0.1, 0.5, 1}
    double work_at_home = 0.0;   // fraction in [0, 1]
    double reduction_rate = 0.0; // exposure * (1 - work_at_home)
};

class PolicyTable {
public:
    explicit PolicyTable(std::vector<SectorPolicy> rows);

    const std::vector<SectorPolicy>& rows() const { return rows_; }
    bool has_sector(int sector) const { return index_.count(sector) > 0; }
    double reduction_rate(int sector) const;

    // Robustness variant: everyone works on site (work_at_home = 0).
    PolicyTable with_work_at_home_zero() const;

private:
    std::vector<SectorPolicy> rows_;
    std::map<int, double> index_;
};

// policy.csv: sector,exposure,work_at_home[,reduction_rate]. When the rate
// column is present it is cross-checked against the recomputed product;
// a mismatch beyond 5e-4 names the sector and fails.
PolicyTable load_policy_table(const std::string& path);

// The policy assumed in the reference lockdown experiments, one row per
// JSIC two-digit sector (plus the 560/561/569 retail splits).
PolicyTable builtin_policy_table();

struct LockdownEntry {
    int region = 0;
    int start_day = 0; // inclusive
    int end_day = 0;   // exclusive
    double multiplier = 1.0;
};

class LockdownSchedule {
public:
    LockdownSchedule() = default;
    explicit LockdownSchedule(std::vector<LockdownEntry> entries);

    const std::vector<LockdownEntry>& entries() const { return entries_; }
    // 0 when the region is not locked on that day.
    double multiplier(int region, int day) const;
    int horizon() const { return horizon_; }
    std::vector<int> locked_regions(int day) const;

private:
    std::vector<LockdownEntry> entries_;
    int horizon_ = 0;
};

// The April-May 2020 state-of-emergency timeline, day 0 = 7 April: seven
// industrial-cluster prefectures first, all 47 from day 9, lifted in waves
// on days 37, 44, and 48.
LockdownSchedule build_actual_schedule();

// schedule.csv: prefecture,start_day,end_day,multiplier
LockdownSchedule load_schedule_csv(const std::string& path);
void save_schedule_csv(const std::string& path, const LockdownSchedule& schedule);

// delta_i(t) = schedule multiplier x group override x sector reduction rate
// while the firm's region is locked, else 0. Throws on sectors missing from
// the policy.
CapacityProfile capacity_profile(const LockdownSchedule& schedule, const PolicyTable& policy,
                                 const Network& net,
                                 const std::map<int, double>& region_multiplier_override = {},
                                 int horizon_days = 0);

enum class ExperimentKind { replicate, multiplier_grid, lift_one, lift_two };

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::replicate;
    int horizon_days = 60;
    int monte_carlo_runs = 30;
    std::uint64_t base_seed = 1;
    std::vector<int> more_restricted; // region codes of the tighter group
    ModelParams params;
    int threads = 1;

    void validate() const {
        params.validate();
        if (horizon_days < 1) throw ConfigError("experiment: horizon must be >= 1");
        if (monte_carlo_runs < 1) throw ConfigError("experiment: runs must be >= 1");
    }
};

// Daily value added aggregated nationally and per region; regions indexed
// as in Network::region_ids().
struct ValueAddedRun {
    std::vector<double> gdp;             // [day]
    std::vector<double> grp;             // [region * days + day]
};

struct MonteCarloResult {
    int days = 0;
    std::vector<ValueAddedRun> runs;
    ValueAddedRun mean;                   // arithmetic mean over runs
    std::vector<double> baseline_grp;     // no-lockdown daily GRP per region
    double baseline_gdp = 0.0;            // no-lockdown daily GDP
};

// Runs `spec.monte_carlo_runs` simulations (run r seeded base_seed + r),
// averaging value added. Randomness enters only through the inventory
// target draws. Value-added weights default to 1.
MonteCarloResult run_monte_carlo(const Network& net, const ExperimentSpec& spec,
                                 const CapacityProfile& capacity,
                                 std::span<const double> value_added_weight = {});

struct GridCell {
    double mult_more = 0.0;
    double mult_less = 0.0;
    double loss_total = 0.0;
    double loss_more = 0.0;
    double loss_less = 0.0;
};

// Lockdown of every region for `duration` days at group-specific multiplier
// levels; losses are relative to the no-lockdown baseline, split by group.
std::vector<GridCell> experiment_multiplier_grid(const Network& net, const ExperimentSpec& spec,
                                                 const PolicyTable& policy,
                                                 std::span<const double> multipliers_more,
                                                 std::span<const double> multipliers_less,
                                                 int duration,
                                                 std::span<const double> value_added_weight = {});

struct LiftOneRow {
    int region = 0;
    double grp_loss = 0.0;  // under the all-region lockdown
    double grp_gain = 0.0;  // from lifting its own lockdown
    std::optional<double> recovery; // gain / loss; empty when loss <= 0
};

// All regions locked for the window; each leg unlocks one region from day 0.
std::vector<LiftOneRow> experiment_lift_one(const Network& net, const ExperimentSpec& spec,
                                            const PolicyTable& policy, int window_days = 14,
                                            std::span<const double> value_added_weight = {});

struct LiftTwoRow {
    int region_a = 0;
    int region_b = 0;
    double gain_joint = 0.0; // delta GRP_a when a and b lift together
    double gain_alone = 0.0; // delta GRP_a when a lifts alone
    std::optional<double> relative_recovery; // joint / alone; empty when alone <= 0
};

// Ordered pairs (a, b) over `pair_regions` (all regions when empty).
std::vector<LiftTwoRow> experiment_lift_two(const Network& net, const ExperimentSpec& spec,
                                            const PolicyTable& policy,
                                            std::span<const int> pair_regions = {},
                                            int window_days = 14,
                                            std::span<const double> value_added_weight = {});

}  // namespace scnet
