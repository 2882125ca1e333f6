#include "scnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "scnet/csv.hpp"
#include "scnet/parallel.hpp"

namespace scnet {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

void validate_policy_row(const SectorPolicy& p) {
    const bool exposure_ok = near(p.exposure, 0.0, 1e-9) || near(p.exposure, 0.1, 1e-9) ||
                             near(p.exposure, 0.5, 1e-9) || near(p.exposure, 1.0, 1e-9);
    if (!exposure_ok) {
        throw ConfigError("policy: sector " + std::to_string(p.sector) +
                          " exposure must be one of {0, 0.1, 0.5, 1}");
    }
    if (p.work_at_home < 0.0 || p.work_at_home > 1.0) {
        throw ConfigError("policy: sector " + std::to_string(p.sector) +
                          " work-at-home share outside [0, 1]");
    }
}

}  // namespace

PolicyTable::PolicyTable(std::vector<SectorPolicy> rows) : rows_(std::move(rows)) {
    for (SectorPolicy& p : rows_) {
        validate_policy_row(p);
        const double recomputed = p.exposure * (1.0 - p.work_at_home);
        if (p.reduction_rate != 0.0 || p.exposure == 0.0) {
            if (!near(recomputed, p.reduction_rate, 5e-4)) {
                throw ConfigError("policy: sector " + std::to_string(p.sector) +
                                  " reduction rate " + format_double(p.reduction_rate) +
                                  " does not match exposure*(1-work_at_home) = " +
                                  format_double(recomputed));
            }
        } else {
            p.reduction_rate = recomputed;
        }
        if (!index_.emplace(p.sector, p.reduction_rate).second) {
            throw ConfigError("policy: duplicate sector " + std::to_string(p.sector));
        }
    }
}

double PolicyTable::reduction_rate(int sector) const {
    auto it = index_.find(sector);
    if (it == index_.end()) {
        throw ConfigError("policy: unknown sector " + std::to_string(sector));
    }
    return it->second;
}

PolicyTable PolicyTable::with_work_at_home_zero() const {
    std::vector<SectorPolicy> rows = rows_;
    for (SectorPolicy& p : rows) {
        p.work_at_home = 0.0;
        p.reduction_rate = p.exposure;
    }
    return PolicyTable(std::move(rows));
}

PolicyTable load_policy_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw ConfigError("empty file: " + path);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    bool with_rate;
    if (header == "sector,exposure,work_at_home") {
        with_rate = false;
    } else if (header == "sector,exposure,work_at_home,reduction_rate") {
        with_rate = true;
    } else {
        throw ConfigError(path + ": expected header 'sector,exposure,work_at_home[,reduction_rate]'");
    }
    std::vector<SectorPolicy> rows;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = csv_detail::split_line(line);
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (cells.size() != (with_rate ? 4u : 3u)) throw ConfigError(ctx + ": wrong column count");
        SectorPolicy p;
        p.sector = static_cast<int>(csv_detail::parse_int(cells[0], ctx));
        p.exposure = csv_detail::parse_double(cells[1], ctx);
        p.work_at_home = csv_detail::parse_double(cells[2], ctx);
        p.reduction_rate =
            with_rate ? csv_detail::parse_double(cells[3], ctx) : p.exposure * (1.0 - p.work_at_home);
        rows.push_back(p);
    }
    return PolicyTable(std::move(rows));
}

PolicyTable builtin_policy_table() {
    // Sector-specific reduction rates: exposure level times the share of
    // workers who cannot work at home. Lifeline sectors carry exposure 0.1,
    // low-exposure sectors 0.5, fully exposed sectors 1, and exempt ones 0.
    struct Row {
        int code;
        const char* name;
        double rate;
        double wah;
        double exposure;
    };
    static const Row kRows[] = {
        {1, "AGR", 0.433, 0.134, 0.5},      {2, "FRS", 0.433, 0.134, 0.5},
        {3, "FIS", 0.433, 0.134, 0.5},      {4, "AQA", 0.433, 0.134, 0.5},
        {5, "MIN", 0.637, 0.363, 1},        {6, "CNS.GEN", 0.758, 0.242, 1},
        {7, "CNS.SPC", 0.758, 0.242, 1},    {8, "EQP", 0.758, 0.242, 1},
        {9, "MAN.FOD", 0.76, 0.240, 1},     {10, "MAN.BEV", 0.76, 0.240, 1},
        {11, "MAN.TEX", 0.668, 0.332, 1},   {12, "MAN.LUM", 0.768, 0.232, 1},
        {13, "MAN.FUR", 0.768, 0.232, 1},   {14, "MAN.PUL", 0.676, 0.324, 1},
        {15, "PRT", 0.676, 0.324, 1},       {16, "MAN.CHM", 0.529, 0.471, 1},
        {17, "MAN.PET", 0.651, 0.349, 1},   {18, "MAN.PLA", 0.704, 0.296, 1},
        {19, "MAN.RUB", 0.704, 0.296, 1},   {20, "MAN.LET", 0.668, 0.332, 1},
        {21, "MAN.CER", 0.709, 0.291, 1},   {22, "MAN.IRN", 0.732, 0.268, 1},
        {23, "MAN.NFM", 0.732, 0.268, 1},   {24, "MAN.FBM", 0.695, 0.305, 1},
        {25, "MAN.GNM", 0.604, 0.396, 1},   {26, "MAN.PRM", 0.604, 0.396, 1},
        {27, "MAN.BSM", 0.604, 0.396, 1},   {28, "EPT", 0.333, 0.667, 1},
        {29, "MAN.ELM", 0.58, 0.420, 1},    {30, "MAN.INF", 0.333, 0.667, 1},
        {31, "MAN.TRN", 0.504, 0.496, 1},   {32, "MAN.MSC", 0.705, 0.295, 1},
        {33, "ELE", 0.0623, 0.377, 0.1},    {34, "GAS", 0.0623, 0.377, 0.1},
        {35, "HET", 0.0623, 0.377, 0.1},    {36, "WTR", 0.0623, 0.377, 0.1},
        {37, "COM", 0.0401, 0.599, 0.1},    {38, "BRD", 0.0192, 0.808, 0.1},
        {39, "INF.SVC", 0.097, 0.903, 1},   {40, "INT", 0.0401, 0.599, 0.1},
        {41, "INF.DST", 0.192, 0.808, 1},   {42, "RLW.TRP", 0.0701, 0.299, 0.1},
        {43, "PAS.TRP", 0.0701, 0.299, 0.1},{44, "FRE.TRP", 0.0701, 0.299, 0.1},
        {45, "WTR.TRP", 0.0701, 0.299, 0.1},{46, "AIR.TRP", 0.0701, 0.299, 0.1},
        {47, "WRH", 0.0701, 0.299, 0.1},    {48, "SVC.TRP", 0.0701, 0.299, 0.1},
        {49, "PST.SVC", 0.0701, 0.299, 0.1},{50, "WHL.GEN", 0.525, 0.475, 1},
        {51, "WHL.TEX", 0.525, 0.475, 1},   {52, "WHL.FOD", 0.525, 0.475, 1},
        {53, "WHL.MAT", 0.525, 0.475, 1},   {54, "WHL.MCN", 0.525, 0.475, 1},
        {55, "WHL.MSC", 0.525, 0.475, 1},   {560, "RTL.ADM", 0.525, 0.475, 1},
        {561, "RTL.DPT", 0.525, 0.475, 1},  {569, "RTL.GNM", 0.0525, 0.475, 0.1},
        {57, "RTL.GEN", 0.525, 0.475, 1},   {58, "RTL.FOD", 0.525, 0.475, 1},
        {59, "RTL.MCN", 0.525, 0.475, 1},   {60, "RTL.MSC", 0.525, 0.475, 1},
        {61, "RTL.NST", 0.525, 0.475, 1},   {62, "FIN.BNK", 0.214, 0.786, 1},
        {63, "FIN.ORG", 0.214, 0.786, 1},   {64, "FIN.LON", 0.214, 0.786, 1},
        {65, "FIN.TRN", 0.214, 0.786, 1},   {66, "FIN.AUX", 0.214, 0.786, 1},
        {67, "INS", 0.214, 0.786, 1},       {68, "RST.AGN", 0.423, 0.577, 1},
        {69, "RTS.LES", 0.423, 0.577, 1},   {70, "RNT", 0.362, 0.638, 1},
        {71, "SCI", 0.172, 0.828, 1},       {72, "SVC.PRF", 0.362, 0.638, 1},
        {73, "ADV", 0.362, 0.638, 1},       {74, "SVC.TEC", 0.362, 0.638, 1},
        {75, "ACM", 0.889, 0.111, 1},       {76, "EAT", 0.889, 0.111, 1},
        {77, "DEL", 0.0521, 0.479, 0.1},    {78, "LND", 0.521, 0.479, 1},
        {79, "SVC.PSN", 0.521, 0.479, 1},   {80, "SVC.AMS", 0.521, 0.479, 1},
        {81, "SCH", 0.086, 0.828, 0.5},     {82, "EDC", 0.086, 0.828, 0.5},
        {83, "MED", 0.0753, 0.247, 0.1},    {84, "HLT", 0.0, 0.247, 0.0},
        {85, "WEL", 0.0, 0.247, 0.0},       {86, "PST.OFC", 0.0362, 0.638, 0.1},
        {87, "CAS", 0.181, 0.638, 0.5},     {88, "WAS", 0.181, 0.638, 0.5},
        {89, "SVC.AUT", 0.181, 0.638, 0.5}, {90, "SVC.MCN", 0.181, 0.638, 0.5},
        {91, "SVC.EMP", 0.181, 0.638, 0.5}, {92, "SVC.BUS", 0.181, 0.638, 0.5},
        {93, "PLT", 0.181, 0.638, 0.5},     {94, "REL", 0.181, 0.638, 0.5},
        {95, "SVC.MSC", 0.181, 0.638, 0.5}, {96, "GOV.INT", 0.0515, 0.485, 0.1},
        {97, "GOV.NAT", 0.0515, 0.485, 0.1},{98, "GOV.LOC", 0.0515, 0.485, 0.1},
        {99, "NEC", 0.362, 0.638, 1},
    };
    std::vector<SectorPolicy> rows;
    rows.reserve(std::size(kRows));
    for (const Row& r : kRows) {
        rows.push_back({r.code, r.name, r.exposure, r.wah, r.rate});
    }
    return PolicyTable(std::move(rows));
}

LockdownSchedule::LockdownSchedule(std::vector<LockdownEntry> entries)
    : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const LockdownEntry& a, const LockdownEntry& b) {
        if (a.region != b.region) return a.region < b.region;
        return a.start_day < b.start_day;
    });
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const LockdownEntry& e = entries_[k];
        if (e.start_day < 0 || e.end_day <= e.start_day) {
            throw ConfigError("schedule: bad interval for region " + std::to_string(e.region));
        }
        if (e.multiplier < 0.0 || e.multiplier > 1.0) {
            throw ConfigError("schedule: multiplier outside [0, 1] for region " +
                              std::to_string(e.region));
        }
        if (k > 0 && entries_[k - 1].region == e.region && entries_[k - 1].end_day > e.start_day) {
            throw ConfigError("schedule: overlapping intervals for region " +
                              std::to_string(e.region));
        }
        horizon_ = std::max(horizon_, e.end_day);
    }
}

double LockdownSchedule::multiplier(int region, int day) const {
    for (const LockdownEntry& e : entries_) {
        if (e.region == region && day >= e.start_day && day < e.end_day) return e.multiplier;
    }
    return 0.0;
}

std::vector<int> LockdownSchedule::locked_regions(int day) const {
    std::set<int> regions;
    for (const LockdownEntry& e : entries_) {
        if (day >= e.start_day && day < e.end_day && e.multiplier > 0.0) regions.insert(e.region);
    }
    return {regions.begin(), regions.end()};
}

LockdownSchedule build_actual_schedule() {
    // Day 0 = 7 April 2020. First wave: the seven industrial-cluster
    // prefectures (Saitama, Chiba, Tokyo, Kanagawa, Osaka, Hyogo, Fukuoka).
    // Nationwide from 16 April (day 9); lifted for 39 prefectures on 14 May
    // (day 37), for Kyoto/Osaka/Hyogo on 21 May (day 44), and for the last
    // five (Hokkaido and greater Tokyo) on 25 May (day 48).
    const std::set<int> first_wave = {11, 12, 13, 14, 27, 28, 40};
    const std::set<int> lifted_last = {1, 11, 12, 13, 14};
    const std::set<int> lifted_mid = {26, 27, 28};

    std::vector<LockdownEntry> entries;
    for (int region = 1; region <= 47; ++region) {
        const int start = first_wave.count(region) ? 0 : 9;
        int end = 37;
        if (lifted_mid.count(region)) end = 44;
        if (lifted_last.count(region)) end = 48;
        entries.push_back({region, start, end, 1.0});
    }
    return LockdownSchedule(std::move(entries));
}

LockdownSchedule load_schedule_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw ConfigError("empty file: " + path);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != "prefecture,start_day,end_day,multiplier") {
        throw ConfigError(path + ": expected header 'prefecture,start_day,end_day,multiplier'");
    }
    std::vector<LockdownEntry> entries;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = csv_detail::split_line(line);
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (cells.size() != 4) throw ConfigError(ctx + ": expected 4 columns");
        LockdownEntry e;
        e.region = static_cast<int>(csv_detail::parse_int(cells[0], ctx));
        e.start_day = static_cast<int>(csv_detail::parse_int(cells[1], ctx));
        e.end_day = static_cast<int>(csv_detail::parse_int(cells[2], ctx));
        e.multiplier = csv_detail::parse_double(cells[3], ctx);
        entries.push_back(e);
    }
    return LockdownSchedule(std::move(entries));
}

void save_schedule_csv(const std::string& path, const LockdownSchedule& schedule) {
    std::vector<std::vector<std::string>> rows;
    for (const LockdownEntry& e : schedule.entries()) {
        rows.push_back({std::to_string(e.region), std::to_string(e.start_day),
                        std::to_string(e.end_day), format_double(e.multiplier)});
    }
    write_csv(path, "prefecture,start_day,end_day,multiplier", rows);
}

CapacityProfile capacity_profile(const LockdownSchedule& schedule, const PolicyTable& policy,
                                 const Network& net,
                                 const std::map<int, double>& region_multiplier_override,
                                 int horizon_days) {
    const int days = horizon_days > 0 ? horizon_days : schedule.horizon();
    const std::size_t n_regions = net.region_count();

    CapacityProfile profile;
    profile.n_days = days;
    profile.firm_group.resize(net.firm_count());
    profile.firm_rate.resize(net.firm_count());
    profile.group_day.assign(n_regions * static_cast<std::size_t>(days), 0.0);

    for (std::size_t r = 0; r < n_regions; ++r) {
        const int code = net.region_ids()[r];
        double override_mult = 1.0;
        if (auto it = region_multiplier_override.find(code);
            it != region_multiplier_override.end()) {
            if (it->second < 0.0 || it->second > 1.0) {
                throw ConfigError("capacity_profile: override multiplier outside [0, 1]");
            }
            override_mult = it->second;
        }
        for (int t = 0; t < days; ++t) {
            profile.group_day[r * static_cast<std::size_t>(days) + t] =
                schedule.multiplier(code, t) * override_mult;
        }
    }
    for (std::size_t i = 0; i < net.firm_count(); ++i) {
        profile.firm_group[i] = net.region_index(net.region(i));
        profile.firm_rate[i] = policy.reduction_rate(net.sector(i));
    }
    profile.validate(net.firm_count());
    return profile;
}

namespace {

ValueAddedRun simulate_value_added(const Network& net, const CapacityProfile& capacity,
                                   const ModelParams& params, int horizon, std::uint64_t seed,
                                   std::span<const double> va_weight) {
    const std::size_t n_regions = net.region_count();
    ValueAddedRun run;
    run.gdp.assign(horizon, 0.0);
    run.grp.assign(n_regions * static_cast<std::size_t>(horizon), 0.0);
    run_simulation(
        net, capacity, params, horizon, seed,
        [&](int day, const SimState& st) {
            double gdp = 0.0;
            for (std::size_t r = 0; r < n_regions; ++r) {
                double total = 0.0;
                for (FirmId i : net.region_firms()[r]) {
                    const double w = va_weight.empty() ? 1.0 : va_weight[i];
                    total += w * st.p_act[i];
                }
                run.grp[r * static_cast<std::size_t>(horizon) + day] = total;
                gdp += total;
            }
            run.gdp[day] = gdp;
        },
        /*threads=*/1);
    return run;
}

}  // namespace

MonteCarloResult run_monte_carlo(const Network& net, const ExperimentSpec& spec,
                                 const CapacityProfile& capacity,
                                 std::span<const double> value_added_weight) {
    spec.validate();
    capacity.validate(net.firm_count());
    const int horizon = spec.horizon_days;
    const int runs = spec.monte_carlo_runs;
    const std::size_t n_regions = net.region_count();

    MonteCarloResult result;
    result.days = horizon;
    result.runs.resize(runs);

    // Runs are independent jobs; each simulates single-threaded so the
    // per-run numbers cannot depend on scheduling.
    parallel_jobs(static_cast<std::size_t>(runs), spec.threads, [&](std::size_t r) {
        result.runs[r] = simulate_value_added(net, capacity, spec.params, horizon,
                                              spec.base_seed + r, value_added_weight);
    });

    result.mean.gdp.assign(horizon, 0.0);
    result.mean.grp.assign(n_regions * static_cast<std::size_t>(horizon), 0.0);
    for (int r = 0; r < runs; ++r) {
        for (int t = 0; t < horizon; ++t) result.mean.gdp[t] += result.runs[r].gdp[t];
        for (std::size_t k = 0; k < result.mean.grp.size(); ++k) {
            result.mean.grp[k] += result.runs[r].grp[k];
        }
    }
    const double inv = 1.0 / static_cast<double>(runs);
    for (double& v : result.mean.gdp) v *= inv;
    for (double& v : result.mean.grp) v *= inv;

    result.baseline_grp.assign(n_regions, 0.0);
    for (std::size_t r = 0; r < n_regions; ++r) {
        double total = 0.0;
        for (FirmId i : net.region_firms()[r]) {
            const double w = value_added_weight.empty() ? 1.0 : value_added_weight[i];
            total += w * net.initial_production(i);
        }
        result.baseline_grp[r] = total;
        result.baseline_gdp += total;
    }
    return result;
}

namespace {

LockdownSchedule lock_everything(const Network& net, int duration) {
    std::vector<LockdownEntry> entries;
    for (int code : net.region_ids()) entries.push_back({code, 0, duration, 1.0});
    return LockdownSchedule(std::move(entries));
}

double window_loss(const MonteCarloResult& mc, std::span<const std::size_t> region_idx) {
    double loss = 0.0;
    for (std::size_t r : region_idx) {
        for (int t = 0; t < mc.days; ++t) {
            loss += mc.baseline_grp[r] - mc.mean.grp[r * static_cast<std::size_t>(mc.days) + t];
        }
    }
    return loss;
}

}  // namespace

std::vector<GridCell> experiment_multiplier_grid(const Network& net, const ExperimentSpec& spec,
                                                 const PolicyTable& policy,
                                                 std::span<const double> multipliers_more,
                                                 std::span<const double> multipliers_less,
                                                 int duration,
                                                 std::span<const double> value_added_weight) {
    spec.validate();
    if (duration < 1) throw ConfigError("grid: duration must be >= 1");
    const LockdownSchedule schedule = lock_everything(net, duration);

    std::set<int> more(spec.more_restricted.begin(), spec.more_restricted.end());
    std::vector<std::size_t> more_idx, less_idx;
    for (std::size_t r = 0; r < net.region_count(); ++r) {
        (more.count(net.region_ids()[r]) ? more_idx : less_idx).push_back(r);
    }

    ExperimentSpec leg = spec;
    leg.horizon_days = duration;

    std::vector<GridCell> cells;
    for (double mm : multipliers_more) {
        for (double ml : multipliers_less) {
            std::map<int, double> override;
            for (std::size_t r : more_idx) override[net.region_ids()[r]] = mm;
            for (std::size_t r : less_idx) override[net.region_ids()[r]] = ml;
            const CapacityProfile capacity =
                capacity_profile(schedule, policy, net, override, duration);
            const MonteCarloResult mc = run_monte_carlo(net, leg, capacity, value_added_weight);
            GridCell cell;
            cell.mult_more = mm;
            cell.mult_less = ml;
            cell.loss_more = window_loss(mc, more_idx);
            cell.loss_less = window_loss(mc, less_idx);
            cell.loss_total = cell.loss_more + cell.loss_less;
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<LiftOneRow> experiment_lift_one(const Network& net, const ExperimentSpec& spec,
                                            const PolicyTable& policy, int window_days,
                                            std::span<const double> value_added_weight) {
    spec.validate();
    if (window_days < 1) throw ConfigError("lift_one: window must be >= 1");
    const LockdownSchedule schedule = lock_everything(net, window_days);
    ExperimentSpec leg = spec;
    leg.horizon_days = window_days;

    const CapacityProfile locked = capacity_profile(schedule, policy, net, {}, window_days);
    const MonteCarloResult base = run_monte_carlo(net, leg, locked, value_added_weight);

    std::vector<LiftOneRow> rows;
    for (std::size_t a = 0; a < net.region_count(); ++a) {
        const int code = net.region_ids()[a];
        const CapacityProfile lifted =
            capacity_profile(schedule, policy, net, {{code, 0.0}}, window_days);
        const MonteCarloResult mc = run_monte_carlo(net, leg, lifted, value_added_weight);

        LiftOneRow row;
        row.region = code;
        for (int t = 0; t < window_days; ++t) {
            const std::size_t k = a * static_cast<std::size_t>(window_days) + t;
            row.grp_loss += base.baseline_grp[a] - base.mean.grp[k];
            row.grp_gain += mc.mean.grp[k] - base.mean.grp[k];
        }
        if (row.grp_loss > 0.0) row.recovery = row.grp_gain / row.grp_loss;
        rows.push_back(row);
    }
    return rows;
}

std::vector<LiftTwoRow> experiment_lift_two(const Network& net, const ExperimentSpec& spec,
                                            const PolicyTable& policy,
                                            std::span<const int> pair_regions, int window_days,
                                            std::span<const double> value_added_weight) {
    spec.validate();
    if (window_days < 1) throw ConfigError("lift_two: window must be >= 1");
    std::vector<int> codes(pair_regions.begin(), pair_regions.end());
    if (codes.empty()) codes = net.region_ids();
    for (int c : codes) {
        if (net.region_index(c) < 0) {
            throw ConfigError("lift_two: region " + std::to_string(c) + " has no firms");
        }
    }

    const LockdownSchedule schedule = lock_everything(net, window_days);
    ExperimentSpec leg = spec;
    leg.horizon_days = window_days;
    const CapacityProfile locked = capacity_profile(schedule, policy, net, {}, window_days);
    const MonteCarloResult base = run_monte_carlo(net, leg, locked, value_added_weight);

    auto region_gain = [&](const MonteCarloResult& mc, int code) {
        const std::size_t a = static_cast<std::size_t>(net.region_index(code));
        double gain = 0.0;
        for (int t = 0; t < window_days; ++t) {
            const std::size_t k = a * static_cast<std::size_t>(window_days) + t;
            gain += mc.mean.grp[k] - base.mean.grp[k];
        }
        return gain;
    };

    std::map<int, double> gain_alone;
    for (int code : codes) {
        const CapacityProfile lifted =
            capacity_profile(schedule, policy, net, {{code, 0.0}}, window_days);
        gain_alone[code] = region_gain(run_monte_carlo(net, leg, lifted, value_added_weight), code);
    }

    std::vector<LiftTwoRow> rows;
    for (std::size_t x = 0; x < codes.size(); ++x) {
        for (std::size_t y = x + 1; y < codes.size(); ++y) {
            const int a = codes[x];
            const int b = codes[y];
            const CapacityProfile lifted =
                capacity_profile(schedule, policy, net, {{a, 0.0}, {b, 0.0}}, window_days);
            const MonteCarloResult mc = run_monte_carlo(net, leg, lifted, value_added_weight);
            for (const auto& [self, other] : {std::pair{a, b}, std::pair{b, a}}) {
                LiftTwoRow row;
                row.region_a = self;
                row.region_b = other;
                row.gain_joint = region_gain(mc, self);
                row.gain_alone = gain_alone[self];
                if (row.gain_alone > 0.0) row.relative_recovery = row.gain_joint / row.gain_alone;
                rows.push_back(row);
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const LiftTwoRow& l, const LiftTwoRow& r) {
        if (l.region_a != r.region_a) return l.region_a < r.region_a;
        return l.region_b < r.region_b;
    });
    return rows;
}

}  // namespace scnet
