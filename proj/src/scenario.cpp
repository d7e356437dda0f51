#include "temopt/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace temopt {

const std::vector<std::string>& component_scenario_names() {
    static const std::vector<std::string> names = {
        "REF",     "PV",         "PV_BAT", "PV_HP",    "CHP",      "CHP_BAT",
        "CHP_HP",  "PV_CHP",     "PV_CHP_BAT", "COMBI", "COMBI_EV", "COMBI_EVopt"};
    return names;
}

std::vector<int> representative_weeks_hours() {
    std::vector<int> hours;
    for (int start_day : {14, 104, 195, 287}) // mid Jan/Apr/Jul/Oct weeks
        for (int h = 0; h < 168; ++h) hours.push_back(start_day * 24 + h);
    return hours;
}

Scenario make_component_scenario(const std::string& name, const Building& building,
                                 const TechnologyParams& tech, const EconomicParams& econ,
                                 const PolicyRuleSet& policy, const EmissionParams& emis,
                                 const std::vector<int>& hours) {
    Scenario s;
    s.name = name;
    s.building = building;
    s.tech = tech;
    s.econ = econ;
    s.policy = policy;
    s.emis = emis;
    s.hours = hours;
    s.enabled = {Tech::boiler, Tech::heat_storage};

    auto has_part = [&](const std::string& p) {
        // Match component tokens in the canonical names (PV vs PV_CHP etc.).
        std::string padded = "_" + name + "_";
        return padded.find("_" + p + "_") != std::string::npos;
    };
    if (has_part("PV") || has_part("COMBI")) s.enabled.insert(Tech::pv);
    if (has_part("CHP") || has_part("COMBI")) s.enabled.insert(Tech::chp);
    if (has_part("HP") || has_part("COMBI")) s.enabled.insert(Tech::hp);
    if (has_part("BAT") || has_part("COMBI")) {
        s.enabled.insert(Tech::battery);
        s.enabled.insert(Tech::inverter);
    }
    if (name == "COMBI_EV") s.ev_mode = EvMode::fixed;
    if (name == "COMBI_EVopt") s.ev_mode = EvMode::optimized;
    if (name != "REF" && s.enabled.size() == 2)
        throw std::invalid_argument("unknown scenario name: " + name);
    if (s.has(Tech::chp)) {
        s.chp.kind = ChpModeSpec::Kind::sweep;
        s.chp.fixed_capacity_kwel = -1.0; // sweep marker
    }
    return s;
}

namespace {

ScenarioResult solve_one(const Scenario& scenario, const SolveOptions& opts) {
    ScenarioResult r;
    r.name = scenario.name;
    BuiltModel built = build_model(scenario);
    Solution sol = solve(built.model, opts);
    r.status = sol.status;
    r.mip_gap = sol.mip_gap;
    r.message = sol.message;
    r.hit_limit = sol.status == SolveStatus::feasible;
    if (!sol.usable()) return r;
    r.dispatch = extract_dispatch(scenario, built, sol);
    r.cash = compute_cash_flows(scenario, built, r.dispatch);
    r.kpi = compute_kpis(scenario, r.dispatch, r.cash);
    double cap_chp = r.dispatch.capacity.at(Tech::chp);
    if (cap_chp > 1e-6) {
        r.chp_full_load_hours =
            scenario.econ.horizon_years * r.dispatch.annual(r.dispatch.chp_el) / cap_chp;
        r.chp_peak_kwel =
            *std::max_element(r.dispatch.chp_el.begin(), r.dispatch.chp_el.end());
    }
    return r;
}

} // namespace

ScenarioResult run_scenario(const Scenario& scenario, const EngineOptions& opts) {
    bool sweep = scenario.has(Tech::chp) && scenario.chp.kind == ChpModeSpec::Kind::sweep &&
                 scenario.chp.fixed_capacity_kwel < 0.0;
    if (!sweep) return solve_one(scenario, opts.solve);

    std::optional<ScenarioResult> best;
    double best_cap = 0.0;
    for (double cap : opts.chp_capacity_steps) {
        Scenario s = scenario;
        if (cap <= 0.0) {
            s.enabled.erase(Tech::chp);
            s.chp.kind = ChpModeSpec::Kind::none;
        } else {
            s.chp.fixed_capacity_kwel = cap;
        }
        ScenarioResult r = solve_one(s, opts.solve);
        if (!r.usable_status()) continue;
        // Strictly-better selection keeps the smaller capacity on ties.
        if (!best || r.kpi.npv > best->kpi.npv + 1e-6) {
            best = std::move(r);
            best_cap = cap;
        }
    }
    if (!best) {
        ScenarioResult r;
        r.name = scenario.name;
        r.status = SolveStatus::infeasible;
        r.message = "no capacity step in the CHP sweep produced a usable solution";
        return r;
    }
    (void)best_cap;
    return *best;
}

std::vector<ScenarioResult> run_many(const std::vector<Scenario>& scenarios,
                                     const EngineOptions& opts) {
    std::vector<ScenarioResult> results(scenarios.size());
    int workers = std::max(1, opts.workers);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= scenarios.size()) return;
            results[i] = run_scenario(scenarios[i], opts);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < workers; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return results;
}

std::vector<ScenarioResult> run_component_sweep(const std::vector<std::string>& names,
                                                const Building& building,
                                                const TechnologyParams& tech,
                                                const EconomicParams& econ,
                                                const PolicyRuleSet& policy,
                                                const EmissionParams& emis,
                                                const std::vector<int>& hours,
                                                const EngineOptions& opts) {
    if (std::find(names.begin(), names.end(), "REF") == names.end())
        throw std::invalid_argument("component sweep requires the REF baseline scenario");
    std::vector<Scenario> scenarios;
    for (const auto& n : names)
        scenarios.push_back(make_component_scenario(n, building, tech, econ, policy, emis, hours));
    auto results = run_many(scenarios, opts);

    const ScenarioResult* ref = nullptr;
    for (const auto& r : results)
        if (r.name == "REF") ref = &r;
    if (!ref || !ref->usable_status())
        throw std::runtime_error("REF scenario is not solvable" +
                                 (ref ? ": " + ref->message : std::string()));
    for (auto& r : results)
        if (r.usable_status()) r.delta_npv = r.kpi.npv - ref->kpi.npv;
    std::stable_sort(results.begin(), results.end(),
                     [](const ScenarioResult& a, const ScenarioResult& b) {
                         double da = a.delta_npv.value_or(0.0), db = b.delta_npv.value_or(0.0);
                         if (da != db) return da < db;
                         return a.name < b.name;
                     });
    return results;
}

std::vector<ScenarioResult> run_building_sweep(const std::vector<Building>& buildings,
                                               const std::string& scenario_name,
                                               const TechnologyParams& tech,
                                               const EconomicParams& econ,
                                               const PolicyRuleSet& policy,
                                               const EmissionParams& emis,
                                               const std::vector<int>& hours,
                                               const EngineOptions& opts) {
    std::vector<Scenario> scenarios;
    for (const auto& b : buildings) {
        Scenario s = make_component_scenario(scenario_name, b, tech, econ, policy, emis, hours);
        s.name = scenario_name + ":" + b.name;
        scenarios.push_back(std::move(s));
    }
    return run_many(scenarios, opts);
}

std::vector<PolicyComparison> run_policy_comparison(const std::vector<std::string>& names,
                                                    const Building& building,
                                                    const TechnologyParams& tech,
                                                    const EconomicParams& econ,
                                                    const EmissionParams& emis,
                                                    const std::vector<int>& hours,
                                                    const EngineOptions& opts) {
    std::vector<PolicyComparison> out;
    for (const auto& n : names) {
        PolicyComparison pc;
        pc.name = n;
        pc.tel2020 = run_scenario(
            make_component_scenario(n, building, tech, econ, tel2020_rules(), emis, hours), opts);
        pc.tel2021 = run_scenario(
            make_component_scenario(n, building, tech, econ, tel2021_rules(), emis, hours), opts);
        out.push_back(std::move(pc));
    }
    return out;
}

std::vector<ScenarioResult> run_cascading_mode(const std::vector<std::string>& names,
                                               const Building& building,
                                               const TechnologyParams& tech,
                                               const EconomicParams& econ,
                                               const PolicyRuleSet& policy,
                                               const EmissionParams& emis, int unit_count,
                                               const std::vector<int>& hours,
                                               const EngineOptions& opts) {
    if (unit_count < 1) throw std::invalid_argument("unit_count must be >= 1");
    std::vector<Scenario> scenarios;
    for (const auto& n : names) {
        Scenario s = make_component_scenario(n, building, tech, econ, policy, emis, hours);
        if (s.has(Tech::chp)) {
            s.chp.kind = ChpModeSpec::Kind::cascading;
            s.chp.unit_count = unit_count;
            s.chp.min_load_kwel = 4.0;
            s.chp.fixed_capacity_kwel = 0.0;
        }
        scenarios.push_back(std::move(s));
    }
    return run_many(scenarios, opts);
}

} // namespace temopt
