#pragma once

#include "temopt/kpi.hpp"

namespace temopt {

/// Aggregated outcome of one solved (or best-of-sweep) scenario.
struct ScenarioResult {
    std::string name;
    SolveStatus status = SolveStatus::error;
    double mip_gap = 0.0;
    bool hit_limit = false; // solver stopped on a limit with an incumbent
    std::string message;

    DispatchSchedule dispatch;
    CashFlowReport cash;
    KpiReport kpi;
    std::optional<double> delta_npv;           // vs REF where available
    std::optional<double> chp_full_load_hours; // lifetime, A * annual/cap
    std::optional<double> chp_peak_kwel;

    bool usable_status() const {
        return status == SolveStatus::optimal || status == SolveStatus::feasible;
    }
};

/// Canonical component-wise scenario set in study order.
const std::vector<std::string>& component_scenario_names();

struct EngineOptions {
    SolveOptions solve;
    std::vector<double> chp_capacity_steps = {0, 10, 20, 30, 40, 50};
    int workers = 1;
};

/// Four one-week slices (winter/spring/summer/autumn) as a tractable stand-in
/// for the full 8760 hours; annual sums are scaled by 8760/672.
std::vector<int> representative_weeks_hours();

/// Assemble a named component scenario (REF ... COMBI_EVopt) for a building.
/// CHP-bearing scenarios are created in sweep mode with capacity -1, meaning
/// "sweep over EngineOptions::chp_capacity_steps".
Scenario make_component_scenario(const std::string& name, const Building& building,
                                 const TechnologyParams& tech, const EconomicParams& econ,
                                 const PolicyRuleSet& policy, const EmissionParams& emis,
                                 const std::vector<int>& hours = {});

/// Solve one scenario; runs the CHP capacity sweep internally when requested
/// and keeps the best NPV (ties toward smaller capacity).
ScenarioResult run_scenario(const Scenario& scenario, const EngineOptions& opts);

/// Solve a batch on a worker pool; result order matches the input order.
std::vector<ScenarioResult> run_many(const std::vector<Scenario>& scenarios,
                                     const EngineOptions& opts);

/// Component-wise analysis: solves the named scenarios (must include REF),
/// fills delta NPV against REF and sorts ascending by it (REF first,
/// name-stable ties).
std::vector<ScenarioResult> run_component_sweep(const std::vector<std::string>& names,
                                                const Building& building,
                                                const TechnologyParams& tech,
                                                const EconomicParams& econ,
                                                const PolicyRuleSet& policy,
                                                const EmissionParams& emis,
                                                const std::vector<int>& hours,
                                                const EngineOptions& opts);

/// Building-wise analysis: one best-of-sweep result per building for one
/// named scenario (the study uses COMBI).
std::vector<ScenarioResult> run_building_sweep(const std::vector<Building>& buildings,
                                               const std::string& scenario_name,
                                               const TechnologyParams& tech,
                                               const EconomicParams& econ,
                                               const PolicyRuleSet& policy,
                                               const EmissionParams& emis,
                                               const std::vector<int>& hours,
                                               const EngineOptions& opts);

struct PolicyComparison {
    std::string name;
    ScenarioResult tel2020;
    ScenarioResult tel2021;
    double delta_npv() const { return tel2021.kpi.npv - tel2020.kpi.npv; }
};

std::vector<PolicyComparison> run_policy_comparison(const std::vector<std::string>& names,
                                                    const Building& building,
                                                    const TechnologyParams& tech,
                                                    const EconomicParams& econ,
                                                    const EmissionParams& emis,
                                                    const std::vector<int>& hours,
                                                    const EngineOptions& opts);

/// SI cascading mode: continuous CHP capacity, 4 kWel minimum load, fixed
/// cost multiplied by the unit count.
std::vector<ScenarioResult> run_cascading_mode(const std::vector<std::string>& names,
                                               const Building& building,
                                               const TechnologyParams& tech,
                                               const EconomicParams& econ,
                                               const PolicyRuleSet& policy,
                                               const EmissionParams& emis, int unit_count,
                                               const std::vector<int>& hours,
                                               const EngineOptions& opts);

} // namespace temopt
