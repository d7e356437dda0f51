#pragma once

#include "temopt/scenario.hpp"
#include "temopt/synthetic.hpp"

namespace temopt {

/// Load hourly profiles from a CSV file with a header row and 8760 data rows.
/// Mandatory columns: hour, el_demand_kWh, heat_demand_kWh, cop,
/// pv_yield_kWh_per_kWp; optional EV columns ev1_kWh, ev2_kWh, ... in order.
/// Errors carry the offending line number. Building metadata (roof area etc.)
/// is not part of the profile file.
Building load_profiles(const std::string& path);

void write_profiles(const Building& building, const std::string& path);

/// Lossless JSON persistence of a solved dispatch (for the `kpi` subcommand).
void save_dispatch(const DispatchSchedule& dispatch, const std::string& path);
DispatchSchedule load_dispatch(const std::string& path);

/// Parsed scenario configuration file (JSON). Unknown keys are rejected.
struct RunConfig {
    std::vector<Building> buildings; // profiles already loaded
    TechnologyParams tech;
    EconomicParams econ;
    EmissionParams emis;
    PolicyRuleSet policy;
    std::vector<std::string> scenarios;
    bool full_year = false; // false: four representative weeks
    EngineOptions engine;
    std::string output_dir = "out";
    std::vector<int> dispatch_days;

    std::vector<int> hours() const;
};

RunConfig load_run_config(const std::string& path);

/// Write results.csv, results.json, waterfall.csv, dispatch_day_<d>.csv and
/// dispatch_<name>.json into `directory`. CSV and JSON carry identical
/// numbers; absent ratios serialize as empty cells / null.
void emit_report(const std::vector<ScenarioResult>& results, const std::string& directory,
                 const std::vector<int>& dispatch_days = {});

} // namespace temopt
