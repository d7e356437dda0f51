#pragma once

#include <set>

#include "temopt/domain.hpp"
#include "temopt/milp.hpp"
#include "temopt/remuneration.hpp"

namespace temopt {

struct ChpModeSpec {
    enum class Kind { none, sweep, cascading };
    Kind kind = Kind::none;
    double fixed_capacity_kwel = 0.0; // sweep: exogenous capacity parameter
    int unit_count = 2;               // cascading: fixed cost multiplier
    double min_load_kwel = 4.0;       // cascading: absolute minimum load
    double max_capacity_kwel = 50.0;  // cascading: continuous capacity bound
};

enum class EvMode { none, fixed, optimized };

struct ModelOptions {
    double max_heat_pump_kwth = 0.0;  // 0: derived from peak heat demand
    double max_boiler_kwth = 0.0;     // 0: derived from peak heat demand
    double max_heat_storage_kwh = 200.0;
    double max_battery_kwh = 100.0;
    double ev_charger_rating_kw = 11.0;
    int pv_scheme_count = 19;
    double pv_max_capacity_kwp = 100.0;
};

/// One fully parameterized model instance: building, rules, enabled
/// technologies and the dispatch horizon (a subset of the 8760 hours;
/// annual quantities are scaled by 8760/hours.size()).
struct Scenario {
    std::string name;
    Building building;
    TechnologyParams tech;
    EconomicParams econ;
    PolicyRuleSet policy;
    EmissionParams emis;
    std::set<Tech> enabled;
    ChpModeSpec chp;
    EvMode ev_mode = EvMode::none;
    std::vector<int> hours; // empty: all 8760
    ModelOptions opts;

    bool has(Tech t) const { return enabled.count(t) > 0; }
    /// Whether the landlord trades electricity with the tenants at all.
    bool tem_participation() const {
        return has(Tech::pv) || has(Tech::chp) || has(Tech::battery) || has(Tech::hp);
    }
    std::vector<int> effective_hours() const;
    double annual_scale() const;
};

/// Eq. 2 style discounted investment: initial outlay, reinvestment after each
/// calendar lifetime within the horizon and the prorated residual value.
double discounted_investment_per_unit(const TechCosts& c, const EconomicParams& econ);
double discounted_investment(const TechCosts& c, double capacity, bool chosen,
                             const EconomicParams& econ);

struct BuiltModel {
    MilpModel model;
    std::vector<PvRemunerationScheme> scheme_table;
    YearlyPriceBook price_book;
    int horizon = 0;       // hours in the dispatch slice
    double weight = 1.0;   // 8760 / horizon
    std::vector<int> hour_index;
    double chp_capacity_param = 0.0; // sweep mode only
    double objective_constant = 0.0; // included in model.objective().constant
};

BuiltModel build_model(const Scenario& scenario);

} // namespace temopt
