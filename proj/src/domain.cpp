#include "temopt/domain.hpp"

#include <cmath>
#include <sstream>

namespace temopt {

const std::vector<Tech>& all_techs() {
    static const std::vector<Tech> techs = {Tech::pv,     Tech::chp,          Tech::hp,
                                            Tech::boiler, Tech::heat_storage, Tech::battery,
                                            Tech::inverter};
    return techs;
}

std::string tech_name(Tech t) {
    switch (t) {
    case Tech::pv: return "pv";
    case Tech::chp: return "chp";
    case Tech::hp: return "hp";
    case Tech::boiler: return "boiler";
    case Tech::heat_storage: return "heat_storage";
    case Tech::battery: return "battery";
    case Tech::inverter: return "inverter";
    }
    return "?";
}

namespace {

void check_profile(const HourlyProfile& p, const std::string& name, bool non_negative,
                   std::vector<std::string>& out) {
    if (p.size() != kHoursPerYear) {
        std::ostringstream os;
        os << name << ": length " << p.size() << ", expected " << kHoursPerYear;
        out.push_back(os.str());
        return;
    }
    if (non_negative) {
        for (int t = 0; t < p.size(); ++t) {
            if (p[t] < 0.0) {
                std::ostringstream os;
                os << name << ": negative value at hour " << t;
                out.push_back(os.str());
                return;
            }
        }
    }
    if (!p.isFinite().all()) out.push_back(name + ": non-finite value");
}

} // namespace

ValidationReport validate_scenario(const Building& b, const TechnologyParams& tech,
                                   const EconomicParams& econ, const PolicyRuleSet& policy,
                                   const EmissionParams& emis) {
    ValidationReport r;
    auto& v = r.violations;

    check_profile(b.electricity_demand, "electricity_demand", true, v);
    check_profile(b.heat_demand, "heat_demand", true, v);
    check_profile(b.cop, "cop", true, v);
    check_profile(b.pv_yield, "pv_yield", true, v);
    for (size_t k = 0; k < b.ev_profiles.size(); ++k)
        check_profile(b.ev_profiles[k], "ev_profile[" + std::to_string(k) + "]", true, v);

    if (b.electricity_demand.size() == kHoursPerYear && b.electricity_demand.sum() <= 0.0)
        v.push_back("electricity_demand: annual sum must be positive");
    if (b.heat_demand.size() == kHoursPerYear && b.heat_demand.sum() <= 0.0)
        v.push_back("heat_demand: annual sum must be positive");
    if (b.roof_area_m2 <= 0.0) v.push_back("roof_area: must be > 0");

    for (Tech t : all_techs()) {
        auto it = tech.costs.find(t);
        if (it == tech.costs.end()) {
            v.push_back("tech_costs: missing entry for " + tech_name(t));
            continue;
        }
        if (it->second.calendar_lifetime_years < 1)
            v.push_back("tech_costs[" + tech_name(t) + "]: lifetime must be >= 1 year");
    }
    auto check_eff = [&](double e, const std::string& name) {
        if (!(e > 0.0 && e <= 1.0)) v.push_back(name + ": efficiency must be in (0,1]");
    };
    check_eff(tech.chp_el_efficiency, "chp_el_efficiency");
    check_eff(tech.chp_th_efficiency, "chp_th_efficiency");
    check_eff(tech.boiler_efficiency, "boiler_efficiency");
    check_eff(tech.battery_charge_efficiency, "battery_charge_efficiency");
    check_eff(tech.battery_discharge_efficiency, "battery_discharge_efficiency");
    check_eff(tech.heat_storage_charge_efficiency, "heat_storage_charge_efficiency");
    check_eff(tech.heat_storage_discharge_efficiency, "heat_storage_discharge_efficiency");
    if (std::abs(tech.chp_power_to_heat_ratio -
                 tech.chp_el_efficiency / tech.chp_th_efficiency) > 1e-6)
        v.push_back("chp_power_to_heat_ratio: inconsistent with el/th efficiencies");
    if (!(tech.chp_min_load_factor > 0.0 && tech.chp_min_load_factor <= 1.0))
        v.push_back("chp_min_load_factor: must be in (0,1]");

    if (econ.horizon_years < 1) v.push_back("horizon_years: must be >= 1");
    if (econ.discount_rate < 0.0) v.push_back("discount_rate: must be >= 0");
    if (econ.tenant_price < econ.landlord_grid_price)
        v.push_back("tenant_price: must be >= landlord_grid_price");
    if ((int)econ.co2_price_schedule.size() < econ.horizon_years)
        v.push_back("co2_price_schedule: must cover all horizon years");

    if (policy.pv_tiers.size() != 3) v.push_back("pv_tiers: exactly 3 tiers required");
    for (size_t k = 0; k + 1 < policy.pv_tiers.size(); ++k)
        if (policy.pv_tiers[k].capacity_limit_kwp >= policy.pv_tiers[k + 1].capacity_limit_kwp)
            v.push_back("pv_tiers: capacity limits must be strictly increasing");
    for (const auto& tier : policy.pv_tiers)
        if (tier.feed_in < 0.0) v.push_back("pv_tiers: feed-in tariff must be >= 0");
    if (policy.chp_feed_in < 0.0 || policy.chp_scp < 0.0)
        v.push_back("chp tariffs: must be >= 0");

    if (emis.grid_emission_factor < 0.0 || emis.gas_emission_factor < 0.0 ||
        emis.pv_emission_factor < 0.0)
        v.push_back("emission factors: must be >= 0");
    if (!(emis.grid_emission_decline_rate >= 0.0 && emis.grid_emission_decline_rate < 1.0))
        v.push_back("grid_emission_decline_rate: must be in [0,1)");
    if (emis.alt_electric_efficiency <= 0.0 || emis.alt_thermal_efficiency <= 0.0)
        v.push_back("alternative generation efficiencies: must be > 0");

    return r;
}

TechnologyParams default_technology_params() {
    TechnologyParams p;
    // Investment figures from the 2018 technology cost base; O&M rates and
    // lifetimes are typical values (per capacity unit and year).
    p.costs[Tech::pv] = {0.0, 1194.39, 17.9, 20, 0.0};
    p.costs[Tech::chp] = {15000.0, 970.30, 48.5, 15, 0.0};
    p.costs[Tech::battery] = {2000.0, 530.84, 10.6, 10, 0.0};
    p.costs[Tech::inverter] = {0.0, 250.0, 5.0, 10, 0.0};
    p.costs[Tech::hp] = {5000.0, 582.0, 14.6, 20, 0.0};
    p.costs[Tech::boiler] = {0.0, 175.0, 3.5, 20, 0.0};
    p.costs[Tech::heat_storage] = {0.0, 30.0, 0.6, 20, 0.0};
    return p;
}

EconomicParams default_economic_params() {
    EconomicParams e;
    // CO2 price path 2021-2040, EUR/tCO2.
    e.co2_price_schedule = {25, 30, 35, 45, 55, 55, 55, 55, 55, 65,
                            65, 65, 65, 65, 75, 75, 75, 75, 75, 75};
    return e;
}

EmissionParams default_emission_params() { return EmissionParams{}; }

PolicyRuleSet tel2021_rules() {
    PolicyRuleSet p;
    p.vintage = PolicyVintage::tel2021;
    p.pv_tiers = {{10.0, 0.0856, 0.0379}, {40.0, 0.0833, 0.0352}, {750.0, 0.0662, 0.0237}};
    p.chp_feed_in = 0.1600;
    p.chp_scp = 0.0800;
    p.chp_subsidized_full_load_hours = 30000.0;
    return p;
}

PolicyRuleSet tel2020_rules() {
    PolicyRuleSet p;
    p.vintage = PolicyVintage::tel2020;
    p.pv_tiers = {{10.0, 0.0903, 0.0053}, {40.0, 0.0878, 0.0028}, {750.0, 0.0689, -0.0111}};
    p.chp_feed_in = 0.1166;
    p.chp_scp = 0.0410;
    p.chp_subsidized_full_load_hours = 45000.0;
    return p;
}

} // namespace temopt
