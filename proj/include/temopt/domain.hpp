#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace temopt {

constexpr int kHoursPerYear = 8760;

/// One year of hourly values (demand, COP, normalized PV yield, EV load).
/// Units are fixed internally: kW/kWh for energy, dimensionless for COP,
/// kWh per kWp for PV yield.
using HourlyProfile = Eigen::ArrayXd;

enum class Tech { pv, chp, hp, boiler, heat_storage, battery, inverter };

const std::vector<Tech>& all_techs();
std::string tech_name(Tech t);

struct Building {
    std::string name;
    HourlyProfile electricity_demand;       // kWh_el per hour
    HourlyProfile heat_demand;              // kWh_th per hour
    HourlyProfile cop;                      // dimensionless, >= 1 where HP enabled
    HourlyProfile pv_yield;                 // kWh_el per kWp per hour
    double roof_area_m2 = 0.0;
    double living_area_m2 = 0.0;
    int occupants = 0;
    std::vector<HourlyProfile> ev_profiles; // kWh_el per hour, one per vehicle
};

/// Investment and operating parameters for one technology.
struct TechCosts {
    double fixed_investment_eur = 0.0;       // paid once per chosen option
    double variable_investment_eur = 0.0;    // per capacity unit
    double om_rate_eur_per_unit = 0.0;       // per capacity unit per year
    int calendar_lifetime_years = 20;
    double price_change_rate = 0.0;          // fraction per year on variable cost
};

struct TechnologyParams {
    std::map<Tech, TechCosts> costs;

    double chp_el_efficiency = 0.35;
    double chp_th_efficiency = 0.35 / 0.60;
    double chp_power_to_heat_ratio = 0.60;   // sigma = eta_el / eta_th
    double chp_min_load_factor = 0.40;
    double boiler_efficiency = 0.85;

    double battery_charge_efficiency = 0.95;
    double battery_discharge_efficiency = 0.95;
    double battery_hourly_loss = 0.0;
    double battery_c_rate = 1.0;             // kW per kWh capacity

    double heat_storage_charge_efficiency = 0.98;
    double heat_storage_discharge_efficiency = 0.98;
    double heat_storage_hourly_loss = 0.005;
    double heat_storage_c_rate = 1.0;

    double pv_area_density_kwp_per_m2 = 0.167; // 6 m2 per kWp

    const TechCosts& at(Tech t) const { return costs.at(t); }
};

struct EconomicParams {
    int horizon_years = 20;                  // A
    double discount_rate = 0.04;             // i
    double price_change_rate = 0.02;         // r_el, applied to el and gas prices
    double landlord_grid_price = 0.2973;     // EUR/kWh, base year, gross
    double tenant_price = 0.3293;            // EUR/kWh, base year, gross
    double gas_base_price = 0.0582975;       // EUR/kWh, base year, net of CO2 surcharge
    std::vector<double> co2_price_schedule;  // EUR/tCO2, one entry per horizon year
    double vat_rate = 0.19;
    double rel_levy = 0.0650;                // EUR/kWh
    double metering_invoicing_cost = 0.0061; // EUR/kWh
};

struct PvTier {
    double capacity_limit_kwp = 0.0;
    double feed_in = 0.0;   // EUR/kWh
    double scp = 0.0;       // EUR/kWh (may be negative, TEL-2020 third tier)
};

enum class PolicyVintage { tel2020, tel2021 };

struct PolicyRuleSet {
    PolicyVintage vintage = PolicyVintage::tel2021;
    std::vector<PvTier> pv_tiers; // 3 tiers, strictly increasing capacity limits
    double pv_levy_capacity_threshold_kwp = 30.0;
    double pv_levy_energy_threshold_mwh = 30.0;
    double chp_feed_in = 0.1600;              // EUR/kWh
    double chp_scp = 0.0800;                  // EUR/kWh
    double chp_subsidized_full_load_hours = 30000.0; // lifetime total
    double chp_capacity_subsidy_limit_kwel = 50.0;
    double chp_levy_capacity_limit_kwel = 10.0;
    double chp_levy_energy_limit_mwh = 10.0;
    double chp_levy_share = 0.40;             // fraction of REL levy
};

struct EmissionParams {
    double grid_emission_factor = 401.0;      // gCO2/kWh, base year
    double grid_emission_decline_rate = 0.06; // fraction per year
    double gas_emission_factor = 201.0;       // gCO2/kWh
    double pv_emission_factor = 0.0;          // gCO2/kWh
    double alt_electric_efficiency = 0.40;
    double alt_thermal_efficiency = 0.80;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_scenario(const Building& building,
                                   const TechnologyParams& tech,
                                   const EconomicParams& econ,
                                   const PolicyRuleSet& policy,
                                   const EmissionParams& emis);

// Baseline parameter sets matching the study's input tables.
TechnologyParams default_technology_params();
EconomicParams default_economic_params();
EmissionParams default_emission_params();
PolicyRuleSet tel2021_rules();
PolicyRuleSet tel2020_rules();

} // namespace temopt
