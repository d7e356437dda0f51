#pragma once

#include <optional>

#include "temopt/dispatch.hpp"

namespace temopt {

/// KPIs of one solved scenario. Ratio indicators are absent (nullopt) when
/// their denominator is zero, e.g. SCR without any generator.
struct KpiReport {
    double npv = 0.0; // EUR

    std::optional<double> scr;      // self-consumption rate, fraction
    std::optional<double> dss;      // degree of self-sufficiency, fraction
    std::optional<double> da;       // degree of autonomy, fraction
    std::optional<double> gii;      // grid interaction index, fraction
    std::optional<double> gii_norm; // GII relative to the demand profile's

    double co2_opt_t = 0.0;          // emitted over the horizon, tonnes
    double co2_ref_t = 0.0;          // reference case (grid + boiler only)
    double co2_abatement_t = 0.0;    // ref - opt
    double co2_export_t = 0.0;       // embodied in exported electricity
    double delta_co2_export_t = 0.0; // exported minus displaced grid emissions
    std::optional<double> abatement_cost_eur_per_t; // cac_subs
    double subsidies_eur = 0.0;      // nominal total over the horizon

    double demand_tenant_mwh = 0.0; // annual, incl. EV charging
    double demand_hp_mwh = 0.0;     // annual electric HP input
    double demand_total_mwh = 0.0;
};

/// Allocated emission factor of CHP electricity via the primary-energy-savings
/// split against separate reference generation (g CO2 / kWh_el).
double primary_energy_savings(const TechnologyParams& tech, const EmissionParams& emis);
double chp_emission_factor(const TechnologyParams& tech, const EmissionParams& emis);

/// Sample standard deviation of a max-normalized profile; absent when the
/// profile is identically zero.
std::optional<double> grid_interaction_index(const std::vector<double>& profile);

KpiReport compute_kpis(const Scenario& scenario, const DispatchSchedule& dispatch,
                       const CashFlowReport& cash);

} // namespace temopt
