#include "temopt/kpi.hpp"

#include <Eigen/Core>
#include <cmath>
#include <numeric>

namespace temopt {

double primary_energy_savings(const TechnologyParams& tech, const EmissionParams& emis) {
    return 1.0 - 1.0 / (tech.chp_th_efficiency / emis.alt_thermal_efficiency +
                        tech.chp_el_efficiency / emis.alt_electric_efficiency);
}

double chp_emission_factor(const TechnologyParams& tech, const EmissionParams& emis) {
    double pes = primary_energy_savings(tech, emis);
    return (1.0 - pes) * (tech.chp_el_efficiency / emis.alt_electric_efficiency) *
           (emis.gas_emission_factor / tech.chp_el_efficiency);
}

std::optional<double> grid_interaction_index(const std::vector<double>& profile) {
    if (profile.size() < 2) return std::nullopt;
    Eigen::Map<const Eigen::ArrayXd> p(profile.data(), (Eigen::Index)profile.size());
    double peak = p.abs().maxCoeff();
    if (peak <= 0.0) return std::nullopt;
    Eigen::ArrayXd norm = p / peak;
    double mean = norm.mean();
    return std::sqrt((norm - mean).square().sum() / (double)(profile.size() - 1));
}

KpiReport compute_kpis(const Scenario& scenario, const DispatchSchedule& d,
                       const CashFlowReport& cash) {
    KpiReport k;
    k.npv = cash.npv;
    k.subsidies_eur = cash.subsidies_total();

    const int T = (int)d.grid_te.size();
    const auto& hours = d.hour_index;

    // Self-consumption indicators (Eq. 15-17). "Self" covers HP and battery
    // destinations; tenant sales count as on-site consumption.
    double gen = d.annual(d.pv_te) + d.annual(d.pv_grid) + d.annual(d.pv_hp) +
                 d.annual(d.pv_bat) + d.annual(d.chp_el);
    double self = gen - d.annual(d.pv_grid) - d.annual(d.chp_grid);
    std::vector<double> demand_el(T, 0.0); // tenants + EV + HP electric input
    for (int t = 0; t < T; ++t) {
        demand_el[t] = scenario.building.electricity_demand[hours[t]] + d.ev_charge[t] +
                       d.pv_hp[t] + d.chp_hp[t] + d.grid_hp[t];
    }
    double demand = d.annual(demand_el);
    k.demand_hp_mwh = (d.annual(d.pv_hp) + d.annual(d.chp_hp) + d.annual(d.grid_hp)) * 1e-3;
    k.demand_total_mwh = demand * 1e-3;
    k.demand_tenant_mwh = k.demand_total_mwh - k.demand_hp_mwh;
    if (gen > 0.0) k.scr = self / gen;
    if (demand > 0.0 && gen > 0.0) {
        k.dss = self / demand;
        k.da = gen / demand;
    }

    // Grid interaction (Eq. 18-19).
    std::vector<double> into_grid(T, 0.0);
    for (int t = 0; t < T; ++t) into_grid[t] = d.pv_grid[t] + d.chp_grid[t];
    k.gii = grid_interaction_index(into_grid);
    auto gii_demand = grid_interaction_index(demand_el);
    if (k.gii && gii_demand && *gii_demand > 0.0) k.gii_norm = *k.gii / *gii_demand;

    // Polluter-pays CO2 over the horizon (Eq. 20-21), tonnes. The reference
    // case imports all electricity and covers heat with the gas boiler.
    const EmissionParams& e = scenario.emis;
    double grid_opt = d.annual(d.grid_te) + d.annual(d.grid_hp) + d.annual(d.grid_bat);
    double gas_opt = d.annual(d.q_boiler) / scenario.tech.boiler_efficiency +
                     d.annual(d.chp_el) / scenario.tech.chp_el_efficiency;
    // Reference demands use the same slice weighting as the optimized case.
    double grid_ref = 0.0, q_ref = 0.0;
    for (int h : hours) {
        grid_ref += scenario.building.electricity_demand[h];
        q_ref += scenario.building.heat_demand[h];
        for (const auto& ev : scenario.building.ev_profiles) grid_ref += ev[h];
    }
    grid_ref *= d.weight;
    double gas_ref = q_ref * d.weight / scenario.tech.boiler_efficiency;

    double ef_sum = 0.0; // sum over years of the declining grid factor
    for (int a = 0; a < scenario.econ.horizon_years; ++a)
        ef_sum += e.grid_emission_factor * std::pow(1.0 - e.grid_emission_decline_rate, a);
    double A = scenario.econ.horizon_years;
    k.co2_opt_t = (grid_opt * ef_sum + gas_opt * e.gas_emission_factor * A) * 1e-6;
    k.co2_ref_t = (grid_ref * ef_sum + gas_ref * e.gas_emission_factor * A) * 1e-6;
    k.co2_abatement_t = k.co2_ref_t - k.co2_opt_t;

    // Exported emissions (Eq. 22-23).
    double export_pv = d.annual(d.pv_grid);
    double export_chp = d.annual(d.chp_grid);
    double ef_chp = chp_emission_factor(scenario.tech, e);
    k.co2_export_t = (export_pv * e.pv_emission_factor + export_chp * ef_chp) * A * 1e-6;
    k.delta_co2_export_t = k.co2_export_t - (export_pv + export_chp) * ef_sum * 1e-6;

    // Abatement cost from the subsidy payer's view (Eq. 24).
    double denom = k.co2_abatement_t - k.delta_co2_export_t;
    if (denom > 1e-9 && k.subsidies_eur > 0.0)
        k.abatement_cost_eur_per_t = k.subsidies_eur / denom;
    return k;
}

} // namespace temopt
