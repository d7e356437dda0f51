#pragma once

#include "temopt/milp_builder.hpp"
#include "temopt/solver.hpp"

namespace temopt {

/// Solved system design and hourly operation. Hourly series are zero-filled
/// for disabled technologies so downstream consumers need no branching.
struct DispatchSchedule {
    std::vector<int> hour_index;
    double weight = 1.0; // 8760 / hours

    std::map<Tech, double> capacity;  // kWp / kW_el / kW_th / kWh by tech
    std::map<Tech, bool> chosen;      // fixed-cost binary outcome
    int pv_scheme_index = 0;          // 0 when PV disabled
    PvRemunerationScheme pv_scheme{};

    std::vector<double> pv_te, pv_grid, pv_hp, pv_bat;
    std::vector<double> chp_el, chp_te, chp_grid, chp_hp, chp_bat;
    std::vector<double> grid_te, grid_hp, grid_bat;
    std::vector<double> bat_dis, bat_lvl, hs_chg, hs_dis, hs_lvl;
    std::vector<double> q_boiler, q_hp, ev_charge;

    // Annual remuneration-class energies (kWh/yr) read from the solution.
    double e_pv_grid = 0.0, e_pv_te = 0.0, e_pv_self = 0.0;
    double e_chp_te_sub = 0.0, e_chp_grid_sub = 0.0, e_chp_self_sub = 0.0;
    double e_chp_self_levied = 0.0;

    double objective = 0.0; // solver NPV, EUR

    /// Annualized sum of an hourly series (kWh/yr).
    double annual(const std::vector<double>& v) const;
};

DispatchSchedule extract_dispatch(const Scenario& scenario, const BuiltModel& built,
                                  const Solution& solution);

/// One year of nominal cash flows, disaggregated for reporting.
struct CashFlowYear {
    int year = 0;
    double tenant_sales_revenue = 0.0; // all electricity sold to tenants
    double tenant_fees = 0.0;          // levy + VAT + M&I on self-generated sales
    double grid_purchase_cost = 0.0;
    double pv_feed_in_revenue = 0.0;
    double pv_scp_revenue = 0.0;
    double pv_levy_cost = 0.0;
    double chp_feed_in_revenue = 0.0;
    double chp_scp_revenue = 0.0;
    double chp_levy_cost = 0.0;
    double chp_gas_cost = 0.0;
    double boiler_gas_cost = 0.0;
    double heat_revenue = 0.0;
    double om_cost = 0.0;

    double net() const {
        return tenant_sales_revenue - tenant_fees - grid_purchase_cost + pv_feed_in_revenue +
               pv_scp_revenue - pv_levy_cost + chp_feed_in_revenue + chp_scp_revenue -
               chp_levy_cost - chp_gas_cost - boiler_gas_cost + heat_revenue - om_cost;
    }
    double subsidies() const {
        return pv_feed_in_revenue + pv_scp_revenue + chp_feed_in_revenue + chp_scp_revenue;
    }
};

struct CashFlowReport {
    std::vector<CashFlowYear> years;
    double investment = 0.0;    // discounted, Eq.-2 style, EUR
    double npv = 0.0;           // EUR
    double discount_rate = 0.0; // copied from the scenario for reporting
    double subsidies_total() const;
    /// Discounted totals per cash-flow category (signed); together with
    /// -investment they sum to the NPV.
    std::vector<std::pair<std::string, double>> discounted_categories() const;
};

/// Recompute the NPV from the dispatch with an explicit year-by-year loop.
/// Deliberately independent of the MILP objective coefficients; agreement of
/// `npv` with the solver objective cross-checks the model build.
CashFlowReport compute_cash_flows(const Scenario& scenario, const BuiltModel& built,
                                  const DispatchSchedule& dispatch);
/// Overload that derives the price book from the scenario alone (used when
/// recomputing KPIs from a saved dispatch).
CashFlowReport compute_cash_flows(const Scenario& scenario, const DispatchSchedule& dispatch);

} // namespace temopt
