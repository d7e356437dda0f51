#include "temopt/dispatch.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace temopt {

double DispatchSchedule::annual(const std::vector<double>& v) const {
    return weight * std::accumulate(v.begin(), v.end(), 0.0);
}

namespace {

std::vector<double> series(const MilpModel& m, const Solution& sol, const std::string& prefix,
                           int T) {
    std::vector<double> out(T, 0.0);
    for (int t = 0; t < T; ++t) out[t] = sol.value(m, prefix + std::to_string(t));
    return out;
}

} // namespace

DispatchSchedule extract_dispatch(const Scenario& scenario, const BuiltModel& built,
                                  const Solution& solution) {
    if (!solution.usable())
        throw std::runtime_error("cannot extract dispatch from a " +
                                 solve_status_name(solution.status) + " solution");
    const MilpModel& m = built.model;
    const int T = built.horizon;
    DispatchSchedule d;
    d.hour_index = built.hour_index;
    d.weight = built.weight;
    d.objective = solution.objective;

    d.capacity[Tech::pv] = solution.value(m, "cap_pv");
    d.capacity[Tech::chp] = m.has_variable("cap_chp") ? solution.value(m, "cap_chp")
                                                      : built.chp_capacity_param;
    if (!scenario.has(Tech::chp)) d.capacity[Tech::chp] = 0.0;
    d.capacity[Tech::hp] = solution.value(m, "cap_hp");
    d.capacity[Tech::boiler] = solution.value(m, "cap_boiler");
    d.capacity[Tech::heat_storage] = solution.value(m, "cap_hs");
    d.capacity[Tech::battery] = solution.value(m, "cap_bat");
    d.capacity[Tech::inverter] = solution.value(m, "cap_inverter");
    for (Tech t : all_techs()) d.chosen[t] = d.capacity[t] > 1e-6;
    if (m.has_variable("bin_fix_hp")) d.chosen[Tech::hp] = solution.value(m, "bin_fix_hp") > 0.5;
    if (m.has_variable("bin_fix_bat"))
        d.chosen[Tech::battery] = solution.value(m, "bin_fix_bat") > 0.5;
    if (m.has_variable("bin_fix_chp"))
        d.chosen[Tech::chp] = solution.value(m, "bin_fix_chp") > 0.5;

    d.pv_te = series(m, solution, "pv_te_", T);
    d.pv_grid = series(m, solution, "pv_grid_", T);
    d.pv_hp = series(m, solution, "pv_hp_", T);
    d.pv_bat = series(m, solution, "pv_bat_", T);
    d.chp_el = series(m, solution, "chp_el_", T);
    d.chp_te = series(m, solution, "chp_te_", T);
    d.chp_grid = series(m, solution, "chp_grid_", T);
    d.chp_hp = series(m, solution, "chp_hp_", T);
    d.chp_bat = series(m, solution, "chp_bat_", T);
    d.grid_te = series(m, solution, "grid_te_", T);
    d.grid_hp = series(m, solution, "grid_hp_", T);
    d.grid_bat = series(m, solution, "grid_bat_", T);
    d.bat_dis = series(m, solution, "bat_dis_", T);
    d.bat_lvl = series(m, solution, "bat_lvl_", T);
    d.hs_chg = series(m, solution, "hs_chg_", T);
    d.hs_dis = series(m, solution, "hs_dis_", T);
    d.hs_lvl = series(m, solution, "hs_lvl_", T);
    d.q_boiler = series(m, solution, "q_boiler_", T);
    d.q_hp = series(m, solution, "q_hp_", T);

    d.ev_charge.assign(T, 0.0);
    if (scenario.ev_mode == EvMode::optimized) {
        for (size_t v = 0; v < scenario.building.ev_profiles.size(); ++v)
            for (int t = 0; t < T; ++t)
                d.ev_charge[t] +=
                    solution.value(m, "ev" + std::to_string(v) + "_chg_" + std::to_string(t));
    } else if (scenario.ev_mode == EvMode::fixed) {
        for (const auto& p : scenario.building.ev_profiles)
            for (int t = 0; t < T; ++t) d.ev_charge[t] += p[built.hour_index[t]];
    }

    for (const auto& s : built.scheme_table) {
        std::string rn = std::to_string(s.index);
        if (solution.value(m, "bin_pv_rs" + rn) > 0.5) {
            d.pv_scheme_index = s.index;
            d.pv_scheme = s;
            d.e_pv_grid = solution.value(m, "epv_grid_rs" + rn);
            d.e_pv_te = solution.value(m, "epv_te_rs" + rn);
            d.e_pv_self = solution.value(m, "epv_self_rs" + rn);
            break;
        }
    }
    d.e_chp_te_sub = solution.value(m, "echp_te_sub");
    d.e_chp_grid_sub = solution.value(m, "echp_grid_sub");
    d.e_chp_self_sub = solution.value(m, "echp_self_sub");
    d.e_chp_self_levied = solution.value(m, "echp_self_levied");
    return d;
}

double CashFlowReport::subsidies_total() const {
    double s = 0.0;
    for (const auto& y : years) s += y.subsidies();
    return s;
}

std::vector<std::pair<std::string, double>> CashFlowReport::discounted_categories() const {
    std::vector<std::pair<std::string, double>> cats = {
        {"investment", -investment}, {"tenant_sales", 0.0},  {"tenant_fees", 0.0},
        {"grid_purchases", 0.0},     {"pv_feed_in", 0.0},    {"pv_scp", 0.0},
        {"pv_levy", 0.0},            {"chp_feed_in", 0.0},   {"chp_scp", 0.0},
        {"chp_levy", 0.0},           {"chp_gas", 0.0},       {"boiler_gas", 0.0},
        {"heat_revenue", 0.0},       {"om", 0.0}};
    auto at = [&](const std::string& k) -> double& {
        for (auto& [name, v] : cats)
            if (name == k) return v;
        throw std::logic_error("unknown category");
    };
    for (size_t a = 0; a < years.size(); ++a) {
        const CashFlowYear& y = years[a];
        double d = 1.0 / std::pow(1.0 + discount_rate, (double)a);
        at("tenant_sales") += d * y.tenant_sales_revenue;
        at("tenant_fees") -= d * y.tenant_fees;
        at("grid_purchases") -= d * y.grid_purchase_cost;
        at("pv_feed_in") += d * y.pv_feed_in_revenue;
        at("pv_scp") += d * y.pv_scp_revenue;
        at("pv_levy") -= d * y.pv_levy_cost;
        at("chp_feed_in") += d * y.chp_feed_in_revenue;
        at("chp_scp") += d * y.chp_scp_revenue;
        at("chp_levy") -= d * y.chp_levy_cost;
        at("chp_gas") -= d * y.chp_gas_cost;
        at("boiler_gas") -= d * y.boiler_gas_cost;
        at("heat_revenue") += d * y.heat_revenue;
        at("om") -= d * y.om_cost;
    }
    return cats;
}

CashFlowReport compute_cash_flows(const Scenario& scenario, const DispatchSchedule& d) {
    BuiltModel shim;
    shim.price_book = build_price_book(scenario.econ, scenario.emis);
    return compute_cash_flows(scenario, shim, d);
}

CashFlowReport compute_cash_flows(const Scenario& scenario, const BuiltModel& built,
                                  const DispatchSchedule& d) {
    const EconomicParams& econ = scenario.econ;
    const YearlyPriceBook& book = built.price_book;

    // Annual energies (kWh/yr); the representative dispatch year repeats.
    double e_own_te = d.annual(d.pv_te) + d.annual(d.chp_te) + d.annual(d.bat_dis);
    double e_grid_te = d.annual(d.grid_te);
    double e_grid_buy = e_grid_te + d.annual(d.grid_hp) + d.annual(d.grid_bat);
    double e_chp = d.annual(d.chp_el);
    double q_boiler = d.annual(d.q_boiler);
    // Annualized heat demand of the modeled (possibly sliced) year, so the
    // recomputed heat revenue matches the dispatch's weighting.
    double q_te = 0.0;
    for (int h : d.hour_index) q_te += scenario.building.heat_demand[h];
    q_te *= d.weight;

    double om = 0.0;
    for (Tech t : all_techs())
        if (auto it = d.capacity.find(t); it != d.capacity.end())
            om += scenario.tech.at(t).om_rate_eur_per_unit * it->second;

    CashFlowReport report;
    report.discount_rate = econ.discount_rate;
    for (int a = 0; a < econ.horizon_years; ++a) {
        CashFlowYear y;
        y.year = a;
        y.tenant_sales_revenue = (e_own_te + e_grid_te) * book.tenant_price[a];
        y.tenant_fees = e_own_te * book.tenant_fee_rate[a];
        y.grid_purchase_cost = e_grid_buy * book.landlord_grid_price[a];
        y.pv_feed_in_revenue = d.e_pv_grid * d.pv_scheme.feed_in;
        y.pv_scp_revenue = d.e_pv_te * d.pv_scheme.scp;
        y.pv_levy_cost = d.e_pv_self * d.pv_scheme.self_consumption_levy;
        y.chp_feed_in_revenue = d.e_chp_grid_sub * scenario.policy.chp_feed_in;
        y.chp_scp_revenue = (d.e_chp_te_sub + d.e_chp_self_sub) * scenario.policy.chp_scp;
        y.chp_levy_cost = d.e_chp_self_levied * scenario.policy.chp_levy_share * book.rel_levy[a];
        y.chp_gas_cost = e_chp / scenario.tech.chp_el_efficiency * book.gas_price[a];
        y.boiler_gas_cost = q_boiler / scenario.tech.boiler_efficiency * book.gas_price[a];
        y.heat_revenue = q_te / scenario.tech.boiler_efficiency * book.gas_price[a];
        y.om_cost = om;
        report.years.push_back(y);
    }

    for (Tech t : all_techs()) {
        auto it = d.capacity.find(t);
        if (it == d.capacity.end()) continue;
        bool chosen = d.chosen.count(t) ? d.chosen.at(t) : it->second > 1e-6;
        if (!chosen && it->second <= 1e-9) continue;
        double inv = discounted_investment(scenario.tech.at(t), it->second, chosen, econ);
        if (t == Tech::chp && scenario.chp.kind == ChpModeSpec::Kind::cascading && chosen)
            inv += scenario.tech.at(t).fixed_investment_eur * (scenario.chp.unit_count - 1);
        report.investment += inv;
    }

    report.npv = -report.investment;
    for (int a = 0; a < econ.horizon_years; ++a)
        report.npv += report.years[a].net() / std::pow(1.0 + econ.discount_rate, a);
    return report;
}

} // namespace temopt
