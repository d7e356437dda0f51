#include "temopt/remuneration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace temopt {

double blended_pv_price(const std::vector<PvTier>& tiers, double capacity_kwp, bool feed_in) {
    if (capacity_kwp <= 0.0)
        return feed_in ? tiers.front().feed_in : tiers.front().scp;
    double total = 0.0;
    double lower = 0.0;
    for (const auto& tier : tiers) {
        double covered = std::min(capacity_kwp, tier.capacity_limit_kwp) - lower;
        if (covered <= 0.0) break;
        total += covered / capacity_kwp * (feed_in ? tier.feed_in : tier.scp);
        lower = tier.capacity_limit_kwp;
    }
    return total;
}

std::vector<PvRemunerationScheme> build_pv_scheme_table(const PolicyRuleSet& policy,
                                                        const EconomicParams& econ,
                                                        int scheme_count,
                                                        double max_capacity_kwp) {
    if (scheme_count < 1) throw std::invalid_argument("scheme_count must be >= 1");
    if (policy.pv_tiers.size() < 1) throw std::invalid_argument("pv_tiers must not be empty");
    for (size_t k = 0; k + 1 < policy.pv_tiers.size(); ++k)
        if (policy.pv_tiers[k].capacity_limit_kwp >= policy.pv_tiers[k + 1].capacity_limit_kwp)
            throw std::invalid_argument("pv_tiers must have increasing capacity limits");
    if (max_capacity_kwp > policy.pv_tiers.back().capacity_limit_kwp)
        throw std::invalid_argument("max_capacity exceeds last tier limit");

    // Band upper limits {10, 15, 20, ..., 100} for the default 19 schemes:
    // uniform bands of width maxCapacity/(schemeCount+1), with the first band
    // twice as wide.
    double width = max_capacity_kwp / (scheme_count + 1);
    std::vector<PvRemunerationScheme> table;
    double lower = 0.0;
    for (int rs = 1; rs <= scheme_count; ++rs) {
        PvRemunerationScheme s;
        s.index = rs;
        s.capacity_upper_limit_kwp = (rs + 1) * width;
        s.mean_capacity_kwp = 0.5 * (lower + s.capacity_upper_limit_kwp);
        s.feed_in = blended_pv_price(policy.pv_tiers, s.mean_capacity_kwp, true);
        s.scp = blended_pv_price(policy.pv_tiers, s.mean_capacity_kwp, false);
        s.self_consumption_levy =
            s.mean_capacity_kwp > policy.pv_levy_capacity_threshold_kwp ? econ.rel_levy : 0.0;
        lower = s.capacity_upper_limit_kwp;
        table.push_back(s);
    }
    return table;
}

double tenant_fee_rate(const EconomicParams& econ, int year) {
    double tenant_price = econ.tenant_price * std::pow(1.0 + econ.price_change_rate, year);
    double vat_component = tenant_price * econ.vat_rate / (1.0 + econ.vat_rate);
    return econ.rel_levy + vat_component + econ.metering_invoicing_cost;
}

YearlyPriceBook build_price_book(const EconomicParams& econ, const EmissionParams& emis) {
    if ((int)econ.co2_price_schedule.size() < econ.horizon_years)
        throw std::invalid_argument("co2_price_schedule does not cover the horizon");
    YearlyPriceBook book;
    for (int a = 0; a < econ.horizon_years; ++a) {
        double growth = std::pow(1.0 + econ.price_change_rate, a);
        book.landlord_grid_price.push_back(econ.landlord_grid_price * growth);
        book.tenant_price.push_back(econ.tenant_price * growth);
        // CO2 surcharge in EUR/kWh: price [EUR/t] * emission factor [g/kWh] * 1e-6.
        book.gas_price.push_back(econ.gas_base_price * growth +
                                 econ.co2_price_schedule[a] * emis.gas_emission_factor * 1e-6);
        book.tenant_fee_rate.push_back(tenant_fee_rate(econ, a));
        book.rel_levy.push_back(econ.rel_levy); // held constant in nominal terms
    }
    return book;
}

double chp_per_kwh_earnings(ChpEarningMode mode, const EconomicParams& econ,
                            const PolicyRuleSet& policy, const TechnologyParams& tech,
                            double cop, const EmissionParams& emis) {
    double gas = econ.gas_base_price +
                 (econ.co2_price_schedule.empty() ? 0.0 : econ.co2_price_schedule.front()) *
                     emis.gas_emission_factor * 1e-6;
    double heat_value = gas / tech.boiler_efficiency;   // boiler displacement, per kWh_th
    double fuel_cost = gas / tech.chp_el_efficiency;    // per kWh_el
    double sigma = tech.chp_power_to_heat_ratio;
    switch (mode) {
    case ChpEarningMode::feed_in:
        return heat_value / sigma + policy.chp_feed_in - fuel_cost;
    case ChpEarningMode::tenant:
        return heat_value / sigma +
               (econ.tenant_price + policy.chp_scp - tenant_fee_rate(econ, 0)) - fuel_cost;
    case ChpEarningMode::heat_pump:
        return (1.0 / sigma + cop) * heat_value +
               (policy.chp_scp - policy.chp_levy_share * econ.rel_levy) - fuel_cost;
    }
    throw std::logic_error("unreachable");
}

} // namespace temopt
