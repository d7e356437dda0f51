#pragma once

#include "temopt/domain.hpp"

namespace temopt {

/// One band of the discretized PV remuneration table. Tariffs are evaluated
/// at the band's mean capacity by proportional tier pricing.
struct PvRemunerationScheme {
    int index = 0;                   // 1-based
    double capacity_upper_limit_kwp = 0.0;
    double mean_capacity_kwp = 0.0;
    double feed_in = 0.0;            // EUR/kWh
    double scp = 0.0;                // EUR/kWh
    double self_consumption_levy = 0.0; // EUR/kWh, zero below the levy threshold
};

/// Per-year consumer prices and fee rates over the investment horizon.
struct YearlyPriceBook {
    std::vector<double> landlord_grid_price; // EUR/kWh
    std::vector<double> tenant_price;        // EUR/kWh
    std::vector<double> gas_price;           // EUR/kWh, incl. CO2 surcharge
    std::vector<double> tenant_fee_rate;     // EUR/kWh
    std::vector<double> rel_levy;            // EUR/kWh
    int years() const { return (int)tenant_price.size(); }
};

/// Capacity-blended tariff: the tier prices are weighted by the share of the
/// capacity that falls into each tier. Equals the first-tier price for
/// capacities inside the first tier.
double blended_pv_price(const std::vector<PvTier>& tiers, double capacity_kwp, bool feed_in);

std::vector<PvRemunerationScheme> build_pv_scheme_table(const PolicyRuleSet& policy,
                                                        const EconomicParams& econ,
                                                        int scheme_count = 19,
                                                        double max_capacity_kwp = 100.0);

/// Fees avoided when self-generated electricity is sold to tenants:
/// REL levy + VAT component of the gross tenant price + metering & invoicing.
double tenant_fee_rate(const EconomicParams& econ, int year);

YearlyPriceBook build_price_book(const EconomicParams& econ, const EmissionParams& emis);

enum class ChpEarningMode { feed_in, tenant, heat_pump };

/// Marginal earning per electric kWh of CHP output, with the heat co-product
/// valued at boiler displacement cost. Base-year prices.
double chp_per_kwh_earnings(ChpEarningMode mode, const EconomicParams& econ,
                            const PolicyRuleSet& policy, const TechnologyParams& tech,
                            double cop = 0.0, const EmissionParams& emis = EmissionParams{});

} // namespace temopt
