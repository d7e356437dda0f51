#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "temopt/domain.hpp"

using namespace temopt;

namespace {

Building small_building() {
    Building b;
    b.name = "test";
    b.electricity_demand = HourlyProfile::Constant(kHoursPerYear, 1.0);
    b.heat_demand = HourlyProfile::Constant(kHoursPerYear, 2.0);
    b.cop = HourlyProfile::Constant(kHoursPerYear, 3.0);
    b.pv_yield = HourlyProfile::Constant(kHoursPerYear, 0.1);
    b.roof_area_m2 = 100.0;
    b.living_area_m2 = 300.0;
    b.occupants = 10;
    return b;
}

} // namespace

TEST_CASE("all_techs enumerates each technology once") {
    const auto& ts = all_techs();
    CHECK(ts.size() == 7);
    for (Tech t : ts) CHECK_FALSE(tech_name(t).empty());
    // names are unique
    for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j)
            CHECK(tech_name(ts[i]) != tech_name(ts[j]));
}

TEST_CASE("default parameter sets carry the study's base values") {
    EconomicParams econ = default_economic_params();
    CHECK(econ.horizon_years == 20);
    CHECK(econ.discount_rate == doctest::Approx(0.04));
    CHECK(econ.price_change_rate == doctest::Approx(0.02));
    CHECK(econ.landlord_grid_price == doctest::Approx(0.2973));
    CHECK(econ.tenant_price == doctest::Approx(0.3293));
    CHECK(econ.vat_rate == doctest::Approx(0.19));
    CHECK(econ.rel_levy == doctest::Approx(0.065));
    CHECK(econ.metering_invoicing_cost == doctest::Approx(0.0061));
    CHECK(econ.co2_price_schedule.size() == 20);
    CHECK(econ.co2_price_schedule.front() == doctest::Approx(25.0));
    CHECK(econ.co2_price_schedule.back() == doctest::Approx(75.0));
    // base-year gross gas price = net base + CO2 surcharge
    EmissionParams emis = default_emission_params();
    double gross = econ.gas_base_price +
                   econ.co2_price_schedule[0] * emis.gas_emission_factor * 1e-6;
    CHECK(gross == doctest::Approx(0.0633).epsilon(1e-3));

    TechnologyParams tech = default_technology_params();
    CHECK(tech.chp_el_efficiency == doctest::Approx(0.35));
    CHECK(tech.chp_power_to_heat_ratio == doctest::Approx(0.60));
    CHECK(tech.chp_th_efficiency ==
          doctest::Approx(tech.chp_el_efficiency / tech.chp_power_to_heat_ratio));
    CHECK(tech.boiler_efficiency == doctest::Approx(0.85));
    CHECK(tech.chp_min_load_factor == doctest::Approx(0.40));
    for (Tech t : all_techs()) CHECK_NOTHROW(tech.at(t));

    CHECK(emis.grid_emission_factor == doctest::Approx(401.0));
    CHECK(emis.grid_emission_decline_rate == doctest::Approx(0.06));
    CHECK(emis.gas_emission_factor == doctest::Approx(201.0));
    CHECK(emis.pv_emission_factor == doctest::Approx(0.0));
}

TEST_CASE("policy vintages differ in the documented places") {
    PolicyRuleSet p21 = tel2021_rules();
    PolicyRuleSet p20 = tel2020_rules();
    CHECK(p21.vintage == PolicyVintage::tel2021);
    CHECK(p20.vintage == PolicyVintage::tel2020);

    CHECK(p21.chp_feed_in == doctest::Approx(0.16));
    CHECK(p21.chp_scp == doctest::Approx(0.08));
    CHECK(p21.chp_subsidized_full_load_hours == doctest::Approx(30000.0));
    CHECK(p20.chp_feed_in == doctest::Approx(0.1166));
    CHECK(p20.chp_scp == doctest::Approx(0.0410));
    CHECK(p20.chp_subsidized_full_load_hours == doctest::Approx(45000.0));

    REQUIRE(p21.pv_tiers.size() == 3);
    REQUIRE(p20.pv_tiers.size() == 3);
    CHECK(p21.pv_tiers[0].feed_in == doctest::Approx(0.0856));
    CHECK(p21.pv_tiers[1].feed_in == doctest::Approx(0.0833));
    CHECK(p21.pv_tiers[2].feed_in == doctest::Approx(0.0662));
    CHECK(p21.pv_tiers[0].scp == doctest::Approx(0.0379));
    CHECK(p21.pv_tiers[1].scp == doctest::Approx(0.0352));
    CHECK(p21.pv_tiers[2].scp == doctest::Approx(0.0237));
    CHECK(p20.pv_tiers[0].feed_in == doctest::Approx(0.0903));
    CHECK(p20.pv_tiers[2].scp == doctest::Approx(-0.0111)); // negative third tier

    for (const auto& p : {p21, p20}) {
        CHECK(p.pv_tiers[0].capacity_limit_kwp == doctest::Approx(10.0));
        CHECK(p.pv_tiers[1].capacity_limit_kwp == doctest::Approx(40.0));
        CHECK(p.pv_tiers[2].capacity_limit_kwp == doctest::Approx(750.0));
        CHECK(p.chp_capacity_subsidy_limit_kwel == doctest::Approx(50.0));
        CHECK(p.chp_levy_capacity_limit_kwel == doctest::Approx(10.0));
        CHECK(p.chp_levy_energy_limit_mwh == doctest::Approx(10.0));
        CHECK(p.chp_levy_share == doctest::Approx(0.40));
    }
}

TEST_CASE("validate_scenario accepts a consistent setup") {
    ValidationReport r = validate_scenario(small_building(), default_technology_params(),
                                           default_economic_params(), tel2021_rules(),
                                           default_emission_params());
    CHECK(r.ok());
    CHECK(r.violations.empty());
}

TEST_CASE("validate_scenario flags broken inputs") {
    Building b = small_building();
    TechnologyParams tech = default_technology_params();
    EconomicParams econ = default_economic_params();
    PolicyRuleSet policy = tel2021_rules();
    EmissionParams emis = default_emission_params();

    SUBCASE("wrong profile length") {
        b.electricity_demand = HourlyProfile::Constant(100, 1.0);
        CHECK_FALSE(validate_scenario(b, tech, econ, policy, emis).ok());
    }
    SUBCASE("negative demand") {
        b.heat_demand[42] = -1.0;
        CHECK_FALSE(validate_scenario(b, tech, econ, policy, emis).ok());
    }
    SUBCASE("efficiency outside (0,1]") {
        tech.boiler_efficiency = 0.0;
        CHECK_FALSE(validate_scenario(b, tech, econ, policy, emis).ok());
    }
    SUBCASE("non-increasing pv tiers") {
        policy.pv_tiers[1].capacity_limit_kwp = policy.pv_tiers[0].capacity_limit_kwp;
        CHECK_FALSE(validate_scenario(b, tech, econ, policy, emis).ok());
    }
    SUBCASE("negative feed-in tariff") {
        policy.pv_tiers[0].feed_in = -0.01;
        CHECK_FALSE(validate_scenario(b, tech, econ, policy, emis).ok());
    }
    SUBCASE("horizon of zero years") {
        econ.horizon_years = 0;
        CHECK_FALSE(validate_scenario(b, tech, econ, policy, emis).ok());
    }
    SUBCASE("co2 schedule shorter than horizon") {
        econ.co2_price_schedule.resize(5);
        CHECK_FALSE(validate_scenario(b, tech, econ, policy, emis).ok());
    }
    SUBCASE("violations carry a message") {
        b.cop = HourlyProfile::Constant(kHoursPerYear, -2.0);
        ValidationReport r = validate_scenario(b, tech, econ, policy, emis);
        REQUIRE_FALSE(r.ok());
        CHECK_FALSE(r.violations.front().empty());
    }
}
