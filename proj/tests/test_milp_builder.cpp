#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "temopt/milp_builder.hpp"

#include <cmath>
#include <numeric>

using namespace temopt;

namespace {

Building flat_building() {
    Building b;
    b.name = "flat";
    b.electricity_demand = HourlyProfile::Constant(kHoursPerYear, 3.0);
    b.heat_demand = HourlyProfile::Constant(kHoursPerYear, 10.0);
    b.cop = HourlyProfile::Constant(kHoursPerYear, 3.0);
    b.pv_yield = HourlyProfile::Zero(kHoursPerYear);
    for (int t = 0; t < kHoursPerYear; ++t)
        if (t % 24 >= 8 && t % 24 <= 16) b.pv_yield[t] = 0.5;
    b.roof_area_m2 = 176.0;
    b.living_area_m2 = 300.0;
    b.occupants = 12;
    return b;
}

Scenario base_scenario(std::set<Tech> enabled) {
    Scenario sc;
    sc.name = "test";
    sc.building = flat_building();
    sc.tech = default_technology_params();
    sc.econ = default_economic_params();
    sc.policy = tel2021_rules();
    sc.emis = default_emission_params();
    sc.enabled = std::move(enabled);
    sc.hours.resize(168);
    std::iota(sc.hours.begin(), sc.hours.end(), 0);
    return sc;
}

double objective_coef(const MilpModel& m, const std::string& var) {
    int id = m.variable_id(var);
    REQUIRE(id >= 0);
    for (const auto& [v, c] : m.objective().terms)
        if (v == id) return c;
    return 0.0;
}

} // namespace

TEST_CASE("discounted investment handles reinvestment and residual value") {
    EconomicParams econ = default_economic_params(); // 20 years at 4%
    TechCosts c;
    c.variable_investment_eur = 1000.0;

    SUBCASE("lifetime equals horizon: single outlay, no residual") {
        c.calendar_lifetime_years = 20;
        CHECK(discounted_investment_per_unit(c, econ) == doctest::Approx(1000.0));
    }
    SUBCASE("lifetime 10: one reinvestment, no residual") {
        c.calendar_lifetime_years = 10;
        double expected = 1000.0 * (1.0 + 1.0 / std::pow(1.04, 10));
        CHECK(discounted_investment_per_unit(c, econ) == doctest::Approx(expected));
    }
    SUBCASE("lifetime 15: reinvestment and 10/15 residual credit") {
        c.calendar_lifetime_years = 15;
        double expected = 1000.0 * (1.0 + 1.0 / std::pow(1.04, 15) -
                                    (10.0 / 15.0) / std::pow(1.04, 20));
        CHECK(discounted_investment_per_unit(c, econ) == doctest::Approx(expected));
    }
    SUBCASE("price change rate raises the reinvestment cost") {
        c.calendar_lifetime_years = 10;
        c.price_change_rate = 0.02;
        double expected = 1000.0 * (1.0 + std::pow(1.02, 10) / std::pow(1.04, 10));
        CHECK(discounted_investment_per_unit(c, econ) == doctest::Approx(expected));
    }
    SUBCASE("fixed cost only counts when the option is chosen") {
        c.calendar_lifetime_years = 20;
        c.fixed_investment_eur = 500.0;
        CHECK(discounted_investment(c, 2.0, true, econ) == doctest::Approx(2500.0));
        CHECK(discounted_investment(c, 2.0, false, econ) == doctest::Approx(2000.0));
        CHECK(discounted_investment(c, 0.0, true, econ) == doctest::Approx(500.0));
        CHECK_THROWS(discounted_investment(c, -1.0, true, econ));
    }
}

TEST_CASE("scenario hour slicing and weight") {
    Scenario sc = base_scenario({Tech::boiler, Tech::heat_storage});
    CHECK(sc.effective_hours().size() == 168);
    CHECK(sc.annual_scale() == doctest::Approx(8760.0 / 168.0));
    sc.hours.clear();
    CHECK(sc.effective_hours().size() == kHoursPerYear);
    CHECK(sc.annual_scale() == doctest::Approx(1.0));
}

TEST_CASE("reference scenario builds a heat-only model") {
    Scenario sc = base_scenario({Tech::boiler, Tech::heat_storage});
    CHECK_FALSE(sc.tem_participation());
    BuiltModel built = build_model(sc);
    const MilpModel& m = built.model;
    CHECK(m.audit().empty());
    CHECK(built.horizon == 168);
    CHECK(built.weight == doctest::Approx(8760.0 / 168.0));

    CHECK(m.has_variable("cap_boiler"));
    CHECK(m.has_variable("cap_hs"));
    CHECK(m.has_variable("q_boiler_0"));
    CHECK(m.has_variable("hs_lvl_167"));
    // no electricity side at all
    CHECK_FALSE(m.has_variable("grid_te_0"));
    CHECK_FALSE(m.has_variable("cap_pv"));
    CHECK_FALSE(m.has_variable("chp_el_0"));
    // one heat balance per hour
    int heat_balances = 0;
    for (const auto& c : m.constraints())
        if (c.name.rfind("heat_balance_", 0) == 0) ++heat_balances;
    CHECK(heat_balances == 168);
}

TEST_CASE("objective coefficients match the discounted price sums") {
    Scenario sc = base_scenario({Tech::pv, Tech::boiler, Tech::heat_storage});
    BuiltModel built = build_model(sc);
    const MilpModel& m = built.model;
    CHECK(m.audit().empty());

    double s_te = 0.0, s_ll = 0.0, s_fee = 0.0, s_gas = 0.0, annuity = 0.0;
    for (int a = 0; a < built.price_book.years(); ++a) {
        double d = 1.0 / std::pow(1.04, a);
        annuity += d;
        s_te += d * built.price_book.tenant_price[a];
        s_ll += d * built.price_book.landlord_grid_price[a];
        s_fee += d * built.price_book.tenant_fee_rate[a];
        s_gas += d * built.price_book.gas_price[a];
    }
    double w = built.weight;
    // grid purchases resold to tenants earn the tenant-landlord spread
    CHECK(objective_coef(m, "grid_te_0") == doctest::Approx(w * (s_te - s_ll)).epsilon(1e-9));
    // own generation sold to tenants earns the price net of fees
    CHECK(objective_coef(m, "pv_te_5") == doctest::Approx(w * (s_te - s_fee)).epsilon(1e-9));
    // boiler output costs discounted gas per thermal kWh
    CHECK(objective_coef(m, "q_boiler_0") ==
          doctest::Approx(-w * s_gas / sc.tech.boiler_efficiency).epsilon(1e-9));
    // pv feed-in is paid on the annual per-scheme energy
    CHECK(objective_coef(m, "epv_grid_rs1") ==
          doctest::Approx(built.scheme_table[0].feed_in * annuity).epsilon(1e-9));
    // capacity coefficient: discounted investment plus O&M annuity, negative
    const TechCosts& pv = sc.tech.at(Tech::pv);
    CHECK(objective_coef(m, "cap_pv") ==
          doctest::Approx(-(discounted_investment_per_unit(pv, sc.econ) +
                            pv.om_rate_eur_per_unit * annuity))
              .epsilon(1e-9));
}

TEST_CASE("pv scheme bands above the roof limit are pruned") {
    Scenario sc = base_scenario({Tech::pv, Tech::boiler, Tech::heat_storage});
    // 176 m2 * 0.167 = 29.4 kWp: bands up to the one containing it survive
    BuiltModel built = build_model(sc);
    const MilpModel& m = built.model;
    CHECK(m.has_variable("bin_pv_rs1"));
    CHECK(m.has_variable("bin_pv_rs5")); // band 25-30 contains 29.4
    CHECK_FALSE(m.has_variable("bin_pv_rs7"));
    CHECK_FALSE(m.has_variable("epv_grid_rs8"));
    // full table still reported for downstream lookups
    CHECK(built.scheme_table.size() == 19);
    // exactly-one-scheme constraint exists
    bool unique_found = false;
    for (const auto& c : m.constraints())
        if (c.name == "pv_scheme_unique") {
            unique_found = true;
            CHECK(c.relation == Relation::eq);
            CHECK(c.rhs == doctest::Approx(1.0));
        }
    CHECK(unique_found);
    // pv capacity bounded by the roof
    int cap = m.variable_id("cap_pv");
    CHECK(m.variables()[cap].upper == doctest::Approx(176.0 * 0.167));
}

TEST_CASE("chp sweep mode fixes the capacity as a parameter") {
    Scenario sc = base_scenario({Tech::chp, Tech::boiler, Tech::heat_storage});
    sc.chp.kind = ChpModeSpec::Kind::sweep;
    sc.chp.fixed_capacity_kwel = 20.0;
    BuiltModel built = build_model(sc);
    const MilpModel& m = built.model;
    CHECK(m.audit().empty());
    CHECK_FALSE(m.has_variable("cap_chp"));
    CHECK(built.chp_capacity_param == doctest::Approx(20.0));
    CHECK(m.has_variable("chp_el_0"));
    CHECK(m.has_variable("bin_chp_0"));
    CHECK(m.has_variable("echp_te_sub"));
    CHECK(m.has_variable("bin_chp_levy"));
    // hourly output bounded by the capacity parameter
    int el = m.variable_id("chp_el_0");
    CHECK(m.variables()[el].upper == doctest::Approx(20.0));

    // semi-continuity rows reference the min load 0.4 * 20 = 8
    bool lo_found = false;
    for (const auto& c : m.constraints())
        if (c.name == "chp_semicontinuity_lo_0") {
            lo_found = true;
            for (const auto& [v, coef] : c.expr.terms)
                if (v == m.variable_id("bin_chp_0")) CHECK(coef == doctest::Approx(-8.0));
        }
    CHECK(lo_found);
}

TEST_CASE("chp above the subsidy limit gets no remunerated flows") {
    Scenario sc = base_scenario({Tech::chp, Tech::boiler, Tech::heat_storage});
    sc.chp.kind = ChpModeSpec::Kind::sweep;
    sc.chp.fixed_capacity_kwel = 60.0; // above the 50 kWel cutoff
    BuiltModel built = build_model(sc);
    const MilpModel& m = built.model;
    int sub = m.variable_id("echp_te_sub");
    CHECK(m.variables()[sub].upper == 0.0);
    CHECK(m.variables()[m.variable_id("echp_grid_sub")].upper == 0.0);
    CHECK(m.variables()[m.variable_id("echp_self_sub")].upper == 0.0);
}

TEST_CASE("cascading mode sizes the chp continuously") {
    Scenario sc = base_scenario({Tech::chp, Tech::boiler, Tech::heat_storage});
    sc.chp.kind = ChpModeSpec::Kind::cascading;
    sc.chp.unit_count = 3;
    sc.chp.min_load_kwel = 4.0;
    BuiltModel built = build_model(sc);
    const MilpModel& m = built.model;
    CHECK(m.audit().empty());
    CHECK(m.has_variable("cap_chp"));
    CHECK(m.has_variable("bin_fix_chp"));
    // fixed cost multiplied by the unit count
    CHECK(objective_coef(m, "bin_fix_chp") ==
          doctest::Approx(-3.0 * sc.tech.at(Tech::chp).fixed_investment_eur));
}

TEST_CASE("ev modes") {
    Scenario sc = base_scenario({Tech::pv, Tech::boiler, Tech::heat_storage});
    HourlyProfile ev = HourlyProfile::Zero(kHoursPerYear);
    for (int t = 0; t < kHoursPerYear; ++t)
        if (t % 24 >= 19 || t % 24 <= 5) ev[t] = 1.2;
    sc.building.ev_profiles.push_back(ev);

    SUBCASE("optimized mode adds bounded charge variables and weekly budgets") {
        sc.ev_mode = EvMode::optimized;
        BuiltModel built = build_model(sc);
        const MilpModel& m = built.model;
        CHECK(m.audit().empty());
        REQUIRE(m.has_variable("ev0_chg_0"));
        // plugged-in hours get the charger rating, others zero
        CHECK(m.variables()[m.variable_id("ev0_chg_0")].upper == doctest::Approx(11.0));
        CHECK(m.variables()[m.variable_id("ev0_chg_12")].upper == 0.0);
        bool week_found = false;
        for (const auto& c : m.constraints())
            if (c.name == "ev0_week_0") {
                week_found = true;
                CHECK(c.relation == Relation::eq);
                CHECK(c.rhs == doctest::Approx(1.2 * 11 * 7)); // 11 plug hours per day
            }
        CHECK(week_found);
    }
    SUBCASE("optimized mode requires whole weeks") {
        sc.ev_mode = EvMode::optimized;
        sc.hours.resize(100);
        CHECK_THROWS(build_model(sc));
    }
    SUBCASE("optimized mode requires profiles") {
        sc.ev_mode = EvMode::optimized;
        sc.building.ev_profiles.clear();
        CHECK_THROWS(build_model(sc));
    }
    SUBCASE("fixed mode folds charging into the demand rhs") {
        sc.ev_mode = EvMode::fixed;
        BuiltModel built = build_model(sc);
        const MilpModel& m = built.model;
        CHECK_FALSE(m.has_variable("ev0_chg_0"));
        for (const auto& c : m.constraints())
            if (c.name == "el_balance_0") CHECK(c.rhs == doctest::Approx(3.0 + 1.2));
    }
}

TEST_CASE("heat balance is present even without tem participation") {
    Scenario ref = base_scenario({Tech::boiler});
    BuiltModel built = build_model(ref);
    int n = 0;
    for (const auto& c : built.model.constraints())
        if (c.name.rfind("heat_balance_", 0) == 0) ++n;
    CHECK(n == 168);
    // without heat storage the storage capacity is pinned at zero
    int hs = built.model.variable_id("cap_hs");
    CHECK(built.model.variables()[hs].upper == 0.0);
}
