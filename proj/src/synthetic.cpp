#include "temopt/synthetic.hpp"

#include <cmath>
#include <random>

namespace temopt {

namespace {

constexpr double kPi = 3.14159265358979323846;

int day_of(int t) { return t / 24; }
int hour_of(int t) { return t % 24; }
int weekday_of(int t) { return (t / 24) % 7; } // 0 = Monday by convention

/// Seasonal factor in [-1, 1], +1 mid-January (heating season peak).
double season(int t) { return std::cos(2.0 * kPi * (day_of(t) - 15.0) / 365.0); }

void scale_to_annual(HourlyProfile& p, double target) {
    double s = p.sum();
    if (s > 0.0 && target > 0.0) p *= target / s;
    else p.setZero();
}

} // namespace

Building make_synthetic_building(const SyntheticBuildingSpec& spec) {
    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    Building b;
    b.name = spec.name;
    b.roof_area_m2 = spec.roof_area_m2;
    b.living_area_m2 = spec.living_area_m2;
    b.occupants = spec.occupants;

    // Household electricity: morning and evening peaks, weekend shift, mild
    // winter surplus, multiplicative noise.
    b.electricity_demand = HourlyProfile::Zero(kHoursPerYear);
    for (int t = 0; t < kHoursPerYear; ++t) {
        int h = hour_of(t);
        double daily = 0.28 + 0.30 * std::exp(-0.5 * std::pow((h - 7.0) / 1.5, 2)) +
                       1.15 * std::exp(-0.5 * std::pow((h - 19.5) / 2.2, 2));
        if (h <= 5) daily *= 0.45;
        if (weekday_of(t) >= 5) daily *= 1.08;
        double seasonal = 1.0 + 0.10 * season(t);
        double noise = 0.8 + 0.4 * unif(rng);
        b.electricity_demand[t] = daily * seasonal * noise;
    }
    scale_to_annual(b.electricity_demand, spec.annual_electricity_kwh);

    // Space heat + hot water: strong heating season, morning ramp, cold-snap
    // noise. The shape gives a peak-to-mean ratio near 4.5 so the reference
    // boiler lands in the study's size range.
    b.heat_demand = HourlyProfile::Zero(kHoursPerYear);
    for (int t = 0; t < kHoursPerYear; ++t) {
        int h = hour_of(t);
        double seasonal = std::max(0.0, 0.55 + 1.05 * season(t)); // 0 in high summer
        double daily = 0.75 + 0.55 * std::exp(-0.5 * std::pow((h - 7.0) / 2.5, 2)) +
                       0.30 * std::exp(-0.5 * std::pow((h - 20.0) / 3.0, 2));
        double hot_water = 0.16 * (0.6 + (h >= 6 && h <= 22 ? 0.8 : 0.0));
        double noise = 0.75 + 0.5 * unif(rng);
        b.heat_demand[t] = (seasonal * daily + hot_water) * noise;
    }
    scale_to_annual(b.heat_demand, spec.annual_heat_kwh);

    // Air-source COP: best in summer, worst mid-winter.
    b.cop = HourlyProfile::Zero(kHoursPerYear);
    double cop_mid = 0.5 * (spec.cop_winter + spec.cop_summer);
    double cop_amp = 0.5 * (spec.cop_summer - spec.cop_winter);
    for (int t = 0; t < kHoursPerYear; ++t)
        b.cop[t] = cop_mid - cop_amp * season(t) - 0.15 * unif(rng);

    // PV yield per kWp: daylight bell, seasonal amplitude, weather noise;
    // normalized to the specific annual yield.
    b.pv_yield = HourlyProfile::Zero(kHoursPerYear);
    double weather = 1.0;
    for (int t = 0; t < kHoursPerYear; ++t) {
        int h = hour_of(t);
        if (h == 0) weather = 0.35 + 0.65 * unif(rng); // per-day cloudiness
        double daylen = 0.30 + 0.55 * (0.5 - 0.5 * season(t)); // longer in summer
        double sun = std::exp(-0.5 * std::pow((h - 12.5) / 3.0, 2));
        if (h < 5 || h > 21) sun = 0.0;
        b.pv_yield[t] = sun * daylen * weather;
    }
    scale_to_annual(b.pv_yield, spec.pv_specific_yield_kwh_per_kwp);

    // EV fleet: one repeating weekly pattern per vehicle. The energy of each
    // plug-in session is spread uniformly over the evening-to-morning window,
    // so nonzero hours double as the availability window for optimized
    // charging.
    for (int v = 0; v < spec.ev_count; ++v) {
        HourlyProfile ev = HourlyProfile::Zero(kHoursPerYear);
        std::mt19937 vrng(spec.seed * 7919u + 131u * (unsigned)v);
        std::uniform_real_distribution<double> vu(0.0, 1.0);
        // One weekly template repeated for all 52+ weeks.
        std::vector<double> week(168, 0.0);
        for (int dow = 0; dow < 7; ++dow) {
            if (vu(vrng) < 0.15) continue; // car away for the night
            int arrive = 17 + (int)(4.0 * vu(vrng));        // 17-20 h
            int depart = 6 + (int)(3.0 * vu(vrng));         // next day 6-8 h
            double session = 1.5 + 3.5 * vu(vrng);          // kWh
            int window = (24 - arrive) + depart;
            for (int k = 0; k < window; ++k)
                week[(dow * 24 + arrive + k) % 168] += session / window;
        }
        for (int t = 0; t < kHoursPerYear; ++t) ev[t] = week[t % 168];
        scale_to_annual(ev, spec.annual_ev_kwh / spec.ev_count);
        b.ev_profiles.push_back(std::move(ev));
    }
    return b;
}

std::vector<SyntheticBuildingSpec> study_building_specs() {
    std::vector<SyntheticBuildingSpec> specs(4);
    specs[0] = {.name = "bldg1", .annual_electricity_kwh = 29800.0,
                .annual_heat_kwh = 113000.0, .roof_area_m2 = 176.0,
                .living_area_m2 = 376.5, .occupants = 24, .ev_count = 6, .seed = 1};
    specs[1] = {.name = "bldg2", .annual_electricity_kwh = 31500.0,
                .annual_heat_kwh = 100900.0, .roof_area_m2 = 166.8,
                .living_area_m2 = 446.8, .occupants = 29, .ev_count = 0, .seed = 2};
    specs[2] = {.name = "bldg3", .annual_electricity_kwh = 31500.0,
                .annual_heat_kwh = 58000.0, .roof_area_m2 = 125.6,
                .living_area_m2 = 431.3, .occupants = 26, .ev_count = 0, .seed = 3};
    specs[3] = {.name = "bldg4", .annual_electricity_kwh = 30000.0,
                .annual_heat_kwh = 40400.0, .roof_area_m2 = 125.6,
                .living_area_m2 = 431.3, .occupants = 26, .ev_count = 0, .seed = 4};
    return specs;
}

} // namespace temopt
