#pragma once

#include "temopt/domain.hpp"

namespace temopt {

/// Parameters for the deterministic synthetic profile generator that stands
/// in for the proprietary measured profiles. Targets are annual sums; shapes
/// are plausible seasonal/diurnal patterns with seeded noise.
struct SyntheticBuildingSpec {
    std::string name = "bldg1";
    double annual_electricity_kwh = 29800.0;
    double annual_heat_kwh = 113000.0;
    double roof_area_m2 = 176.0;
    double living_area_m2 = 1096.0;
    int occupants = 48;
    int ev_count = 0;
    double annual_ev_kwh = 7000.0; // fleet total
    double cop_winter = 1.6;
    double cop_summer = 5.0;
    double pv_specific_yield_kwh_per_kwp = 1000.0;
    unsigned seed = 1;
};

Building make_synthetic_building(const SyntheticBuildingSpec& spec);

/// The four building types of the study (heat demand descending; bldg1 also
/// carries the 6-vehicle EV fleet used by the COMBI_EV scenarios).
std::vector<SyntheticBuildingSpec> study_building_specs();

} // namespace temopt
