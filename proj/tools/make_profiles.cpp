// Regenerates the bundled synthetic profile CSVs in data/.
#include <cstdio>
#include <filesystem>

#include "temopt/io.hpp"

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir);
    for (const auto& spec : temopt::study_building_specs()) {
        temopt::Building b = temopt::make_synthetic_building(spec);
        std::string path = dir + "/" + spec.name + ".csv";
        temopt::write_profiles(b, path);
        std::printf("%s: el %.1f MWh/a, heat %.1f MWh/a (peak %.1f kW), ev fleet %.1f MWh/a\n",
                    path.c_str(), b.electricity_demand.sum() / 1000.0,
                    b.heat_demand.sum() / 1000.0, b.heat_demand.maxCoeff(), [&] {
                        double s = 0.0;
                        for (const auto& ev : b.ev_profiles) s += ev.sum();
                        return s / 1000.0;
                    }());
    }
    return 0;
}
