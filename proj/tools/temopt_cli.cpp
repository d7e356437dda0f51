// temopt: sizing and dispatch of tenant-electricity multi-energy systems.
//
// Exit codes: 0 success, 1 validation failure, 2 solver failure/infeasible,
// 64 usage error.
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "temopt/io.hpp"

using namespace temopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitUsage = 64;

/// The solver backend is selected via TEMOPT_SOLVER (default: scipy-highs).
int check_backend() {
    const char* env = std::getenv("TEMOPT_SOLVER");
    std::string want = env ? env : "";
    if (!want.empty() && want != make_default_backend()->name()) {
        std::cerr << "error: unknown solver backend '" << want << "' (available: "
                  << make_default_backend()->name() << ")\n";
        return kExitSolver;
    }
    return kExitOk;
}

int validate_config(const RunConfig& cfg, bool print_ok) {
    bool ok = true;
    for (const auto& b : cfg.buildings) {
        auto report = validate_scenario(b, cfg.tech, cfg.econ, cfg.policy, cfg.emis);
        for (const auto& v : report.violations) {
            std::cerr << "validation (" << b.name << "): " << v << "\n";
            ok = false;
        }
    }
    for (const auto& n : cfg.scenarios) {
        try {
            make_component_scenario(n, cfg.buildings.front(), cfg.tech, cfg.econ, cfg.policy,
                                    cfg.emis);
        } catch (const std::exception& e) {
            std::cerr << "validation: " << e.what() << "\n";
            ok = false;
        }
    }
    if (ok && print_ok) std::cout << "configuration valid\n";
    return ok ? kExitOk : kExitValidation;
}

int report_and_exit(const std::vector<ScenarioResult>& results, const RunConfig& cfg) {
    emit_report(results, cfg.output_dir, cfg.dispatch_days);
    bool any_failed = false;
    for (const auto& r : results) {
        std::cout << r.name << ": " << solve_status_name(r.status);
        if (r.usable_status()) std::cout << ", npv " << r.kpi.npv << " EUR";
        if (r.hit_limit) std::cout << " (limit hit, gap " << r.mip_gap << ")";
        std::cout << "\n";
        if (!r.usable_status()) any_failed = true;
    }
    std::cout << "report written to " << cfg.output_dir << "\n";
    return any_failed ? kExitSolver : kExitOk;
}

void dump_models(const RunConfig& cfg, const std::vector<std::string>& names,
                 const std::string& lp_path) {
    std::ofstream f(lp_path);
    if (!f) throw std::runtime_error("cannot write " + lp_path);
    for (const auto& n : names) {
        Scenario s = make_component_scenario(n, cfg.buildings.front(), cfg.tech, cfg.econ,
                                             cfg.policy, cfg.emis, cfg.hours());
        if (s.has(Tech::chp) && s.chp.fixed_capacity_kwel < 0.0)
            s.chp.fixed_capacity_kwel = cfg.engine.chp_capacity_steps.back();
        f << "\\ scenario " << n << "\n" << build_model(s).model.to_lp_format() << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"temopt: tenant electricity system sizing and dispatch"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> scenario_filter;
    std::string dump_lp, dispatch_path, kpi_scenario;
    std::vector<double> chp_caps;
    int cascade_units = 2;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "scenario configuration JSON")->required();
        sub->add_option("--scenario", scenario_filter, "restrict to named scenarios");
    };
    CLI::App* validate = app.add_subcommand("validate", "validate a configuration");
    add_common(validate);
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve the configured scenarios");
    add_common(solve_cmd);
    solve_cmd->add_option("--dump-lp", dump_lp, "export the models in LP format and exit");
    CLI::App* sweep = app.add_subcommand("sweep", "component sweep against the REF baseline");
    add_common(sweep);
    sweep->add_option("--chp-caps", chp_caps, "CHP capacity steps in kWel")->delimiter(',');
    CLI::App* compare = app.add_subcommand("compare-policy", "TEL 2020 vs 2021 comparison");
    add_common(compare);
    CLI::App* cascade = app.add_subcommand("cascade", "cascading CHP mode (SI section C)");
    add_common(cascade);
    cascade->add_option("--units", cascade_units, "number of cascaded CHP units")
        ->check(CLI::Range(1, 3));
    CLI::App* kpi_cmd = app.add_subcommand("kpi", "recompute KPIs from a saved dispatch");
    add_common(kpi_cmd);
    kpi_cmd->add_option("--dispatch", dispatch_path, "dispatch_<name>.json file")->required();
    kpi_cmd->add_option("--kpi-scenario", kpi_scenario, "scenario name of the dispatch")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (int rc = check_backend(); rc != kExitOk) return rc;

    try {
        RunConfig cfg = load_run_config(config_path);
        if (!scenario_filter.empty()) cfg.scenarios = scenario_filter;
        if (!chp_caps.empty()) cfg.engine.chp_capacity_steps = chp_caps;

        if (int rc = validate_config(cfg, app.got_subcommand(validate)); rc != kExitOk)
            return rc;
        if (app.got_subcommand(validate)) return kExitOk;

        if (app.got_subcommand(solve_cmd)) {
            if (!dump_lp.empty()) {
                dump_models(cfg, cfg.scenarios, dump_lp);
                std::cout << "models written to " << dump_lp << "\n";
                return kExitOk;
            }
            std::vector<ScenarioResult> results;
            bool has_ref = std::find(cfg.scenarios.begin(), cfg.scenarios.end(), "REF") !=
                           cfg.scenarios.end();
            if (has_ref) {
                results = run_component_sweep(cfg.scenarios, cfg.buildings.front(), cfg.tech,
                                              cfg.econ, cfg.policy, cfg.emis, cfg.hours(),
                                              cfg.engine);
            } else {
                for (const auto& n : cfg.scenarios)
                    results.push_back(run_scenario(
                        make_component_scenario(n, cfg.buildings.front(), cfg.tech, cfg.econ,
                                                cfg.policy, cfg.emis, cfg.hours()),
                        cfg.engine));
            }
            return report_and_exit(results, cfg);
        }
        if (app.got_subcommand(sweep)) {
            if (std::find(cfg.scenarios.begin(), cfg.scenarios.end(), "REF") ==
                cfg.scenarios.end())
                cfg.scenarios.insert(cfg.scenarios.begin(), "REF");
            auto results =
                run_component_sweep(cfg.scenarios, cfg.buildings.front(), cfg.tech, cfg.econ,
                                    cfg.policy, cfg.emis, cfg.hours(), cfg.engine);
            return report_and_exit(results, cfg);
        }
        if (app.got_subcommand(compare)) {
            auto pairs = run_policy_comparison(cfg.scenarios, cfg.buildings.front(), cfg.tech,
                                               cfg.econ, cfg.emis, cfg.hours(), cfg.engine);
            std::vector<ScenarioResult> flat;
            for (auto& p : pairs) {
                p.tel2020.name = p.name + "_2020";
                p.tel2021.name = p.name + "_2021";
                flat.push_back(p.tel2020);
                flat.push_back(p.tel2021);
            }
            std::filesystem::create_directories(cfg.output_dir);
            std::ofstream pc(std::filesystem::path(cfg.output_dir) / "policy_compare.csv");
            pc << "scenario,npv_2020_eur,npv_2021_eur,delta_npv_eur,cap_pv_2020_kwp,"
                  "cap_pv_2021_kwp,co2_abatement_2020_t,co2_abatement_2021_t\n";
            for (const auto& p : pairs) {
                char buf[256];
                std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                              p.name.c_str(), p.tel2020.kpi.npv, p.tel2021.kpi.npv,
                              p.delta_npv(), p.tel2020.dispatch.capacity.at(Tech::pv),
                              p.tel2021.dispatch.capacity.at(Tech::pv),
                              p.tel2020.kpi.co2_abatement_t, p.tel2021.kpi.co2_abatement_t);
                pc << buf;
            }
            return report_and_exit(flat, cfg);
        }
        if (app.got_subcommand(cascade)) {
            auto results =
                run_cascading_mode(cfg.scenarios, cfg.buildings.front(), cfg.tech, cfg.econ,
                                   cfg.policy, cfg.emis, cascade_units, cfg.hours(), cfg.engine);
            return report_and_exit(results, cfg);
        }
        if (app.got_subcommand(kpi_cmd)) {
            Scenario s = make_component_scenario(kpi_scenario, cfg.buildings.front(), cfg.tech,
                                                 cfg.econ, cfg.policy, cfg.emis, cfg.hours());
            DispatchSchedule d = load_dispatch(dispatch_path);
            CashFlowReport cash = compute_cash_flows(s, d);
            KpiReport k = compute_kpis(s, d, cash);
            nlohmann::json out;
            out["npv_eur"] = k.npv;
            out["scr"] = k.scr ? nlohmann::json(*k.scr) : nlohmann::json(nullptr);
            out["dss"] = k.dss ? nlohmann::json(*k.dss) : nlohmann::json(nullptr);
            out["da"] = k.da ? nlohmann::json(*k.da) : nlohmann::json(nullptr);
            out["gii"] = k.gii ? nlohmann::json(*k.gii) : nlohmann::json(nullptr);
            out["gii_norm"] =
                k.gii_norm ? nlohmann::json(*k.gii_norm) : nlohmann::json(nullptr);
            out["co2_ref_t"] = k.co2_ref_t;
            out["co2_opt_t"] = k.co2_opt_t;
            out["co2_abatement_t"] = k.co2_abatement_t;
            out["co2_export_t"] = k.co2_export_t;
            out["delta_co2_export_t"] = k.delta_co2_export_t;
            out["cf_subs_eur"] = k.subsidies_eur;
            out["cac_subs_eur_per_t"] = k.abatement_cost_eur_per_t
                                            ? nlohmann::json(*k.abatement_cost_eur_per_t)
                                            : nlohmann::json(nullptr);
            std::cout << out.dump(1) << "\n";
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
