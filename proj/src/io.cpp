#include "temopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace temopt {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_cell(const std::string& cell, const std::string& file, int line_no,
                  const std::string& column) {
    try {
        size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(file + ":" + std::to_string(line_no) +
                                 ": non-numeric value '" + cell + "' in column " + column);
    }
}

/// Fixed-format, locale-independent decimal with 6 fraction digits.
std::string fmt(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v, double scale = 1.0, int decimals = 6) {
    return v ? fmt(*v * scale, decimals) : std::string();
}

json opt_json(const std::optional<double>& v, double scale = 1.0) {
    if (!v) return nullptr;
    // Round to the CSV's 6-decimal precision so both formats carry the same
    // numbers.
    return std::stod(fmt(*v * scale));
}

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw std::runtime_error("unknown key '" + it.key() + "' in " + where);
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) out += (std::isalnum((unsigned char)c) || c == '_') ? c : '_';
    return out;
}

} // namespace

Building load_profiles(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open profile file " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);

    const std::vector<std::string> mandatory = {"hour", "el_demand_kWh", "heat_demand_kWh",
                                                "cop", "pv_yield_kWh_per_kWp"};
    std::map<std::string, int> col;
    for (size_t i = 0; i < header.size(); ++i) col[header[i]] = (int)i;
    for (const auto& m : mandatory)
        if (!col.count(m)) throw std::runtime_error(path + ": missing mandatory column " + m);
    std::vector<int> ev_cols;
    for (int k = 1;; ++k) {
        auto it = col.find("ev" + std::to_string(k) + "_kWh");
        if (it == col.end()) break;
        ev_cols.push_back(it->second);
    }

    Building b;
    b.electricity_demand = HourlyProfile::Zero(kHoursPerYear);
    b.heat_demand = HourlyProfile::Zero(kHoursPerYear);
    b.cop = HourlyProfile::Zero(kHoursPerYear);
    b.pv_yield = HourlyProfile::Zero(kHoursPerYear);
    for (size_t v = 0; v < ev_cols.size(); ++v)
        b.ev_profiles.push_back(HourlyProfile::Zero(kHoursPerYear));

    int rows = 0;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        int line_no = rows + 2;
        if (rows >= kHoursPerYear)
            throw std::runtime_error(path + ": more than 8760 data rows");
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected " + std::to_string(header.size()) +
                                     " cells, got " + std::to_string(cells.size()));
        auto get = [&](const std::string& name) {
            return parse_cell(cells[col.at(name)], path, line_no, name);
        };
        int hour = (int)get("hour");
        if (hour != rows)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": hour index " + std::to_string(hour) +
                                     " out of sequence (expected " + std::to_string(rows) + ")");
        b.electricity_demand[rows] = get("el_demand_kWh");
        b.heat_demand[rows] = get("heat_demand_kWh");
        b.cop[rows] = get("cop");
        b.pv_yield[rows] = get("pv_yield_kWh_per_kWp");
        for (size_t v = 0; v < ev_cols.size(); ++v)
            b.ev_profiles[v][rows] =
                parse_cell(cells[ev_cols[v]], path, line_no, "ev" + std::to_string(v + 1));
        ++rows;
    }
    if (rows != kHoursPerYear)
        throw std::runtime_error(path + ": expected 8760 data rows, got " +
                                 std::to_string(rows));
    for (int t = 0; t < kHoursPerYear; ++t) {
        auto check = [&](double v, const char* what) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::runtime_error(path + ": negative or non-finite " +
                                         std::string(what) + " at hour " + std::to_string(t));
        };
        check(b.electricity_demand[t], "el_demand_kWh");
        check(b.heat_demand[t], "heat_demand_kWh");
        check(b.cop[t], "cop");
        check(b.pv_yield[t], "pv_yield_kWh_per_kWp");
        for (const auto& ev : b.ev_profiles) check(ev[t], "ev_kWh");
    }
    b.name = fs::path(path).stem().string();
    return b;
}

void write_profiles(const Building& b, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "hour,el_demand_kWh,heat_demand_kWh,cop,pv_yield_kWh_per_kWp";
    for (size_t v = 1; v <= b.ev_profiles.size(); ++v) f << ",ev" << v << "_kWh";
    f << "\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return std::string(buf);
    };
    for (int t = 0; t < kHoursPerYear; ++t) {
        f << t << ',' << num(b.electricity_demand[t]) << ',' << num(b.heat_demand[t]) << ','
          << num(b.cop[t]) << ',' << num(b.pv_yield[t]);
        for (const auto& ev : b.ev_profiles) f << ',' << num(ev[t]);
        f << "\n";
    }
}

void save_dispatch(const DispatchSchedule& d, const std::string& path) {
    json j;
    j["hour_index"] = d.hour_index;
    j["weight"] = d.weight;
    json caps, chosen;
    for (const auto& [t, v] : d.capacity) caps[tech_name(t)] = v;
    for (const auto& [t, v] : d.chosen) chosen[tech_name(t)] = v;
    j["capacity"] = caps;
    j["chosen"] = chosen;
    j["pv_scheme_index"] = d.pv_scheme_index;
    j["pv_scheme"] = {{"index", d.pv_scheme.index},
                      {"capacity_upper_limit_kwp", d.pv_scheme.capacity_upper_limit_kwp},
                      {"mean_capacity_kwp", d.pv_scheme.mean_capacity_kwp},
                      {"feed_in", d.pv_scheme.feed_in},
                      {"scp", d.pv_scheme.scp},
                      {"self_consumption_levy", d.pv_scheme.self_consumption_levy}};
    auto put = [&](const char* k, const std::vector<double>& v) { j["series"][k] = v; };
    put("pv_te", d.pv_te); put("pv_grid", d.pv_grid); put("pv_hp", d.pv_hp);
    put("pv_bat", d.pv_bat); put("chp_el", d.chp_el); put("chp_te", d.chp_te);
    put("chp_grid", d.chp_grid); put("chp_hp", d.chp_hp); put("chp_bat", d.chp_bat);
    put("grid_te", d.grid_te); put("grid_hp", d.grid_hp); put("grid_bat", d.grid_bat);
    put("bat_dis", d.bat_dis); put("bat_lvl", d.bat_lvl); put("hs_chg", d.hs_chg);
    put("hs_dis", d.hs_dis); put("hs_lvl", d.hs_lvl); put("q_boiler", d.q_boiler);
    put("q_hp", d.q_hp); put("ev_charge", d.ev_charge);
    j["annual"] = {{"e_pv_grid", d.e_pv_grid},
                   {"e_pv_te", d.e_pv_te},
                   {"e_pv_self", d.e_pv_self},
                   {"e_chp_te_sub", d.e_chp_te_sub},
                   {"e_chp_grid_sub", d.e_chp_grid_sub},
                   {"e_chp_self_sub", d.e_chp_self_sub},
                   {"e_chp_self_levied", d.e_chp_self_levied}};
    j["objective"] = d.objective;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << j.dump(1);
}

DispatchSchedule load_dispatch(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open dispatch file " + path);
    json j = json::parse(f);
    DispatchSchedule d;
    d.hour_index = j.at("hour_index").get<std::vector<int>>();
    d.weight = j.at("weight").get<double>();
    for (Tech t : all_techs()) {
        d.capacity[t] = j.at("capacity").at(tech_name(t)).get<double>();
        d.chosen[t] = j.at("chosen").at(tech_name(t)).get<bool>();
    }
    d.pv_scheme_index = j.at("pv_scheme_index").get<int>();
    const json& s = j.at("pv_scheme");
    d.pv_scheme.index = s.at("index").get<int>();
    d.pv_scheme.capacity_upper_limit_kwp = s.at("capacity_upper_limit_kwp").get<double>();
    d.pv_scheme.mean_capacity_kwp = s.at("mean_capacity_kwp").get<double>();
    d.pv_scheme.feed_in = s.at("feed_in").get<double>();
    d.pv_scheme.scp = s.at("scp").get<double>();
    d.pv_scheme.self_consumption_levy = s.at("self_consumption_levy").get<double>();
    auto get = [&](const char* k) { return j.at("series").at(k).get<std::vector<double>>(); };
    d.pv_te = get("pv_te"); d.pv_grid = get("pv_grid"); d.pv_hp = get("pv_hp");
    d.pv_bat = get("pv_bat"); d.chp_el = get("chp_el"); d.chp_te = get("chp_te");
    d.chp_grid = get("chp_grid"); d.chp_hp = get("chp_hp"); d.chp_bat = get("chp_bat");
    d.grid_te = get("grid_te"); d.grid_hp = get("grid_hp"); d.grid_bat = get("grid_bat");
    d.bat_dis = get("bat_dis"); d.bat_lvl = get("bat_lvl"); d.hs_chg = get("hs_chg");
    d.hs_dis = get("hs_dis"); d.hs_lvl = get("hs_lvl"); d.q_boiler = get("q_boiler");
    d.q_hp = get("q_hp"); d.ev_charge = get("ev_charge");
    const json& a = j.at("annual");
    d.e_pv_grid = a.at("e_pv_grid").get<double>();
    d.e_pv_te = a.at("e_pv_te").get<double>();
    d.e_pv_self = a.at("e_pv_self").get<double>();
    d.e_chp_te_sub = a.at("e_chp_te_sub").get<double>();
    d.e_chp_grid_sub = a.at("e_chp_grid_sub").get<double>();
    d.e_chp_self_sub = a.at("e_chp_self_sub").get<double>();
    d.e_chp_self_levied = a.at("e_chp_self_levied").get<double>();
    d.objective = j.at("objective").get<double>();
    return d;
}

std::vector<int> RunConfig::hours() const {
    return full_year ? std::vector<int>{} : representative_weeks_hours();
}

namespace {

void apply_economics(const json& j, EconomicParams& e) {
    reject_unknown_keys(j, {"horizon_years", "discount_rate", "price_change_rate",
                            "landlord_grid_price", "tenant_price", "gas_base_price",
                            "co2_price_schedule", "vat_rate", "rel_levy",
                            "metering_invoicing_cost"},
                        "economics");
    if (j.contains("horizon_years")) e.horizon_years = j["horizon_years"].get<int>();
    if (j.contains("discount_rate")) e.discount_rate = j["discount_rate"].get<double>();
    if (j.contains("price_change_rate")) e.price_change_rate = j["price_change_rate"].get<double>();
    if (j.contains("landlord_grid_price"))
        e.landlord_grid_price = j["landlord_grid_price"].get<double>();
    if (j.contains("tenant_price")) e.tenant_price = j["tenant_price"].get<double>();
    if (j.contains("gas_base_price")) e.gas_base_price = j["gas_base_price"].get<double>();
    if (j.contains("co2_price_schedule"))
        e.co2_price_schedule = j["co2_price_schedule"].get<std::vector<double>>();
    if (j.contains("vat_rate")) e.vat_rate = j["vat_rate"].get<double>();
    if (j.contains("rel_levy")) e.rel_levy = j["rel_levy"].get<double>();
    if (j.contains("metering_invoicing_cost"))
        e.metering_invoicing_cost = j["metering_invoicing_cost"].get<double>();
}

void apply_emissions(const json& j, EmissionParams& e) {
    reject_unknown_keys(j, {"grid_emission_factor", "grid_emission_decline_rate",
                            "gas_emission_factor", "pv_emission_factor",
                            "alt_electric_efficiency", "alt_thermal_efficiency"},
                        "emissions");
    if (j.contains("grid_emission_factor"))
        e.grid_emission_factor = j["grid_emission_factor"].get<double>();
    if (j.contains("grid_emission_decline_rate"))
        e.grid_emission_decline_rate = j["grid_emission_decline_rate"].get<double>();
    if (j.contains("gas_emission_factor"))
        e.gas_emission_factor = j["gas_emission_factor"].get<double>();
    if (j.contains("pv_emission_factor"))
        e.pv_emission_factor = j["pv_emission_factor"].get<double>();
    if (j.contains("alt_electric_efficiency"))
        e.alt_electric_efficiency = j["alt_electric_efficiency"].get<double>();
    if (j.contains("alt_thermal_efficiency"))
        e.alt_thermal_efficiency = j["alt_thermal_efficiency"].get<double>();
}

void apply_technology(const json& j, TechnologyParams& tech) {
    std::vector<std::string> allowed = {
        "chp_el_efficiency",    "chp_th_efficiency",   "chp_power_to_heat_ratio",
        "chp_min_load_factor",  "boiler_efficiency",   "battery_charge_efficiency",
        "battery_discharge_efficiency", "battery_hourly_loss", "battery_c_rate",
        "heat_storage_charge_efficiency", "heat_storage_discharge_efficiency",
        "heat_storage_hourly_loss", "heat_storage_c_rate", "pv_area_density_kwp_per_m2"};
    for (Tech t : all_techs()) allowed.push_back(tech_name(t));
    reject_unknown_keys(j, allowed, "technology");
    auto num = [&](const char* k, double& dst) {
        if (j.contains(k)) dst = j[k].get<double>();
    };
    num("chp_el_efficiency", tech.chp_el_efficiency);
    num("chp_th_efficiency", tech.chp_th_efficiency);
    num("chp_power_to_heat_ratio", tech.chp_power_to_heat_ratio);
    num("chp_min_load_factor", tech.chp_min_load_factor);
    num("boiler_efficiency", tech.boiler_efficiency);
    num("battery_charge_efficiency", tech.battery_charge_efficiency);
    num("battery_discharge_efficiency", tech.battery_discharge_efficiency);
    num("battery_hourly_loss", tech.battery_hourly_loss);
    num("battery_c_rate", tech.battery_c_rate);
    num("heat_storage_charge_efficiency", tech.heat_storage_charge_efficiency);
    num("heat_storage_discharge_efficiency", tech.heat_storage_discharge_efficiency);
    num("heat_storage_hourly_loss", tech.heat_storage_hourly_loss);
    num("heat_storage_c_rate", tech.heat_storage_c_rate);
    num("pv_area_density_kwp_per_m2", tech.pv_area_density_kwp_per_m2);
    for (Tech t : all_techs()) {
        if (!j.contains(tech_name(t))) continue;
        const json& c = j[tech_name(t)];
        reject_unknown_keys(c, {"fixed_investment_eur", "variable_investment_eur",
                                "om_rate_eur_per_unit", "lifetime_years", "price_change_rate"},
                            "technology." + tech_name(t));
        TechCosts& tc = tech.costs[t];
        if (c.contains("fixed_investment_eur"))
            tc.fixed_investment_eur = c["fixed_investment_eur"].get<double>();
        if (c.contains("variable_investment_eur"))
            tc.variable_investment_eur = c["variable_investment_eur"].get<double>();
        if (c.contains("om_rate_eur_per_unit"))
            tc.om_rate_eur_per_unit = c["om_rate_eur_per_unit"].get<double>();
        if (c.contains("lifetime_years"))
            tc.calendar_lifetime_years = c["lifetime_years"].get<int>();
        if (c.contains("price_change_rate"))
            tc.price_change_rate = c["price_change_rate"].get<double>();
    }
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file " + path);
    json j = json::parse(f);
    reject_unknown_keys(j, {"buildings", "scenarios", "policy", "hours", "solver", "workers",
                            "chp_capacity_steps", "output_dir", "dispatch_days", "economics",
                            "technology", "emissions"},
                        "config root");

    RunConfig cfg;
    cfg.tech = default_technology_params();
    cfg.econ = default_economic_params();
    cfg.emis = default_emission_params();
    cfg.policy = tel2021_rules();

    fs::path base = fs::path(path).parent_path();
    if (!j.contains("buildings") || !j["buildings"].is_array() || j["buildings"].empty())
        throw std::runtime_error("config must declare a non-empty 'buildings' array");
    for (const json& bj : j["buildings"]) {
        reject_unknown_keys(bj, {"name", "profiles", "roof_area_m2", "living_area_m2",
                                 "occupants"},
                            "buildings[]");
        fs::path pp = bj.at("profiles").get<std::string>();
        if (pp.is_relative()) pp = base / pp;
        Building b = load_profiles(pp.string());
        if (bj.contains("name")) b.name = bj["name"].get<std::string>();
        b.roof_area_m2 = bj.at("roof_area_m2").get<double>();
        if (bj.contains("living_area_m2")) b.living_area_m2 = bj["living_area_m2"].get<double>();
        if (bj.contains("occupants")) b.occupants = bj["occupants"].get<int>();
        cfg.buildings.push_back(std::move(b));
    }

    cfg.scenarios = j.contains("scenarios") ? j["scenarios"].get<std::vector<std::string>>()
                                            : component_scenario_names();
    if (j.contains("policy")) {
        std::string p = j["policy"].get<std::string>();
        if (p == "tel2021") cfg.policy = tel2021_rules();
        else if (p == "tel2020") cfg.policy = tel2020_rules();
        else throw std::runtime_error("unknown policy '" + p + "' (tel2020 or tel2021)");
    }
    if (j.contains("hours")) {
        std::string h = j["hours"].get<std::string>();
        if (h == "full") cfg.full_year = true;
        else if (h == "4weeks") cfg.full_year = false;
        else throw std::runtime_error("unknown hours mode '" + h + "' (full or 4weeks)");
    }
    if (j.contains("solver")) {
        const json& s = j["solver"];
        reject_unknown_keys(s, {"mip_rel_gap", "time_limit_s", "threads", "seed", "verbose"},
                            "solver");
        if (s.contains("mip_rel_gap"))
            cfg.engine.solve.mip_rel_gap = s["mip_rel_gap"].get<double>();
        if (s.contains("time_limit_s"))
            cfg.engine.solve.time_limit_s = s["time_limit_s"].get<double>();
        if (s.contains("threads")) cfg.engine.solve.threads = s["threads"].get<int>();
        if (s.contains("seed")) cfg.engine.solve.seed = s["seed"].get<unsigned>();
        if (s.contains("verbose")) cfg.engine.solve.verbose = s["verbose"].get<bool>();
    }
    if (j.contains("workers")) cfg.engine.workers = j["workers"].get<int>();
    if (j.contains("chp_capacity_steps"))
        cfg.engine.chp_capacity_steps = j["chp_capacity_steps"].get<std::vector<double>>();
    if (j.contains("output_dir")) {
        fs::path od = j["output_dir"].get<std::string>();
        if (od.is_relative()) od = base / od;
        cfg.output_dir = od.string();
    }
    if (j.contains("dispatch_days")) cfg.dispatch_days = j["dispatch_days"].get<std::vector<int>>();
    if (j.contains("economics")) apply_economics(j["economics"], cfg.econ);
    if (j.contains("technology")) apply_technology(j["technology"], cfg.tech);
    if (j.contains("emissions")) apply_emissions(j["emissions"], cfg.emis);
    return cfg;
}

void emit_report(const std::vector<ScenarioResult>& results, const std::string& directory,
                 const std::vector<int>& dispatch_days) {
    fs::create_directories(directory);
    fs::path dir(directory);

    const char* header =
        "scenario,status,mip_gap,npv_eur,delta_npv_eur,d_el_te_mwh,d_el_hp_mwh,d_el_tot_mwh,"
        "cap_pv_kwp,cap_chp_kwel,cap_hp_kwth,cap_hs_kwh,cap_boiler_kwth,cap_bat_kwh,"
        "chp_peak_kwel,chp_full_load_h,scr_pct,dss_pct,da_pct,gii_pct,gii_norm_pct,"
        "co2_ref_t,co2_opt_t,co2_abatement_t,co2_export_t,delta_co2_export_t,"
        "cf_subs_eur,cac_subs_eur_per_t";

    std::ofstream csv(dir / "results.csv");
    if (!csv) throw std::runtime_error("cannot write to output directory " + directory);
    csv << header << "\n";
    json jresults = json::array();
    for (const auto& r : results) {
        bool ok = r.usable_status();
        auto cap = [&](Tech t) {
            auto it = r.dispatch.capacity.find(t);
            return it == r.dispatch.capacity.end() ? 0.0 : it->second;
        };
        csv << r.name << ',' << solve_status_name(r.status) << ',' << fmt(r.mip_gap, 8) << ','
            << (ok ? fmt(r.kpi.npv) : "") << ',' << fmt_opt(r.delta_npv) << ','
            << (ok ? fmt(r.kpi.demand_tenant_mwh) : "") << ','
            << (ok ? fmt(r.kpi.demand_hp_mwh) : "") << ','
            << (ok ? fmt(r.kpi.demand_total_mwh) : "") << ','
            << (ok ? fmt(cap(Tech::pv)) : "") << ',' << (ok ? fmt(cap(Tech::chp)) : "") << ','
            << (ok ? fmt(cap(Tech::hp)) : "") << ',' << (ok ? fmt(cap(Tech::heat_storage)) : "")
            << ',' << (ok ? fmt(cap(Tech::boiler)) : "") << ','
            << (ok ? fmt(cap(Tech::battery)) : "") << ',' << fmt_opt(r.chp_peak_kwel) << ','
            << fmt_opt(r.chp_full_load_hours) << ',' << fmt_opt(r.kpi.scr, 100.0) << ','
            << fmt_opt(r.kpi.dss, 100.0) << ',' << fmt_opt(r.kpi.da, 100.0) << ','
            << fmt_opt(r.kpi.gii, 100.0) << ',' << fmt_opt(r.kpi.gii_norm, 100.0) << ','
            << (ok ? fmt(r.kpi.co2_ref_t) : "") << ',' << (ok ? fmt(r.kpi.co2_opt_t) : "")
            << ',' << (ok ? fmt(r.kpi.co2_abatement_t) : "") << ','
            << (ok ? fmt(r.kpi.co2_export_t) : "") << ','
            << (ok ? fmt(r.kpi.delta_co2_export_t) : "") << ','
            << (ok ? fmt(r.kpi.subsidies_eur) : "") << ','
            << fmt_opt(r.kpi.abatement_cost_eur_per_t) << "\n";

        json row;
        row["scenario"] = r.name;
        row["status"] = solve_status_name(r.status);
        row["mip_gap"] = std::stod(fmt(r.mip_gap, 8));
        auto set = [&](const char* k, double v) { row[k] = std::stod(fmt(v)); };
        auto set_opt = [&](const char* k, const std::optional<double>& v, double s = 1.0) {
            row[k] = opt_json(v, s);
        };
        if (ok) {
            set("npv_eur", r.kpi.npv);
            set_opt("delta_npv_eur", r.delta_npv);
            set("d_el_te_mwh", r.kpi.demand_tenant_mwh);
            set("d_el_hp_mwh", r.kpi.demand_hp_mwh);
            set("d_el_tot_mwh", r.kpi.demand_total_mwh);
            set("cap_pv_kwp", cap(Tech::pv));
            set("cap_chp_kwel", cap(Tech::chp));
            set("cap_hp_kwth", cap(Tech::hp));
            set("cap_hs_kwh", cap(Tech::heat_storage));
            set("cap_boiler_kwth", cap(Tech::boiler));
            set("cap_bat_kwh", cap(Tech::battery));
            set_opt("chp_peak_kwel", r.chp_peak_kwel);
            set_opt("chp_full_load_h", r.chp_full_load_hours);
            set_opt("scr_pct", r.kpi.scr, 100.0);
            set_opt("dss_pct", r.kpi.dss, 100.0);
            set_opt("da_pct", r.kpi.da, 100.0);
            set_opt("gii_pct", r.kpi.gii, 100.0);
            set_opt("gii_norm_pct", r.kpi.gii_norm, 100.0);
            set("co2_ref_t", r.kpi.co2_ref_t);
            set("co2_opt_t", r.kpi.co2_opt_t);
            set("co2_abatement_t", r.kpi.co2_abatement_t);
            set("co2_export_t", r.kpi.co2_export_t);
            set("delta_co2_export_t", r.kpi.delta_co2_export_t);
            set("cf_subs_eur", r.kpi.subsidies_eur);
            set_opt("cac_subs_eur_per_t", r.kpi.abatement_cost_eur_per_t);
        }
        jresults.push_back(std::move(row));
    }
    csv.close();
    {
        std::ofstream jf(dir / "results.json");
        jf << jresults.dump(1) << "\n";
    }

    {
        std::ofstream wf(dir / "waterfall.csv");
        wf << "scenario,category,amount_eur\n";
        for (const auto& r : results) {
            if (!r.usable_status()) continue;
            for (const auto& [cat, amount] : r.cash.discounted_categories())
                wf << r.name << ',' << cat << ',' << fmt(amount) << "\n";
            wf << r.name << ",npv," << fmt(r.cash.npv) << "\n";
        }
    }

    for (const auto& r : results) {
        if (!r.usable_status()) continue;
        save_dispatch(r.dispatch, (dir / ("dispatch_" + sanitize(r.name) + ".json")).string());
    }

    for (int day : dispatch_days) {
        std::ofstream df(dir / ("dispatch_day_" + std::to_string(day) + ".csv"));
        df << "scenario,slice_hour,hour_of_year,pv_te_kWh,pv_grid_kWh,pv_hp_kWh,pv_bat_kWh,"
              "chp_el_kWh,chp_te_kWh,chp_grid_kWh,chp_hp_kWh,chp_bat_kWh,grid_te_kWh,"
              "grid_hp_kWh,grid_bat_kWh,bat_dis_kWh,bat_lvl_kWh,hs_chg_kWh,hs_dis_kWh,"
              "hs_lvl_kWh,q_boiler_kWh,q_hp_kWh,ev_charge_kWh\n";
        for (const auto& r : results) {
            if (!r.usable_status()) continue;
            const auto& d = r.dispatch;
            int T = (int)d.hour_index.size();
            for (int k = 0; k < 24; ++k) {
                int t = day * 24 + k;
                if (t >= T) break;
                df << r.name << ',' << t << ',' << d.hour_index[t];
                for (const std::vector<double>* s :
                     {&d.pv_te, &d.pv_grid, &d.pv_hp, &d.pv_bat, &d.chp_el, &d.chp_te,
                      &d.chp_grid, &d.chp_hp, &d.chp_bat, &d.grid_te, &d.grid_hp, &d.grid_bat,
                      &d.bat_dis, &d.bat_lvl, &d.hs_chg, &d.hs_dis, &d.hs_lvl, &d.q_boiler,
                      &d.q_hp, &d.ev_charge})
                    df << ',' << fmt((*s)[t]);
                df << "\n";
            }
        }
    }
}

} // namespace temopt
