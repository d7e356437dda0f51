#include "temopt/milp_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace temopt {

std::vector<int> Scenario::effective_hours() const {
    if (!hours.empty()) return hours;
    std::vector<int> all(kHoursPerYear);
    std::iota(all.begin(), all.end(), 0);
    return all;
}

double Scenario::annual_scale() const {
    size_t n = hours.empty() ? kHoursPerYear : hours.size();
    return (double)kHoursPerYear / (double)n;
}

double discounted_investment_per_unit(const TechCosts& c, const EconomicParams& econ) {
    const int A = econ.horizon_years;
    const int clt = c.calendar_lifetime_years;
    double total = c.variable_investment_eur;
    for (int k = 1; k * clt < A; ++k) {
        double price = c.variable_investment_eur * std::pow(1.0 + c.price_change_rate, k * clt);
        total += price / std::pow(1.0 + econ.discount_rate, k * clt);
    }
    // Residual value of the last installed unit at the end of the horizon.
    int cycles = (A + clt - 1) / clt; // ceil(A/clt)
    double clt_rem = (double)(cycles * clt - A);
    double price_A = c.variable_investment_eur * std::pow(1.0 + c.price_change_rate, A);
    total -= clt_rem / clt * price_A / std::pow(1.0 + econ.discount_rate, A);
    return total;
}

double discounted_investment(const TechCosts& c, double capacity, bool chosen,
                             const EconomicParams& econ) {
    if (capacity < 0.0) throw std::invalid_argument("capacity must be >= 0");
    double total = chosen ? c.fixed_investment_eur : 0.0;
    total += discounted_investment_per_unit(c, econ) * capacity;
    return total;
}

namespace {

std::string ts(int t) { return std::to_string(t); }

struct DiscountedSums {
    double annuity = 0.0;   // sum of discount factors
    double tenant = 0.0;    // EUR/kWh, discounted over horizon
    double tenant_net = 0.0;// tenant price minus avoided fees
    double fees = 0.0;
    double landlord = 0.0;
    double gas = 0.0;
    double levy = 0.0;
};

DiscountedSums discounted_price_sums(const YearlyPriceBook& book, const EconomicParams& econ) {
    DiscountedSums s;
    for (int a = 0; a < book.years(); ++a) {
        double d = 1.0 / std::pow(1.0 + econ.discount_rate, a);
        s.annuity += d;
        s.tenant += d * book.tenant_price[a];
        s.fees += d * book.tenant_fee_rate[a];
        s.landlord += d * book.landlord_grid_price[a];
        s.gas += d * book.gas_price[a];
        s.levy += d * book.rel_levy[a];
    }
    s.tenant_net = s.tenant - s.fees;
    return s;
}

class Builder {
public:
    explicit Builder(const Scenario& sc) : sc_(sc) {
        out_.hour_index = sc.effective_hours();
        T_ = (int)out_.hour_index.size();
        w_ = sc.annual_scale();
        out_.horizon = T_;
        out_.weight = w_;
        out_.price_book = build_price_book(sc.econ, sc.emis);
        sums_ = discounted_price_sums(out_.price_book, sc.econ);
        slice(sc.building.electricity_demand, d_el_);
        slice(sc.building.heat_demand, q_te_);
        slice(sc.building.cop, cop_);
        slice(sc.building.pv_yield, yield_);
        chp_enabled_ = sc.has(Tech::chp) && sc.chp.kind != ChpModeSpec::Kind::none &&
                       !(sc.chp.kind == ChpModeSpec::Kind::sweep &&
                         sc.chp.fixed_capacity_kwel <= 0.0);
    }

    BuiltModel build() {
        add_heat_side();
        if (sc_.tem_participation()) add_electricity_side();
        add_heat_balance();
        finish_objective();
        return std::move(out_);
    }

private:
    void slice(const HourlyProfile& p, std::vector<double>& out) const {
        out.resize(T_);
        for (int t = 0; t < T_; ++t) out[t] = p[out_.hour_index[t]];
    }

    MilpModel& m() { return out_.model; }

    double cap_coef(Tech tech) const {
        // Per-unit contribution of capacity to the objective: discounted
        // variable investment plus O&M over the horizon, both negative.
        const TechCosts& c = sc_.tech.at(tech);
        return -(discounted_investment_per_unit(c, sc_.econ) +
                 c.om_rate_eur_per_unit * sums_.annuity);
    }

    // ---- heat side -------------------------------------------------------

    void add_heat_side() {
        double peak_heat = *std::max_element(q_te_.begin(), q_te_.end());
        double max_boiler = sc_.opts.max_boiler_kwth > 0 ? sc_.opts.max_boiler_kwth : peak_heat;
        double max_hp = sc_.opts.max_heat_pump_kwth > 0 ? sc_.opts.max_heat_pump_kwth : peak_heat;

        cap_boiler_ = m().add_variable("cap_boiler", VarKind::continuous, 0.0,
                                       sc_.has(Tech::boiler) ? max_boiler : 0.0, "capacity");
        m().objective().add(cap_boiler_, cap_coef(Tech::boiler));

        double max_hs = sc_.has(Tech::heat_storage) ? sc_.opts.max_heat_storage_kwh : 0.0;
        cap_hs_ = m().add_variable("cap_hs", VarKind::continuous, 0.0, max_hs, "capacity");
        m().objective().add(cap_hs_, cap_coef(Tech::heat_storage));

        if (sc_.has(Tech::hp)) {
            cap_hp_ = m().add_variable("cap_hp", VarKind::continuous, 0.0, max_hp, "capacity");
            m().objective().add(cap_hp_, cap_coef(Tech::hp));
            bin_hp_ = m().add_variable("bin_fix_hp", VarKind::binary, 0.0, 1.0, "binary");
            m().objective().add(bin_hp_, -sc_.tech.at(Tech::hp).fixed_investment_eur);
            LinearExpr link;
            link.add(cap_hp_, 1.0);
            link.add(bin_hp_, -max_hp);
            m().add_constraint("hp_fix_link", link, Relation::le, 0.0);
        }

        q_boiler_.resize(T_);
        hs_chg_.resize(T_);
        hs_dis_.resize(T_);
        hs_lvl_.resize(T_);
        for (int t = 0; t < T_; ++t) {
            q_boiler_[t] = m().add_variable("q_boiler_" + ts(t), VarKind::continuous, 0.0, kInf,
                                            "flow");
            hs_chg_[t] = m().add_variable("hs_chg_" + ts(t), VarKind::continuous, 0.0, kInf,
                                          "flow");
            hs_dis_[t] = m().add_variable("hs_dis_" + ts(t), VarKind::continuous, 0.0, kInf,
                                          "flow");
            hs_lvl_[t] = m().add_variable("hs_lvl_" + ts(t), VarKind::continuous, 0.0, kInf,
                                          "level");
        }
        for (int t = 0; t < T_; ++t) {
            LinearExpr cap;
            cap.add(q_boiler_[t], 1.0);
            cap.add(cap_boiler_, -1.0);
            m().add_constraint("boiler_cap_" + ts(t), cap, Relation::le, 0.0);

            for (auto [var, label] :
                 {std::pair{hs_lvl_[t], "hs_lvl_cap_"}, {hs_chg_[t], "hs_chg_cap_"},
                  {hs_dis_[t], "hs_dis_cap_"}}) {
                LinearExpr e;
                e.add(var, 1.0);
                e.add(cap_hs_, var == hs_lvl_[t] ? -1.0 : -sc_.tech.heat_storage_c_rate);
                m().add_constraint(label + ts(t), e, Relation::le, 0.0);
            }

            // level(t+1) = level(t)*(1-loss) + eta_c*chg - dis/eta_d, cyclic.
            int tn = (t + 1) % T_;
            LinearExpr dyn;
            dyn.add(hs_lvl_[tn], 1.0);
            dyn.add(hs_lvl_[t], -(1.0 - sc_.tech.heat_storage_hourly_loss));
            dyn.add(hs_chg_[t], -sc_.tech.heat_storage_charge_efficiency);
            dyn.add(hs_dis_[t], 1.0 / sc_.tech.heat_storage_discharge_efficiency);
            m().add_constraint("hs_dynamics_" + ts(t), dyn, Relation::eq, 0.0);
        }

        // Boiler gas cost; heat revenue Q_te * gas/eta_boiler is a constant.
        double gas_per_kwh_th = sums_.gas / sc_.tech.boiler_efficiency;
        double q_te_sum = std::accumulate(q_te_.begin(), q_te_.end(), 0.0);
        m().objective().constant += w_ * q_te_sum * gas_per_kwh_th;
        for (int t = 0; t < T_; ++t) m().objective().add(q_boiler_[t], -w_ * gas_per_kwh_th);
    }

    // ---- electricity side ------------------------------------------------

    void add_electricity_side() {
        if (sc_.has(Tech::pv)) add_pv();
        if (chp_enabled_) add_chp();
        if (sc_.has(Tech::battery)) add_battery();
        add_grid_and_ev();
        add_balances();
    }

    void add_pv() {
        out_.scheme_table = build_pv_scheme_table(sc_.policy, sc_.econ, sc_.opts.pv_scheme_count,
                                                  sc_.opts.pv_max_capacity_kwp);
        double roof_bound = sc_.building.roof_area_m2 * sc_.tech.pv_area_density_kwp_per_m2;
        double cap_bound = std::min(roof_bound, sc_.opts.pv_max_capacity_kwp);
        cap_pv_ = m().add_variable("cap_pv", VarKind::continuous, 0.0, cap_bound, "capacity");
        m().objective().add(cap_pv_, cap_coef(Tech::pv));

        pv_te_.resize(T_);
        pv_grid_.resize(T_);
        pv_hp_.resize(T_);
        pv_bat_.resize(T_);
        for (int t = 0; t < T_; ++t) {
            pv_te_[t] = m().add_variable("pv_te_" + ts(t), VarKind::continuous, 0.0, kInf, "flow");
            pv_grid_[t] = m().add_variable("pv_grid_" + ts(t), VarKind::continuous, 0.0, kInf,
                                           "flow");
            if (sc_.has(Tech::hp))
                pv_hp_[t] = m().add_variable("pv_hp_" + ts(t), VarKind::continuous, 0.0, kInf,
                                             "flow");
            if (sc_.has(Tech::battery))
                pv_bat_[t] = m().add_variable("pv_bat_" + ts(t), VarKind::continuous, 0.0, kInf,
                                              "flow");
            // Hourly generation balance: all destinations sum to cap * yield.
            LinearExpr gen;
            gen.add(pv_te_[t], 1.0);
            gen.add(pv_grid_[t], 1.0);
            if (pv_hp_[t]) gen.add(*pv_hp_[t], 1.0);
            if (pv_bat_[t]) gen.add(*pv_bat_[t], 1.0);
            gen.add(cap_pv_, -yield_[t]);
            m().add_constraint("pv_generation_" + ts(t), gen, Relation::eq, 0.0);
            m().objective().add(pv_te_[t], w_ * sums_.tenant_net);
        }

        // Remuneration scheme selection (one scheme, capacity within its band,
        // annual per-scheme energies gated by the scheme binary).
        double annual_yield = 0.0;
        for (int t = 0; t < T_; ++t) annual_yield += yield_[t];
        annual_yield *= w_;

        LinearExpr unique;
        LinearExpr cap_limit;
        cap_limit.add(cap_pv_, 1.0);
        int n = (int)out_.scheme_table.size();
        bin_pv_.resize(n);
        epv_grid_.resize(n);
        epv_te_.resize(n);
        epv_self_.resize(n);
        LinearExpr grid_split, te_split, self_split;
        for (int r = 0; r < n; ++r) {
            const auto& s = out_.scheme_table[r];
            // Schemes whose whole band lies above the installable capacity are
            // dominated (larger bands pay less); skip them to keep the model tight.
            if (r > 0 &&
                out_.scheme_table[r - 1].capacity_upper_limit_kwp >= cap_bound - 1e-9)
                break;
            std::string rn = std::to_string(s.index);
            bin_pv_[r] = m().add_variable("bin_pv_rs" + rn, VarKind::binary, 0.0, 1.0, "scheme");
            unique.add(bin_pv_[r], 1.0);
            cap_limit.add(bin_pv_[r], -s.capacity_upper_limit_kwp);

            double big_m = std::min(s.capacity_upper_limit_kwp, cap_bound) * annual_yield;
            epv_grid_[r] = m().add_variable("epv_grid_rs" + rn, VarKind::continuous, 0.0, kInf,
                                            "annual");
            epv_te_[r] = m().add_variable("epv_te_rs" + rn, VarKind::continuous, 0.0, kInf,
                                          "annual");
            epv_self_[r] = m().add_variable("epv_self_rs" + rn, VarKind::continuous, 0.0, kInf,
                                            "annual");
            for (auto [var, cls] : {std::pair{epv_grid_[r], "feedin"}, {epv_te_[r], "scp"},
                                    {epv_self_[r], "levy"}}) {
                LinearExpr gate;
                gate.add(var, 1.0);
                gate.add(bin_pv_[r], -big_m);
                m().add_constraint(std::string("pv_scheme_gate_") + cls + "_rs" + rn, gate,
                                   Relation::le, 0.0);
            }
            grid_split.add(epv_grid_[r], 1.0);
            te_split.add(epv_te_[r], 1.0);
            self_split.add(epv_self_[r], 1.0);

            m().objective().add(epv_grid_[r], s.feed_in * sums_.annuity);
            m().objective().add(epv_te_[r], s.scp * sums_.annuity);
            m().objective().add(epv_self_[r], -s.self_consumption_levy * sums_.annuity);
        }
        m().add_constraint("pv_scheme_unique", unique, Relation::eq, 1.0);
        m().add_constraint("pv_cap_scheme_limit", cap_limit, Relation::le, 0.0);

        // Annual class totals must match the hourly flows of the chosen scheme.
        for (int t = 0; t < T_; ++t) {
            grid_split.add(pv_grid_[t], -w_);
            te_split.add(pv_te_[t], -w_);
            if (pv_hp_[t]) self_split.add(*pv_hp_[t], -w_);
            if (pv_bat_[t]) self_split.add(*pv_bat_[t], -w_);
        }
        m().add_constraint("pv_annual_feedin", grid_split, Relation::eq, 0.0);
        m().add_constraint("pv_annual_tenant", te_split, Relation::eq, 0.0);
        m().add_constraint("pv_annual_self", self_split, Relation::eq, 0.0);
    }

    void add_chp() {
        const bool cascading = sc_.chp.kind == ChpModeSpec::Kind::cascading;
        double cap_param = sc_.chp.fixed_capacity_kwel;
        double cap_upper = cascading ? sc_.chp.max_capacity_kwel : cap_param;
        out_.chp_capacity_param = cascading ? 0.0 : cap_param;

        const TechCosts& cc = sc_.tech.at(Tech::chp);
        if (cascading) {
            cap_chp_ = m().add_variable("cap_chp", VarKind::continuous, 0.0, cap_upper,
                                        "capacity");
            m().objective().add(*cap_chp_, cap_coef(Tech::chp));
            bin_chp_fix_ = m().add_variable("bin_fix_chp", VarKind::binary, 0.0, 1.0, "binary");
            m().objective().add(*bin_chp_fix_,
                                -cc.fixed_investment_eur * sc_.chp.unit_count);
            LinearExpr link;
            link.add(*cap_chp_, 1.0);
            link.add(*bin_chp_fix_, -cap_upper);
            m().add_constraint("chp_fix_link", link, Relation::le, 0.0);
        } else {
            // Exogenous capacity: investment and O&M are constants.
            m().objective().constant +=
                -discounted_investment(cc, cap_param, true, sc_.econ) -
                cc.om_rate_eur_per_unit * cap_param * sums_.annuity;
        }

        double min_load = cascading ? sc_.chp.min_load_kwel
                                    : sc_.tech.chp_min_load_factor * cap_param;

        chp_el_.resize(T_);
        chp_te_.resize(T_);
        chp_grid_.resize(T_);
        chp_hp_.resize(T_);
        chp_bat_.resize(T_);
        bin_chp_.resize(T_);
        double gas_coef = -w_ * sums_.gas / sc_.tech.chp_el_efficiency;
        for (int t = 0; t < T_; ++t) {
            chp_el_[t] = m().add_variable("chp_el_" + ts(t), VarKind::continuous, 0.0, cap_upper,
                                          "flow");
            chp_te_[t] = m().add_variable("chp_te_" + ts(t), VarKind::continuous, 0.0, kInf,
                                          "flow");
            chp_grid_[t] = m().add_variable("chp_grid_" + ts(t), VarKind::continuous, 0.0, kInf,
                                            "flow");
            if (sc_.has(Tech::hp))
                chp_hp_[t] = m().add_variable("chp_hp_" + ts(t), VarKind::continuous, 0.0, kInf,
                                              "flow");
            if (sc_.has(Tech::battery))
                chp_bat_[t] = m().add_variable("chp_bat_" + ts(t), VarKind::continuous, 0.0, kInf,
                                               "flow");
            bin_chp_[t] = m().add_variable("bin_chp_" + ts(t), VarKind::binary, 0.0, 1.0,
                                           "binary");

            LinearExpr split;
            split.add(chp_el_[t], 1.0);
            split.add(chp_te_[t], -1.0);
            split.add(chp_grid_[t], -1.0);
            if (chp_hp_[t]) split.add(*chp_hp_[t], -1.0);
            if (chp_bat_[t]) split.add(*chp_bat_[t], -1.0);
            m().add_constraint("chp_split_" + ts(t), split, Relation::eq, 0.0);

            // Semi-continuity: output is zero or in [min_load, cap].
            LinearExpr lo;
            lo.add(chp_el_[t], 1.0);
            lo.add(bin_chp_[t], -min_load);
            m().add_constraint("chp_semicontinuity_lo_" + ts(t), lo, Relation::ge, 0.0);
            LinearExpr hi;
            hi.add(chp_el_[t], 1.0);
            hi.add(bin_chp_[t], -cap_upper);
            m().add_constraint("chp_semicontinuity_hi_" + ts(t), hi, Relation::le, 0.0);
            if (cascading) {
                LinearExpr cap_lim;
                cap_lim.add(chp_el_[t], 1.0);
                cap_lim.add(*cap_chp_, -1.0);
                m().add_constraint("chp_output_cap_" + ts(t), cap_lim, Relation::le, 0.0);
            }

            m().objective().add(chp_el_[t], gas_coef);
            m().objective().add(chp_te_[t], w_ * sums_.tenant_net);
        }

        // Annual subsidy split: subsidized flows receive feed-in/SCP and count
        // toward the prorated full-load-hour budget; "wo" flows do not.
        echp_te_sub_ = m().add_variable("echp_te_sub", VarKind::continuous, 0.0, kInf, "annual");
        echp_te_wo_ = m().add_variable("echp_te_wo", VarKind::continuous, 0.0, kInf, "annual");
        echp_grid_sub_ = m().add_variable("echp_grid_sub", VarKind::continuous, 0.0, kInf,
                                          "annual");
        echp_grid_wo_ = m().add_variable("echp_grid_wo", VarKind::continuous, 0.0, kInf,
                                         "annual");
        echp_self_sub_ = m().add_variable("echp_self_sub", VarKind::continuous, 0.0, kInf,
                                          "annual");
        echp_self_wo_ = m().add_variable("echp_self_wo", VarKind::continuous, 0.0, kInf,
                                         "annual");
        echp_self_levied_ = m().add_variable("echp_self_levied", VarKind::continuous, 0.0, kInf,
                                             "annual");

        auto annual_split = [&](const std::vector<int>& hourly, int sub, int wo,
                                const std::string& name) {
            LinearExpr e;
            e.add(sub, 1.0);
            e.add(wo, 1.0);
            for (int t = 0; t < T_; ++t) e.add(hourly[t], -w_);
            m().add_constraint(name, e, Relation::eq, 0.0);
        };
        annual_split(chp_te_, *echp_te_sub_, *echp_te_wo_, "chp_annual_tenant");
        annual_split(chp_grid_, *echp_grid_sub_, *echp_grid_wo_, "chp_annual_grid");
        {
            LinearExpr e;
            e.add(*echp_self_sub_, 1.0);
            e.add(*echp_self_wo_, 1.0);
            for (int t = 0; t < T_; ++t) {
                if (chp_hp_[t]) e.add(*chp_hp_[t], -w_);
                if (chp_bat_[t]) e.add(*chp_bat_[t], -w_);
            }
            m().add_constraint("chp_annual_self", e, Relation::eq, 0.0);
        }

        // Lifetime full-load-hour subsidy budget prorated per year.
        double yearly_hours = sc_.policy.chp_subsidized_full_load_hours / sc_.econ.horizon_years;
        LinearExpr budget;
        budget.add(*echp_te_sub_, 1.0);
        budget.add(*echp_grid_sub_, 1.0);
        budget.add(*echp_self_sub_, 1.0);
        if (cascading) {
            budget.add(*cap_chp_, -yearly_hours);
            m().add_constraint("chp_fullload_budget", budget, Relation::le, 0.0);
        } else {
            m().add_constraint("chp_fullload_budget", budget, Relation::le,
                               yearly_hours * cap_param);
        }

        bool eligible = cap_upper <= sc_.policy.chp_capacity_subsidy_limit_kwel + 1e-9;
        if (!cascading)
            eligible = cap_param <= sc_.policy.chp_capacity_subsidy_limit_kwel + 1e-9;
        if (!eligible) {
            // Above the subsidy cutoff no flow may be remunerated.
            m().fix_variable(*echp_te_sub_, 0.0);
            m().fix_variable(*echp_grid_sub_, 0.0);
            m().fix_variable(*echp_self_sub_, 0.0);
        }

        // REL-levy de-minimis thresholds.
        bin_chp_levy_ = m().add_variable("bin_chp_levy", VarKind::binary, 0.0, 1.0, "binary");
        double cap_lim = sc_.policy.chp_levy_capacity_limit_kwel;
        double big_m = std::max(0.0, cap_upper - cap_lim) + 1.0;
        LinearExpr levy_cap;
        if (cascading) levy_cap.add(*cap_chp_, 1.0);
        levy_cap.add(*bin_chp_levy_, -big_m);
        m().add_constraint("chp_levy_capacity", levy_cap, Relation::le,
                           cascading ? cap_lim : cap_lim - cap_param);

        double e_lim = sc_.policy.chp_levy_energy_limit_mwh * 1000.0;
        LinearExpr exempt; // self-consumption escaping the levy, capped by e_lim*(1-bin)
        for (int t = 0; t < T_; ++t) {
            if (chp_hp_[t]) exempt.add(*chp_hp_[t], w_);
            if (chp_bat_[t]) exempt.add(*chp_bat_[t], w_);
        }
        exempt.add(*echp_self_levied_, -1.0);
        exempt.add(*bin_chp_levy_, e_lim);
        m().add_constraint("chp_levy_energy", exempt, Relation::le, e_lim);
        {
            LinearExpr bound; // levied share cannot exceed total self-consumption
            bound.add(*echp_self_levied_, 1.0);
            for (int t = 0; t < T_; ++t) {
                if (chp_hp_[t]) bound.add(*chp_hp_[t], -w_);
                if (chp_bat_[t]) bound.add(*chp_bat_[t], -w_);
            }
            m().add_constraint("chp_levied_bound", bound, Relation::le, 0.0);
        }

        m().objective().add(*echp_grid_sub_, sc_.policy.chp_feed_in * sums_.annuity);
        m().objective().add(*echp_te_sub_, sc_.policy.chp_scp * sums_.annuity);
        m().objective().add(*echp_self_sub_, sc_.policy.chp_scp * sums_.annuity);
        m().objective().add(*echp_self_levied_,
                            -sc_.policy.chp_levy_share * sums_.levy);
    }

    void add_battery() {
        cap_bat_ = m().add_variable("cap_bat", VarKind::continuous, 0.0,
                                    sc_.opts.max_battery_kwh, "capacity");
        m().objective().add(*cap_bat_, cap_coef(Tech::battery));
        bin_bat_ = m().add_variable("bin_fix_bat", VarKind::binary, 0.0, 1.0, "binary");
        m().objective().add(*bin_bat_, -sc_.tech.at(Tech::battery).fixed_investment_eur);
        LinearExpr link;
        link.add(*cap_bat_, 1.0);
        link.add(*bin_bat_, -sc_.opts.max_battery_kwh);
        m().add_constraint("battery_fix_link", link, Relation::le, 0.0);

        double inv_bound = sc_.opts.max_battery_kwh * sc_.tech.battery_c_rate;
        cap_inverter_ = m().add_variable("cap_inverter", VarKind::continuous, 0.0, inv_bound,
                                         "capacity");
        m().objective().add(*cap_inverter_, cap_coef(Tech::inverter));

        bat_dis_.resize(T_);
        bat_lvl_.resize(T_);
        grid_bat_.resize(T_);
        for (int t = 0; t < T_; ++t) {
            bat_dis_[t] = m().add_variable("bat_dis_" + ts(t), VarKind::continuous, 0.0, kInf,
                                           "flow");
            bat_lvl_[t] = m().add_variable("bat_lvl_" + ts(t), VarKind::continuous, 0.0, kInf,
                                           "level");
            grid_bat_[t] = m().add_variable("grid_bat_" + ts(t), VarKind::continuous, 0.0, kInf,
                                            "flow");
            m().objective().add(*bat_dis_[t], w_ * sums_.tenant_net);
        }
        for (int t = 0; t < T_; ++t) {
            LinearExpr chg; // total charge power
            if (pv_bat_.size() && pv_bat_[t]) chg.add(*pv_bat_[t], 1.0);
            if (chp_bat_.size() && chp_bat_[t]) chg.add(*chp_bat_[t], 1.0);
            chg.add(*grid_bat_[t], 1.0);

            LinearExpr lvl_cap;
            lvl_cap.add(*bat_lvl_[t], 1.0);
            lvl_cap.add(*cap_bat_, -1.0);
            m().add_constraint("bat_lvl_cap_" + ts(t), lvl_cap, Relation::le, 0.0);

            LinearExpr chg_cap = chg;
            chg_cap.add(*cap_bat_, -sc_.tech.battery_c_rate);
            m().add_constraint("bat_chg_cap_" + ts(t), chg_cap, Relation::le, 0.0);
            LinearExpr chg_inv = chg;
            chg_inv.add(*cap_inverter_, -1.0);
            m().add_constraint("bat_chg_inverter_" + ts(t), chg_inv, Relation::le, 0.0);

            LinearExpr dis_cap;
            dis_cap.add(*bat_dis_[t], 1.0);
            dis_cap.add(*cap_bat_, -sc_.tech.battery_c_rate);
            m().add_constraint("bat_dis_cap_" + ts(t), dis_cap, Relation::le, 0.0);
            LinearExpr dis_inv;
            dis_inv.add(*bat_dis_[t], 1.0);
            dis_inv.add(*cap_inverter_, -1.0);
            m().add_constraint("bat_dis_inverter_" + ts(t), dis_inv, Relation::le, 0.0);

            int tn = (t + 1) % T_;
            LinearExpr dyn;
            dyn.add(*bat_lvl_[tn], 1.0);
            dyn.add(*bat_lvl_[t], -(1.0 - sc_.tech.battery_hourly_loss));
            for (auto& [v, c] : chg.terms) dyn.add(v, -sc_.tech.battery_charge_efficiency * c);
            dyn.add(*bat_dis_[t], 1.0 / sc_.tech.battery_discharge_efficiency);
            m().add_constraint("bat_dynamics_" + ts(t), dyn, Relation::eq, 0.0);
        }
    }

    void add_grid_and_ev() {
        grid_te_.resize(T_);
        for (int t = 0; t < T_; ++t) {
            grid_te_[t] = m().add_variable("grid_te_" + ts(t), VarKind::continuous, 0.0, kInf,
                                           "flow");
            m().objective().add(grid_te_[t], w_ * (sums_.tenant - sums_.landlord));
        }
        if (sc_.has(Tech::hp)) {
            grid_hp_.resize(T_);
            for (int t = 0; t < T_; ++t) {
                grid_hp_[t] = m().add_variable("grid_hp_" + ts(t), VarKind::continuous, 0.0,
                                               kInf, "flow");
                m().objective().add(*grid_hp_[t], -w_ * sums_.landlord);
            }
        }
        for (int t = 0; t < T_; ++t)
            if (grid_bat_.size() && grid_bat_[t])
                m().objective().add(*grid_bat_[t], -w_ * sums_.landlord);

        if (sc_.ev_mode == EvMode::optimized) {
            if (sc_.building.ev_profiles.empty())
                throw std::invalid_argument("optimized EV mode requires EV profiles");
            if (T_ % 168 != 0)
                throw std::invalid_argument(
                    "optimized EV mode requires a horizon that is a multiple of 168 hours");
            int weeks = T_ / 168;
            ev_chg_.assign(sc_.building.ev_profiles.size(), {});
            for (size_t v = 0; v < sc_.building.ev_profiles.size(); ++v) {
                std::vector<double> profile;
                slice(sc_.building.ev_profiles[v], profile);
                if (std::accumulate(profile.begin(), profile.end(), 0.0) <= 0.0)
                    throw std::invalid_argument("optimized EV mode: vehicle " +
                                                std::to_string(v) +
                                                " has no availability (all-zero profile)");
                ev_chg_[v].resize(T_);
                for (int t = 0; t < T_; ++t) {
                    double avail = profile[t] > 1e-9 ? sc_.opts.ev_charger_rating_kw : 0.0;
                    ev_chg_[v][t] = m().add_variable(
                        "ev" + std::to_string(v) + "_chg_" + ts(t), VarKind::continuous, 0.0,
                        avail, "flow");
                }
                for (int wk = 0; wk < weeks; ++wk) {
                    LinearExpr e;
                    double energy = 0.0;
                    for (int t = wk * 168; t < (wk + 1) * 168; ++t) {
                        e.add(ev_chg_[v][t], 1.0);
                        energy += profile[t];
                    }
                    m().add_constraint("ev" + std::to_string(v) + "_week_" + std::to_string(wk),
                                       e, Relation::eq, energy);
                }
            }
        }
    }

    void add_balances() {
        // Tenant electricity balance, hourly: supply equals demand (appliances
        // plus EV charging).
        std::vector<double> fixed_ev(T_, 0.0);
        if (sc_.ev_mode == EvMode::fixed) {
            for (const auto& p : sc_.building.ev_profiles) {
                std::vector<double> prof;
                slice(p, prof);
                for (int t = 0; t < T_; ++t) fixed_ev[t] += prof[t];
            }
        }
        for (int t = 0; t < T_; ++t) {
            LinearExpr bal;
            if (pv_te_.size()) bal.add(pv_te_[t], 1.0);
            if (chp_te_.size()) bal.add(chp_te_[t], 1.0);
            bal.add(grid_te_[t], 1.0);
            if (bat_dis_.size() && bat_dis_[t]) bal.add(*bat_dis_[t], 1.0);
            if (sc_.ev_mode == EvMode::optimized)
                for (auto& per_vehicle : ev_chg_) bal.add(per_vehicle[t], -1.0);
            m().add_constraint("el_balance_" + ts(t), bal, Relation::eq, d_el_[t] + fixed_ev[t]);
        }

        // Heat pump coupling and heat balance.
        if (sc_.has(Tech::hp)) {
            q_hp_.resize(T_);
            for (int t = 0; t < T_; ++t) {
                q_hp_[t] = m().add_variable("q_hp_" + ts(t), VarKind::continuous, 0.0, kInf,
                                            "flow");
                LinearExpr couple;
                couple.add(*q_hp_[t], 1.0);
                if (pv_hp_.size() && pv_hp_[t]) couple.add(*pv_hp_[t], -cop_[t]);
                if (chp_hp_.size() && chp_hp_[t]) couple.add(*chp_hp_[t], -cop_[t]);
                couple.add(*grid_hp_[t], -cop_[t]);
                m().add_constraint("hp_coupling_" + ts(t), couple, Relation::eq, 0.0);

                LinearExpr cap;
                cap.add(*q_hp_[t], 1.0);
                cap.add(cap_hp_, -1.0);
                m().add_constraint("hp_cap_" + ts(t), cap, Relation::le, 0.0);
            }
        }
    }

    void add_heat_balance() {
        for (int t = 0; t < T_; ++t) {
            LinearExpr heat;
            if (chp_el_.size()) heat.add(chp_el_[t], 1.0 / sc_.tech.chp_power_to_heat_ratio);
            heat.add(q_boiler_[t], 1.0);
            if (q_hp_.size()) heat.add(*q_hp_[t], 1.0);
            heat.add(hs_dis_[t], 1.0);
            heat.add(hs_chg_[t], -1.0);
            m().add_constraint("heat_balance_" + ts(t), heat, Relation::eq, q_te_[t]);
        }
    }

    void finish_objective() { m().objective().compress(); }

    const Scenario& sc_;
    BuiltModel out_;
    int T_ = 0;
    double w_ = 1.0;
    DiscountedSums sums_;
    bool chp_enabled_ = false;
    std::vector<double> d_el_, q_te_, cop_, yield_;

    // Variable ids; std::optional for flows that exist only when a technology
    // is enabled.
    int cap_boiler_ = -1, cap_hs_ = -1, cap_hp_ = -1, cap_pv_ = -1, bin_hp_ = -1;
    std::optional<int> cap_chp_, bin_chp_fix_, cap_bat_, bin_bat_, cap_inverter_;
    std::vector<int> q_boiler_, hs_chg_, hs_dis_, hs_lvl_;
    std::vector<int> pv_te_, pv_grid_, grid_te_, chp_el_, chp_te_, chp_grid_, bin_chp_;
    std::vector<std::optional<int>> pv_hp_, pv_bat_, chp_hp_, chp_bat_, grid_hp_, grid_bat_,
        bat_dis_, bat_lvl_, q_hp_;
    std::vector<int> bin_pv_, epv_grid_, epv_te_, epv_self_;
    std::optional<int> echp_te_sub_, echp_te_wo_, echp_grid_sub_, echp_grid_wo_, echp_self_sub_,
        echp_self_wo_, echp_self_levied_, bin_chp_levy_;
    std::vector<std::vector<int>> ev_chg_;
};

} // namespace

BuiltModel build_model(const Scenario& scenario) { return Builder(scenario).build(); }

} // namespace temopt
