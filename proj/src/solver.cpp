#include "temopt/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

#include "json.hpp"

#include "solver_script.hpp"

namespace temopt {

using nlohmann::json;

std::string solve_status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible: return "feasible";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::error: return "error";
    }
    return "error";
}

double Solution::value(const MilpModel& m, const std::string& name) const {
    int id = m.variable_id(name);
    if (id < 0) return 0.0;
    return values.at(id);
}

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path = fs::temp_directory_path() /
               ("temopt_" + std::to_string(::getpid()) + "_" + std::to_string(stamp));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

json model_to_json(const MilpModel& model, const SolveOptions& opts) {
    const auto& vars = model.variables();
    json spec;
    spec["num_vars"] = vars.size();
    std::vector<double> obj(vars.size(), 0.0);
    {
        LinearExpr o = model.objective();
        o.compress();
        for (const auto& [v, c] : o.terms) obj[v] = c;
    }
    spec["objective"] = obj;
    std::vector<double> lower, upper;
    std::vector<int> integrality;
    for (const auto& v : vars) {
        lower.push_back(v.lower);
        upper.push_back(v.upper == kInf ? 1e30 : v.upper);
        integrality.push_back(v.kind == VarKind::binary ? 1 : 0);
    }
    spec["lower"] = lower;
    spec["upper"] = upper;
    spec["integrality"] = integrality;
    json rows = json::array();
    for (const auto& c : model.constraints()) {
        json row;
        std::vector<int> vs;
        std::vector<double> cs;
        for (const auto& [v, coef] : c.expr.terms) {
            vs.push_back(v);
            cs.push_back(coef);
        }
        row["vars"] = vs;
        row["coefs"] = cs;
        row["rel"] = c.relation == Relation::le ? "le" : c.relation == Relation::ge ? "ge" : "eq";
        row["rhs"] = c.rhs;
        rows.push_back(std::move(row));
    }
    spec["constraints"] = std::move(rows);
    spec["mip_rel_gap"] = opts.mip_rel_gap;
    spec["time_limit"] = opts.time_limit_s;
    spec["verbose"] = opts.verbose;
    return spec;
}

class ScipyHighsBackend : public SolverBackend {
public:
    std::string name() const override { return "scipy-highs"; }

    Solution solve(const MilpModel& model, const SolveOptions& opts) override {
        Solution sol;
        auto problems = model.audit();
        if (!problems.empty()) {
            sol.status = SolveStatus::error;
            sol.message = "model audit failed: " + problems.front();
            return sol;
        }

        TempDir dir;
        fs::path script = dir.path / "solve_milp.py";
        fs::path in = dir.path / "problem.json";
        fs::path out = dir.path / "result.json";
        {
            std::ofstream f(script);
            f << detail::kSolveMilpScript;
        }
        {
            std::ofstream f(in);
            f << model_to_json(model, opts);
        }
        std::string cmd = "python3 '" + script.string() + "' '" + in.string() + "' '" +
                          out.string() + "'";
        if (!opts.verbose) cmd += " >/dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        std::ifstream f(out);
        if (rc != 0 || !f) {
            sol.status = SolveStatus::error;
            sol.message = "solver subprocess failed (exit " + std::to_string(rc) + ")";
            return sol;
        }
        json res = json::parse(f);
        int status = res["status"].get<int>();
        bool success = res["success"].get<bool>();
        sol.message = res["message"].get<std::string>();
        sol.mip_gap = res["mip_gap"].get<double>();
        if (success)
            sol.status = status == 0 ? SolveStatus::optimal : SolveStatus::feasible;
        else if (status == 2)
            sol.status = SolveStatus::infeasible;
        else if (status == 3)
            sol.status = SolveStatus::unbounded;
        else if (status == 1 && !res["x"].is_null())
            sol.status = SolveStatus::feasible; // hit a limit with an incumbent
        else
            sol.status = SolveStatus::error;
        if (!res["x"].is_null()) {
            sol.values = res["x"].get<std::vector<double>>();
            sol.objective = res["objective"].get<double>() + model.objective().constant;
        }
        return sol;
    }
};

} // namespace

std::unique_ptr<SolverBackend> make_default_backend() {
    return std::make_unique<ScipyHighsBackend>();
}

Solution solve(const MilpModel& model, const SolveOptions& opts) {
    return make_default_backend()->solve(model, opts);
}

std::vector<std::string> verify_feasibility(const MilpModel& model,
                                            const std::vector<double>& values, double tol) {
    std::vector<std::string> violations;
    const auto& vars = model.variables();
    if (values.size() != vars.size()) {
        violations.push_back("value vector has wrong length");
        return violations;
    }
    for (size_t i = 0; i < vars.size(); ++i) {
        const auto& v = vars[i];
        double x = values[i];
        if (!std::isfinite(x)) {
            violations.push_back("variable " + v.name + ": non-finite value");
            continue;
        }
        if (x < v.lower - tol || x > v.upper + tol)
            violations.push_back("variable " + v.name + ": value " + std::to_string(x) +
                                 " outside bounds");
        if (v.kind == VarKind::binary && std::abs(x - std::round(x)) > tol)
            violations.push_back("variable " + v.name + ": non-integral value " +
                                 std::to_string(x));
    }
    for (const auto& c : model.constraints()) {
        double lhs = model.evaluate(c.expr, values);
        // Scale the tolerance with the constraint's magnitude so annual-energy
        // rows (1e4-scale) are not flagged on solver round-off.
        double scale = std::max({1.0, std::abs(lhs), std::abs(c.rhs)});
        bool ok = c.relation == Relation::le   ? lhs <= c.rhs + tol * scale
                  : c.relation == Relation::ge ? lhs >= c.rhs - tol * scale
                                               : std::abs(lhs - c.rhs) <= tol * scale;
        if (!ok)
            violations.push_back("constraint " + c.name + ": lhs " + std::to_string(lhs) +
                                 " vs rhs " + std::to_string(c.rhs));
    }
    return violations;
}

} // namespace temopt
