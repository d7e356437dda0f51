#pragma once

#include <memory>

#include "temopt/milp.hpp"

namespace temopt {

struct SolveOptions {
    double mip_rel_gap = 1e-4;
    double time_limit_s = 172800.0; // 48 h, the study's wall-clock budget
    int threads = 1;
    unsigned seed = 0;
    bool verbose = false;
};

enum class SolveStatus { optimal, feasible, infeasible, unbounded, error };

std::string solve_status_name(SolveStatus s);

struct Solution {
    SolveStatus status = SolveStatus::error;
    double objective = 0.0; // includes the model's objective constant
    std::vector<double> values;
    double mip_gap = 0.0;
    std::string message;

    bool usable() const {
        return status == SolveStatus::optimal || status == SolveStatus::feasible;
    }
    /// Value of a named variable; 0 for absent names so reports can probe
    /// flows of disabled technologies uniformly.
    double value(const MilpModel& m, const std::string& name) const;
};

class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    virtual std::string name() const = 0;
    virtual Solution solve(const MilpModel& model, const SolveOptions& opts) = 0;
};

/// Default backend: HiGHS via a python/scipy subprocess with JSON interchange.
std::unique_ptr<SolverBackend> make_default_backend();

Solution solve(const MilpModel& model, const SolveOptions& opts = {});

/// Check a candidate point against all bounds, integrality requirements and
/// constraints. Returns human-readable violations; empty means feasible.
std::vector<std::string> verify_feasibility(const MilpModel& model,
                                            const std::vector<double>& values,
                                            double tol = 1e-5);

} // namespace temopt
