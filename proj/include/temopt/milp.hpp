#pragma once

#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace temopt {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { continuous, binary };
enum class Relation { le, eq, ge };

struct Variable {
    std::string name;
    VarKind kind = VarKind::continuous;
    double lower = 0.0;
    double upper = kInf;
    std::string tag; // semantic annotation (flow, capacity, scheme binary, ...)
};

/// Sparse linear expression over variable ids.
struct LinearExpr {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;

    void add(int var, double coef) {
        if (coef != 0.0) terms.emplace_back(var, coef);
    }
    LinearExpr& operator+=(const LinearExpr& o);
    /// Merge duplicate variable entries.
    void compress();
};

struct Constraint {
    std::string name;
    LinearExpr expr;
    Relation relation = Relation::le;
    double rhs = 0.0;
};

/// Solver-agnostic MILP description. Objective sense is always maximize.
class MilpModel {
public:
    int add_variable(const std::string& name, VarKind kind, double lower, double upper,
                     const std::string& tag = "");
    void add_constraint(const std::string& name, LinearExpr expr, Relation rel, double rhs);
    void fix_variable(int var, double value);

    /// -1 when no variable of that name exists.
    int variable_id(const std::string& name) const;
    bool has_variable(const std::string& name) const { return variable_id(name) >= 0; }

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return cons_; }
    LinearExpr& objective() { return objective_; }
    const LinearExpr& objective() const { return objective_; }

    double evaluate(const LinearExpr& expr, const std::vector<double>& values) const;

    /// Static well-formedness audit: unique names, declared references,
    /// consistent bounds. Returns a list of problems; empty means well-formed.
    std::vector<std::string> audit() const;

    /// Industry-standard LP text format, for external solver debugging.
    std::string to_lp_format() const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> cons_;
    LinearExpr objective_;
    std::unordered_map<std::string, int> index_;
};

} // namespace temopt
