#include "temopt/milp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace temopt {

LinearExpr& LinearExpr::operator+=(const LinearExpr& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    constant += o.constant;
    return *this;
}

void LinearExpr::compress() {
    std::map<int, double> merged;
    for (const auto& [v, c] : terms) merged[v] += c;
    terms.clear();
    for (const auto& [v, c] : merged)
        if (c != 0.0) terms.emplace_back(v, c);
}

int MilpModel::add_variable(const std::string& name, VarKind kind, double lower, double upper,
                            const std::string& tag) {
    if (index_.count(name)) throw std::invalid_argument("duplicate variable name: " + name);
    Variable v;
    v.name = name;
    v.kind = kind;
    v.lower = lower;
    v.upper = upper;
    v.tag = tag;
    vars_.push_back(std::move(v));
    int id = (int)vars_.size() - 1;
    index_[name] = id;
    return id;
}

void MilpModel::add_constraint(const std::string& name, LinearExpr expr, Relation rel,
                               double rhs) {
    expr.compress();
    rhs -= expr.constant;
    expr.constant = 0.0;
    cons_.push_back(Constraint{name, std::move(expr), rel, rhs});
}

void MilpModel::fix_variable(int var, double value) {
    vars_.at(var).lower = value;
    vars_.at(var).upper = value;
}

int MilpModel::variable_id(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

double MilpModel::evaluate(const LinearExpr& expr, const std::vector<double>& values) const {
    double s = expr.constant;
    for (const auto& [v, c] : expr.terms) s += c * values.at(v);
    return s;
}

std::vector<std::string> MilpModel::audit() const {
    std::vector<std::string> problems;
    auto check_expr = [&](const LinearExpr& e, const std::string& where) {
        for (const auto& [v, c] : e.terms) {
            if (v < 0 || v >= (int)vars_.size())
                problems.push_back(where + ": undeclared variable id " + std::to_string(v));
            if (!std::isfinite(c)) problems.push_back(where + ": non-finite coefficient");
        }
    };
    for (const auto& c : cons_) {
        check_expr(c.expr, "constraint " + c.name);
        if (!std::isfinite(c.rhs)) problems.push_back("constraint " + c.name + ": non-finite rhs");
    }
    check_expr(objective_, "objective");
    for (const auto& v : vars_)
        if (v.lower > v.upper) problems.push_back("variable " + v.name + ": lower > upper");
    return problems;
}

namespace {

std::string lp_name(const std::string& s) {
    std::string out;
    for (char ch : s)
        out += (std::isalnum((unsigned char)ch) || ch == '_') ? ch : '_';
    return out;
}

void write_expr(std::ostream& os, const LinearExpr& e, const std::vector<Variable>& vars) {
    bool first = true;
    for (const auto& [v, c] : e.terms) {
        os << (c < 0 ? " - " : (first ? " " : " + ")) << std::abs(c) << " "
           << lp_name(vars[v].name);
        first = false;
    }
    if (first) os << " 0 " << lp_name(vars.front().name);
}

} // namespace

std::string MilpModel::to_lp_format() const {
    std::ostringstream os;
    os.precision(15);
    os << "Maximize\n obj:";
    write_expr(os, objective_, vars_);
    os << "\nSubject To\n";
    for (size_t k = 0; k < cons_.size(); ++k) {
        const auto& c = cons_[k];
        os << " " << lp_name(c.name) << "_" << k << ":";
        write_expr(os, c.expr, vars_);
        os << (c.relation == Relation::le ? " <= " : c.relation == Relation::ge ? " >= " : " = ")
           << c.rhs << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : vars_) {
        if (v.upper == kInf)
            os << " " << v.lower << " <= " << lp_name(v.name) << " <= +inf\n";
        else
            os << " " << v.lower << " <= " << lp_name(v.name) << " <= " << v.upper << "\n";
    }
    os << "Binaries\n";
    for (const auto& v : vars_)
        if (v.kind == VarKind::binary) os << " " << lp_name(v.name) << "\n";
    os << "End\n";
    return os.str();
}

} // namespace temopt
