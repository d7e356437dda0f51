#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "temopt/solver.hpp"

using namespace temopt;

namespace {

SolveOptions quiet() {
    SolveOptions o;
    o.verbose = false;
    return o;
}

} // namespace

TEST_CASE("backend identifies itself") {
    CHECK(make_default_backend()->name() == "scipy-highs");
}

TEST_CASE("solves a small lp to optimality") {
    // max x + 2y  s.t. x + y <= 4, y <= 3
    MilpModel m;
    int x = m.add_variable("x", VarKind::continuous, 0.0, kInf);
    int y = m.add_variable("y", VarKind::continuous, 0.0, 3.0);
    m.objective().add(x, 1.0);
    m.objective().add(y, 2.0);
    LinearExpr e;
    e.add(x, 1.0);
    e.add(y, 1.0);
    m.add_constraint("cap", e, Relation::le, 4.0);

    Solution s = solve(m, quiet());
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.usable());
    CHECK(s.objective == doctest::Approx(7.0));
    CHECK(s.value(m, "x") == doctest::Approx(1.0));
    CHECK(s.value(m, "y") == doctest::Approx(3.0));
    CHECK(s.value(m, "missing") == 0.0); // absent names read as zero
    CHECK(verify_feasibility(m, s.values).empty());
}

TEST_CASE("objective constant is added back to the reported objective") {
    MilpModel m;
    int x = m.add_variable("x", VarKind::continuous, 0.0, 2.0);
    m.objective().add(x, 1.0);
    m.objective().constant = 100.0;
    Solution s = solve(m, quiet());
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.objective == doctest::Approx(102.0));
}

TEST_CASE("solves a knapsack with binaries") {
    // max 10a + 6b + 4c  s.t. 5a + 4b + 3c <= 8, binary
    MilpModel m;
    int a = m.add_variable("a", VarKind::binary, 0.0, 1.0);
    int b = m.add_variable("b", VarKind::binary, 0.0, 1.0);
    int c = m.add_variable("c", VarKind::binary, 0.0, 1.0);
    m.objective().add(a, 10.0);
    m.objective().add(b, 6.0);
    m.objective().add(c, 4.0);
    LinearExpr e;
    e.add(a, 5.0);
    e.add(b, 4.0);
    e.add(c, 3.0);
    m.add_constraint("weight", e, Relation::le, 8.0);

    Solution s = solve(m, quiet());
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.objective == doctest::Approx(14.0));
    CHECK(s.value(m, "a") == doctest::Approx(1.0));
    CHECK(s.value(m, "b") == doctest::Approx(0.0));
    CHECK(s.value(m, "c") == doctest::Approx(1.0));
    CHECK(verify_feasibility(m, s.values).empty());
}

TEST_CASE("detects infeasibility") {
    MilpModel m;
    int x = m.add_variable("x", VarKind::continuous, 0.0, 1.0);
    LinearExpr e;
    e.add(x, 1.0);
    m.add_constraint("impossible", e, Relation::ge, 2.0);
    Solution s = solve(m, quiet());
    CHECK(s.status == SolveStatus::infeasible);
    CHECK_FALSE(s.usable());
}

TEST_CASE("detects unboundedness") {
    MilpModel m;
    int x = m.add_variable("x", VarKind::continuous, 0.0, kInf);
    m.objective().add(x, 1.0);
    Solution s = solve(m, quiet());
    CHECK(s.status == SolveStatus::unbounded);
    CHECK_FALSE(s.usable());
}

TEST_CASE("audit failures surface as error status") {
    MilpModel m;
    m.add_variable("x", VarKind::continuous, 0.0, 1.0);
    LinearExpr e;
    e.add(99, 1.0); // undeclared id
    m.add_constraint("bad", e, Relation::le, 0.0);
    Solution s = solve(m, quiet());
    CHECK(s.status == SolveStatus::error);
    CHECK(s.message.find("audit") != std::string::npos);
}

TEST_CASE("verify_feasibility flags each violation kind") {
    MilpModel m;
    int x = m.add_variable("x", VarKind::continuous, 0.0, 1.0);
    int b = m.add_variable("b", VarKind::binary, 0.0, 1.0);
    LinearExpr e;
    e.add(x, 1.0);
    e.add(b, 1.0);
    m.add_constraint("sum_le", e, Relation::le, 1.0);
    m.add_constraint("sum_ge", e, Relation::ge, 0.5);

    SUBCASE("clean point passes") {
        CHECK(verify_feasibility(m, {0.5, 0.0}).empty());
    }
    SUBCASE("bound violation") {
        auto v = verify_feasibility(m, {1.5, 0.0});
        REQUIRE_FALSE(v.empty());
        CHECK(v[0].find("x") != std::string::npos);
    }
    SUBCASE("fractional binary") {
        auto v = verify_feasibility(m, {0.0, 0.4});
        REQUIRE_FALSE(v.empty());
        CHECK(v[0].find("non-integral") != std::string::npos);
    }
    SUBCASE("constraint violation names the constraint") {
        auto v = verify_feasibility(m, {1.0, 1.0});
        REQUIRE(v.size() == 1);
        CHECK(v[0].find("sum_le") != std::string::npos);
    }
    SUBCASE("ge constraint violation") {
        auto v = verify_feasibility(m, {0.0, 0.0});
        REQUIRE(v.size() == 1);
        CHECK(v[0].find("sum_ge") != std::string::npos);
    }
    SUBCASE("wrong vector length") {
        auto v = verify_feasibility(m, {0.0});
        REQUIRE(v.size() == 1);
        CHECK(v[0].find("length") != std::string::npos);
    }
    SUBCASE("tolerance scales with constraint magnitude") {
        MilpModel big;
        int y = big.add_variable("y", VarKind::continuous, 0.0, kInf);
        LinearExpr be;
        be.add(y, 1.0);
        big.add_constraint("annual", be, Relation::eq, 1e6);
        // 1e-3 absolute error on a 1e6-scale row is within 1e-5 relative
        CHECK(verify_feasibility(big, {1e6 + 1e-3}).empty());
        CHECK_FALSE(verify_feasibility(big, {1e6 + 100.0}).empty());
    }
}

TEST_CASE("equality constraints are honored") {
    MilpModel m;
    int x = m.add_variable("x", VarKind::continuous, 0.0, 10.0);
    int y = m.add_variable("y", VarKind::continuous, 0.0, 10.0);
    m.objective().add(x, 1.0);
    LinearExpr e;
    e.add(x, 1.0);
    e.add(y, 1.0);
    m.add_constraint("pair", e, Relation::eq, 6.0);
    Solution s = solve(m, quiet());
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.value(m, "x") == doctest::Approx(6.0));
    CHECK(s.value(m, "y") == doctest::Approx(0.0));
}
