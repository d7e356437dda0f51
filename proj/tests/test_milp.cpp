#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "temopt/milp.hpp"

using namespace temopt;

TEST_CASE("variable registration and lookup") {
    MilpModel m;
    int x = m.add_variable("x", VarKind::continuous, 0.0, 10.0, "flow");
    int b = m.add_variable("b", VarKind::binary, 0.0, 1.0);
    CHECK(x == 0);
    CHECK(b == 1);
    CHECK(m.variable_id("x") == x);
    CHECK(m.variable_id("b") == b);
    CHECK(m.variable_id("nope") == -1);
    CHECK(m.has_variable("x"));
    CHECK_FALSE(m.has_variable("nope"));
    CHECK(m.variables()[x].tag == "flow");
    CHECK(m.variables()[b].kind == VarKind::binary);
    CHECK_THROWS_AS(m.add_variable("x", VarKind::continuous, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("linear expression compress merges duplicates and drops zeros") {
    LinearExpr e;
    e.add(0, 1.5);
    e.add(1, 2.0);
    e.add(0, -0.5);
    e.add(2, 3.0);
    e.add(2, -3.0);
    e.add(3, 0.0); // never stored
    e.compress();
    REQUIRE(e.terms.size() == 2);
    CHECK(e.terms[0] == std::pair<int, double>{0, 1.0});
    CHECK(e.terms[1] == std::pair<int, double>{1, 2.0});
}

TEST_CASE("expression addition accumulates terms and constants") {
    LinearExpr a, b;
    a.add(0, 1.0);
    a.constant = 2.0;
    b.add(0, 3.0);
    b.add(1, 4.0);
    b.constant = -1.0;
    a += b;
    a.compress();
    CHECK(a.constant == doctest::Approx(1.0));
    REQUIRE(a.terms.size() == 2);
    CHECK(a.terms[0].second == doctest::Approx(4.0));
}

TEST_CASE("add_constraint folds the expression constant into the rhs") {
    MilpModel m;
    m.add_variable("x", VarKind::continuous, 0.0, kInf);
    LinearExpr e;
    e.add(0, 2.0);
    e.constant = 5.0;
    m.add_constraint("c", e, Relation::le, 8.0);
    REQUIRE(m.constraints().size() == 1);
    CHECK(m.constraints()[0].rhs == doctest::Approx(3.0));
    CHECK(m.constraints()[0].expr.constant == 0.0);
    CHECK(m.constraints()[0].relation == Relation::le);
}

TEST_CASE("evaluate applies values to an expression") {
    MilpModel m;
    m.add_variable("x", VarKind::continuous, 0.0, kInf);
    m.add_variable("y", VarKind::continuous, 0.0, kInf);
    LinearExpr e;
    e.add(0, 2.0);
    e.add(1, -1.0);
    e.constant = 0.5;
    CHECK(m.evaluate(e, {3.0, 4.0}) == doctest::Approx(2.5));
}

TEST_CASE("fix_variable pins both bounds") {
    MilpModel m;
    int x = m.add_variable("x", VarKind::continuous, 0.0, 10.0);
    m.fix_variable(x, 4.0);
    CHECK(m.variables()[x].lower == doctest::Approx(4.0));
    CHECK(m.variables()[x].upper == doctest::Approx(4.0));
    CHECK(m.audit().empty());
}

TEST_CASE("audit reports structural problems") {
    MilpModel m;
    m.add_variable("x", VarKind::continuous, 0.0, 1.0);
    CHECK(m.audit().empty());

    SUBCASE("undeclared variable id") {
        LinearExpr e;
        e.add(7, 1.0);
        m.add_constraint("bad", e, Relation::le, 0.0);
        auto problems = m.audit();
        REQUIRE(problems.size() == 1);
        CHECK(problems[0].find("bad") != std::string::npos);
    }
    SUBCASE("non-finite coefficient") {
        LinearExpr e;
        e.add(0, kInf);
        m.add_constraint("inf_coef", e, Relation::eq, 0.0);
        CHECK_FALSE(m.audit().empty());
    }
    SUBCASE("crossed bounds") {
        m.add_variable("y", VarKind::continuous, 2.0, 1.0);
        auto problems = m.audit();
        REQUIRE(problems.size() == 1);
        CHECK(problems[0].find("y") != std::string::npos);
    }
}

TEST_CASE("lp format contains all sections") {
    MilpModel m;
    m.add_variable("x", VarKind::continuous, 0.0, 5.0);
    m.add_variable("on", VarKind::binary, 0.0, 1.0);
    LinearExpr obj;
    obj.add(0, 1.0);
    m.objective() += obj;
    LinearExpr c;
    c.add(0, 1.0);
    c.add(1, -5.0);
    m.add_constraint("gate", c, Relation::le, 0.0);
    std::string lp = m.to_lp_format();
    CHECK(lp.find("Maximize") != std::string::npos);
    CHECK(lp.find("Subject To") != std::string::npos);
    CHECK(lp.find("gate_0:") != std::string::npos);
    CHECK(lp.find("Bounds") != std::string::npos);
    CHECK(lp.find("Binaries") != std::string::npos);
    CHECK(lp.find("on") != std::string::npos);
    CHECK(lp.find("End") != std::string::npos);
}
