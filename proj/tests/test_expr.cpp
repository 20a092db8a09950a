#include "doctest.h"

#include "weil/expr.hpp"
#include "weil/poly.hpp"

#include <cmath>

using namespace weil;

namespace {
double eval1(const ExprGraph& g, double x) {
    const double pt[1] = {x};
    return g.eval(std::span<const double>(pt, 1))[0];
}
} // namespace

TEST_CASE("parser: precedence and associativity") {
    CHECK(eval1(parse_expression("2*x1^2"), 3) == doctest::Approx(18.0));
    CHECK(eval1(parse_expression("-x1^2"), 3) == doctest::Approx(-9.0));
    CHECK(eval1(parse_expression("x1^2^3"), 2) == doctest::Approx(256.0));  // x^(2^3)
    CHECK(eval1(parse_expression("x1^-2"), 2) == doctest::Approx(0.25));
    CHECK(eval1(parse_expression("2 - 3 - x1"), 1) == doctest::Approx(-2.0));
    CHECK(eval1(parse_expression("12/x1/2"), 3) == doctest::Approx(2.0));
    CHECK(eval1(parse_expression("exp(log(x1))"), 1.7) == doctest::Approx(1.7));
    CHECK(eval1(parse_expression("sin(x1)^2 + cos(x1)^2"), 0.9) == doctest::Approx(1.0));
    CHECK(eval1(parse_expression("sqrt(x1^2^2)"), 3) == doctest::Approx(9.0));
    CHECK(eval1(parse_expression("cos(pi)", 1), 0.0) == doctest::Approx(-1.0));
}

TEST_CASE("parser: multi-variable expressions and lists") {
    ExprGraph g = parse_expression("x1*x2 + x3");
    CHECK(g.arity() == 3);
    const double pt[3] = {2, 3, 4};
    CHECK(g.eval(std::span<const double>(pt, 3))[0] == doctest::Approx(10.0));

    ExprGraph list = parse_expression_list("x1 + x2, x1 * x2");
    CHECK(list.output_count() == 2);
    const double pt2[2] = {3, 5};
    auto out = list.eval(std::span<const double>(pt2, 2));
    CHECK(out[0] == doctest::Approx(8.0));
    CHECK(out[1] == doctest::Approx(15.0));
}

TEST_CASE("parser: errors carry positions") {
    CHECK_THROWS_AS(parse_expression("x1 +"), ParseError);
    CHECK_THROWS_AS(parse_expression("foo(x1)"), ParseError);
    CHECK_THROWS_AS(parse_expression("x0"), ParseError);
    CHECK_THROWS_AS(parse_expression("x"), ParseError);
    CHECK_THROWS_AS(parse_expression("x1^x2"), ParseError);   // exponent must be an integer
    CHECK_THROWS_AS(parse_expression("(x1"), ParseError);
    CHECK_THROWS_AS(parse_expression("x1 x2"), ParseError);
    CHECK_THROWS_AS(parse_expression("x2", 1), ParseError);   // arity pinned to 1

    try {
        parse_expression("x1 + @");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("classical evaluation reports domain violations with the node") {
    ExprGraph g = parse_expression("log(x1)");
    const double bad[1] = {-1.0};
    CHECK_THROWS_AS(g.eval(std::span<const double>(bad, 1)), EvalDomainError);
    try {
        g.eval(std::span<const double>(bad, 1));
    } catch (const EvalDomainError& e) {
        CHECK(e.node() >= 0);
        CHECK(std::string(e.what()).find("log") != std::string::npos);
    }
}

TEST_CASE("is_polynomial") {
    CHECK(parse_expression("x1^3 * x2 - 2").is_polynomial());
    CHECK(parse_expression("-x1").is_polynomial());
    CHECK_FALSE(parse_expression("sin(x1)").is_polynomial());
    CHECK_FALSE(parse_expression("1/x1").is_polynomial());
    CHECK_FALSE(parse_expression("x1^-1").is_polynomial());
}

TEST_CASE("compose, pair, identity") {
    ExprGraph inner = parse_expression_list("x1 + 1, x1 * 2");  // R -> R^2
    ExprGraph outer = parse_expression("x1 * x2");              // R^2 -> R
    ExprGraph comp = ExprGraph::compose(outer, inner);
    CHECK(comp.arity() == 1);
    CHECK(eval1(comp, 3) == doctest::Approx(24.0));

    ExprGraph f = parse_expression("x1 + x2");
    ExprGraph g = parse_expression_list("x1, x2, x1*x2");
    ExprGraph pr = ExprGraph::pair(f, g);
    CHECK(pr.output_count() == 4);
    const double pt[2] = {2, 5};
    auto out = pr.eval(std::span<const double>(pt, 2));
    CHECK(out[0] == doctest::Approx(7.0));
    CHECK(out[3] == doctest::Approx(10.0));

    ExprGraph id = ExprGraph::identity(3);
    const double pt3[3] = {1, 2, 3};
    auto idout = id.eval(std::span<const double>(pt3, 3));
    CHECK(idout[1] == 2.0);
}

TEST_CASE("to_text round trips through the parser") {
    for (const char* src : {"x1^3 - 2*x2 + 1", "sin(x1)*exp(x2/3)", "sqrt(x1 + 5)/x2",
                            "((x1))*(-x2)^2"}) {
        ExprGraph g = parse_expression(src, 2);
        ExprGraph back = parse_expression_list(to_text(g), 2);
        for (double x : {0.7, 1.3, 2.9})
            for (double y : {1.1, 2.0}) {
                const double pt[2] = {x, y};
                CHECK(g.eval(std::span<const double>(pt, 2))[0] ==
                      doctest::Approx(back.eval(std::span<const double>(pt, 2))[0]));
            }
    }
}

TEST_CASE("graph_polynomials expands exactly") {
    ExprGraph g = parse_expression("(x1 + x2)^2 - x1^2 - x2^2");
    Poly p = graph_polynomials(g)[0];  // = 2*x1*x2
    Eigen::Vector2d pt(3, 5);
    CHECK(p.eval(pt) == doctest::Approx(30.0));
    CHECK(p.terms().size() == 1);

    CHECK_THROWS_WITH_AS(graph_polynomials(parse_expression("sin(x1)")),
                         doctest::Contains("not polynomial"), std::invalid_argument);
}
