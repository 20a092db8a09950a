#include "doctest.h"

#include "weil/lift.hpp"
#include "weil/numeric.hpp"
#include "weil/poly.hpp"
#include "weil/sampling.hpp"

#include <cmath>
#include <thread>

using namespace weil;

TEST_CASE("lift_primitive: exp over dual numbers at x") {
    AlgebraPtr d = dual_numbers();
    AlgebraElement a = d->basis_element(1);  // 0 + x
    AlgebraElement out = lift_primitive(taylor_table(UnaryOp::Exp), a);
    CHECK(out.coeff(0) == doctest::Approx(1.0));
    CHECK(out.coeff(1) == doctest::Approx(1.0));
}

TEST_CASE("lift_primitive: zero nilpotent part returns f(lambda) * 1") {
    AlgebraPtr j3 = jet_algebra(3);
    for (UnaryOp op : {UnaryOp::Exp, UnaryOp::Sin, UnaryOp::Cos, UnaryOp::Log, UnaryOp::Sqrt}) {
        AlgebraElement a = j3->scalar(0.7);
        AlgebraElement out = lift_primitive(taylor_table(op), a);
        CHECK(out.coeff(0) == doctest::Approx(taylor_table(op).coeff(0.7, 0)));
        for (int k = 1; k < 4; ++k) CHECK(out.coeff(k) == 0.0);
    }
}

TEST_CASE("lift_primitive: sin over 3-jets at x") {
    AlgebraPtr j3 = jet_algebra(3);
    AlgebraElement out = lift_primitive(taylor_table(UnaryOp::Sin), j3->basis_element(1));
    CHECK(out.coeff(0) == doctest::Approx(0.0));
    CHECK(out.coeff(1) == doctest::Approx(1.0));
    CHECK(out.coeff(2) == doctest::Approx(0.0));
    CHECK(out.coeff(3) == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("taylor tables: order-0 entry equals the plain value") {
    for (double lambda : {0.4, 1.3, 2.7}) {
        CHECK(taylor_table(UnaryOp::Exp).coeff(lambda, 0) == std::exp(lambda));
        CHECK(taylor_table(UnaryOp::Log).coeff(lambda, 0) == std::log(lambda));
        CHECK(taylor_table(UnaryOp::Sqrt).coeff(lambda, 0) == std::sqrt(lambda));
        CHECK(taylor_table(UnaryOp::Inv).coeff(lambda, 0) == 1.0 / lambda);
        CHECK(taylor_table(UnaryOp::Sin).coeff(lambda, 0) == std::sin(lambda));
        CHECK(taylor_table(UnaryOp::PowInt, 3).coeff(lambda, 0) ==
              doctest::Approx(lambda * lambda * lambda));
        CHECK(taylor_table(UnaryOp::PowInt, -2).coeff(lambda, 0) ==
              doctest::Approx(1.0 / (lambda * lambda)));
    }
}

TEST_CASE("lift_primitive rejects domain violations") {
    AlgebraPtr d = dual_numbers();
    CHECK_THROWS_WITH_AS(lift_primitive(taylor_table(UnaryOp::Log), d->scalar(-2)),
                         doctest::Contains("log"), std::domain_error);
    CHECK_THROWS_AS(lift_primitive(taylor_table(UnaryOp::Inv), d->basis_element(1)),
                    std::domain_error);
    CHECK_THROWS_AS(lift_primitive(taylor_table(UnaryOp::PowInt, -1), d->basis_element(1)),
                    std::domain_error);
}

TEST_CASE("eval_lift: square over dual numbers carries the derivative") {
    AlgebraPtr d = dual_numbers();
    ExprGraph g = parse_expression("x1^2");
    LiftedVector v = LiftedVector::seed_generators(d, Eigen::VectorXd::Constant(1, 3.0));
    LiftedVector out = eval_lift(g, v);
    CHECK(out[0].coeff(0) == doctest::Approx(9.0));
    CHECK(out[0].coeff(1) == doctest::Approx(6.0));
}

TEST_CASE("eval_lift: identity graph returns the input unchanged") {
    AlgebraPtr a = jet_algebra(2, 2);
    Rng rng(3);
    LiftedVector v = random_lifted(a, Eigen::Vector3d(0.5, -1.0, 2.0), rng);
    LiftedVector out = eval_lift(ExprGraph::identity(3), v);
    CHECK(out.flat() == v.flat());
}

TEST_CASE("eval_lift: product over dual x dual exposes mixed partials") {
    AlgebraPtr dd = tensor_product(dual_numbers(), dual_numbers());
    ExprGraph g = parse_expression("x1*x2");
    LiftedVector v = LiftedVector::seed_generators(dd, Eigen::Vector2d(3.0, 5.0));
    LiftedVector out = eval_lift(g, v);
    // value, d/dx1, d/dx2, d2/dx1dx2 in basis order 1(x)1, x(x)1, 1(x)x, x(x)x
    CHECK(out[0].coeff(0) == doctest::Approx(15.0));
    CHECK(out[0].coeff(1) == doctest::Approx(5.0));
    CHECK(out[0].coeff(2) == doctest::Approx(3.0));
    CHECK(out[0].coeff(3) == doctest::Approx(1.0));
}

TEST_CASE("eval_lift reports the offending node on domain violations") {
    AlgebraPtr d = dual_numbers();
    ExprGraph g = parse_expression("log(x1 - 5)");
    LiftedVector v = LiftedVector::seed_generators(d, Eigen::VectorXd::Constant(1, 1.0));
    CHECK_THROWS_AS(eval_lift(g, v), EvalDomainError);
}

TEST_CASE("taylor_formula_oracle: cube over 2-jets") {
    AlgebraPtr j2 = jet_algebra(2);
    ExprGraph g = parse_expression("x1^3");
    LiftedVector v = LiftedVector::seed_generators(j2, Eigen::VectorXd::Constant(1, 2.0));
    LiftedVector out = taylor_formula_oracle(g, v);
    CHECK(out[0].coeff(0) == doctest::Approx(8.0));
    CHECK(out[0].coeff(1) == doctest::Approx(12.0));
    CHECK(out[0].coeff(2) == doctest::Approx(6.0));
}

TEST_CASE("taylor_formula_oracle: constants kill all nilpotent slots") {
    AlgebraPtr dd = tensor_product(dual_numbers(), dual_numbers());
    ExprGraph g = parse_expression("3.5", 1);
    Rng rng(9);
    LiftedVector v = random_lifted(dd, Eigen::VectorXd::Constant(1, 0.3), rng);
    LiftedVector out = taylor_formula_oracle(g, v);
    CHECK(out[0].coeff(0) == doctest::Approx(3.5));
    for (int k = 1; k < 4; ++k) CHECK(out[0].coeff(k) == 0.0);
}

TEST_CASE("taylor_formula_oracle: t^2 u over dual x dual") {
    AlgebraPtr dd = tensor_product(dual_numbers(), dual_numbers());
    ExprGraph g = parse_expression("x1^2 * x2");
    LiftedVector v = LiftedVector::seed_generators(dd, Eigen::Vector2d(1.0, 1.0));
    LiftedVector out = taylor_formula_oracle(g, v);
    CHECK(out[0].coeff(0) == doctest::Approx(1.0));
    CHECK(out[0].coeff(1) == doctest::Approx(2.0));
    CHECK(out[0].coeff(2) == doctest::Approx(1.0));
    CHECK(out[0].coeff(3) == doctest::Approx(2.0));
}

TEST_CASE("taylor_formula_oracle rejects transcendental nodes") {
    AlgebraPtr d = dual_numbers();
    LiftedVector v = LiftedVector::seed_generators(d, Eigen::VectorXd::Constant(1, 1.0));
    CHECK_THROWS_AS(taylor_formula_oracle(parse_expression("exp(x1)"), v), std::invalid_argument);
}

TEST_CASE("oracle equals eval_lift on random polynomial graphs") {
    Rng rng(31);
    GraphGenOptions go;
    go.polynomial_only = true;
    for (const auto& a : {tensor_product(dual_numbers(), dual_numbers()), jet_algebra(2, 2)}) {
        for (int t = 0; t < 40; ++t) {
            ExprGraph g = random_graph(rng, 2, 1, go);
            auto x = sample_admissible_point(g, rng);
            if (!x) continue;
            LiftedVector v = random_lifted(a, *x, rng, 0.7);
            CHECK(rel_residual(eval_lift(g, v).flat(), taylor_formula_oracle(g, v).flat()) <
                  1e-9);
        }
    }
}

TEST_CASE("push_hom: augmentation projects to the shadow") {
    AlgebraPtr a = jet_algebra(2);
    AlgebraHom aug = AlgebraHom::make(a->aug(), a, real_algebra());
    Rng rng(7);
    LiftedVector v = random_lifted(a, Eigen::Vector2d(0.4, -1.2), rng);
    LiftedVector shadow = push_hom(aug, v);
    CHECK(shadow.algebra()->dim() == 1);
    CHECK((shadow.flat() - v.shadow()).lpNorm<Eigen::Infinity>() == 0.0);

    AlgebraHom id = AlgebraHom::identity(a);
    CHECK(push_hom(id, v).flat() == v.flat());
}

TEST_CASE("push_hom: exchange swaps the first-order slots of the product example") {
    AlgebraPtr dd = tensor_product(dual_numbers(), dual_numbers());
    ExprGraph g = parse_expression("x1*x2");
    LiftedVector v = LiftedVector::seed_generators(dd, Eigen::Vector2d(3.0, 5.0));
    LiftedVector out = eval_lift(g, v);
    LiftedVector swapped = push_hom(exchange_iso(dual_numbers(), dual_numbers()), out);
    CHECK(swapped[0].coeff(0) == doctest::Approx(15.0));
    CHECK(swapped[0].coeff(1) == doctest::Approx(3.0));
    CHECK(swapped[0].coeff(2) == doctest::Approx(5.0));
    CHECK(swapped[0].coeff(3) == doctest::Approx(1.0));
}

TEST_CASE("recover_algebra reproduces the product tables") {
    for (const auto& a : {dual_numbers(), jet_algebra(2),
                          tensor_product(dual_numbers(), dual_numbers())}) {
        AlgebraPtr rec = recover_algebra(a);
        double worst = 0.0;
        for (std::size_t i = 0; i < a->structure_constants().size(); ++i)
            worst = std::max(worst, std::abs(a->structure_constants()[i] -
                                             rec->structure_constants()[i]));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("functoriality on a fixed composite") {
    AlgebraPtr a = jet_algebra(3);
    ExprGraph h = parse_expression_list("x1 + x2, x1 * x2");     // R^2 -> R^2
    ExprGraph g = parse_expression("sin(x1) * exp(x2 / 4)");     // R^2 -> R
    ExprGraph comp = ExprGraph::compose(g, h);
    Rng rng(11);
    LiftedVector v = random_lifted(a, Eigen::Vector2d(0.3, 0.8), rng, 0.5);
    CHECK(rel_residual(eval_lift(comp, v).flat(), eval_lift(g, eval_lift(h, v)).flat()) < 1e-12);
}

TEST_CASE("division lifts through mul of inv") {
    AlgebraPtr j2 = jet_algebra(2);
    ExprGraph g = parse_expression("1/x1");
    LiftedVector v = LiftedVector::seed_generators(j2, Eigen::VectorXd::Constant(1, 2.0));
    LiftedVector out = eval_lift(g, v);
    // 1/(2+x) = 1/2 - x/4 + x^2/8
    CHECK(out[0].coeff(0) == doctest::Approx(0.5));
    CHECK(out[0].coeff(1) == doctest::Approx(-0.25));
    CHECK(out[0].coeff(2) == doctest::Approx(0.125));
}

TEST_CASE("dual slot against central differences, fixed graph") {
    AlgebraPtr d = dual_numbers();
    ExprGraph g = parse_expression("exp(sin(x1) + x1^2/3)");
    const double x0 = 0.6, h = 1e-5;
    LiftedVector out = eval_lift(g, LiftedVector::seed_generators(d, Eigen::VectorXd::Constant(1, x0)));
    auto f = [&g](double t) {
        const double pt[1] = {t};
        return g.eval(std::span<const double>(pt, 1))[0];
    };
    const double fd = (f(x0 + h) - f(x0 - h)) / (2 * h);
    CHECK(rel_residual(out[0].coeff(1), fd) < 1e-9);
}

TEST_CASE("nested dual-in-dual equals flat dual x dual") {
    AlgebraPtr d = dual_numbers();
    AlgebraPtr dd = tensor_product(d, d);
    Rng rng(13);
    for (int t = 0; t < 25; ++t) {
        ExprGraph g = random_graph(rng, 2, 1);
        auto x = sample_admissible_point(g, rng);
        if (!x) continue;
        LiftedVector v = random_lifted(dd, *x, rng, 0.6);
        CHECK(rel_residual(eval_lift(g, v).flat(), eval_nested(g, v, d, d, dd).flat()) < 1e-9);
    }
}

TEST_CASE("nested jets: jet:2 outer, dual inner") {
    AlgebraPtr j2 = jet_algebra(2);
    AlgebraPtr d = dual_numbers();
    AlgebraPtr t = tensor_product(j2, d);
    Rng rng(29);
    for (int k = 0; k < 15; ++k) {
        ExprGraph g = random_graph(rng, 1, 1);
        auto x = sample_admissible_point(g, rng);
        if (!x) continue;
        LiftedVector v = random_lifted(t, *x, rng, 0.5);
        CHECK(rel_residual(eval_lift(g, v).flat(), eval_nested(g, v, j2, d, t).flat()) < 1e-9);
    }
}

TEST_CASE("negative integer powers lift through the inverse") {
    AlgebraPtr j2 = jet_algebra(2);
    ExprGraph g = parse_expression("x1^-2");
    LiftedVector v = LiftedVector::seed_generators(j2, Eigen::VectorXd::Constant(1, 2.0));
    LiftedVector out = eval_lift(g, v);
    // (2+x)^-2 = 1/4 - x/4 + 3x^2/16
    CHECK(out[0].coeff(0) == doctest::Approx(0.25));
    CHECK(out[0].coeff(1) == doctest::Approx(-0.25));
    CHECK(out[0].coeff(2) == doctest::Approx(3.0 / 16.0));

    LiftedVector zero = LiftedVector::seed_generators(j2, Eigen::VectorXd::Zero(1));
    CHECK_THROWS_AS(eval_lift(g, zero), EvalDomainError);
}

TEST_CASE("seed_generators requires enough generators") {
    CHECK_THROWS_AS(LiftedVector::seed_generators(dual_numbers(), Eigen::Vector2d(1.0, 2.0)),
                    std::invalid_argument);
}

TEST_CASE("concurrent evaluations over shared algebra and graph agree with serial ones") {
    AlgebraPtr a = jet_algebra(2, 2);
    ExprGraph g = parse_expression("exp(x1/4) * sin(x2) + x1^2");
    Rng rng(2025);

    std::vector<LiftedVector> inputs;
    std::vector<Eigen::VectorXd> serial;
    for (int i = 0; i < 64; ++i) {
        inputs.push_back(random_lifted(a, Eigen::Vector2d(0.1 * i - 3.0, 0.05 * i), rng));
        serial.push_back(eval_lift(g, inputs.back()).flat());
    }

    std::vector<Eigen::VectorXd> parallel(inputs.size());
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < inputs.size(); i += 8)
                parallel[i] = eval_lift(g, inputs[i]).flat();
        });
    for (auto& th : pool) th.join();

    for (std::size_t i = 0; i < inputs.size(); ++i) CHECK(parallel[i] == serial[i]);
}
