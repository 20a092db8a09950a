#include "doctest.h"

#include "weil/algebra.hpp"
#include "weil/decompose.hpp"
#include "weil/sampling.hpp"

#include <set>

using namespace weil;

TEST_CASE("decompose R x R into two copies of R") {
    AlgebraPtr rxr = direct_sum({real_algebra(), real_algebra()});
    Decomposition dec = minimal_idempotents(rxr);
    REQUIRE(dec.idempotents.size() == 2);
    CHECK(dec.summands[0]->dim() == 1);
    CHECK(dec.summands[1]->dim() == 1);

    // idempotents are (1,0) and (0,1) in some order
    Eigen::VectorXd sum = dec.idempotents[0].element.coeffs() + dec.idempotents[1].element.coeffs();
    CHECK((sum - rxr->unit()).lpNorm<Eigen::Infinity>() < 1e-9);
    AlgebraElement prod = dec.idempotents[0].element * dec.idempotents[1].element;
    CHECK(prod.coeffs().lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("decompose a local algebra: single summand") {
    Decomposition dec = minimal_idempotents(dual_numbers());
    REQUIRE(dec.idempotents.size() == 1);
    CHECK((dec.idempotents[0].element.coeffs() - dual_numbers()->unit()).lpNorm<Eigen::Infinity>() <
          1e-10);
    CHECK(dec.summands[0]->dim() == 2);
    CHECK(dec.summands[0]->height() == 1);
    CHECK(validate(dec.summands[0]).valid);
}

TEST_CASE("decompose a rotated D + D") {
    Rng rng(41);
    AlgebraPtr dd = direct_sum({dual_numbers(), dual_numbers()});
    AlgebraPtr rotated = change_basis(dd, random_orthogonal(4, rng));

    Decomposition dec = minimal_idempotents(rotated);
    REQUIRE(dec.idempotents.size() == 2);
    for (const auto& s : dec.summands) {
        CHECK(s->dim() == 2);
        CHECK(s->height() == 1);
        CHECK(validate(s).valid);
    }
    // minimality: pairwise products vanish
    AlgebraElement prod = dec.idempotents[0].element * dec.idempotents[1].element;
    CHECK(prod.coeffs().lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("decompose rejects a non formally real table") {
    // R[x]/(x^2 + 1), the complex numbers: multiplication by x has spectrum +-i
    std::vector<double> sc(8, 0.0);
    auto at = [&sc](int i, int j, int k) -> double& { return sc[(std::size_t(i) * 2 + j) * 2 + k]; };
    at(0, 0, 0) = 1;
    at(0, 1, 1) = 1;
    at(1, 0, 1) = 1;
    at(1, 1, 0) = -1;
    AlgebraPtr cplx = WeilAlgebra::create(Eigen::Vector2d(1, 0), sc, Eigen::RowVector2d(1, 0));
    CHECK_THROWS_WITH_AS(minimal_idempotents(cplx), doctest::Contains("not formally real"),
                         std::domain_error);
}

TEST_CASE("decompose rejects a non-associative table") {
    // x*x = 1 with aug(x) = 0 breaks associativity checks? build a genuinely
    // inconsistent table: x*x = x but unit row intact and c non-associative
    std::vector<double> sc(27, 0.0);
    auto at = [&sc](int i, int j, int k) -> double& { return sc[(std::size_t(i) * 3 + j) * 3 + k]; };
    at(0, 0, 0) = 1;
    at(0, 1, 1) = at(1, 0, 1) = 1;
    at(0, 2, 2) = at(2, 0, 2) = 1;
    at(1, 1, 2) = at(2, 1, 1) = 1;  // x*x = y but y*x = x: (xx)x = yx = x, x(xx) = xy = 0
    AlgebraPtr bad = WeilAlgebra::create(Eigen::Vector3d(1, 0, 0), sc, Eigen::RowVector3d(1, 0, 0));
    CHECK_THROWS_AS(minimal_idempotents(bad), std::invalid_argument);
}

TEST_CASE("decompose reports Newton stagnation with the residual") {
    Rng rng(47);
    AlgebraPtr rotated =
        change_basis(direct_sum({dual_numbers(), dual_numbers()}), random_orthogonal(4, rng));
    DecomposeOptions opts;
    opts.newton_budget = 0;  // forbid any lifting iterations
    CHECK_THROWS_WITH_AS(minimal_idempotents(rotated, opts),
                         doctest::Contains("did not converge"), std::runtime_error);
}

TEST_CASE("decompose random rotated sums recovers shapes") {
    Rng rng(2024);
    const std::vector<AlgebraPtr> menu = {real_algebra(), dual_numbers(), jet_algebra(2)};
    for (int t = 0; t < 10; ++t) {
        std::vector<AlgebraPtr> blocks;
        int total = 0;
        while (int(blocks.size()) < 3) {
            const auto& b = menu[std::uniform_int_distribution<int>(0, 2)(rng)];
            if (total + b->dim() > 8) break;
            blocks.push_back(b);
            total += b->dim();
        }
        if (blocks.empty()) blocks.push_back(dual_numbers());
        AlgebraPtr rotated = change_basis(direct_sum(blocks), random_orthogonal(total, rng));
        Decomposition dec = minimal_idempotents(rotated);
        REQUIRE(dec.idempotents.size() == blocks.size());

        std::multiset<std::pair<int, int>> want, got;
        for (const auto& b : blocks) want.insert({b->dim(), b->height()});
        for (const auto& s : dec.summands) got.insert({s->dim(), s->height()});
        CHECK(want == got);
    }
}
