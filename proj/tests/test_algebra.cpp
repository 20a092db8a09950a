#include "doctest.h"

#include "weil/algebra.hpp"
#include "weil/sampling.hpp"

#include <set>

using namespace weil;

namespace {

// Structure constants as a dense table for hand-built fixtures.
AlgebraPtr make_table(int dim, const std::vector<std::tuple<int, int, int, double>>& entries,
                      Eigen::VectorXd unit, Eigen::RowVectorXd aug) {
    std::vector<double> sc(std::size_t(dim) * dim * dim, 0.0);
    for (auto [i, j, k, v] : entries) sc[(std::size_t(i) * dim + j) * dim + k] = v;
    return WeilAlgebra::create(std::move(unit), std::move(sc), std::move(aug));
}

} // namespace

TEST_CASE("monomial quotient: dual numbers") {
    AlgebraPtr d = make_monomial_quotient(1, {{2}});
    CHECK(d->dim() == 2);
    CHECK(d->height() == 1);
    CHECK(d->label(0) == "1");
    CHECK(d->label(1) == "x");
    // x * x = 0
    AlgebraElement x = d->basis_element(1);
    CHECK((x * x).coeffs().lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(validate(d).valid);
}

TEST_CASE("monomial quotient: r-jet algebras") {
    for (int r = 0; r <= 4; ++r) {
        AlgebraPtr j = jet_algebra(r);
        CHECK(j->dim() == r + 1);
        CHECK(j->height() == r);
        CHECK(validate(j).valid);
    }
}

TEST_CASE("monomial quotient: two variables with mixed exclusions") {
    // exclusions {x^2, y^2, (xy)^2}; brute-force enumeration of the survivors
    std::vector<std::vector<int>> excl = {{2, 0}, {0, 2}, {2, 2}};
    std::set<std::pair<int, int>> survivors;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            bool killed = false;
            for (const auto& g : excl)
                if (a >= g[0] && b >= g[1]) killed = true;
            if (!killed) survivors.insert({a, b});
        }
    REQUIRE(survivors.size() == 4);  // {1, x, y, xy}

    AlgebraPtr q = make_monomial_quotient(2, excl);
    CHECK(q->dim() == 4);
    CHECK(q->height() == 2);
    CHECK(q->label(3) == "x*y");
    CHECK(validate(q).valid);
}

TEST_CASE("monomial quotient: rejection cases") {
    CHECK_THROWS_WITH_AS(make_monomial_quotient(2, {{2, 0}}),
                         doctest::Contains("no pure power of variable 'y'"),
                         std::invalid_argument);
    CHECK_THROWS_AS(make_monomial_quotient(0, {{1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_monomial_quotient(1, {{0}}), std::invalid_argument);
}

TEST_CASE("validate: broken dual table with x^2 = -1") {
    AlgebraPtr broken = make_table(2,
                                   {{0, 0, 0, 1.0},
                                    {0, 1, 1, 1.0},
                                    {1, 0, 1, 1.0},
                                    {1, 1, 0, -1.0}},
                                   Eigen::Vector2d(1, 0), Eigen::RowVector2d(1, 0));
    ValidationReport rep = validate(broken);
    CHECK_FALSE(rep.valid);
    CHECK(rep.height == -1);
    bool saw_nilpotency = false, saw_aug = false;
    for (const auto& issue : rep.issues) {
        if (issue.identity.find("nilpotency") != std::string::npos) saw_nilpotency = true;
        if (issue.identity.find("aug(xy)") != std::string::npos) saw_aug = true;
    }
    CHECK(saw_nilpotency);
    CHECK(saw_aug);
}

TEST_CASE("validate: R x R with first-projection augmentation") {
    AlgebraPtr rxr = direct_sum({real_algebra(), real_algebra()});
    ValidationReport rep = validate(rxr);
    CHECK_FALSE(rep.valid);  // ker(aug) contains the idempotent (0,1)
    CHECK(rep.height == -1);
}

TEST_CASE("element arithmetic in dual numbers") {
    AlgebraPtr d = dual_numbers();
    AlgebraElement a = d->scalar(3) + d->basis_element(1) * 2.0;   // 3 + 2x
    AlgebraElement b = d->scalar(1) + d->basis_element(1) * 5.0;   // 1 + 5x
    AlgebraElement p = a * b;                                      // 3 + 17x
    CHECK(p.coeff(0) == doctest::Approx(3.0));
    CHECK(p.coeff(1) == doctest::Approx(17.0));
}

TEST_CASE("element arithmetic: unit law and binomial in 2-jets") {
    AlgebraPtr j2 = jet_algebra(2);
    Rng rng(5);
    AlgebraElement a = random_element(j2, rng);
    CHECK(((a * j2->one()).coeffs() - a.coeffs()).lpNorm<Eigen::Infinity>() == 0.0);

    AlgebraElement one_plus_x = j2->one() + j2->basis_element(1);
    AlgebraElement sq = one_plus_x * one_plus_x;
    CHECK(sq.coeff(0) == doctest::Approx(1.0));
    CHECK(sq.coeff(1) == doctest::Approx(2.0));
    CHECK(sq.coeff(2) == doctest::Approx(1.0));
}

TEST_CASE("element arithmetic rejects mixed algebras") {
    AlgebraElement a = dual_numbers()->one();
    AlgebraElement b = jet_algebra(2)->one();
    CHECK_THROWS_WITH_AS(a * b, doctest::Contains("different algebras"), std::invalid_argument);
}

TEST_CASE("elem_invert: geometric series") {
    AlgebraPtr d = dual_numbers();
    AlgebraElement a = d->scalar(2) + d->basis_element(1) * 4.0;  // 2 + 4x
    AlgebraElement inv = a.inverse();
    CHECK(inv.coeff(0) == doctest::Approx(0.5));
    CHECK(inv.coeff(1) == doctest::Approx(-1.0));
    CHECK(((a * inv).coeffs() - d->unit()).lpNorm<Eigen::Infinity>() < 1e-15);

    CHECK(((d->one().inverse()).coeffs() - d->unit()).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK_THROWS_WITH_AS(d->basis_element(1).inverse(),
                         "not invertible: augmentation is zero", std::domain_error);
}

TEST_CASE("elem_invert across presets against the unit, randomized") {
    Rng rng(99);
    for (const auto& a : {dual_numbers(), jet_algebra(3), jet_algebra(2, 2)}) {
        for (int t = 0; t < 50; ++t) {
            AlgebraElement x = random_element(a, rng);
            if (std::abs(x.aug()) < 0.2) x += a->scalar(1.0);
            CHECK(((x * x.inverse()).coeffs() - a->unit()).lpNorm<Eigen::Infinity>() < 1e-9);
        }
    }
}

TEST_CASE("tensor product: dual x dual matches the two-variable quotient") {
    AlgebraPtr dd = tensor_product(dual_numbers(), dual_numbers());
    CHECK(dd->dim() == 4);
    CHECK(dd->height() == 2);
    CHECK(validate(dd).valid);

    // basis order 1(x)1, x(x)1, 1(x)x, x(x)x matches 1, x, y, xy of the
    // quotient with the identity matrix as the isomorphism
    AlgebraPtr q = make_monomial_quotient(2, {{2, 0}, {0, 2}});
    AlgebraHom iso = AlgebraHom::make(Eigen::MatrixXd::Identity(4, 4), dd, q);
    CHECK(iso.injective());
    CHECK(iso.surjective());
}

TEST_CASE("tensor product: unit factor changes nothing") {
    AlgebraPtr a = jet_algebra(2);
    AlgebraPtr ar = tensor_product(a, real_algebra());
    CHECK(ar->dim() == a->dim());
    CHECK(ar->height() == a->height());
    AlgebraHom iso = AlgebraHom::make(Eigen::MatrixXd::Identity(3, 3), ar, a);
    CHECK(iso.injective());
}

TEST_CASE("tensor product: 2-jet x dual") {
    AlgebraPtr t = tensor_product(jet_algebra(2), dual_numbers());
    CHECK(t->dim() == 6);
    CHECK(t->height() == 3);
    CHECK(validate(t).valid);
}

TEST_CASE("exchange isomorphism") {
    AlgebraPtr d = dual_numbers();
    AlgebraHom ex = exchange_iso(d, d);
    // swaps x(x)1 <-> 1(x)x, fixes 1(x)1 and x(x)x
    Eigen::MatrixXd m = ex.matrix();
    CHECK(m(0, 0) == 1.0);
    CHECK(m(2, 1) == 1.0);
    CHECK(m(1, 2) == 1.0);
    CHECK(m(3, 3) == 1.0);

    // involution: the two exchanges compose to the identity
    AlgebraHom back = exchange_iso(d, d);
    CHECK((back.matrix() * m - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);

    AlgebraHom ex_jd = exchange_iso(jet_algebra(2), dual_numbers());
    AlgebraHom ex_dj = exchange_iso(dual_numbers(), jet_algebra(2));
    CHECK((ex_dj.matrix() * ex_jd.matrix() - Eigen::MatrixXd::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("make_hom: augmentation, inclusion, generator scaling") {
    AlgebraPtr d = dual_numbers();
    AlgebraPtr r = real_algebra();

    AlgebraHom aug = AlgebraHom::make(d->aug(), d, r);
    CHECK(aug.surjective());
    CHECK_FALSE(aug.injective());

    AlgebraHom incl = AlgebraHom::make(d->unit(), r, d);
    CHECK(incl.injective());
    CHECK_FALSE(incl.surjective());

    Eigen::MatrixXd scale(2, 2);
    scale << 1, 0, 0, 2;  // 1 -> 1, x -> 2x
    AlgebraHom sc = AlgebraHom::make(scale, d, d);
    CHECK(sc.injective());
    CHECK(sc.surjective());

    Eigen::MatrixXd bad(2, 2);
    bad << 1, 1, 0, 1;  // 1 -> 1, x -> 1 + x is not multiplicative
    CHECK_THROWS_WITH_AS(AlgebraHom::make(bad, d, d), doctest::Contains("basis pair"),
                         std::invalid_argument);
}

TEST_CASE("rebasing keeps dim and height") {
    Rng rng(17);
    for (const auto& a : {dual_numbers(), jet_algebra(3), jet_algebra(2, 2)}) {
        AlgebraPtr moved = change_basis(a, random_orthogonal(a->dim(), rng));
        ValidationReport rep = validate(moved);
        CHECK(rep.valid);
        CHECK(moved->dim() == a->dim());
        CHECK(moved->height() == a->height());
    }
}

TEST_CASE("random element laws at 1e-12") {
    Rng rng(23);
    for (const auto& a : {jet_algebra(2, 2), tensor_product(dual_numbers(), jet_algebra(2))}) {
        for (int t = 0; t < 100; ++t) {
            AlgebraElement x = random_element(a, rng), y = random_element(a, rng),
                           z = random_element(a, rng);
            CHECK((((x * y) * z).coeffs() - (x * (y * z)).coeffs()).lpNorm<Eigen::Infinity>() <
                  1e-12);
            CHECK(((x * y).coeffs() - (y * x).coeffs()).lpNorm<Eigen::Infinity>() < 1e-12);
            CHECK(std::abs((x * y).aug() - x.aug() * y.aug()) < 1e-12);
        }
    }
}
