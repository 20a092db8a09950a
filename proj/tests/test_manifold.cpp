#include "doctest.h"

#include "weil/manifold.hpp"
#include "weil/numeric.hpp"
#include "weil/sampling.hpp"

#include <cmath>

using namespace weil;

namespace {
constexpr double kPi = 3.14159265358979323846;

LiftedVector dual_coords(const AlgebraPtr& d, std::initializer_list<double> base,
                         std::initializer_list<double> slope) {
    std::vector<AlgebraElement> entries;
    auto bi = base.begin();
    auto si = slope.begin();
    for (; bi != base.end(); ++bi, ++si)
        entries.push_back(d->scalar(*bi) + d->basis_element(1) * *si);
    return LiftedVector(d, std::move(entries));
}
} // namespace

TEST_CASE("circle: angle charts transport points across the seam") {
    AtlasPtr circle = atlas_circle_two_charts();
    AlgebraPtr d = dual_numbers();

    WeilPoint p(*circle, 0, dual_coords(d, {2.5}, {0.7}));
    WeilPoint q = to_chart(*circle, p, 1);
    CHECK(q.chart == 1);
    CHECK(q.coords[0].coeff(0) == doctest::Approx(2.5));   // upper component: same angle
    CHECK(q.coords[0].coeff(1) == doctest::Approx(0.7));   // affine transition keeps the slot

    WeilPoint m(*circle, 0, dual_coords(d, {-2.5}, {0.7}));
    WeilPoint qm = to_chart(*circle, m, 1);
    CHECK(qm.coords[0].coeff(0) == doctest::Approx(-2.5 + 2 * kPi));
    CHECK(qm.coords[0].coeff(1) == doctest::Approx(0.7));

    WeilPoint back = to_chart(*circle, qm, 0);
    CHECK(rel_residual(back.coords.flat(), m.coords.flat()) < 1e-12);

    // target == source is the identity
    WeilPoint same = to_chart(*circle, p, 0);
    CHECK(same.coords.flat() == p.coords.flat());
}

TEST_CASE("circle: seam points are outside every overlap component") {
    AtlasPtr circle = atlas_circle_two_charts();
    AlgebraPtr d = dual_numbers();
    WeilPoint at_zero(*circle, 0, dual_coords(d, {0.0}, {1.0}));
    CHECK_THROWS_AS(to_chart(*circle, at_zero, 1), std::domain_error);
}

TEST_CASE("to_chart without a declared transition") {
    // two disjoint charts, nothing declared between them
    auto atlas = std::make_shared<Atlas>(std::vector<Chart>{Chart{1, {}, {}, {}},
                                                            Chart{1, {}, {}, {}}},
                                         std::vector<TransitionEntry>{});
    AlgebraPtr d = dual_numbers();
    WeilPoint p(*atlas, 0, dual_coords(d, {1.0}, {1.0}));
    CHECK_THROWS_WITH_AS(to_chart(*atlas, p, 1), doctest::Contains("no declared transition"),
                         std::invalid_argument);
}

TEST_CASE("sphere: stereographic transition at (1,0) applies the inversion Jacobian") {
    AtlasPtr sphere = atlas_sphere_stereographic();
    AlgebraPtr d = dual_numbers();
    // tangent slot (u, v) at base (1, 0); d(inversion) there = diag(-1, 1)
    const double u = 0.37, v = -0.82;
    WeilPoint p(*sphere, 0, dual_coords(d, {1.0, 0.0}, {u, v}));
    WeilPoint q = to_chart(*sphere, p, 1);
    CHECK(q.coords[0].coeff(0) == doctest::Approx(1.0));
    CHECK(q.coords[1].coeff(0) == doctest::Approx(0.0));
    CHECK(q.coords[0].coeff(1) == doctest::Approx(-u));
    CHECK(q.coords[1].coeff(1) == doctest::Approx(v));

    WeilPoint back = to_chart(*sphere, q, 0);
    CHECK(rel_residual(back.coords.flat(), p.coords.flat()) < 1e-12);
}

TEST_CASE("bundle_project and the zero section") {
    AtlasPtr circle = atlas_circle_two_charts();
    AlgebraPtr j2 = jet_algebra(2);
    Rng rng(5);
    LiftedVector coords = random_lifted(j2, Eigen::VectorXd::Constant(1, 1.2), rng);
    WeilPoint p(*circle, 0, coords);
    auto [chart, base] = bundle_project(p);
    CHECK(chart == 0);
    CHECK(base[0] == doctest::Approx(1.2));

    // zero section: lifting the base point projects back to itself
    WeilPoint z(*circle, 0, LiftedVector::from_reals(j2, base));
    CHECK(bundle_project(z).second[0] == base[0]);

    // projection commutes with chart changes
    WeilPoint moved = to_chart(*circle, p, 1);
    const TransitionEntry* t = circle->find_transition(0, 1, base);
    REQUIRE(t != nullptr);
    const double image = t->map.eval(std::span<const double>(base.data(), 1))[0];
    CHECK(bundle_project(moved).second[0] == doctest::Approx(image));
}

TEST_CASE("lift_map: antipodal map on the circle") {
    AtlasPtr circle = atlas_circle_two_charts();
    AlgebraPtr d = dual_numbers();
    ManifoldMap anti = circle_rotation(circle, kPi);

    WeilPoint p(*circle, 0, dual_coords(d, {0.4}, {1.3}));
    WeilPoint q = lift_map(anti, p);
    const double angle = q.chart == 0 ? q.coords[0].coeff(0)
                                      : q.coords[0].coeff(0) > kPi
                                            ? q.coords[0].coeff(0) - 2 * kPi
                                            : q.coords[0].coeff(0);
    CHECK(std::abs(std::remainder(angle - (0.4 + kPi), 2 * kPi)) < 1e-12);
    CHECK(q.coords[0].coeff(1) == doctest::Approx(1.3));  // unit derivative preserves the slot
}

TEST_CASE("lift_map: identity map fixes points") {
    AtlasPtr sphere = atlas_sphere_stereographic();
    AlgebraPtr d = dual_numbers();
    ManifoldMap id = identity_map(sphere);
    WeilPoint p(*sphere, 1, dual_coords(d, {0.7, -0.4}, {0.2, 0.9}));
    WeilPoint q = lift_map(id, p);
    CHECK(q.chart == 1);
    CHECK(q.coords.flat() == p.coords.flat());
}

TEST_CASE("lift_map: height function pulls back to the directional derivative") {
    AtlasPtr sphere = atlas_sphere_stereographic();
    AtlasPtr line = atlas_euclidean(1);
    AlgebraPtr d = dual_numbers();
    ManifoldMap h = sphere_height(sphere, line);

    const Eigen::Vector2d base(0.3, -0.8);
    const Eigen::Vector2d w(0.5, 1.2);
    WeilPoint p(*sphere, 0, dual_coords(d, {base[0], base[1]}, {w[0], w[1]}));
    WeilPoint out = lift_map(h, p);

    auto z_of = [](const Eigen::Vector2d& v) {
        const double rho = v.squaredNorm();
        return (rho - 1.0) / (rho + 1.0);
    };
    const double eps = 1e-6;
    const double fd = (z_of(base + eps * w) - z_of(base - eps * w)) / (2 * eps);
    CHECK(out.coords[0].coeff(0) == doctest::Approx(z_of(base)));
    CHECK(rel_residual(out.coords[0].coeff(1), fd) < 1e-8);
}

TEST_CASE("lift_map result does not depend on the representative") {
    AtlasPtr sphere = atlas_sphere_stereographic();
    AlgebraPtr j2 = jet_algebra(2);
    ManifoldMap rot = sphere_rotation_z(sphere, 0.9);
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        Eigen::Vector2d base(std::uniform_real_distribution<double>(-2, 2)(rng),
                             std::uniform_real_distribution<double>(-2, 2)(rng));
        if (base.norm() < 0.3) continue;
        WeilPoint p(*sphere, 0, random_lifted(j2, base, rng, 0.6));

        std::vector<WeilPoint> results;
        for (std::size_t e = 0; e < rot.entries.size(); ++e)
            if (auto q = lift_map_via(rot, p, e)) results.push_back(*q);
        REQUIRE(results.size() >= 2);
        for (std::size_t i = 1; i < results.size(); ++i) {
            WeilPoint moved = to_chart(*sphere, results[i], results[0].chart);
            CHECK(rel_residual(moved.coords.flat(), results[0].coords.flat()) < 1e-9);
        }
    }
}

TEST_CASE("three-chart circle: rotations and triple-overlap cocycle") {
    AtlasPtr circle = atlas_circle_three_charts();
    AlgebraPtr d = dual_numbers();
    ManifoldMap rot = circle_rotation(circle, 1.0);

    // point at global angle 0.2, home chart 0
    WeilPoint p(*circle, 0, dual_coords(d, {0.2}, {0.6}));
    WeilPoint q = lift_map(rot, p);
    const double centers[3] = {0.0, 2 * kPi / 3, 4 * kPi / 3};
    const double angle = q.coords[0].coeff(0) + centers[q.chart];
    CHECK(std::abs(std::remainder(angle - 1.2, 2 * kPi)) < 1e-12);
    CHECK(q.coords[0].coeff(1) == doctest::Approx(0.6));

    // cocycle through both other charts
    WeilPoint direct = to_chart(*circle, p, 2);
    WeilPoint via = to_chart(*circle, to_chart(*circle, p, 1), 2);
    CHECK(rel_residual(direct.coords.flat(), via.coords.flat()) < 1e-12);
}

TEST_CASE("lift_map with no admissible representative") {
    auto atlas = std::make_shared<Atlas>(std::vector<Chart>{Chart{1, {}, {}, {}},
                                                            Chart{1, {}, {}, {}}},
                                         std::vector<TransitionEntry>{});
    AlgebraPtr d = dual_numbers();
    ManifoldMap f{atlas, atlas, {{0, 0, {}, ExprGraph::identity(1)}}};  // chart 0 only
    WeilPoint p(*atlas, 1, dual_coords(d, {0.5}, {1.0}));
    CHECK_THROWS_WITH_AS(lift_map(f, p), doctest::Contains("no admissible"), std::domain_error);
}

TEST_CASE("is_vector_bundle: dual yes, jet:2 no with a witness") {
    AtlasPtr sphere = atlas_sphere_stereographic();

    VectorBundleReport yes = is_vector_bundle(*sphere, dual_numbers());
    CHECK(yes.vector_bundle);
    CHECK_FALSE(yes.witness.has_value());

    VectorBundleReport no = is_vector_bundle(*sphere, jet_algebra(2));
    CHECK_FALSE(no.vector_bundle);
    REQUIRE(no.witness.has_value());
    CHECK(no.witness->defect > 1e-3);

    // single chart: verdict still follows the height criterion
    AtlasPtr plane = atlas_euclidean(2);
    VectorBundleReport trivial = is_vector_bundle(*plane, jet_algebra(2));
    CHECK_FALSE(trivial.vector_bundle);
    CHECK_FALSE(trivial.witness.has_value());
    CHECK(is_vector_bundle(*plane, dual_numbers()).vector_bundle);
}

TEST_CASE("atlas text format round trips the stock sphere") {
    AtlasPtr sphere = atlas_sphere_stereographic();
    AtlasPtr reparsed = parse_atlas(serialize_atlas(*sphere));
    AlgebraPtr d = dual_numbers();

    WeilPoint p(*reparsed, 0, dual_coords(d, {1.0, 2.0}, {0.3, -0.1}));
    WeilPoint q = to_chart(*reparsed, p, 1);
    WeilPoint q0 = to_chart(*sphere, WeilPoint(*sphere, 0, p.coords), 1);
    CHECK(rel_residual(q.coords.flat(), q0.coords.flat()) < 1e-12);
}

TEST_CASE("atlas parser diagnostics") {
    CHECK_THROWS_WITH_AS(parse_atlas("chart 1 dim 2 domain all\n"),
                         doctest::Contains("ids must be"), std::runtime_error);
    CHECK_THROWS_AS(parse_atlas("chart 0 dim 2 domain x1 ^ 2\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_atlas("trans 0 1 domain all map x1\n"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        parse_atlas("chart 0 dim 1 domain all\ntrans 0 0 domain all mapp x1\n"),
        doctest::Contains("map"), std::runtime_error);

    AtlasPtr torus_like = parse_atlas(
        "# two charts on the line with a shifted overlap\n"
        "chart 0 dim 1 domain x1 > -2, x1 < 2\n"
        "chart 1 dim 1 domain x1 > -2, x1 < 2\n"
        "trans 0 1 domain x1 > 0 map x1 - 1\n"
        "trans 1 0 domain x1 > -1 map x1 + 1\n");
    AlgebraPtr d = dual_numbers();
    WeilPoint p(*torus_like, 0, dual_coords(d, {0.5}, {1.0}));
    WeilPoint q = to_chart(*torus_like, p, 1);
    CHECK(q.coords[0].coeff(0) == doctest::Approx(-0.5));
}
