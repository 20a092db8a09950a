#include "doctest.h"

#include "weil/algebra_io.hpp"
#include "weil/report.hpp"
#include "weil/verify.hpp"

using namespace weil;

TEST_CASE("serialization round trips every preset") {
    for (const auto& a : standard_presets()) {
        AlgebraPtr back = parse_algebra(serialize_algebra(*a), a->name());
        CHECK(back->dim() == a->dim());
        CHECK(back->height() == a->height());
        CHECK(back->unit() == a->unit());
        CHECK(back->aug() == a->aug());
        CHECK(back->structure_constants() == a->structure_constants());
        CHECK(back->basis_labels() == a->basis_labels());
        CHECK(back->generators() == a->generators());
        CHECK(validate(back).valid);
    }
}

TEST_CASE("round trip preserves the lifted coefficient table") {
    AlgebraPtr a = jet_algebra(3);
    AlgebraPtr back = parse_algebra(serialize_algebra(*a));
    ExprGraph g = parse_expression("exp(x1)");
    Eigen::VectorXd at = Eigen::VectorXd::Zero(1);
    CHECK(lift_table(g, build_seeded_input(a, at, {})) ==
          lift_table(g, build_seeded_input(back, at, {})));
}

TEST_CASE("parser accepts comments, blank lines and omitted zero products") {
    const char* text = R"(# dual numbers
dim 2
unit 1 0
aug 1 0
labels 1 x

sc 0 0 -> 0:1
sc 0 1 -> 1:1
# the (1,1) product is zero and has no line
)";
    AlgebraPtr d = parse_algebra(text);
    CHECK(d->dim() == 2);
    CHECK(d->height() == 1);
    CHECK(validate(d).valid);
    CHECK(d->label(1) == "x");
}

TEST_CASE("parser rejections") {
    const std::string head = "dim 2\nunit 1 0\naug 1 0\n";
    // lower-triangle line instead of the stored half
    CHECK_THROWS_WITH_AS(parse_algebra(head + "sc 1 0 -> 1:1\n"),
                         doctest::Contains("i > j"), std::runtime_error);
    // duplicated pair
    CHECK_THROWS_WITH_AS(parse_algebra(head + "sc 0 1 -> 1:1\nsc 0 1 -> 1:2\n"),
                         doctest::Contains("duplicate"), std::runtime_error);
    // malformed entry
    CHECK_THROWS_AS(parse_algebra(head + "sc 0 0 -> nonsense\n"), std::runtime_error);
    // index range
    CHECK_THROWS_AS(parse_algebra(head + "sc 0 5 -> 0:1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_algebra(head + "sc 0 0 -> 7:1\n"), std::runtime_error);
    // missing pieces
    CHECK_THROWS_AS(parse_algebra("dim 2\nunit 1 0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_algebra("unit 1 0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_algebra("dim 2\nunit 1\naug 1 0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_algebra("dim 2\nunit 1 0 0\naug 1 0\n"), std::runtime_error);
    // unknown keys
    CHECK_THROWS_AS(parse_algebra("dim 2\nfoo 1\n"), std::runtime_error);
}

TEST_CASE("verify suites run deterministically") {
    SuiteResult a = verify_algebra(42, 8);
    SuiteResult b = verify_algebra(42, 8);
    REQUIRE(a.properties.size() == b.properties.size());
    for (std::size_t i = 0; i < a.properties.size(); ++i) {
        CHECK(a.properties[i].max_residual == b.properties[i].max_residual);
        CHECK(a.properties[i].trials == b.properties[i].trials);
        CHECK(a.properties[i].passed);
    }
    CHECK_THROWS_AS(run_suites("bogus", 1, 1), std::invalid_argument);
}
