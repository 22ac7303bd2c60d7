#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "equiloc/poly.hpp"

using namespace equiloc;

namespace {

RingPtr qring(std::vector<std::string> vars) { return make_ring(FieldSpec{0}, std::move(vars)); }

}  // namespace

TEST_CASE("parser handles precedence and whitespace") {
    auto r = qring({"x", "y"});
    CHECK(parse_poly(r, "x + y") == parse_poly(r, " x+y "));
    CHECK(parse_poly(r, "x^2*y") == parse_poly(r, "x*x*y"));
    CHECK(parse_poly(r, "2*x^3") == parse_poly(r, "2*x*x*x"));
    CHECK(parse_poly(r, "x - x") == Poly::zero(r));
    CHECK(parse_poly(r, "(x + y)^2") ==
          parse_poly(r, "x^2 + 2*x*y + y^2"));
    CHECK(parse_poly(r, "-x") == -Poly::variable(r, 0));
    CHECK(parse_poly(r, "x^2*y - 1") == parse_poly(r, "-1 + y*x^2"));
}

TEST_CASE("parser reports positions") {
    auto r = qring({"x"});
    try {
        parse_poly(r, "x + z");
        CHECK(false);
    } catch (const PolyParseError& e) {
        CHECK(e.pos.line == 1);
        CHECK(e.pos.column == 5);
    }
    CHECK_THROWS_AS(parse_poly(r, "x +"), PolyParseError);
    CHECK_THROWS_AS(parse_poly(r, "x ^ y"), PolyParseError);
    CHECK_THROWS_AS(parse_poly(r, "(x"), PolyParseError);
}

TEST_CASE("arithmetic over F_p reduces coefficients") {
    auto r = make_ring(FieldSpec{5}, {"x"});
    Poly f = parse_poly(r, "3*x + 4*x");
    CHECK(f == parse_poly(r, "2*x"));
    CHECK(parse_poly(r, "5*x") == Poly::zero(r));
}

TEST_CASE("printing round-trips through the parser") {
    auto r = qring({"x", "y", "z"});
    for (const char* text : {"x^2*y - z + 3", "-x + 1", "x*y*z", "0", "2", "x - y"}) {
        Poly f = parse_poly(r, text);
        CHECK(parse_poly(r, f.str()) == f);
    }
}

TEST_CASE("grevlex and lex leading terms") {
    auto r = qring({"x", "y", "z"});
    Poly f = parse_poly(r, "x*z + y^2");  // same degree
    // grevlex: y^2 > xz because the last nonzero of (0,2,0)-(1,0,1) is -1.
    CHECK(f.leading_mono() == Mono{0, 2, 0});
    auto rl = make_ring(FieldSpec{0}, {"x", "y", "z"}, MonoOrder::Lex);
    Poly g = parse_poly(rl, "x*z + y^2");
    CHECK(g.leading_mono() == Mono{1, 0, 1});
}

TEST_CASE("grading degrees and components") {
    CharacterLattice z(1, {});
    auto r = qring({"x", "y"});
    Grading g{z, {z.make({Int(1)}), z.make({Int(0)})}};

    Poly f = parse_poly(r, "x + y^2");
    auto comps = g.components(f);
    REQUIRE(comps.size() == 2);
    CHECK(comps.at(z.make({Int(1)})) == parse_poly(r, "x"));
    CHECK(comps.at(z.make({Int(0)})) == parse_poly(r, "y^2"));

    Grading gh{z, {z.make({Int(1)}), z.make({Int(-1)})}};
    CHECK(gh.is_homogeneous(parse_poly(r, "x*y - 1")));
    CHECK(!gh.is_homogeneous(parse_poly(r, "x + 1")));
}

TEST_CASE("homogeneous components under a subgroup") {
    CharacterLattice z(1, {});
    auto mu3 = quotient_lattice(z, {z.make({Int(3)})});
    auto r = qring({"x"});
    Grading g{z, {z.make({Int(1)})}};

    // x^3 has C-degree 0 under mu_3, x has C-degree 1.
    Poly f = parse_poly(r, "x^3 + x");
    auto comps = homogeneous_components(f, g, mu3);
    REQUIRE(comps.size() == 2);
    CHECK(comps.at(mu3.quotient().zero()) == parse_poly(r, "x^3"));
    CHECK(comps.at(mu3.quotient().make({Int(1)})) == parse_poly(r, "x"));

    // Whole group: x*y with weights (1,-1) is concentrated in degree 0.
    auto r2 = qring({"x", "y"});
    Grading g2{z, {z.make({Int(1)}), z.make({Int(-1)})}};
    auto whole = SubgroupPresentation::whole_group(z);
    auto comps2 = homogeneous_components(parse_poly(r2, "x*y"), g2, whole);
    REQUIRE(comps2.size() == 1);
    CHECK(comps2.begin()->first == z.zero());
}

TEST_CASE("substitution is a ring map") {
    auto r = qring({"x", "y"});
    Poly f = parse_poly(r, "x^2 + y");
    std::vector<Poly> images{parse_poly(r, "y"), parse_poly(r, "x + 1")};
    CHECK(f.substitute(images, r) == parse_poly(r, "y^2 + x + 1"));
}
