#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "equiloc/groebner.hpp"

using namespace equiloc;

namespace {

RingPtr qring(std::vector<std::string> vars) { return make_ring(FieldSpec{0}, std::move(vars)); }

Ideal ideal_of(RingPtr r, std::initializer_list<const char*> gens) {
    Ideal ideal{r, {}};
    for (const char* g : gens) ideal.generators.push_back(parse_poly(r, g));
    return ideal;
}

// Naive division-based membership for principal ideals.
bool principal_member(Poly f, const Poly& g) {
    while (!f.is_zero()) {
        if (!mono_divides(g.leading_mono(), f.leading_mono())) return false;
        Scalar factor = f.leading_coeff() / g.leading_coeff();
        f = f - g.mono_scaled(mono_div(f.leading_mono(), g.leading_mono()), factor);
    }
    return true;
}

Poly random_poly(RingPtr r, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> expo(0, 2);
    Poly f = Poly::zero(r);
    for (int t = 0; t < 3; ++t) {
        Mono m(r->nvars());
        for (auto& e : m) e = expo(rng);
        f = f + Poly::term(r, m, Scalar(Rat(coeff(rng)), 0));
    }
    return f;
}

}  // namespace

TEST_CASE("groebner basics") {
    auto r = qring({"x", "y"});
    CHECK(groebner(ideal_of(r, {"x", "y"})).generators ==
          std::vector<Poly>{parse_poly(r, "x"), parse_poly(r, "y")});
    CHECK(groebner(ideal_of(r, {"x + y", "y"})).generators ==
          std::vector<Poly>{parse_poly(r, "x"), parse_poly(r, "y")});
    // 1 = y*x - (xy - 1) lies in the ideal, so the basis is {1}.
    auto gb = groebner(ideal_of(r, {"x*y - 1", "x", "y"})).generators;
    REQUIRE(gb.size() == 1);
    CHECK(gb[0] == parse_poly(r, "1"));
    CHECK(ideal_is_unit(ideal_of(r, {"x*y - 1", "x", "y"})));
}

TEST_CASE("groebner is idempotent") {
    auto r = qring({"x", "y", "z"});
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        Ideal ideal{r, {random_poly(r, rng), random_poly(r, rng)}};
        auto gb1 = groebner(ideal).generators;
        auto gb2 = groebner(gb1);
        CHECK(gb1 == gb2);
    }
}

TEST_CASE("groebner respects the configured monomial order") {
    auto rl = make_ring(FieldSpec{0}, {"x", "y"}, MonoOrder::Lex);
    // Under lex the basis of <x - y^2> eliminates x.
    auto gb = groebner(std::vector<Poly>{parse_poly(rl, "x - y^2")});
    REQUIRE(gb.size() == 1);
    CHECK(gb[0].leading_mono() == Mono{1, 0});
    auto gb2 = groebner(gb);
    CHECK(gb == gb2);
}

TEST_CASE("ideal membership examples") {
    auto r = qring({"x", "y"});
    // x^3 = x(x^2+y^2) - y(xy)
    CHECK(ideal_member(parse_poly(r, "x^3"), ideal_of(r, {"x^2 + y^2", "x*y"})));
    CHECK(!ideal_member(parse_poly(r, "x"), ideal_of(r, {"x^2"})));
    CHECK(ideal_member(Poly::zero(r), ideal_of(r, {"x^2"})));
}

TEST_CASE("ideal equality examples") {
    auto r = qring({"x", "y"});
    CHECK(ideal_equal(ideal_of(r, {"x", "y"}), ideal_of(r, {"x + y", "y"})));
    CHECK(!ideal_equal(ideal_of(r, {"x^2"}), ideal_of(r, {"x"})));
    CHECK(ideal_equal(ideal_of(r, {"x", "y", "x*y - 1"}), ideal_of(r, {"1"})));
}

TEST_CASE("normal form is linear and characterizes membership") {
    auto r = qring({"x", "y", "z"});
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        Ideal ideal{r, {random_poly(r, rng), random_poly(r, rng)}};
        auto gb = groebner(ideal).generators;
        Poly f = random_poly(r, rng), g = random_poly(r, rng);
        CHECK(normal_form(f + g, gb) == normal_form(f, gb) + normal_form(g, gb));
        Poly member = f * ideal.generators[0] + g * ideal.generators[1];
        CHECK(normal_form(member, gb).is_zero());
    }
}

TEST_CASE("principal ideals agree with exact division") {
    auto r = qring({"x", "y"});
    std::mt19937 rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        Poly g = random_poly(r, rng);
        if (g.is_zero()) continue;
        Poly f = random_poly(r, rng);
        Ideal principal{r, {g}};
        CHECK(ideal_member(f, principal) == principal_member(f, g));
        CHECK(ideal_member(f * g, principal));
    }
}

TEST_CASE("is_homogeneous accepts graded ideals with ungraded generators") {
    CharacterLattice z(1, {});
    auto r = qring({"x", "y"});
    Grading diag{z, {z.make({Int(1)}), z.make({Int(-1)})}};
    CHECK(is_homogeneous(ideal_of(r, {"x*y - 1"}), diag));
    Grading g10{z, {z.make({Int(1)}), z.make({Int(0)})}};
    CHECK(!is_homogeneous(ideal_of(r, {"x + y"}), g10));
    Grading g12{z, {z.make({Int(1)}), z.make({Int(2)})}};
    CHECK(is_homogeneous(ideal_of(r, {"x^2 - y"}), g12));
    // x + y^2 is inhomogeneous for weights (2,1) but, together with x, the
    // ideal contains both components.
    Grading g21{z, {z.make({Int(2)}), z.make({Int(1)})}};
    CHECK(is_homogeneous(ideal_of(r, {"x + y^2", "x"}), g21));
}

TEST_CASE("groebner budget raises a resource error") {
    auto r = qring({"x", "y", "z"});
    GroebnerOptions opts;
    opts.max_reductions = 2;
    Ideal ideal = ideal_of(r, {"x^2 + y*z", "y^2 + x*z", "z^2 + x*y"});
    CHECK_THROWS_AS(groebner(ideal, opts), ResourceError);
}

TEST_CASE("base change Q -> F_p on integral examples") {
    // The same generators over Q and over F_5; reduced bases agree mod 5.
    auto rq = qring({"x", "y"});
    auto rp = make_ring(FieldSpec{5}, {"x", "y"});
    for (auto gens : {std::vector<const char*>{"x*y - 1", "x", "y"},
                      std::vector<const char*>{"x^2 + y^2", "x*y"},
                      std::vector<const char*>{"x^2 - y", "y^2 - x"}}) {
        Ideal iq{rq, {}}, ip{rp, {}};
        for (const char* g : gens) {
            iq.generators.push_back(parse_poly(rq, g));
            ip.generators.push_back(parse_poly(rp, g));
        }
        auto gbq = groebner(iq).generators;
        auto gbp = groebner(ip).generators;
        REQUIRE(gbq.size() == gbp.size());
        for (std::size_t i = 0; i < gbq.size(); ++i) {
            Poly reduced = Poly::zero(rp);
            for (const auto& [m, c] : gbq[i].terms())
                reduced = reduced + Poly::term(rp, m, Scalar(c.value(), 5));
            CHECK(reduced == gbp[i]);
        }
    }
}
