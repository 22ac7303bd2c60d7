#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "equiloc/fixedloc.hpp"

using namespace equiloc;

namespace {

Character ch(const CharacterLattice& l, std::vector<long> coords) {
    std::vector<Int> v(coords.begin(), coords.end());
    return l.make(std::move(v));
}

struct Setup {
    CharacterLattice gm{1, {}};  // G_m, characters Z
};

EquivariantAffineScheme scheme(RingPtr r, const CharacterLattice& lat,
                               std::vector<Character> weights,
                               std::initializer_list<const char*> gens) {
    Ideal ideal{r, {}};
    for (const char* g : gens) ideal.generators.push_back(parse_poly(r, g));
    return EquivariantAffineScheme(r, Grading{lat, std::move(weights)}, ideal);
}

}  // namespace

TEST_CASE("fixed locus of a linear G_m action is the zero-weight axis") {
    Setup s;
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    auto x = scheme(r, s.gm, {ch(s.gm, {1}), ch(s.gm, {0})}, {});
    auto whole = SubgroupPresentation::whole_group(s.gm);
    Ideal fixed = fixed_locus_ideal(x, whole);
    CHECK(ideal_equal(fixed, Ideal{r, {parse_poly(r, "x")}}));
}

TEST_CASE("the hyperbola has empty fixed locus") {
    Setup s;
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    auto x = scheme(r, s.gm, {ch(s.gm, {1}), ch(s.gm, {-1})}, {"x*y - 1"});
    auto whole = SubgroupPresentation::whole_group(s.gm);
    CHECK(ideal_is_unit(fixed_locus_ideal(x, whole)));
}

TEST_CASE("mu_p fixed locus keeps only zero-restriction weights") {
    CharacterLattice z(1, {});
    auto mup = quotient_lattice(z, {ch(z, {5})});
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    Grading g{z, {ch(z, {0}), ch(z, {1})}};
    EquivariantAffineScheme x(r, g, Ideal{r, {}});
    Ideal fixed = fixed_locus_ideal(x, mup);
    CHECK(ideal_equal(fixed, Ideal{r, {parse_poly(r, "y")}}));
}

TEST_CASE("non-homogeneous presentations are rejected") {
    Setup s;
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    Grading g{s.gm, {ch(s.gm, {1}), ch(s.gm, {0})}};
    Ideal bad{r, {parse_poly(r, "x + y")}};
    CHECK_THROWS_AS(EquivariantAffineScheme(r, g, bad), InputError);
}

TEST_CASE("sigma_G on the affine line over mu_p") {
    CharacterLattice z(1, {});
    auto mup = quotient_lattice(z, {ch(z, {5})});
    auto r = make_ring(FieldSpec{0}, {"x"});
    EquivariantAffineScheme x(r, Grading{z, {ch(z, {1})}}, Ideal{r, {}});

    auto terms = sigma_g(x, mup, parse_poly(r, "x"));
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].gamma == ch(z, {-1}));
    CHECK(terms[0].component == parse_poly(r, "x"));

    // x^5 has C-degree 0, killed by pi_G.
    CHECK(sigma_g(x, mup, parse_poly(r, "x^5")).empty());

    auto mixed = sigma_g(x, mup, parse_poly(r, "1 + x"));
    REQUIRE(mixed.size() == 1);
    CHECK(mixed[0].component == parse_poly(r, "x"));

    // Every summand e_{-gamma} (x) a_gamma has total degree zero.
    auto g = x.grading();
    for (const auto& t : sigma_g(x, mup, parse_poly(r, "x^3 + 2*x^2 + x"))) {
        auto deg = g.degree(t.component);
        REQUIRE(deg.has_value());
        CHECK(z.is_zero(z.add(t.gamma, *deg)));
    }
}

TEST_CASE("concentration section on representations") {
    Setup s;
    auto whole = SubgroupPresentation::whole_group(s.gm);
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    auto x = scheme(r, s.gm, {ch(s.gm, {1}), ch(s.gm, {2})}, {});
    auto res = concentration_section(x, whole);
    CHECK(res.verified);
    CHECK(res.rep.chars == std::vector<Character>{ch(s.gm, {-2}), ch(s.gm, {-1})});
    CHECK(ideal_equal(zero_locus(res.section, x), Ideal{r, {parse_poly(r, "x"), parse_poly(r, "y")}}));
}

TEST_CASE("concentration section on mu_5 with a trivial weight") {
    CharacterLattice z(1, {});
    auto mu5 = quotient_lattice(z, {ch(z, {5})});
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    Grading g{z, {ch(z, {0}), ch(z, {3})}};
    EquivariantAffineScheme x(r, g, Ideal{r, {}});
    auto res = concentration_section(x, mu5);
    CHECK(res.verified);
    REQUIRE(res.rep.chars.size() == 1);
    CHECK(res.rep.chars[0] == ch(z, {-3}));
    REQUIRE(res.section.components.size() == 1);
    CHECK(res.section.components[0] == parse_poly(r, "y"));
}

TEST_CASE("concentration section on the hyperbola") {
    Setup s;
    auto whole = SubgroupPresentation::whole_group(s.gm);
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    auto x = scheme(r, s.gm, {ch(s.gm, {1}), ch(s.gm, {-1})}, {"x*y - 1"});
    auto res = concentration_section(x, whole);
    CHECK(res.verified);
    CHECK(res.rep.chars == std::vector<Character>{ch(s.gm, {-1}), ch(s.gm, {1})});
    CHECK(ideal_is_unit(zero_locus(res.section, x)));
    CHECK(res.rep.fixed_free(whole));

    auto minimal = concentration_section(x, whole, true);
    CHECK(minimal.verified);
    CHECK(minimal.rep.fixed_free(whole));
}

TEST_CASE("trivial action yields the empty section") {
    Setup s;
    auto whole = SubgroupPresentation::whole_group(s.gm);
    auto r = make_ring(FieldSpec{0}, {"x"});
    auto x = scheme(r, s.gm, {ch(s.gm, {0})}, {});
    auto res = concentration_section(x, whole);
    CHECK(res.verified);
    CHECK(res.rep.chars.empty());
    CHECK(ideal_equal(zero_locus(res.section, x), x.ideal()));
}

TEST_CASE("zero locus examples") {
    Setup s;
    auto r = make_ring(FieldSpec{0}, {"x"});
    auto x = scheme(r, s.gm, {ch(s.gm, {1})}, {});
    EquivariantSection sec;
    sec.rep.chars = {ch(s.gm, {-1}), ch(s.gm, {-2})};
    sec.components = {parse_poly(r, "x^2"), parse_poly(r, "x")};
    CHECK(ideal_equal(zero_locus(sec, x), Ideal{r, {parse_poly(r, "x")}}));
}

TEST_CASE("prime power field arithmetic") {
    for (long q : {4L, 8L, 9L, 25L}) {
        GaloisField f(q);
        CHECK(f.size() == q);
        // Field axioms on every triple is overkill; distributivity and
        // inverses over all pairs already pin the tables down.
        for (int a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inverse(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(f.mul(a, b) == f.mul(b, a));
                CHECK(f.mul(a, f.add(b, 1)) == f.add(f.mul(a, b), a));
            }
        }
        // The generator has full multiplicative order.
        int g = f.primitive_element();
        int x = g;
        long order = 1;
        while (x != 1) {
            x = f.mul(x, g);
            ++order;
        }
        CHECK(order == q - 1);
        CHECK(f.roots_of_unity(Int(q - 1)).size() == static_cast<std::size_t>(q - 1));
    }
    CHECK_THROWS_AS(GaloisField(6), InputError);
    CHECK_THROWS_AS(GaloisField(12), InputError);
}

TEST_CASE("fixed point oracle examples") {
    CharacterLattice z(1, {});
    auto mu3 = quotient_lattice(z, {ch(z, {3})});
    auto r = make_ring(FieldSpec{0}, {"x"});
    EquivariantAffineScheme line(r, Grading{z, {ch(z, {1})}}, Ideal{r, {}});
    auto pts = fixed_points_oracle(line, mu3, 7);
    REQUIRE(pts.size() == 1);
    CHECK(pts.count({0}) == 1);

    auto whole = SubgroupPresentation::whole_group(z);
    auto r2 = make_ring(FieldSpec{0}, {"x", "y"});
    EquivariantAffineScheme hyp(r2, Grading{z, {ch(z, {1}), ch(z, {-1})}},
                                Ideal{r2, {parse_poly(r2, "x*y - 1")}});
    CHECK(fixed_points_oracle(hyp, whole, 5).empty());

    EquivariantAffineScheme plane(r2, Grading{z, {ch(z, {0}), ch(z, {1})}}, Ideal{r2, {}});
    auto axis = fixed_points_oracle(plane, mu3, 7);
    CHECK(axis.size() == 7);
    for (const auto& p : axis) CHECK(p[1] == 0);
}

TEST_CASE("oracle matches the fixed locus ideal over several fields") {
    CharacterLattice z(1, {});
    auto mu3 = quotient_lattice(z, {ch(z, {3})});
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    EquivariantAffineScheme x(r, Grading{z, {ch(z, {0}), ch(z, {2})}},
                              Ideal{r, {parse_poly(r, "x^3*y - y")}});
    Ideal fixed = fixed_locus_ideal(x, mu3);
    for (long q : {7L, 13L, 4L}) {  // 3 | q - 1 in each case
        GaloisField f(q);
        CHECK(rational_points(fixed, f) == fixed_points_oracle(x, mu3, q));
    }
}

TEST_CASE("oracle rejects fields without enough roots of unity") {
    CharacterLattice z(1, {});
    auto mu3 = quotient_lattice(z, {ch(z, {3})});
    auto r = make_ring(FieldSpec{0}, {"x"});
    EquivariantAffineScheme line(r, Grading{z, {ch(z, {1})}}, Ideal{r, {}});
    CHECK_THROWS_AS(fixed_points_oracle(line, mu3, 5), InputError);
}

TEST_CASE("user sections vanish on the fixed locus (containment)") {
    // Ze(s) <= fixed ideal as ideals, for any equivariant section of a
    // representation with V^C = 0.
    Setup s;
    auto whole = SubgroupPresentation::whole_group(s.gm);
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    auto x = scheme(r, s.gm, {ch(s.gm, {1}), ch(s.gm, {2})}, {});
    Ideal fixed = fixed_locus_ideal(x, whole);
    EquivariantSection sec;
    sec.rep.chars = {ch(s.gm, {-2})};
    sec.components = {parse_poly(r, "x^2 + 3*y")};  // homogeneous of degree 2
    CHECK(sec.rep.fixed_free(whole));
    for (const Poly& g : zero_locus(sec, x).generators) CHECK(ideal_member(g, fixed));
}

TEST_CASE("zero loci pull back contravariantly") {
    // For a graded substitution f, the image of Ze(s) lands in Ze(f*(s)).
    Setup s;
    auto r = make_ring(FieldSpec{0}, {"x", "y"});
    auto x = scheme(r, s.gm, {ch(s.gm, {1}), ch(s.gm, {1})}, {});
    EquivariantSection sec;
    sec.rep.chars = {ch(s.gm, {-1})};
    sec.components = {parse_poly(r, "x - y")};
    Ideal ze = zero_locus(sec, x);
    // Substitution x -> x, y -> 2x - y is degree preserving.
    std::vector<Poly> images{parse_poly(r, "x"), parse_poly(r, "2*x - y")};
    EquivariantSection pulled;
    pulled.rep = sec.rep;
    pulled.components = {sec.components[0].substitute(images, r)};
    Ideal ze_pulled = zero_locus(pulled, x);
    for (const Poly& g : ze.generators)
        CHECK(ideal_member(g.substitute(images, r), ze_pulled));
}

TEST_CASE("normal directions restrict nontrivially on representations") {
    CharacterLattice z(1, {});
    auto mu3 = quotient_lattice(z, {ch(z, {3})});
    auto r = make_ring(FieldSpec{0}, {"x", "y", "z"});
    Grading g{z, {ch(z, {0}), ch(z, {3}), ch(z, {2})}};
    EquivariantAffineScheme x(r, g, Ideal{r, {}});
    // The fixed locus is cut out exactly by the nonzero-restriction axes
    // (y has weight 3 = 0 mod 3, so it is fixed too)...
    Ideal fixed = fixed_locus_ideal(x, mu3);
    CHECK(ideal_equal(fixed, Ideal{r, {parse_poly(r, "z")}}));
    // ...and the normal directions form a representation with no C-trivial
    // summand.
    std::vector<Character> normal;
    for (std::size_t i = 0; i < r->nvars(); ++i)
        if (!mu3.restricts_trivially(g.weights[i])) normal.push_back(g.weights[i]);
    CHECK(Representation::of(z, normal).fixed_free(mu3));
    CHECK(normal.size() == 1);
}
