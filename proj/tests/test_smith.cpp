#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "equiloc/smith.hpp"

using namespace equiloc;

namespace {

struct MuP {
    explicit MuP(long p)
        : p_(p), gamma(0, {Int(p)}), ring(EquivariantPointRing::create(gamma)) {}
    long p_;
    CharacterLattice gamma;
    PointRingPtr ring;
    SubgroupPresentation whole() const { return SubgroupPresentation::whole_group(gamma); }
    Character chi(long b) const { return gamma.make({Int(b)}); }
};

bool cc_equal(const CohomClass& x, const CohomClass& y) {
    if (std::holds_alternative<PointElem>(x) && std::holds_alternative<PointElem>(y))
        return std::get<PointElem>(x) == std::get<PointElem>(y);
    if (std::holds_alternative<ModelElem>(x) && std::holds_alternative<ModelElem>(y))
        return std::get<ModelElem>(x) == std::get<ModelElem>(y);
    return false;
}

}  // namespace

TEST_CASE("total power on generators and monomials") {
    MuP mu3(3);
    auto m = SteenrodModule::point_module(mu3.ring);
    PointElem v = mu3.ring->v(1);

    auto pv = m.total_power(CohomClass(v), 10);
    CHECK(cc_equal(pv[0], CohomClass(v)));
    CHECK(cc_equal(pv[1], CohomClass(v.pow(3))));
    for (int i = 2; i <= 10; ++i) CHECK(std::get<PointElem>(pv[i]).is_zero());

    auto pone = m.total_power(m.one_class(), 5);
    CHECK(cc_equal(pone[0], m.one_class()));
    for (int i = 1; i <= 5; ++i) CHECK(std::get<PointElem>(pone[i]).is_zero());

    // P(v^2) = (v + v^3 t)^2 = v^2 + 2 v^4 t + v^6 t^2 over F_3.
    auto pv2 = m.total_power(CohomClass(v.pow(2)), 3);
    CHECK(cc_equal(pv2[0], CohomClass(v.pow(2))));
    CHECK(cc_equal(pv2[1], CohomClass(v.pow(4).scaled(Scalar(Rat(2), 3)))));
    CHECK(cc_equal(pv2[2], CohomClass(v.pow(6))));
    CHECK(std::get<PointElem>(pv2[3]).is_zero());

    // P^j(u) = 0 for j > 0.
    auto pu = m.total_power(CohomClass(mu3.ring->u(1)), 4);
    CHECK(cc_equal(pu[0], CohomClass(mu3.ring->u(1))));
    for (int i = 1; i <= 4; ++i) CHECK(std::get<PointElem>(pu[i]).is_zero());
}

TEST_CASE("total power is multiplicative up to truncation") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> e(0, 3);
    std::uniform_int_distribution<int> mask(0, 3);
    CharacterLattice g(0, {Int(3), Int(3)});
    auto ring = EquivariantPointRing::create(g);
    auto m = SteenrodModule::point_module(ring);
    const int order = 6;
    for (int trial = 0; trial < 25; ++trial) {
        PointElem x(ring), y(ring);
        PMono mx{std::vector<int>{e(rng), e(rng)}, static_cast<std::uint32_t>(mask(rng))};
        PMono my{std::vector<int>{e(rng), e(rng)}, static_cast<std::uint32_t>(mask(rng))};
        x.add_term(mx, Scalar(Rat(1 + e(rng)), 3));
        y.add_term(my, Scalar(Rat(1 + e(rng)), 3));
        PointElem xy = x * y;
        auto px = m.total_power(CohomClass(x), order);
        auto py = m.total_power(CohomClass(y), order);
        auto pxy = m.total_power(CohomClass(xy), order);
        for (int i = 0; i <= order; ++i) {
            PointElem acc = ring->zero();
            for (int r = 0; r <= i; ++r)
                acc = acc + std::get<PointElem>(px[r]) * std::get<PointElem>(py[i - r]);
            CHECK(acc == std::get<PointElem>(pxy[i]));
        }
    }
}

TEST_CASE("P^i(v^{-1}) closed form") {
    auto c0 = power_on_inverse(0, 3);
    CHECK(c0.den.size() == 1);
    CHECK(std::get<PointElem>(c0.num) ==
          EquivariantPointRing::create(CharacterLattice(0, {Int(3)}))->one());

    MuP mu3(3);
    auto c1 = power_on_inverse(1, 3);
    CHECK(c1.den.empty());
    CHECK(std::get<PointElem>(c1.num) == -mu3.ring->v(1));

    auto c2 = power_on_inverse(2, 3);
    CHECK(std::get<PointElem>(c2.num) == mu3.ring->v(1).pow(3));

    auto c15 = power_on_inverse(1, 5);
    MuP mu5(5);
    CHECK(std::get<PointElem>(c15.num) == -mu5.ring->v(1).pow(3));
}

TEST_CASE("series inverse oracle matches the closed form") {
    for (long p : {3L, 5L, 7L}) {
        CharacterLattice gamma(0, {Int(p)});
        auto whole = SubgroupPresentation::whole_group(gamma);
        auto oracle = series_inverse_oracle(p, 10);
        for (int i = 0; i <= 10; ++i)
            CHECK(localize_eq(oracle[static_cast<std::size_t>(i)], power_on_inverse(i, p), whole));
    }
}

TEST_CASE("instability of basic localized classes") {
    MuP mu3(3);
    auto m = SteenrodModule::point_module(mu3.ring);
    auto c = mu3.whole();
    Character can = mu3.chi(1);

    CHECK(is_unstable(m, LocalizedClass{CohomClass(mu3.ring->v(1)), {}}, c));
    CHECK(!is_unstable(m, LocalizedClass{CohomClass(mu3.ring->one()), {can}}, c));
    CHECK(!is_unstable(m, LocalizedClass{CohomClass(mu3.ring->u(1)), {can}}, c));
    // v^2 / v is v after stripping.
    CHECK(is_unstable(m, LocalizedClass{CohomClass(mu3.ring->v(1).pow(2)), {can}}, c));
}

TEST_CASE("instability on projective models sees the idempotent classes") {
    MuP mu3(3);
    auto model = ProjectiveModelRing::create(mu3.ring, {mu3.chi(0), mu3.chi(1)});
    auto m = SteenrodModule::model_module(model);
    auto c = mu3.whole();
    Character can = mu3.chi(1);

    // zeta / v is unstable (it is -e times the second idempotent), even
    // though v does not divide zeta in the presentation basis.
    CHECK(is_unstable(m, LocalizedClass{CohomClass(model->zeta()), {can}}, c));
    // zeta / v^2 is not.
    CHECK(!is_unstable(m, LocalizedClass{CohomClass(model->zeta()), {can, can}}, c));
    // u * zeta / v is unstable.
    ModelElem uz = model->zeta() * model->embed(mu3.ring->u(1));
    CHECK(is_unstable(m, LocalizedClass{CohomClass(uz), {can}}, c));
}

TEST_CASE("unstable part of the point ring is the unlocalized module") {
    for (long p : {3L, 5L}) {
        MuP mu(p);
        auto m = SteenrodModule::point_module(mu.ring);
        Window w{0, 20, 0, 10};
        auto un = unstable_part(m, mu.whole(), w, 2);
        // Everything certified has an empty denominator.
        for (const auto& y : un.certified) CHECK(y.den.empty());
        // And the certified set is exactly the monomial basis in the window.
        std::size_t expected = 0;
        for (long j = 0; 2 * j <= w.a1; ++j) {
            if (w.contains(Bidegree{2 * j, j})) ++expected;
            if (w.contains(Bidegree{2 * j + 1, j + 1})) ++expected;
        }
        CHECK(un.certified.size() == expected);
        // v^{-1} and u v^{-1} live below the window; reject them directly.
        CHECK(!is_unstable(m, LocalizedClass{CohomClass(mu.ring->one()), {mu.chi(1)}}, mu.whole()));
        CHECK(!is_unstable(m, LocalizedClass{CohomClass(mu.ring->u(1)), {mu.chi(1)}}, mu.whole()));
    }
}

TEST_CASE("multiplication by v is injective on window bases") {
    CharacterLattice g(0, {Int(3), Int(3)});
    auto ring = EquivariantPointRing::create(g);
    // All basis monomials with bidegree in a window.
    std::vector<PointElem> basis;
    for (int b1 = 0; b1 <= 3; ++b1)
        for (int b2 = 0; b2 <= 3; ++b2)
            for (std::uint32_t mask = 0; mask < 4; ++mask) {
                PointElem x(ring);
                x.add_term(PMono{{b1, b2}, mask}, Scalar(Rat(1), 3));
                basis.push_back(x);
            }
    for (int j = 1; j <= 2; ++j) {
        std::vector<PointElem> images;
        for (const auto& x : basis) {
            PointElem y = x * ring->v(j);
            CHECK(!y.is_zero());
            images.push_back(y);
        }
        for (std::size_t a = 0; a < images.size(); ++a)
            for (std::size_t b = a + 1; b < images.size(); ++b)
                CHECK(!(images[a] == images[b]));
    }
}

TEST_CASE("kunneth extension builds the torsion point rings") {
    // Extension of the trivial module: H_{mu_p}(pt).
    auto m1 = kunneth_extend(3);
    CHECK(m1.point_ring()->torsion_count() == 1);
    CHECK(m1.point_ring()->torsion_prime() == 3);

    // Iterating yields H_{(mu_p)^n}(pt).
    auto m2 = kunneth_extend(m1);
    auto m3 = kunneth_extend(m2);
    CHECK(m3.point_ring()->torsion_count() == 3);

    // Free-basis count in a small window matches the closed form: monomials
    // v^a times square-free u-subsets.
    Window w{0, 4, 0, 2};
    auto un = unstable_part(m2, SubgroupPresentation::whole_group(m2.point_ring()->group()), w, 0);
    std::size_t expected = 0;
    for (int b1 = 0; 2 * b1 <= 4; ++b1)
        for (int b2 = 0; 2 * (b1 + b2) <= 4; ++b2)
            for (std::uint32_t mask = 0; mask < 4; ++mask) {
                int uc = (mask & 1 ? 1 : 0) + (mask & 2 ? 1 : 0);
                Bidegree d{2L * (b1 + b2) + uc, static_cast<long>(b1 + b2 + uc)};
                if (w.contains(d)) ++expected;
            }
    CHECK(un.certified.size() == expected);

    // Extending a free rank-2 model keeps the rank.
    MuP mu3(3);
    auto model = ProjectiveModelRing::create(mu3.ring, {mu3.chi(0), mu3.chi(1)});
    auto mm = SteenrodModule::model_module(model);
    auto ext = kunneth_extend(mm);
    CHECK(ext.is_model());
    CHECK(ext.model()->dim() == 2);
    CHECK(ext.point_ring()->torsion_count() == 2);
    // Transport of classes is a ring embedding.
    CohomClass z = model->zeta();
    CohomClass ez = kunneth_extend_class(ext, z);
    CHECK(std::get<ModelElem>(ez).ring() == ext.model());
}

TEST_CASE("smith fixed cohomology of a point is rank 1") {
    MuP mu3(3);
    auto m = SteenrodModule::point_module(mu3.ring);
    auto ranks = smith_fixed_cohomology(m, Window{0, 6, 0, 3}, 2);
    CHECK(ranks.total() == 1);
    CHECK(ranks.rank.at(Bidegree{0, 0}) == 1);
}

TEST_CASE("smith fixed cohomology of P(1 (+) chi) is rank 2") {
    for (long p : {3L, 5L}) {
        MuP mu(p);
        auto model = ProjectiveModelRing::create(mu.ring, {mu.chi(0), mu.chi(1)});
        auto m = SteenrodModule::model_module(model);
        auto ranks = smith_fixed_cohomology(m, Window{0, 4, 0, 2}, 2);
        CHECK(ranks.total() == 2);
        CHECK(ranks.rank.at(Bidegree{0, 0}) == 2);
        // Matches the fixed component count.
        auto comps = fixed_components(model, mu.whole());
        CHECK(static_cast<int>(comps.size()) == ranks.total());
    }
}

TEST_CASE("unstable part over (mu_3)^2 is the unlocalized module") {
    // Exercises stripping through GL_2(F_3) coordinate changes: the E_G
    // forms include v1 + v2 and v1 + 2 v2.
    CharacterLattice g(0, {Int(3), Int(3)});
    auto ring = EquivariantPointRing::create(g);
    auto m = SteenrodModule::point_module(ring);
    auto whole = SubgroupPresentation::whole_group(g);
    Window w{0, 6, 0, 3};
    auto un = unstable_part(m, whole, w, 2);
    for (const auto& y : un.certified) CHECK(y.den.empty());
    std::size_t expected = 0;
    for (int b1 = 0; b1 <= 3; ++b1)
        for (int b2 = 0; b2 <= 3; ++b2)
            for (std::uint32_t mask = 0; mask < 4; ++mask) {
                long uc = (mask & 1 ? 1 : 0) + (mask & 2 ? 1 : 0);
                Bidegree d{2L * (b1 + b2) + uc, b1 + b2 + uc};
                if (w.contains(d)) ++expected;
            }
    CHECK(un.certified.size() == expected);

    // A mixed-form fraction: v1 / (v1 + v2) is not unstable.
    Character diag = g.make({Int(1), Int(1)});
    CHECK(!is_unstable(m, LocalizedClass{CohomClass(ring->v(1)), {diag}}, whole));
    // But (v1 + v2) / (v1 + v2) is (strips to 1).
    PointElem sum = ring->v(1) + ring->v(2);
    CHECK(is_unstable(m, LocalizedClass{CohomClass(sum), {diag}}, whole));
}

TEST_CASE("smith fixed cohomology over (mu_3)^2") {
    CharacterLattice g(0, {Int(3), Int(3)});
    auto ring = EquivariantPointRing::create(g);
    auto model = ProjectiveModelRing::create(
        ring, {g.make({Int(0), Int(0)}), g.make({Int(1), Int(0)})});
    auto m = SteenrodModule::model_module(model);
    auto ranks = smith_fixed_cohomology(m, Window{0, 2, 0, 1}, 1);
    CHECK(ranks.total() == 2);
    CHECK(ranks.rank.at(Bidegree{0, 0}) == 2);
}

TEST_CASE("smith fixed cohomology with three fixed points needs sum numerators") {
    // The idempotents of P(1 (+) chi_1 (+) chi_2) have non-monomial
    // numerators; the kernel computation must still find rank 3 at (0,0).
    CharacterLattice g(0, {Int(3), Int(3)});
    auto ring = EquivariantPointRing::create(g);
    auto model = ProjectiveModelRing::create(
        ring, {g.make({Int(0), Int(0)}), g.make({Int(1), Int(0)}), g.make({Int(0), Int(1)})});
    auto m = SteenrodModule::model_module(model);
    auto ranks = smith_fixed_cohomology(m, Window{0, 2, 0, 1}, 3);
    CHECK(ranks.total() == 3);
    CHECK(ranks.rank.at(Bidegree{0, 0}) == 3);
    auto comps = fixed_components(model, SubgroupPresentation::whole_group(g));
    CHECK(static_cast<int>(comps.size()) == ranks.total());
}

TEST_CASE("overrides change the generator action") {
    MuP mu3(3);
    auto m = SteenrodModule::point_module(mu3.ring);
    // Declare v primitive with P^1(v) = 0: then P(v^k) = v^k.
    m.override_action("v1", ActionTable{});
    auto pv = m.total_power(CohomClass(mu3.ring->v(1).pow(4)), 4);
    for (int i = 1; i <= 4; ++i) CHECK(std::get<PointElem>(pv[i]).is_zero());
}
