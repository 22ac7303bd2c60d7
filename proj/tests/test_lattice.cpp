#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "equiloc/lattice.hpp"

using namespace equiloc;

namespace {

IntMat from_longs(const std::vector<std::vector<long>>& rows) {
    IntMat m;
    for (const auto& r : rows) {
        std::vector<Int> row;
        for (long x : r) row.emplace_back(x);
        m.push_back(std::move(row));
    }
    return m;
}

// gcd of all k x k minors; 0 when every minor vanishes.
Int minor_gcd(const IntMat& m, std::size_t k) {
    const std::size_t nr = m.size(), nc = m.empty() ? 0 : m[0].size();
    Int g = 0;

    std::vector<std::vector<std::size_t>> rchoices, cchoices;
    auto choose = [&](std::size_t n, auto& out) {
        out.clear();
        if (k > n) return;
        std::vector<std::size_t> c(k);
        std::iota(c.begin(), c.end(), 0);
        while (true) {
            out.push_back(c);
            std::size_t i = k;
            while (i-- > 0) {
                if (c[i] != i + n - k) {
                    ++c[i];
                    for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
                    break;
                }
                if (i == 0) return;
            }
        }
    };
    choose(nr, rchoices);
    choose(nc, cchoices);
    for (const auto& rs : rchoices)
        for (const auto& cs : cchoices) {
            IntMat sub(k, std::vector<Int>(k));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[rs[i]][cs[j]];
            Int d = det(sub);
            g = gcd(g, d);
        }
    return abs(g);
}

void check_snf(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    const std::size_t nr = m.size(), nc = m.empty() ? 0 : m[0].size();
    // U*M*V = D exactly.
    CHECK(mat_mul(mat_mul(s.u, m), s.v) == s.d);
    // U, V unimodular.
    CHECK(abs(det(s.u)) == 1);
    CHECK(abs(det(s.v)) == 1);
    // D diagonal, nonnegative, divisibility chain.
    const std::size_t nmin = std::min(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            if (i != j) CHECK(s.d[i][j] == 0);
    for (std::size_t i = 0; i < nmin; ++i) {
        CHECK(s.d[i][i] >= 0);
        if (i > 0 && s.d[i - 1][i - 1] != 0) CHECK(s.d[i][i] % s.d[i - 1][i - 1] == 0);
        if (i > 0 && s.d[i - 1][i - 1] == 0) CHECK(s.d[i][i] == 0);
    }
    // Oracle: product d_1..d_k equals the gcd of k x k minors.
    Int prod = 1;
    for (std::size_t k = 1; k <= nmin; ++k) {
        prod *= s.d[k - 1][k - 1];
        CHECK(prod == minor_gcd(m, k));
    }
}

}  // namespace

TEST_CASE("smith normal form of diag(3,5)") {
    SmithResult s = smith_normal_form(from_longs({{3, 0}, {0, 5}}));
    CHECK(s.d[0][0] == 1);
    CHECK(s.d[1][1] == 15);
    check_snf(from_longs({{3, 0}, {0, 5}}));
}

TEST_CASE("smith normal form of [[2,4],[6,8]]") {
    SmithResult s = smith_normal_form(from_longs({{2, 4}, {6, 8}}));
    CHECK(s.d[0][0] == 2);
    CHECK(s.d[1][1] == 4);
}

TEST_CASE("smith normal form of the zero matrix") {
    SmithResult s = smith_normal_form(from_longs({{0, 0, 0}, {0, 0, 0}}));
    for (const auto& row : s.d)
        for (const auto& x : row) CHECK(x == 0);
    check_snf(from_longs({{0, 0, 0}, {0, 0, 0}}));
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937 rng(20240517);
    std::uniform_int_distribution<int> entry(-9, 9);
    std::uniform_int_distribution<int> size(1, 4);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t nr = size(rng), nc = size(rng);
        IntMat m(nr, std::vector<Int>(nc));
        for (auto& row : m)
            for (auto& x : row) x = entry(rng);
        check_snf(m);
    }
}

TEST_CASE("quotient by p in Z gives Z/p") {
    CharacterLattice z(1, {});
    auto c = quotient_lattice(z, {z.make({Int(5)})});
    CHECK(c.quotient() == CharacterLattice(0, {Int(5)}));
    CHECK(c.restricts_trivially(z.make({Int(5)})));
    CHECK(c.restricts_trivially(z.make({Int(10)})));
    CHECK(!c.restricts_trivially(z.make({Int(2)})));
}

TEST_CASE("empty relations give the identity quotient") {
    CharacterLattice z2(2, {});
    auto c = quotient_lattice(z2, {});
    CHECK(c.quotient() == z2);
    Character chi = z2.make({Int(3), Int(-1)});
    CHECK(c.restrict(chi) == chi);
}

TEST_CASE("Z^2 mod (2,4) is Z + Z/2") {
    CharacterLattice z2(2, {});
    auto c = quotient_lattice(z2, {z2.make({Int(2), Int(4)})});
    CHECK(c.quotient().rank() == 1);
    REQUIRE(c.quotient().torsion_orders().size() == 1);
    CHECK(c.quotient().torsion_orders()[0] == 2);
    // Independent check against the explicit isomorphism
    // (a,b) -> (a mod 2, b - 2a): same kernel, so equal quotients.
    CHECK(c.restricts_trivially(z2.make({Int(2), Int(4)})));
    CHECK(!c.restricts_trivially(z2.make({Int(1), Int(2)})));
    CHECK(!c.restricts_trivially(z2.make({Int(0), Int(1)})));
    CHECK(!c.restricts_trivially(z2.make({Int(1), Int(0)})));
}

TEST_CASE("restriction examples") {
    CharacterLattice z(1, {});
    auto mu5 = quotient_lattice(z, {z.make({Int(5)})});
    CHECK(!mu5.restricts_trivially(z.make({Int(2)})));
    CHECK(mu5.restrict(z.make({Int(2)})).torsion_part[0] == 2);

    CharacterLattice z2(2, {});
    // Projection to the first factor: C = 1 x G_m dual quotient.
    auto c = quotient_lattice(z2, {z2.make({Int(0), Int(1)})});
    CHECK(c.restricts_trivially(z2.make({Int(0), Int(7)})));
    CHECK(!c.restricts_trivially(z2.make({Int(1), Int(0)})));
}

TEST_CASE("restrict is a group homomorphism and kills relations") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-6, 6);
    CharacterLattice gamma(2, {Int(4)});
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Character> relations;
        for (int i = 0; i < 2; ++i)
            relations.push_back(gamma.make({Int(entry(rng)), Int(entry(rng)), Int(entry(rng))}));
        auto c = quotient_lattice(gamma, relations);
        for (const auto& r : relations) CHECK(c.restricts_trivially(r));
        Character a = gamma.make({Int(entry(rng)), Int(entry(rng)), Int(entry(rng))});
        Character b = gamma.make({Int(entry(rng)), Int(entry(rng)), Int(entry(rng))});
        CHECK(c.restrict(gamma.add(a, b)) ==
              c.quotient().add(c.restrict(a), c.restrict(b)));
    }
}

TEST_CASE("whole group subgroup is the identity") {
    CharacterLattice gamma(1, {Int(3)});
    auto g = SubgroupPresentation::whole_group(gamma);
    Character chi = gamma.make({Int(2), Int(1)});
    CHECK(g.restrict(chi) == chi);
}
