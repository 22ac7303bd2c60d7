#include "equiloc/groebner.hpp"

#include <algorithm>
#include <utility>

#include "equiloc/errors.hpp"

namespace equiloc {

namespace {

struct Budget {
    long long left;
    void spend() {
        if (--left < 0)
            throw ResourceError("groebner: S-polynomial reduction budget exceeded");
    }
};

// Classical multivariate division: repeatedly cancel the leading term of the
// running dividend against the basis; irreducible leading terms move to the
// remainder.
Poly full_reduce(Poly h, const std::vector<Poly>& basis, Budget& budget) {
    if (h.is_zero()) return h;
    Poly remainder = Poly::zero(h.ring());
    while (!h.is_zero()) {
        budget.spend();
        const Mono lm = h.leading_mono();
        const Scalar lc = h.leading_coeff();
        const Poly* divisor = nullptr;
        for (const Poly& g : basis) {
            if (g.is_zero()) continue;
            if (mono_divides(g.leading_mono(), lm)) {
                divisor = &g;
                break;
            }
        }
        if (divisor) {
            h = h - divisor->mono_scaled(mono_div(lm, divisor->leading_mono()),
                                         lc / divisor->leading_coeff());
        } else {
            remainder = remainder + Poly::term(h.ring(), lm, lc);
            h = h - Poly::term(h.ring(), lm, lc);
        }
    }
    return remainder;
}

// Reduction that stops at the first irreducible leading term; enough to test
// S-polynomials for zero while building the basis.
Poly top_reduce(Poly h, const std::vector<Poly>& basis, Budget& budget) {
    while (!h.is_zero()) {
        budget.spend();
        const Mono lm = h.leading_mono();
        const Poly* divisor = nullptr;
        for (const Poly& g : basis) {
            if (g.is_zero()) continue;
            if (mono_divides(g.leading_mono(), lm)) {
                divisor = &g;
                break;
            }
        }
        if (!divisor) return h;
        h = h - divisor->mono_scaled(mono_div(lm, divisor->leading_mono()),
                                     h.leading_coeff() / divisor->leading_coeff());
    }
    return h;
}

Poly s_poly(const Poly& f, const Poly& g) {
    const Mono lcm = mono_lcm(f.leading_mono(), g.leading_mono());
    Scalar one = Scalar::one(f.ring()->field);
    Poly a = f.mono_scaled(mono_div(lcm, f.leading_mono()), one / f.leading_coeff());
    Poly b = g.mono_scaled(mono_div(lcm, g.leading_mono()), one / g.leading_coeff());
    return a - b;
}

bool coprime_leading(const Poly& f, const Poly& g) {
    const Mono& a = f.leading_mono();
    const Mono& b = g.leading_mono();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

}  // namespace

Poly normal_form(const Poly& f, const std::vector<Poly>& basis) {
    Budget budget{GroebnerOptions{}.max_reductions};
    return full_reduce(f, basis, budget);
}

std::vector<Poly> groebner(const std::vector<Poly>& generators, const GroebnerOptions& opts) {
    Budget budget{opts.max_reductions};
    std::vector<Poly> basis;
    for (const Poly& f : generators)
        if (!f.is_zero()) basis.push_back(f.monic());
    if (basis.empty()) return basis;
    const MonoOrder order = basis.front().ring()->order;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    auto queue_with_all = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    };
    for (std::size_t j = 0; j < basis.size(); ++j) queue_with_all(j);

    auto chain_criterion = [&](std::size_t i, std::size_t j) {
        const Mono lcm = mono_lcm(basis[i].leading_mono(), basis[j].leading_mono());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (k == i || k == j) continue;
            if (!mono_divides(basis[k].leading_mono(), lcm)) continue;
            auto done = [&](std::size_t a, std::size_t b) {
                auto key = std::minmax(a, b);
                return std::find(pairs.begin(), pairs.end(),
                                 std::make_pair(key.first, key.second)) == pairs.end();
            };
            if (done(i, k) && done(j, k)) return true;
        }
        return false;
    };

    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        if (coprime_leading(basis[i], basis[j])) continue;
        if (chain_criterion(i, j)) continue;
        Poly s = top_reduce(s_poly(basis[i], basis[j]), basis, budget);
        if (s.is_zero()) continue;
        basis.push_back(s.monic());
        queue_with_all(basis.size() - 1);
    }

    // Minimize: drop elements whose leading monomial is divisible by another's.
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            if (!mono_divides(basis[j].leading_mono(), basis[i].leading_mono())) continue;
            if (basis[j].leading_mono() == basis[i].leading_mono() && j > i) continue;
            redundant = true;
            break;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // Auto-reduce to the unique reduced basis.
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = full_reduce(minimal[i], others, budget);
        if (!r.is_zero()) reduced.push_back(r.monic());
    }

    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return mono_less(b.leading_mono(), a.leading_mono(), order);
    });
    return reduced;
}

Ideal groebner(const Ideal& ideal, const GroebnerOptions& opts) {
    // The throwing call runs before the aggregate is formed (GCC 11 fails
    // to destroy earlier aggregate members when a later initializer throws).
    std::vector<Poly> gb = groebner(ideal.generators, opts);
    return Ideal{ideal.ring, std::move(gb)};
}

bool ideal_member(const Poly& f, const Ideal& ideal, const GroebnerOptions& opts) {
    if (f.is_zero()) return true;
    return normal_form(f, groebner(ideal.generators, opts)).is_zero();
}

bool ideal_equal(const Ideal& lhs, const Ideal& rhs, const GroebnerOptions& opts) {
    return groebner(lhs.generators, opts) == groebner(rhs.generators, opts);
}

bool ideal_is_unit(const Ideal& ideal, const GroebnerOptions& opts) {
    std::vector<Poly> gb = groebner(ideal.generators, opts);
    return gb.size() == 1 && gb.front().term_count() == 1 &&
           gb.front().leading_mono() == Mono(ideal.ring->nvars(), 0);
}

bool is_homogeneous(const Ideal& ideal, const Grading& g, const GroebnerOptions& opts) {
    std::vector<Poly> gb = groebner(ideal.generators, opts);
    for (const Poly& f : ideal.generators) {
        auto comps = g.components(f);
        if (comps.size() <= 1) continue;
        for (const auto& [deg, part] : comps)
            if (!normal_form(part, gb).is_zero()) return false;
    }
    return true;
}

}  // namespace equiloc
