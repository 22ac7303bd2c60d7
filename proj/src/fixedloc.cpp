#include "equiloc/fixedloc.hpp"

#include <algorithm>

#include "equiloc/errors.hpp"

namespace equiloc {

EquivariantAffineScheme::EquivariantAffineScheme(RingPtr ring, Grading grading, Ideal ideal,
                                                 const GroebnerOptions& opts)
    : ring_(std::move(ring)), grading_(std::move(grading)), ideal_(std::move(ideal)) {
    if (grading_.weights.size() != ring_->nvars())
        throw InputError("one weight per variable required");
    if (!is_homogeneous(ideal_, grading_, opts))
        throw InputError("ideal is not homogeneous for the given weights");
}

Representation Representation::of(const CharacterLattice& lattice,
                                  std::vector<Character> chars) {
    Representation rep;
    rep.chars.reserve(chars.size());
    for (auto& chi : chars) rep.chars.push_back(lattice.reduce(chi));
    std::sort(rep.chars.begin(), rep.chars.end());
    return rep;
}

bool Representation::fixed_free(const SubgroupPresentation& c) const {
    for (const auto& chi : chars)
        if (c.restricts_trivially(chi)) return false;
    return true;
}

Ideal fixed_locus_ideal(const EquivariantAffineScheme& x, const SubgroupPresentation& c) {
    if (!(c.ambient() == x.group())) throw InputError("subgroup of a different group");
    Ideal out = x.ideal();
    for (std::size_t i = 0; i < x.ring()->nvars(); ++i)
        if (!c.restricts_trivially(x.grading().weights[i]))
            out.generators.push_back(Poly::variable(x.ring(), i));
    return out;
}

std::vector<SigmaTerm> sigma_g(const EquivariantAffineScheme& x, const SubgroupPresentation& c,
                               const Poly& a) {
    // sigma_G = (pi_G (x) id) (chi_G (x) id) alpha_G: the full-Gamma degree
    // decomposition, antipode applied to the group-algebra leg, components of
    // C-degree zero killed by pi_G.
    std::vector<SigmaTerm> out;
    for (auto& [deg, part] : x.grading().components(a)) {
        if (c.restricts_trivially(deg)) continue;
        out.push_back(SigmaTerm{x.group().negate(deg), part});
    }
    std::sort(out.begin(), out.end(),
              [](const SigmaTerm& l, const SigmaTerm& r) { return l.gamma < r.gamma; });
    return out;
}

ConcentrationResult concentration_section(const EquivariantAffineScheme& x,
                                          const SubgroupPresentation& c,
                                          bool minimal_generators,
                                          const GroebnerOptions& opts) {
    const CharacterLattice& gamma = x.group();
    Ideal fixed = fixed_locus_ideal(x, c);

    std::vector<Character> chars;
    std::vector<Poly> components;
    if (!minimal_generators) {
        for (std::size_t i = 0; i < x.ring()->nvars(); ++i) {
            const Character& w = x.grading().weights[i];
            if (c.restricts_trivially(w)) continue;
            chars.push_back(gamma.negate(w));
            components.push_back(Poly::variable(x.ring(), i));
        }
    } else {
        // Nonzero-C-degree generators of the fixed ideal.  The reduced
        // Groebner basis of a homogeneous ideal is homogeneous, so each
        // element has a single C-degree.
        std::vector<Poly> gb = groebner(fixed.generators, opts);
        for (const Poly& g : gb) {
            auto deg = x.grading().degree(g);
            if (!deg) throw InternalError("inhomogeneous element in graded Groebner basis");
            if (c.restricts_trivially(*deg)) continue;
            chars.push_back(gamma.negate(*deg));
            components.push_back(g);
        }
        // The basis may collapse to C-degree-zero elements (e.g. to <1>);
        // the nonzero-C-weight coordinates always complete a generating set.
        Ideal candidate = x.ideal();
        candidate.generators.insert(candidate.generators.end(), components.begin(),
                                    components.end());
        if (!ideal_equal(candidate, fixed, opts)) {
            for (std::size_t i = 0; i < x.ring()->nvars(); ++i) {
                const Character& w = x.grading().weights[i];
                if (c.restricts_trivially(w)) continue;
                chars.push_back(gamma.negate(w));
                components.push_back(Poly::variable(x.ring(), i));
            }
        }
    }

    ConcentrationResult result;
    result.rep.chars = chars;
    result.section.rep = result.rep;
    result.section.components = std::move(components);

    Ideal ze = zero_locus(result.section, x);
    result.verified = ideal_equal(ze, fixed, opts) && result.rep.fixed_free(c);

    // Canonical order for the reported representation.
    std::vector<std::size_t> perm(result.rep.chars.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return result.rep.chars[a] < result.rep.chars[b];
    });
    Representation sorted_rep;
    std::vector<Poly> sorted_components;
    for (std::size_t i : perm) {
        sorted_rep.chars.push_back(result.rep.chars[i]);
        sorted_components.push_back(result.section.components[i]);
    }
    result.rep = sorted_rep;
    result.section.rep = sorted_rep;
    result.section.components = std::move(sorted_components);
    return result;
}

Ideal zero_locus(const EquivariantSection& s, const EquivariantAffineScheme& x) {
    Ideal out = x.ideal();
    for (const Poly& f : s.components) {
        if (f.ring() != x.ring()) throw InputError("section component in a different ring");
        out.generators.push_back(f);
    }
    return out;
}

namespace {

int eval_poly(const Poly& f, const std::vector<int>& point, const GaloisField& field) {
    int acc = 0;
    for (const auto& [mono, coeff] : f.terms()) {
        int term = field.from_scalar(coeff);
        for (std::size_t i = 0; i < mono.size(); ++i)
            if (mono[i] != 0) term = field.mul(term, field.pow(point[i], mono[i]));
        acc = field.add(acc, term);
    }
    return acc;
}

// All group elements of C(F_q) = Hom(Gamma_C, F_q^*), each given by the unit
// assigned to every coordinate of Gamma_C.
std::vector<std::vector<int>> group_elements(const CharacterLattice& gamma_c,
                                             const GaloisField& field) {
    std::vector<std::vector<int>> factor_values;
    for (int i = 0; i < gamma_c.rank(); ++i) {
        std::vector<int> units;
        for (int a = 1; a < field.size(); ++a) units.push_back(a);
        factor_values.push_back(std::move(units));
    }
    for (const Int& m : gamma_c.torsion_orders())
        factor_values.push_back(field.roots_of_unity(m));

    std::vector<std::vector<int>> elements{{}};
    for (const auto& values : factor_values) {
        std::vector<std::vector<int>> next;
        next.reserve(elements.size() * values.size());
        for (const auto& prefix : elements)
            for (int v : values) {
                auto e = prefix;
                e.push_back(v);
                next.push_back(std::move(e));
            }
        elements = std::move(next);
    }
    return elements;
}

int evaluate_character(const Character& chi, const std::vector<int>& element,
                       const GaloisField& field) {
    int value = 1;
    std::size_t idx = 0;
    for (const Int& a : chi.free_part) value = field.mul(value, field.pow(element[idx++], a.get_si()));
    for (const Int& b : chi.torsion_part)
        value = field.mul(value, field.pow(element[idx++], b.get_si()));
    return value;
}

}  // namespace

PointSet rational_points(const Ideal& ideal, const GaloisField& field) {
    const std::size_t n = ideal.ring->nvars();
    PointSet points;
    std::vector<int> point(n, 0);
    while (true) {
        bool vanishes = true;
        for (const Poly& f : ideal.generators)
            if (eval_poly(f, point, field) != 0) {
                vanishes = false;
                break;
            }
        if (vanishes) points.insert(point);
        std::size_t i = 0;
        while (i < n && ++point[i] == field.size()) point[i++] = 0;
        if (i == n) break;
        if (n == 0) break;
    }
    return points;
}

PointSet fixed_points_oracle(const EquivariantAffineScheme& x, const SubgroupPresentation& c,
                             long q) {
    GaloisField field(q);
    if (x.ring()->field.p != 0 && x.ring()->field.p != field.characteristic())
        throw InputError("oracle field has a different characteristic than the scheme");
    for (const Int& m : c.quotient().torsion_orders())
        if (Int(q - 1) % m != 0)
            throw InputError("exponent condition violated: torsion order " + m.get_str() +
                             " does not divide q-1");

    auto elements = group_elements(c.quotient(), field);
    std::vector<Character> restricted;
    restricted.reserve(x.ring()->nvars());
    for (const auto& w : x.grading().weights) restricted.push_back(c.restrict(w));

    PointSet fixed;
    for (const auto& point : rational_points(x.ideal(), field)) {
        bool ok = true;
        for (const auto& element : elements) {
            for (std::size_t i = 0; i < point.size() && ok; ++i) {
                int scaled = field.mul(evaluate_character(restricted[i], element, field), point[i]);
                if (scaled != point[i]) ok = false;
            }
            if (!ok) break;
        }
        if (ok) fixed.insert(point);
    }
    return fixed;
}

}  // namespace equiloc
