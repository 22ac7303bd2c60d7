#ifndef EQUILOC_FIXEDLOC_HPP
#define EQUILOC_FIXEDLOC_HPP

#include <set>
#include <vector>

#include "equiloc/finitefield.hpp"
#include "equiloc/groebner.hpp"
#include "equiloc/poly.hpp"

namespace equiloc {

// X = Spec A with A = k[x_1..x_n]/I, G = D(Gamma) acting through the
// variables' character weights.  The ideal is required homogeneous so the
// presentation is a G-equivariant closed embedding.
class EquivariantAffineScheme {
  public:
    EquivariantAffineScheme(RingPtr ring, Grading grading, Ideal ideal,
                            const GroebnerOptions& opts = {});

    const RingPtr& ring() const { return ring_; }
    const Grading& grading() const { return grading_; }
    const Ideal& ideal() const { return ideal_; }
    const CharacterLattice& group() const { return grading_.lattice; }

  private:
    RingPtr ring_;
    Grading grading_;
    Ideal ideal_;
};

// Finite multiset of characters: a G-equivariant vector bundle over the point.
struct Representation {
    std::vector<Character> chars;  // kept sorted

    static Representation of(const CharacterLattice& lattice, std::vector<Character> chars);
    std::size_t rank() const { return chars.size(); }
    // V^C = 0 iff every character restricts nontrivially to C.
    bool fixed_free(const SubgroupPresentation& c) const;
};

// s in (V (x) A)^G: one ring element per basis character, component i
// homogeneous of degree -chars[i].
struct EquivariantSection {
    Representation rep;
    std::vector<Poly> components;
};

struct ConcentrationResult {
    Representation rep;
    EquivariantSection section;
    bool verified;  // ideal_equal(zero_locus(section), fixed_locus_ideal)
};

// Ideal of X^C inside the presentation: I + <x_i : w_i restricts nontrivially>.
Ideal fixed_locus_ideal(const EquivariantAffineScheme& x, const SubgroupPresentation& c);

// One summand e_{-gamma} (x) a_gamma of sigma_G(a) per nonzero C-degree gamma.
struct SigmaTerm {
    Character gamma;
    Poly component;
};

std::vector<SigmaTerm> sigma_g(const EquivariantAffineScheme& x, const SubgroupPresentation& c,
                               const Poly& a);

// The representation-plus-section certificate: V with V^C = 0 and an
// equivariant section vanishing exactly on the fixed locus.  With
// minimal_generators set, the section components are the nonzero-C-degree
// generators of the fixed ideal instead of the ambient coordinates.
ConcentrationResult concentration_section(const EquivariantAffineScheme& x,
                                          const SubgroupPresentation& c,
                                          bool minimal_generators = false,
                                          const GroebnerOptions& opts = {});

Ideal zero_locus(const EquivariantSection& s, const EquivariantAffineScheme& x);

using PointSet = std::set<std::vector<int>>;

// All F_q-points of V(I); coordinates are GaloisField element codes.
PointSet rational_points(const Ideal& ideal, const GaloisField& field);

// All F_q-points of V(I) fixed by every element of C(F_q) acting through the
// weights.  Independent brute-force oracle for fixed_locus_ideal.
PointSet fixed_points_oracle(const EquivariantAffineScheme& x, const SubgroupPresentation& c,
                             long q);

}  // namespace equiloc

#endif
