#ifndef EQUILOC_LATTICE_HPP
#define EQUILOC_LATTICE_HPP

#include <string>
#include <vector>

#include "equiloc/numbers.hpp"

namespace equiloc {

using IntMat = std::vector<std::vector<Int>>;

// U*M*V = D with U, V unimodular, D diagonal, d1 | d2 | ..., all di >= 0.
struct SmithResult {
    IntMat u, d, v;
};

SmithResult smith_normal_form(const IntMat& m);

Int det(const IntMat& m);
IntMat mat_mul(const IntMat& a, const IntMat& b);

// Element of a character lattice Z^r (+) Z/m1 (+) ... written as a free
// integer vector followed by torsion residues.
struct Character {
    std::vector<Int> free_part;
    std::vector<Int> torsion_part;

    bool operator==(const Character&) const = default;
    bool operator<(const Character& o) const;
    std::string str() const;
};

// Finitely generated abelian group in invariant-factor form: rank r plus a
// divisibility chain m1 | m2 | ... of torsion orders (each >= 2).
class CharacterLattice {
  public:
    CharacterLattice() = default;
    CharacterLattice(int rank, std::vector<Int> torsion_orders);

    int rank() const { return rank_; }
    const std::vector<Int>& torsion_orders() const { return torsion_; }
    std::size_t dim() const { return static_cast<std::size_t>(rank_) + torsion_.size(); }

    Character zero() const;
    Character make(std::vector<Int> coords) const;  // full coordinate vector
    Character reduce(Character chi) const;
    Character add(const Character& a, const Character& b) const;
    Character negate(const Character& a) const;
    Character scale(const Int& n, const Character& a) const;
    bool is_zero(const Character& a) const;
    void require_member(const Character& chi) const;

    std::vector<Int> full_coords(const Character& chi) const;

    bool operator==(const CharacterLattice&) const = default;
    std::string str() const;

  private:
    void require_member_shape(const Character& chi) const;

    int rank_ = 0;
    std::vector<Int> torsion_;  // divisibility chain, entries >= 2
};

// A closed subgroup C of the diagonalizable group D(Gamma), presented dually
// by the surjection q : Gamma -> Gamma_C onto the character group of C.
class SubgroupPresentation {
  public:
    SubgroupPresentation() = default;
    SubgroupPresentation(CharacterLattice ambient, CharacterLattice quotient, IntMat map);

    const CharacterLattice& ambient() const { return ambient_; }
    const CharacterLattice& quotient() const { return quotient_; }
    const IntMat& map() const { return map_; }

    Character restrict(const Character& chi) const;
    bool restricts_trivially(const Character& chi) const;

    static SubgroupPresentation whole_group(const CharacterLattice& gamma);

  private:
    CharacterLattice ambient_;
    CharacterLattice quotient_;
    IntMat map_;  // quotient.dim() x ambient.dim()
};

// Gamma_C = Gamma / <relations>, in canonical invariant-factor form.
SubgroupPresentation quotient_lattice(const CharacterLattice& gamma,
                                      const std::vector<Character>& relations);

}  // namespace equiloc

#endif
