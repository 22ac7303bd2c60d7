#ifndef EQUILOC_COMODULE_HPP
#define EQUILOC_COMODULE_HPP

#include <map>
#include <string>
#include <vector>

#include "equiloc/groebner.hpp"
#include "equiloc/lattice.hpp"
#include "equiloc/numbers.hpp"

namespace equiloc {

// Element of the group algebra k[Gamma]: finite k-linear combination of the
// basis symbols e_gamma.
class GroupAlgebraElem {
  public:
    GroupAlgebraElem() = default;
    explicit GroupAlgebraElem(CharacterLattice lattice, FieldSpec field = {})
        : lattice_(std::move(lattice)), field_(field) {}

    const CharacterLattice& lattice() const { return lattice_; }
    const std::map<Character, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Character& gamma, const Scalar& c);
    GroupAlgebraElem operator+(const GroupAlgebraElem& o) const;
    GroupAlgebraElem operator*(const GroupAlgebraElem& o) const;  // e_a e_b = e_{a+b}
    bool operator==(const GroupAlgebraElem& o) const { return terms_ == o.terms_; }

    std::string str() const;

  private:
    CharacterLattice lattice_;
    FieldSpec field_;
    std::map<Character, Scalar> terms_;
};

// The Hopf algebra k[Gamma] of the diagonalizable group D(Gamma).
class GroupAlgebra {
  public:
    explicit GroupAlgebra(CharacterLattice lattice, FieldSpec field = {})
        : lattice_(std::move(lattice)), field_(field) {}

    const CharacterLattice& lattice() const { return lattice_; }
    FieldSpec field() const { return field_; }

    GroupAlgebraElem basis(const Character& gamma) const;
    GroupAlgebraElem unit() const { return basis(lattice_.zero()); }

    Scalar counit(const GroupAlgebraElem& x) const;  // e_gamma -> 1
    GroupAlgebraElem antipode(const GroupAlgebraElem& x) const;  // e_gamma -> e_{-gamma}
    // mu_G(e_gamma) = e_gamma (x) e_gamma, as a formal sum of pairs.
    std::map<std::pair<Character, Character>, Scalar> coproduct(const GroupAlgebraElem& x) const;

  private:
    CharacterLattice lattice_;
    FieldSpec field_;
};

// Free graded comodule: finitely many basis symbols, each with a character
// weight.  The coaction is mu(m) = e_{deg m} (x) m on homogeneous m.
struct FreeComodule {
    CharacterLattice lattice;
    std::vector<Character> weights;
    std::vector<std::string> names;
    FieldSpec field;

    std::size_t rank() const { return weights.size(); }
};

FreeComodule make_free_comodule(CharacterLattice lattice, std::vector<Character> weights,
                                FieldSpec field = {});

// Dense element of a free comodule.
using ComoduleVec = std::vector<Scalar>;

// Counit and coassociativity checked on every basis element by expanding
// both composites as formal tensors.
bool check_comodule_axioms(const FreeComodule& m);
// Algebra presentation: the coaction descends to the quotient iff the ideal
// is homogeneous.
bool check_comodule_axioms(const Grading& g, const Ideal& ideal);

struct FixedPart {
    FreeComodule comodule;           // with its residual full-Gamma grading
    std::vector<std::size_t> basis;  // indices into the ambient basis
};

// Span of the basis elements whose weight restricts to 0 in Gamma_C.
FixedPart fixed_part(const FreeComodule& m, const SubgroupPresentation& c);

// Degree-0 projection: the Reynolds retraction onto the fixed part,
// expressed in the ambient coordinates.
ComoduleVec reynolds(const FreeComodule& m, const ComoduleVec& x, const SubgroupPresentation& c);
GroupAlgebraElem reynolds(const GroupAlgebra& a, const GroupAlgebraElem& x,
                          const SubgroupPresentation& c);

// Regular comodule fixed part: span of e_gamma with gamma restricting to 0.
GroupAlgebraElem fixed_part(const GroupAlgebra& a, const GroupAlgebraElem& x,
                            const SubgroupPresentation& c);

FreeComodule tensor(const FreeComodule& m, const FreeComodule& n);

}  // namespace equiloc

#endif
