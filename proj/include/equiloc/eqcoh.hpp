#ifndef EQUILOC_EQCOH_HPP
#define EQUILOC_EQCOH_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "equiloc/lattice.hpp"
#include "equiloc/poly.hpp"

namespace equiloc {

struct Bidegree {
    long a = 0;
    long b = 0;
    bool operator==(const Bidegree&) const = default;
    auto operator<=>(const Bidegree&) const = default;
    Bidegree operator+(const Bidegree& o) const { return {a + o.a, b + o.b}; }
    Bidegree operator-(const Bidegree& o) const { return {a - o.a, b - o.b}; }
};

enum class USquareRelation { Zero, TauV };

struct PointRingOptions {
    USquareRelation usq = USquareRelation::Zero;
};

class EquivariantPointRing;
using PointRingPtr = std::shared_ptr<const EquivariantPointRing>;

// Monomial t^a v^b tau^c u_S: polynomial exponents followed by a square-free
// u bitmask.
struct PMono {
    std::vector<int> powers;  // t_1..t_r, v_1..v_s, then tau when present
    std::uint32_t umask = 0;

    bool operator==(const PMono&) const = default;
    bool operator<(const PMono& o) const {
        if (powers != o.powers) return powers < o.powers;
        return umask < o.umask;
    }
};

class PointElem;

// Borel-type equivariant cohomology of the point for G = G_m^r x (mu_p)^s,
// in closed form: generators t_i, v_j in (2,1), u_j in (1,1), relations
// u_j^2 = 0 (or tau*v_j) and u anti-commutativity, coefficients F_p when
// s > 0 and Q otherwise.
class EquivariantPointRing : public std::enable_shared_from_this<EquivariantPointRing> {
  public:
    static PointRingPtr create(const CharacterLattice& group, PointRingOptions opts = {});

    const CharacterLattice& group() const { return group_; }
    int torus_rank() const { return group_.rank(); }
    int torsion_count() const { return static_cast<int>(group_.torsion_orders().size()); }
    long torsion_prime() const { return p_; }
    FieldSpec coefficients() const { return field_; }
    bool has_tau() const { return opts_.usq == USquareRelation::TauV; }
    // At p = 2 the relation u^2 = 0 is a convention, not forced by graded
    // commutativity; callers surface this flag at runtime.
    bool u_square_is_convention() const { return p_ == 2 && !has_tau(); }
    const PointRingOptions& options() const { return opts_; }
    std::size_t npowers() const;  // r + s (+1 with tau)

    PointElem zero() const;
    PointElem one() const;
    PointElem scalar(const Scalar& c) const;
    PointElem t(int i) const;    // 1-based
    PointElem v(int j) const;    // 1-based
    PointElem u(int j) const;    // 1-based
    PointElem tau() const;

    // Linear form sum a_i t_i + sum b_j v_j attached to a character.
    PointElem linear_form(const Character& chi) const;
    // Inverse of linear_form on visibly linear classes.
    std::optional<Character> extract_character(const PointElem& x) const;

    Bidegree mono_bidegree(const PMono& m) const;

    bool operator==(const EquivariantPointRing& o) const {
        return group_ == o.group_ && opts_.usq == o.opts_.usq;
    }

  private:
    EquivariantPointRing(const CharacterLattice& group, PointRingOptions opts);

    CharacterLattice group_;
    PointRingOptions opts_;
    long p_ = 0;
    FieldSpec field_;
};

class PointElem {
  public:
    PointElem() = default;
    explicit PointElem(PointRingPtr ring) : ring_(std::move(ring)) {}

    const PointRingPtr& ring() const { return ring_; }
    const std::map<PMono, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    PointElem operator+(const PointElem& o) const;
    PointElem operator-(const PointElem& o) const;
    PointElem operator-() const;
    PointElem operator*(const PointElem& o) const;
    PointElem scaled(const Scalar& c) const;
    PointElem pow(int n) const;
    bool operator==(const PointElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const PointElem& o) const { return !(*this == o); }

    void add_term(PMono m, const Scalar& c);

    std::optional<Bidegree> bidegree() const;  // nullopt when inhomogeneous or 0
    std::map<Bidegree, PointElem> bidegree_components() const;
    bool is_bidegree_homogeneous() const;

    std::string str() const;

  private:
    PointRingPtr ring_;
    std::map<PMono, Scalar> terms_;
};

// A representation with remembered factorization of its Euler class.
struct FactoredEuler {
    std::vector<Character> factors;  // one character per line bundle summand
};

class ProjectiveModelRing;
using ModelRingPtr = std::shared_ptr<const ProjectiveModelRing>;

class ModelElem;

// H_G(P(W)) for W = chi_1 (+) ... (+) chi_n: free over the point ring on
// 1, zeta, ..., zeta^{n-1} with prod_j (zeta + e(chi_j)) = 0, zeta in (2,1).
class ProjectiveModelRing : public std::enable_shared_from_this<ProjectiveModelRing> {
  public:
    static ModelRingPtr create(PointRingPtr base, std::vector<Character> weights);

    const PointRingPtr& base() const { return base_; }
    const std::vector<Character>& weights() const { return weights_; }
    std::size_t dim() const { return weights_.size(); }  // n
    // Coefficients of zeta^n = sum_i reduction()[i] * zeta^i.
    const std::vector<PointElem>& reduction() const { return reduction_; }

    ModelElem zero() const;
    ModelElem one() const;
    ModelElem zeta() const;
    ModelElem embed(const PointElem& c) const;

    bool operator==(const ProjectiveModelRing& o) const {
        return *base_ == *o.base_ && weights_ == o.weights_;
    }

  private:
    ProjectiveModelRing(PointRingPtr base, std::vector<Character> weights);

    PointRingPtr base_;
    std::vector<Character> weights_;
    std::vector<PointElem> reduction_;
};

class ModelElem {
  public:
    ModelElem() = default;
    ModelElem(ModelRingPtr ring, std::vector<PointElem> coef);

    const ModelRingPtr& ring() const { return ring_; }
    const std::vector<PointElem>& coef() const { return coef_; }  // zeta^i coefficients
    bool is_zero() const;

    ModelElem operator+(const ModelElem& o) const;
    ModelElem operator-(const ModelElem& o) const;
    ModelElem operator-() const;
    ModelElem operator*(const ModelElem& o) const;
    ModelElem scaled(const Scalar& c) const;
    ModelElem pow(int n) const;
    bool operator==(const ModelElem& o) const;
    bool operator!=(const ModelElem& o) const { return !(*this == o); }

    std::optional<Bidegree> bidegree() const;

    std::string str() const;

  private:
    ModelRingPtr ring_;
    std::vector<PointElem> coef_;
};

using CohomClass = std::variant<PointElem, ModelElem>;

// Product over the characters of the linear forms l(chi); bidegree (2n, n).
PointElem euler_class(const std::vector<Character>& rep, const PointRingPtr& ring);
PointElem euler_class(const FactoredEuler& rep, const PointRingPtr& ring);

// Decide membership in E_C for a factored product of Euler classes, or for a
// single visibly linear class.  Throws InputError on non-factored input.
bool in_ec(const FactoredEuler& x, const SubgroupPresentation& c);
bool in_ec(const PointElem& x, const SubgroupPresentation& c, const PointRingPtr& ring);

// num / prod e(den chi); denominator characters must restrict nontrivially.
struct LocalizedClass {
    CohomClass num;
    std::vector<Character> den;
};

LocalizedClass make_localized(CohomClass num, std::vector<Character> den,
                              const SubgroupPresentation& c, const PointRingPtr& ring);

LocalizedClass loc_add(const LocalizedClass& x, const LocalizedClass& y);
// Cross-multiplication equality (denominators are nonzerodivisors).
bool localize_eq(const LocalizedClass& x, const LocalizedClass& y,
                 const SubgroupPresentation& c);

struct FixedComponent {
    Character restriction;              // common value of restrict(chi_j, C)
    std::vector<std::size_t> indices;   // positions of the member weights
    std::vector<Character> weights;     // the member weights themselves
    std::size_t pivot;                  // chosen j0 (first member)
    std::vector<Character> normal_weights;  // chi_k - chi_{j0}, k outside
    ModelRingPtr model;  // P(chi_j - chi_{j0} : j in the component)
};

std::vector<FixedComponent> fixed_components(const ModelRingPtr& p,
                                             const SubgroupPresentation& c);

// Restriction along the component inclusion: zeta |-> zeta_comp - e(chi_j0).
ModelElem restrict_to_component(const ModelElem& x, const FixedComponent& comp);

// i_* of 1 from a point component: the class of the fixed point in P(W).
ModelElem component_class(const ModelRingPtr& p, const FixedComponent& comp);

// The base-linear map zeta^{n-1} |-> 1, lower powers |-> 0 (elements first
// reduced to the basis via the ring relation).
PointElem presentation_pushforward(const ModelElem& x);
LocalizedClass presentation_pushforward(const LocalizedClass& x);

// Fixed-point sum  sum_j restriction_j(x) / e(normal weights at j), defined
// when every fixed component is a point.  Pushes forward to the point.
LocalizedClass bott_pushforward(const ModelElem& x, const SubgroupPresentation& c);
LocalizedClass bott_pushforward(const LocalizedClass& x, const SubgroupPresentation& c);

struct ConcentrationCheck {
    bool invertible = false;            // det == unit * prod of E_C factors
    std::vector<Character> factors;     // with multiplicity
    Scalar unit;                        // the remaining scalar
    PointElem determinant;
};

// Determinant of the restriction matrix from the basis 1..zeta^{n-1} to the
// direct sum of the component bases, with its Euler factorization.
ConcentrationCheck concentration_check(const ModelRingPtr& p, const SubgroupPresentation& c);

}  // namespace equiloc

#endif
