#ifndef EQUILOC_SMITH_HPP
#define EQUILOC_SMITH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equiloc/eqcoh.hpp"

namespace equiloc {

// Finite bidegree rectangle [a0,a1] x [b0,b1].
struct Window {
    long a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    bool contains(const Bidegree& d) const {
        return d.a >= a0 && d.a <= a1 && d.b >= b0 && d.b <= b1;
    }
    bool operator==(const Window&) const = default;
};

// Steenrod coefficients of one generator: P^i values for the finitely many
// i >= 1 with nonzero action (P^0 is always the identity).
using ActionTable = std::map<int, CohomClass>;

// H_G(S) or H_G(P(W)) for G = (mu_p)^n as an algebra over the free Steenrod
// algebra: P^1 = (-)^p on Euler-type generators (v_j, zeta), P^i = 0 on
// u-type generators, extended to products by the Cartan formula.
class SteenrodModule {
  public:
    static SteenrodModule point_module(PointRingPtr ring);
    static SteenrodModule model_module(ModelRingPtr model);

    const PointRingPtr& point_ring() const { return ring_; }
    bool is_model() const { return static_cast<bool>(model_); }
    const ModelRingPtr& model() const { return model_; }
    long prime() const { return ring_->torsion_prime(); }

    // Override the action on a named generator ("v1", "u2", "zeta").
    void override_action(const std::string& generator, ActionTable table);
    // true when some v/u/tau generator carries a non-standard action; the
    // localization machinery requires the standard action on linear forms.
    bool has_point_overrides() const;
    const ActionTable* zeta_override() const;

    CohomClass zero_class() const;
    CohomClass one_class() const;

    // P^i(x) and the truncated total operation sum_{i<=N} P^i(x) t^i.
    CohomClass power(const CohomClass& x, int i) const;
    std::vector<CohomClass> total_power(const CohomClass& x, int order) const;

    // Largest i with P^i possibly nonzero on x (from the generator tables).
    int steenrod_degree_bound(const CohomClass& x) const;

  private:
    SteenrodModule(PointRingPtr ring, ModelRingPtr model);
    std::vector<CohomClass> generator_series(int kind, int index, int order) const;

    PointRingPtr ring_;
    ModelRingPtr model_;  // null for the point module
    std::map<std::string, ActionTable> overrides_;
};

// P^i(v^{-1}) = (-1)^i v^{i(p-1)-1} in H_{mu_p}(S)[v^{-1}].
LocalizedClass power_on_inverse(int i, long p);

// Coefficients of the formal inverse of P(v) = v + v^p t, computed by the
// series recurrence (v + v^p t) * sum c_i t^i = 1; independent of the closed
// form above.
std::vector<LocalizedClass> series_inverse_oracle(long p, int order);

// Exact decision of instability for y = num / prod e(den) in M[E_C^{-1}]:
// strips exactly divisible denominator factors one at a time through a
// GL_n(F_p) change of character coordinates, then settles the remaining
// fraction by the tail of the rational series P(num) / P(den).
bool is_unstable(const SteenrodModule& m, const LocalizedClass& y,
                 const SubgroupPresentation& c);

struct UnstablePart {
    std::vector<LocalizedClass> certified;  // canonical fractions found unstable
    std::vector<LocalizedClass> rejected;
    Window window;
    int denominator_budget = 0;
};

// Window slice of Un(M[E_C^{-1}]): enumerates basis fractions with
// denominators of bounded length over the E_C linear forms and certifies
// each one.
UnstablePart unstable_part(const SteenrodModule& m, const SubgroupPresentation& c,
                           const Window& window, int denominator_budget = 2);

// Scalar extension along H_D -> H_{mu_p x D}: one more mu_p factor acting
// trivially, Steenrod action on the new v, u standard.
SteenrodModule kunneth_extend(const SteenrodModule& m);
// Extension of the trivial module (D = 1): H_{mu_p}(S).
SteenrodModule kunneth_extend(long p);
CohomClass kunneth_extend_class(const SteenrodModule& extended, const CohomClass& x);

struct SmithRanks {
    std::map<Bidegree, int> rank;  // of H(X^G) per bidegree in the window
    std::vector<std::string> generators;
    Window window;
    int denominator_budget = 0;

    int total() const;
};

// Dwyer-Wilkerson fixed-point cohomology H(S) (x)_{H_G(S)} Un(M[E_G^{-1}])
// computed windowed, with C = G.
SmithRanks smith_fixed_cohomology(const SteenrodModule& m, const Window& window,
                                  int denominator_budget = 2);

}  // namespace equiloc

#endif
