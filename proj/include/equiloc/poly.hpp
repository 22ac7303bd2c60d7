#ifndef EQUILOC_POLY_HPP
#define EQUILOC_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "equiloc/lattice.hpp"
#include "equiloc/numbers.hpp"

namespace equiloc {

// Exponent vector; length equals the ring's variable count.
using Mono = std::vector<int>;

enum class MonoOrder { GrevLex, Lex };

struct PolyRing {
    FieldSpec field;
    std::vector<std::string> vars;
    MonoOrder order = MonoOrder::GrevLex;

    std::size_t nvars() const { return vars.size(); }
    std::optional<std::size_t> var_index(const std::string& name) const;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(FieldSpec field, std::vector<std::string> vars,
                  MonoOrder order = MonoOrder::GrevLex);

// true iff a comes strictly before b (i.e. a is smaller in the order).
bool mono_less(const Mono& a, const Mono& b, MonoOrder order);
bool mono_divides(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& a, const Mono& b);  // requires divisibility
Mono mono_lcm(const Mono& a, const Mono& b);

// Sparse multivariate polynomial with nonzero coefficients only, terms kept
// sorted by the ring's monomial order.
class Poly {
  public:
    Poly() = default;
    explicit Poly(RingPtr ring);

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    static Poly constant(RingPtr ring, const Scalar& c);
    static Poly variable(RingPtr ring, std::size_t index, int power = 1);
    static Poly term(RingPtr ring, Mono mono, const Scalar& c);

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Mono, Scalar>& terms() const { return terms_; }

    // Leading data with respect to the ring's order.
    const Mono& leading_mono() const;
    const Scalar& leading_coeff() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Scalar& c) const;
    Poly mono_scaled(const Mono& m, const Scalar& c) const;  // c * x^m * this
    Poly monic() const;
    Poly pow(int n) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Substitute images[i] for variable i; images live in any ring over the
    // same field.
    Poly substitute(const std::vector<Poly>& images, RingPtr target) const;

    std::string str() const;

  private:
    void insert(const Mono& m, const Scalar& c);

    RingPtr ring_;
    std::map<Mono, Scalar> terms_;  // strongest term at rbegin (mono_less order)
};

// Gamma-grading of a polynomial ring: one character weight per variable.
struct Grading {
    CharacterLattice lattice;
    std::vector<Character> weights;

    Character mono_degree(const Mono& m) const;
    bool is_homogeneous(const Poly& f) const;
    std::optional<Character> degree(const Poly& f) const;  // nullopt if inhomogeneous

    // Split into full-Gamma homogeneous components.
    std::map<Character, Poly> components(const Poly& f) const;
};

// f = sum of its C-degree components; zero components omitted.
std::map<Character, Poly> homogeneous_components(const Poly& f, const Grading& g,
                                                 const SubgroupPresentation& c);

struct Ideal {
    RingPtr ring;
    std::vector<Poly> generators;
};

// Quotient f/g when the division is exact, nullopt otherwise.
std::optional<Poly> exact_divide(const Poly& f, const Poly& g);

// Polynomial text grammar used by the CLI: integers, identifiers, + - * ^
// and parentheses; ^ binds tighter than *, which binds tighter than +-.
struct ParsePosition {
    int line = 1;
    int column = 1;
};

struct PolyParseError : InputError {
    PolyParseError(const std::string& msg, ParsePosition position)
        : InputError(msg), pos(position) {}
    ParsePosition pos;
};

Poly parse_poly(RingPtr ring, const std::string& text);

}  // namespace equiloc

#endif
