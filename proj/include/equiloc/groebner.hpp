#ifndef EQUILOC_GROEBNER_HPP
#define EQUILOC_GROEBNER_HPP

#include <vector>

#include "equiloc/poly.hpp"

namespace equiloc {

struct GroebnerOptions {
    // Cap on S-polynomial reductions; exceeding it raises ResourceError.
    long long max_reductions = 500000;
};

// Remainder of f on division by the (not necessarily Groebner) set basis.
Poly normal_form(const Poly& f, const std::vector<Poly>& basis);

// Unique reduced Groebner basis for the ring's monomial order, generators
// monic, sorted by leading monomial.  Idempotent.
std::vector<Poly> groebner(const std::vector<Poly>& generators,
                           const GroebnerOptions& opts = {});
Ideal groebner(const Ideal& ideal, const GroebnerOptions& opts = {});

bool ideal_member(const Poly& f, const Ideal& ideal, const GroebnerOptions& opts = {});
bool ideal_equal(const Ideal& lhs, const Ideal& rhs, const GroebnerOptions& opts = {});
bool ideal_is_unit(const Ideal& ideal, const GroebnerOptions& opts = {});

// true iff every full-Gamma homogeneous component of every generator lies
// back in the ideal (so the ideal cuts out a G-invariant subscheme).
bool is_homogeneous(const Ideal& ideal, const Grading& g, const GroebnerOptions& opts = {});

}  // namespace equiloc

#endif
