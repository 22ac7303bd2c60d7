#ifndef EQUILOC_FINITEFIELD_HPP
#define EQUILOC_FINITEFIELD_HPP

#include <vector>

#include "equiloc/numbers.hpp"

namespace equiloc {

// Arithmetic in GF(q) for a prime power q.  Elements are encoded as integers
// in [0, q): the base-p digits are the coefficients of the polynomial
// representative over F_p.
class GaloisField {
  public:
    explicit GaloisField(long q);

    long size() const { return q_; }
    long characteristic() const { return p_; }
    int degree() const { return k_; }

    int add(int a, int b) const;
    int neg(int a) const;
    int sub(int a, int b) const { return add(a, neg(b)); }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * q_ + b]; }
    int pow(int a, long e) const;
    int inverse(int a) const;

    int from_integer(const Int& n) const;   // prime subfield
    int from_scalar(const Scalar& c) const;  // Q or F_p coefficients

    // A fixed generator of the cyclic group GF(q)^*.
    int primitive_element() const { return generator_; }
    // The m-th roots of unity; requires m | q-1.
    std::vector<int> roots_of_unity(const Int& m) const;

  private:
    int mul_slow(int a, int b) const;

    long q_, p_;
    int k_;
    std::vector<int> modulus_;  // irreducible monic polynomial, degree k
    std::vector<int> mul_;      // q x q multiplication table
    int generator_;
};

}  // namespace equiloc

#endif
