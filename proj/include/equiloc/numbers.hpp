#ifndef EQUILOC_NUMBERS_HPP
#define EQUILOC_NUMBERS_HPP

#include <gmpxx.h>

#include <string>

#include "equiloc/errors.hpp"

namespace equiloc {

using Int = mpz_class;
using Rat = mpq_class;

// Coefficient field: the rationals (p == 0) or the prime field F_p.
struct FieldSpec {
    long p = 0;

    bool is_rational() const { return p == 0; }
    bool operator==(const FieldSpec&) const = default;
};

// Element of Q or of F_p.  F_p values are kept reduced to [0, p).
class Scalar {
  public:
    Scalar() : p_(0) {}
    Scalar(const Rat& value, long p) : v_(value), p_(p) { reduce(); }
    explicit Scalar(const Rat& value) : v_(value), p_(0) {}

    static Scalar zero(FieldSpec f) { return Scalar(Rat(0), f.p); }
    static Scalar one(FieldSpec f) { return Scalar(Rat(1), f.p); }
    static Scalar of_int(const Int& n, FieldSpec f) { return Scalar(Rat(n), f.p); }

    FieldSpec field() const { return FieldSpec{p_}; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    const Rat& value() const { return v_; }

    Scalar operator-() const { return Scalar(-v_, p_); }

    Scalar operator+(const Scalar& o) const {
        check(o);
        return Scalar(v_ + o.v_, p_);
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        return Scalar(v_ - o.v_, p_);
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        return Scalar(v_ * o.v_, p_);
    }
    Scalar operator/(const Scalar& o) const {
        check(o);
        if (o.is_zero()) throw InputError("division by zero scalar");
        if (p_ == 0) return Scalar(v_ / o.v_, 0);
        return *this * o.inverse();
    }
    Scalar inverse() const {
        if (is_zero()) throw InputError("inverse of zero scalar");
        if (p_ == 0) return Scalar(1 / v_, 0);
        Int inv;
        Int n = v_.get_num();
        Int mod(p_);
        if (mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw InternalError("non-invertible residue mod p");
        return Scalar(Rat(inv), p_);
    }

    bool operator==(const Scalar& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const { return v_.get_str(); }

  private:
    void check(const Scalar& o) const {
        if (p_ != o.p_) throw InternalError("mixed coefficient fields");
    }
    void reduce() {
        if (p_ == 0) return;
        v_.canonicalize();
        Int num = v_.get_num(), den = v_.get_den(), mod(p_);
        num = ((num % mod) + mod) % mod;
        if (den != 1) {
            Int dinv;
            den = ((den % mod) + mod) % mod;
            if (den == 0 || mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
                throw InputError("denominator not invertible mod p");
            num = (num * dinv) % mod;
        }
        v_ = Rat(num);
    }

    Rat v_;
    long p_;
};

}  // namespace equiloc

#endif
