#include "equiloc/finitefield.hpp"

#include <algorithm>

#include "equiloc/errors.hpp"

namespace equiloc {

namespace {

std::vector<int> digits(long value, long p, int k) {
    std::vector<int> d(k, 0);
    for (int i = 0; i < k && value > 0; ++i) {
        d[i] = static_cast<int>(value % p);
        value /= p;
    }
    return d;
}

long pack(const std::vector<int>& d, long p) {
    long v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

// Polynomial multiplication over F_p followed by reduction mod the monic
// modulus (coefficients low-to-high, modulus has implicit leading 1).
std::vector<int> polymulmod(const std::vector<int>& a, const std::vector<int>& b,
                            const std::vector<int>& modulus, long p) {
    const int k = static_cast<int>(modulus.size());
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = static_cast<int>((prod[i + j] + 1L * a[i] * b[j]) % p);
    for (int d = static_cast<int>(prod.size()) - 1; d >= k; --d) {
        int c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (int i = 0; i < k; ++i)
            prod[d - k + i] = static_cast<int>(((prod[d - k + i] - 1L * c * modulus[i]) % p + p) % p);
    }
    prod.resize(k);
    return prod;
}

bool is_irreducible(const std::vector<int>& f, long p) {
    // f monic of degree k (coefficients of x^0..x^{k-1} given); trial
    // division by every monic polynomial of degree 1..k/2.
    const int k = static_cast<int>(f.size());
    for (int d = 1; 2 * d <= k; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            std::vector<int> g = digits(code, p, d);
            g.push_back(1);  // monic of degree d
            // Remainder of x^k + f by g.
            std::vector<int> rem(f);
            rem.push_back(1);
            for (int t = static_cast<int>(rem.size()) - 1; t >= d; --t) {
                int c = rem[t];
                if (!c) continue;
                for (int i = 0; i <= d; ++i)
                    rem[t - d + i] =
                        static_cast<int>(((rem[t - d + i] - 1L * c * g[i]) % p + p) % p);
            }
            if (std::all_of(rem.begin(), rem.begin() + d, [](int x) { return x == 0; }))
                return false;
        }
    }
    return true;
}

}  // namespace

GaloisField::GaloisField(long q) : q_(q) {
    if (q < 2) throw InputError("field size must be at least 2");
    long p = 2;
    long n = q;
    while (n % p != 0) {
        ++p;
    }
    k_ = 0;
    while (n > 1) {
        if (n % p != 0) throw InputError("field size is not a prime power");
        n /= p;
        ++k_;
    }
    p_ = p;

    if (k_ == 1) {
        modulus_ = {0};  // unused
    } else {
        bool found = false;
        long count = 1;
        for (int i = 0; i < k_; ++i) count *= p_;
        for (long code = 0; code < count && !found; ++code) {
            std::vector<int> f = digits(code, p_, k_);
            if (is_irreducible(f, p_)) {
                modulus_ = f;
                found = true;
            }
        }
        if (!found) throw InternalError("no irreducible modulus found");
    }

    mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
    for (long a = 0; a < q_; ++a)
        for (long b = a; b < q_; ++b) {
            int v = mul_slow(static_cast<int>(a), static_cast<int>(b));
            mul_[static_cast<std::size_t>(a) * q_ + b] = v;
            mul_[static_cast<std::size_t>(b) * q_ + a] = v;
        }

    generator_ = 0;
    for (int a = 1; a < q_; ++a) {
        long order = 1;
        int x = a;
        while (x != 1) {
            x = mul(x, a);
            ++order;
        }
        if (order == q_ - 1) {
            generator_ = a;
            break;
        }
    }
    if (generator_ == 0 && q_ > 2) throw InternalError("no multiplicative generator found");
    if (q_ == 2) generator_ = 1;
}

int GaloisField::mul_slow(int a, int b) const {
    if (k_ == 1) return static_cast<int>((1L * a * b) % p_);
    std::vector<int> da = digits(a, p_, k_), db = digits(b, p_, k_);
    return static_cast<int>(pack(polymulmod(da, db, modulus_, p_), p_));
}

int GaloisField::add(int a, int b) const {
    if (k_ == 1) return static_cast<int>((a + b) % p_);
    std::vector<int> da = digits(a, p_, k_), db = digits(b, p_, k_);
    for (int i = 0; i < k_; ++i) da[i] = static_cast<int>((da[i] + db[i]) % p_);
    return static_cast<int>(pack(da, p_));
}

int GaloisField::neg(int a) const {
    if (k_ == 1) return static_cast<int>((p_ - a) % p_);
    std::vector<int> d = digits(a, p_, k_);
    for (int i = 0; i < k_; ++i) d[i] = static_cast<int>((p_ - d[i]) % p_);
    return static_cast<int>(pack(d, p_));
}

int GaloisField::pow(int a, long e) const {
    if (e < 0) return pow(inverse(a), -e);
    int r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

int GaloisField::inverse(int a) const {
    if (a == 0) throw InputError("inverse of zero field element");
    return pow(a, q_ - 2);
}

int GaloisField::from_integer(const Int& n) const {
    Int mod(p_);
    Int r = ((n % mod) + mod) % mod;
    return static_cast<int>(r.get_si());
}

int GaloisField::from_scalar(const Scalar& c) const {
    if (c.field().p != 0 && c.field().p != p_)
        throw InputError("scalar lives over a different characteristic");
    Int num = c.value().get_num(), den = c.value().get_den();
    int n = from_integer(num);
    int d = from_integer(den);
    if (d == 0) throw InputError("denominator not invertible in the finite field");
    return mul(n, inverse(d));
}

std::vector<int> GaloisField::roots_of_unity(const Int& m) const {
    if (m <= 0) throw InputError("roots_of_unity: order must be positive");
    Int qm1(q_ - 1);
    if (qm1 % m != 0)
        throw InputError("exponent condition violated: " + m.get_str() + " does not divide q-1");
    Int step_int = qm1 / m;
    long step = step_int.get_si();
    long count = m.get_si();
    std::vector<int> roots;
    roots.reserve(count);
    for (long t = 0; t < count; ++t) roots.push_back(pow(generator_, step * t));
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace equiloc
