#include "equiloc/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "equiloc/errors.hpp"

namespace equiloc {

namespace {

std::size_t rows(const IntMat& m) { return m.size(); }
std::size_t cols(const IntMat& m) { return m.empty() ? 0 : m[0].size(); }

IntMat identity(std::size_t n) {
    IntMat e(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
    return e;
}

void swap_rows(IntMat& a, std::size_t i, std::size_t j) { std::swap(a[i], a[j]); }

void swap_cols(IntMat& a, std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
}

// row i += f * row j
void add_row(IntMat& a, std::size_t i, std::size_t j, const Int& f) {
    for (std::size_t c = 0; c < cols(a); ++c) a[i][c] += f * a[j][c];
}

// col i += f * col j
void add_col(IntMat& a, std::size_t i, std::size_t j, const Int& f) {
    for (std::size_t r = 0; r < rows(a); ++r) a[r][i] += f * a[r][j];
}

void negate_row(IntMat& a, std::size_t i) {
    for (auto& x : a[i]) x = -x;
}

bool find_pivot(const IntMat& d, std::size_t s, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    Int best;
    for (std::size_t i = s; i < rows(d); ++i)
        for (std::size_t j = s; j < cols(d); ++j)
            if (d[i][j] != 0) {
                Int v = abs(d[i][j]);
                if (!found || v < best) {
                    found = true;
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
    return found;
}

bool row_col_cleared(const IntMat& d, std::size_t s) {
    for (std::size_t i = s + 1; i < rows(d); ++i)
        if (d[i][s] != 0) return false;
    for (std::size_t j = s + 1; j < cols(d); ++j)
        if (d[s][j] != 0) return false;
    return true;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& m) {
    const std::size_t nr = rows(m), nc = cols(m);
    SmithResult res{identity(nr), m, identity(nc)};
    IntMat& d = res.d;
    IntMat& u = res.u;
    IntMat& v = res.v;
    const std::size_t nmin = std::min(nr, nc);

    for (std::size_t s = 0; s < nmin; ++s) {
        std::size_t pr = s, pc = s;
        if (!find_pivot(d, s, pr, pc)) break;  // remaining block is zero
        swap_rows(d, s, pr);
        swap_rows(u, s, pr);
        swap_cols(d, s, pc);
        swap_cols(v, s, pc);

        while (!row_col_cleared(d, s)) {
            for (std::size_t i = s + 1; i < nr; ++i)
                if (d[i][s] != 0) {
                    Int f = -(d[i][s] / d[s][s]);
                    add_row(d, i, s, f);
                    add_row(u, i, s, f);
                }
            for (std::size_t j = s + 1; j < nc; ++j)
                if (d[s][j] != 0) {
                    Int f = -(d[s][j] / d[s][s]);
                    add_col(d, j, s, f);
                    add_col(v, j, s, f);
                }
            // Leftover entries (division remainders) shrink the pivot.
            if (!row_col_cleared(d, s)) {
                if (!find_pivot(d, s, pr, pc)) break;
                swap_rows(d, s, pr);
                swap_rows(u, s, pr);
                swap_cols(d, s, pc);
                swap_cols(v, s, pc);
            }
        }

        // Enforce divisibility d[s][s] | d[i][j] on the trailing block.
        bool retry = true;
        while (retry) {
            retry = false;
            for (std::size_t i = s + 1; i < nr && !retry; ++i)
                for (std::size_t j = s + 1; j < nc && !retry; ++j)
                    if (d[i][j] % d[s][s] != 0) {
                        add_row(d, s, i, 1);
                        add_row(u, s, i, 1);
                        // Re-clear the pivot row/column, pivot may shrink.
                        while (!row_col_cleared(d, s)) {
                            std::size_t qr = s, qc = s;
                            find_pivot(d, s, qr, qc);
                            swap_rows(d, s, qr);
                            swap_rows(u, s, qr);
                            swap_cols(d, s, qc);
                            swap_cols(v, s, qc);
                            for (std::size_t i2 = s + 1; i2 < nr; ++i2)
                                if (d[i2][s] != 0) {
                                    Int f = -(d[i2][s] / d[s][s]);
                                    add_row(d, i2, s, f);
                                    add_row(u, i2, s, f);
                                }
                            for (std::size_t j2 = s + 1; j2 < nc; ++j2)
                                if (d[s][j2] != 0) {
                                    Int f = -(d[s][j2] / d[s][s]);
                                    add_col(d, j2, s, f);
                                    add_col(v, j2, s, f);
                                }
                        }
                        retry = true;
                    }
        }

        if (d[s][s] < 0) {
            negate_row(d, s);
            negate_row(u, s);
        }
    }
    return res;
}

Int det(const IntMat& m) {
    const std::size_t n = rows(m);
    if (n == 0) return 1;
    if (n != cols(m)) throw InputError("det of non-square matrix");
    // Fraction-free Bareiss elimination.
    IntMat a = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    const std::size_t n = rows(a), m = cols(a), l = cols(b);
    if (m != rows(b)) throw InputError("matrix dimension mismatch");
    IntMat c(n, std::vector<Int>(l, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < l; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

bool Character::operator<(const Character& o) const {
    if (free_part != o.free_part) return free_part < o.free_part;
    return torsion_part < o.torsion_part;
}

std::string Character::str() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto& x : free_part) {
        if (!first) os << ",";
        os << x.get_str();
        first = false;
    }
    for (const auto& x : torsion_part) {
        if (!first) os << ",";
        os << x.get_str();
        first = false;
    }
    os << ")";
    return os.str();
}

CharacterLattice::CharacterLattice(int rank, std::vector<Int> torsion_orders)
    : rank_(rank), torsion_(std::move(torsion_orders)) {
    if (rank_ < 0) throw InputError("negative lattice rank");
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2) throw InputError("torsion orders must be >= 2");
        if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
            throw InputError("torsion orders must form a divisibility chain");
    }
}

Character CharacterLattice::zero() const {
    return Character{std::vector<Int>(rank_, 0), std::vector<Int>(torsion_.size(), 0)};
}

Character CharacterLattice::make(std::vector<Int> coords) const {
    if (coords.size() != dim()) throw InputError("character has wrong number of coordinates");
    Character chi;
    chi.free_part.assign(coords.begin(), coords.begin() + rank_);
    chi.torsion_part.assign(coords.begin() + rank_, coords.end());
    return reduce(chi);
}

Character CharacterLattice::reduce(Character chi) const {
    require_member_shape(chi);
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        Int& x = chi.torsion_part[i];
        x = ((x % torsion_[i]) + torsion_[i]) % torsion_[i];
    }
    return chi;
}

Character CharacterLattice::add(const Character& a, const Character& b) const {
    Character c = a;
    for (int i = 0; i < rank_; ++i) c.free_part[i] += b.free_part[i];
    for (std::size_t i = 0; i < torsion_.size(); ++i) c.torsion_part[i] += b.torsion_part[i];
    return reduce(c);
}

Character CharacterLattice::negate(const Character& a) const {
    Character c = a;
    for (auto& x : c.free_part) x = -x;
    for (auto& x : c.torsion_part) x = -x;
    return reduce(c);
}

Character CharacterLattice::scale(const Int& n, const Character& a) const {
    Character c = a;
    for (auto& x : c.free_part) x *= n;
    for (auto& x : c.torsion_part) x *= n;
    return reduce(c);
}

bool CharacterLattice::is_zero(const Character& a) const {
    Character r = reduce(a);
    for (const auto& x : r.free_part)
        if (x != 0) return false;
    for (const auto& x : r.torsion_part)
        if (x != 0) return false;
    return true;
}

void CharacterLattice::require_member(const Character& chi) const { require_member_shape(chi); }

void CharacterLattice::require_member_shape(const Character& chi) const {
    if (chi.free_part.size() != static_cast<std::size_t>(rank_) ||
        chi.torsion_part.size() != torsion_.size())
        throw InputError("character does not belong to this lattice");
}

std::vector<Int> CharacterLattice::full_coords(const Character& chi) const {
    require_member_shape(chi);
    std::vector<Int> out(chi.free_part);
    out.insert(out.end(), chi.torsion_part.begin(), chi.torsion_part.end());
    return out;
}

std::string CharacterLattice::str() const {
    std::ostringstream os;
    os << "Z^" << rank_;
    for (const auto& m : torsion_) os << " + Z/" << m.get_str();
    return os.str();
}

SubgroupPresentation::SubgroupPresentation(CharacterLattice ambient, CharacterLattice quotient,
                                           IntMat map)
    : ambient_(std::move(ambient)), quotient_(std::move(quotient)), map_(std::move(map)) {
    if (map_.size() != quotient_.dim())
        throw InputError("subgroup map has wrong number of rows");
    for (const auto& row : map_)
        if (row.size() != ambient_.dim()) throw InputError("subgroup map has wrong number of columns");
}

Character SubgroupPresentation::restrict(const Character& chi) const {
    std::vector<Int> x = ambient_.full_coords(chi);
    std::vector<Int> y(quotient_.dim(), 0);
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += map_[i][j] * x[j];
    return quotient_.make(std::move(y));
}

bool SubgroupPresentation::restricts_trivially(const Character& chi) const {
    return quotient_.is_zero(restrict(chi));
}

SubgroupPresentation SubgroupPresentation::whole_group(const CharacterLattice& gamma) {
    const std::size_t n = gamma.dim();
    IntMat q(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) q[i][i] = 1;
    return SubgroupPresentation(gamma, gamma, q);
}

SubgroupPresentation quotient_lattice(const CharacterLattice& gamma,
                                      const std::vector<Character>& relations) {
    const std::size_t n = gamma.dim();
    const std::size_t r = static_cast<std::size_t>(gamma.rank());

    // Relation matrix over Z^n: torsion relations m_i * e_{r+i} plus the
    // lifts of the given characters as columns.
    std::size_t ncols = gamma.torsion_orders().size() + relations.size();
    IntMat rel(n, std::vector<Int>(std::max<std::size_t>(ncols, 1), 0));
    std::size_t c = 0;
    for (std::size_t i = 0; i < gamma.torsion_orders().size(); ++i, ++c)
        rel[r + i][c] = gamma.torsion_orders()[i];
    for (const auto& chi : relations) {
        std::vector<Int> x = gamma.full_coords(chi);
        for (std::size_t i = 0; i < n; ++i) rel[i][c] = x[i];
        ++c;
    }
    if (n == 0) {
        CharacterLattice trivial(0, {});
        return SubgroupPresentation(gamma, trivial, IntMat{});
    }

    SmithResult snf = smith_normal_form(rel);
    const std::size_t m = rel[0].size();
    const std::size_t nmin = std::min(n, m);

    // Coordinate i of y = U*x is taken mod d_i (free when d_i == 0, dropped
    // when d_i == 1).  Coordinates beyond the diagonal are free.
    std::vector<std::size_t> free_rows, torsion_rows;
    std::vector<Int> torsion_orders;
    for (std::size_t i = 0; i < n; ++i) {
        Int d = i < nmin ? snf.d[i][i] : Int(0);
        if (d == 0)
            free_rows.push_back(i);
        else if (d >= 2) {
            torsion_rows.push_back(i);
            torsion_orders.push_back(d);
        }
    }

    CharacterLattice quotient(static_cast<int>(free_rows.size()), torsion_orders);
    IntMat q;
    for (std::size_t i : free_rows) q.push_back(snf.u[i]);
    for (std::size_t i : torsion_rows) q.push_back(snf.u[i]);
    return SubgroupPresentation(gamma, quotient, q);
}

}  // namespace equiloc
