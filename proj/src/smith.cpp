#include "equiloc/smith.hpp"

#include <algorithm>
#include <sstream>

#include "equiloc/errors.hpp"

namespace equiloc {

namespace {

CohomClass cc_add(const CohomClass& x, const CohomClass& y) {
    if (std::holds_alternative<PointElem>(x) && std::holds_alternative<PointElem>(y))
        return std::get<PointElem>(x) + std::get<PointElem>(y);
    if (std::holds_alternative<ModelElem>(x) && std::holds_alternative<ModelElem>(y))
        return std::get<ModelElem>(x) + std::get<ModelElem>(y);
    if (std::holds_alternative<ModelElem>(x))
        return std::get<ModelElem>(x) +
               std::get<ModelElem>(x).ring()->embed(std::get<PointElem>(y));
    return std::get<ModelElem>(y) + std::get<ModelElem>(y).ring()->embed(std::get<PointElem>(x));
}

CohomClass cc_mul(const CohomClass& x, const CohomClass& y) {
    if (std::holds_alternative<PointElem>(x) && std::holds_alternative<PointElem>(y))
        return std::get<PointElem>(x) * std::get<PointElem>(y);
    if (std::holds_alternative<ModelElem>(x) && std::holds_alternative<ModelElem>(y))
        return std::get<ModelElem>(x) * std::get<ModelElem>(y);
    if (std::holds_alternative<ModelElem>(x))
        return std::get<ModelElem>(x) *
               std::get<ModelElem>(x).ring()->embed(std::get<PointElem>(y));
    return std::get<ModelElem>(y) * std::get<ModelElem>(y).ring()->embed(std::get<PointElem>(x));
}

CohomClass cc_neg(const CohomClass& x) {
    if (std::holds_alternative<PointElem>(x)) return -std::get<PointElem>(x);
    return -std::get<ModelElem>(x);
}

bool cc_is_zero(const CohomClass& x) {
    if (std::holds_alternative<PointElem>(x)) return std::get<PointElem>(x).is_zero();
    return std::get<ModelElem>(x).is_zero();
}

std::optional<Bidegree> cc_bidegree(const CohomClass& x) {
    if (std::holds_alternative<PointElem>(x)) return std::get<PointElem>(x).bidegree();
    return std::get<ModelElem>(x).bidegree();
}

std::string cc_str(const CohomClass& x) {
    if (std::holds_alternative<PointElem>(x)) return std::get<PointElem>(x).str();
    return std::get<ModelElem>(x).str();
}

// Truncated product of coefficient series.
std::vector<CohomClass> series_mul(const std::vector<CohomClass>& a,
                                   const std::vector<CohomClass>& b, int order,
                                   const CohomClass& zero) {
    std::vector<CohomClass> out(static_cast<std::size_t>(order) + 1, zero);
    for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(order); ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(order); ++j)
            out[i + j] = cc_add(out[i + j], cc_mul(a[i], b[j]));
    return out;
}

std::vector<CohomClass> series_pow(std::vector<CohomClass> base, int e, int order,
                                   const CohomClass& one, const CohomClass& zero) {
    std::vector<CohomClass> r{one};
    while (e > 0) {
        if (e & 1) r = series_mul(r, base, order, zero);
        base = series_mul(base, base, order, zero);
        e >>= 1;
    }
    r.resize(static_cast<std::size_t>(order) + 1, zero);
    return r;
}

// Inverse of an n x n matrix over F_p.
std::vector<std::vector<long>> invert_mod_p(std::vector<std::vector<long>> a, long p) {
    const std::size_t n = a.size();
    std::vector<std::vector<long>> inv(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    auto inv_scalar = [p](long x) {
        long r = 1, base = ((x % p) + p) % p, e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] % p == 0) ++piv;
        if (piv == n) throw InternalError("singular matrix mod p");
        std::swap(a[k], a[piv]);
        std::swap(inv[k], inv[piv]);
        long s = inv_scalar(a[k][k]);
        for (std::size_t j = 0; j < n; ++j) {
            a[k][j] = a[k][j] * s % p;
            inv[k][j] = inv[k][j] * s % p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            long f = ((a[i][k] % p) + p) % p;
            if (!f) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = ((a[i][j] - f * a[k][j]) % p + p) % p;
                inv[i][j] = ((inv[i][j] - f * inv[k][j]) % p + p) % p;
            }
        }
    }
    return inv;
}

// A in GL_n(F_p) with A * chi = epsilon_1.
std::vector<std::vector<long>> gl_taking_to_v1(const Character& chi, long p) {
    const std::size_t n = chi.torsion_part.size();
    // Columns: chi first, then greedily completed to a basis.
    std::vector<std::vector<long>> cols;
    std::vector<long> first;
    for (const Int& x : chi.torsion_part) {
        Int r = ((x % p) + p) % p;
        first.push_back(r.get_si());
    }
    cols.push_back(first);
    for (std::size_t j = 0; j < n && cols.size() < n; ++j) {
        std::vector<long> e(n, 0);
        e[j] = 1;
        // Accept e_j if it is independent from the chosen columns.
        std::vector<std::vector<long>> trial = cols;
        trial.push_back(e);
        // Rank check by elimination.
        std::vector<std::vector<long>> rows(trial.size(), std::vector<long>(n));
        for (std::size_t c = 0; c < trial.size(); ++c) rows[c] = trial[c];
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
            std::size_t piv = rank;
            while (piv < rows.size() && rows[piv][col] % p == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[rank], rows[piv]);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == rank) continue;
                long f = rows[i][col] % p;
                if (!f) continue;
                long s = rows[rank][col] % p;
                long sinv = 1, base = ((s % p) + p) % p, e2 = p - 2;
                while (e2 > 0) {
                    if (e2 & 1) sinv = sinv * base % p;
                    base = base * base % p;
                    e2 >>= 1;
                }
                long factor = f * sinv % p;
                for (std::size_t jj = 0; jj < n; ++jj)
                    rows[i][jj] = ((rows[i][jj] - factor * rows[rank][jj]) % p + p) % p;
            }
            ++rank;
        }
        if (rank == trial.size()) cols.push_back(e);
    }
    if (cols.size() != n) throw InternalError("failed to complete character to a basis");
    std::vector<std::vector<long>> b(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i][j] = cols[j][i];
    return invert_mod_p(std::move(b), p);
}

Character apply_matrix(const std::vector<std::vector<long>>& a, const Character& chi,
                       const CharacterLattice& lattice) {
    const std::size_t n = chi.torsion_part.size();
    std::vector<Int> coords(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += Int(a[i][j]) * chi.torsion_part[j];
        coords[i] = acc;
    }
    Character out;
    out.free_part = {};
    out.torsion_part = std::move(coords);
    return lattice.reduce(out);
}

// Ring substitution v_j -> sum_i A_ij v'_i, u_j -> sum_i A_ij u'_i.
PointElem transform_point(const PointElem& x, const std::vector<std::vector<long>>& a) {
    const PointRingPtr& ring = x.ring();
    const int s = ring->torsion_count();
    const FieldSpec field = ring->coefficients();
    std::vector<PointElem> v_img(s, ring->zero());
    std::vector<PointElem> u_img(s, ring->zero());
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) {
            Scalar c = Scalar(Rat(a[i][j]), field.p);
            if (c.is_zero()) continue;
            v_img[j] = v_img[j] + ring->v(i + 1).scaled(c);
            u_img[j] = u_img[j] + ring->u(i + 1).scaled(c);
        }
    PointElem out = ring->zero();
    for (const auto& [m, coeff] : x.terms()) {
        PointElem term = ring->scalar(coeff);
        for (int j = 0; j < s; ++j)
            if (m.powers[j] > 0) term = term * v_img[j].pow(m.powers[j]);
        if (ring->has_tau() && m.powers[ring->npowers() - 1] > 0)
            term = term * ring->tau().pow(m.powers[ring->npowers() - 1]);
        for (int j = 0; j < s; ++j)
            if (m.umask & (1u << j)) term = term * u_img[j];
        out = out + term;
    }
    return out;
}

bool divisible_by_v(const PointElem& x, int vindex) {
    for (const auto& [m, c] : x.terms())
        if (m.powers[vindex] == 0) return false;
    return true;
}

PointElem divide_by_v(const PointElem& x, int vindex) {
    PointElem out(x.ring());
    for (const auto& [m, c] : x.terms()) {
        PMono d = m;
        d.powers[vindex] -= 1;
        out.add_term(std::move(d), c);
    }
    return out;
}

}  // namespace

SteenrodModule::SteenrodModule(PointRingPtr ring, ModelRingPtr model)
    : ring_(std::move(ring)), model_(std::move(model)) {
    if (ring_->torus_rank() != 0)
        throw InputError("Steenrod modules require G = (mu_p)^n (no torus factors)");
    if (ring_->torsion_count() == 0)
        throw InputError("Steenrod modules require at least one mu_p factor");
}

SteenrodModule SteenrodModule::point_module(PointRingPtr ring) {
    return SteenrodModule(std::move(ring), nullptr);
}

SteenrodModule SteenrodModule::model_module(ModelRingPtr model) {
    PointRingPtr base = model->base();
    return SteenrodModule(std::move(base), std::move(model));
}

void SteenrodModule::override_action(const std::string& generator, ActionTable table) {
    overrides_[generator] = std::move(table);
}

bool SteenrodModule::has_point_overrides() const {
    for (const auto& [name, table] : overrides_)
        if (name != "zeta") return true;
    return false;
}

const ActionTable* SteenrodModule::zeta_override() const {
    auto it = overrides_.find("zeta");
    return it == overrides_.end() ? nullptr : &it->second;
}

CohomClass SteenrodModule::zero_class() const {
    if (model_) return model_->zero();
    return ring_->zero();
}

CohomClass SteenrodModule::one_class() const {
    if (model_) return model_->one();
    return ring_->one();
}

// kind: 0 = v_j, 1 = u_j, 2 = tau, 3 = zeta (index 1-based for v, u).
std::vector<CohomClass> SteenrodModule::generator_series(int kind, int index, int order) const {
    auto named = [&](const std::string& name, const CohomClass& gen,
                     std::optional<CohomClass> default_p1) {
        std::vector<CohomClass> s(static_cast<std::size_t>(order) + 1, zero_class());
        s[0] = gen;
        auto it = overrides_.find(name);
        if (it != overrides_.end()) {
            for (const auto& [i, val] : it->second)
                if (i >= 1 && i <= order) s[i] = val;
        } else if (default_p1 && order >= 1) {
            s[1] = *default_p1;
        }
        return s;
    };
    const long p = prime();
    switch (kind) {
        case 0: {
            CohomClass v = model_ ? CohomClass(model_->embed(ring_->v(index)))
                                  : CohomClass(ring_->v(index));
            CohomClass vp = model_ ? CohomClass(model_->embed(ring_->v(index).pow(p)))
                                   : CohomClass(ring_->v(index).pow(p));
            return named("v" + std::to_string(index), v, vp);
        }
        case 1: {
            CohomClass u = model_ ? CohomClass(model_->embed(ring_->u(index)))
                                  : CohomClass(ring_->u(index));
            return named("u" + std::to_string(index), u, std::nullopt);
        }
        case 2: {
            CohomClass tau = model_ ? CohomClass(model_->embed(ring_->tau()))
                                    : CohomClass(ring_->tau());
            return named("tau", tau, std::nullopt);
        }
        case 3: {
            if (!model_) throw InternalError("zeta series on a point module");
            CohomClass z = model_->zeta();
            CohomClass zp = model_->zeta().pow(static_cast<int>(p));
            return named("zeta", z, zp);
        }
    }
    throw InternalError("unknown generator kind");
}

std::vector<CohomClass> SteenrodModule::total_power(const CohomClass& x, int order) const {
    const CohomClass zero = zero_class();
    const CohomClass one = one_class();
    std::vector<CohomClass> acc(static_cast<std::size_t>(order) + 1, zero);

    auto accumulate_point_term = [&](const PMono& m, const Scalar& coeff,
                                     const std::vector<CohomClass>& prefix) {
        std::vector<CohomClass> s = prefix;
        const int scount = ring_->torsion_count();
        for (int j = 0; j < scount; ++j)
            if (m.powers[j] > 0)
                s = series_mul(s, series_pow(generator_series(0, j + 1, order), m.powers[j],
                                             order, one, zero),
                               order, zero);
        if (ring_->has_tau() && m.powers[ring_->npowers() - 1] > 0)
            s = series_mul(s, series_pow(generator_series(2, 0, order),
                                         m.powers[ring_->npowers() - 1], order, one, zero),
                           order, zero);
        for (int j = 0; j < scount; ++j)
            if (m.umask & (1u << j))
                s = series_mul(s, generator_series(1, j + 1, order), order, zero);
        s.resize(static_cast<std::size_t>(order) + 1, zero);
        for (int i = 0; i <= order; ++i) {
            CohomClass scaled = s[i];
            if (std::holds_alternative<PointElem>(scaled))
                scaled = std::get<PointElem>(scaled).scaled(coeff);
            else
                scaled = std::get<ModelElem>(scaled).scaled(coeff);
            acc[i] = cc_add(acc[i], scaled);
        }
    };

    if (std::holds_alternative<PointElem>(x)) {
        if (model_) throw InputError("point class passed to a model module");
        std::vector<CohomClass> unit(static_cast<std::size_t>(order) + 1, zero);
        unit[0] = one;
        for (const auto& [m, coeff] : std::get<PointElem>(x).terms())
            accumulate_point_term(m, coeff, unit);
        return acc;
    }

    const ModelElem& me = std::get<ModelElem>(x);
    if (!model_ || !(*me.ring() == *model_))
        throw InputError("model class from a different module");
    for (std::size_t k = 0; k < me.coef().size(); ++k) {
        if (me.coef()[k].is_zero()) continue;
        std::vector<CohomClass> zpow =
            series_pow(generator_series(3, 0, order), static_cast<int>(k), order, one, zero);
        for (const auto& [m, coeff] : me.coef()[k].terms())
            accumulate_point_term(m, coeff, zpow);
    }
    return acc;
}

CohomClass SteenrodModule::power(const CohomClass& x, int i) const {
    return total_power(x, i)[static_cast<std::size_t>(i)];
}

int SteenrodModule::steenrod_degree_bound(const CohomClass& x) const {
    auto table_degree = [&](const std::string& name, int def) {
        auto it = overrides_.find(name);
        if (it == overrides_.end()) return def;
        int d = 0;
        for (const auto& [i, val] : it->second)
            if (!cc_is_zero(val)) d = std::max(d, i);
        return d;
    };
    auto mono_bound = [&](const PMono& m, int zpow) {
        long b = 0;
        for (int j = 0; j < ring_->torsion_count(); ++j)
            b += static_cast<long>(m.powers[j]) * table_degree("v" + std::to_string(j + 1), 1);
        for (int j = 0; j < ring_->torsion_count(); ++j)
            if (m.umask & (1u << j)) b += table_degree("u" + std::to_string(j + 1), 0);
        if (ring_->has_tau() && m.powers[ring_->npowers() - 1] > 0)
            b += static_cast<long>(m.powers[ring_->npowers() - 1]) * table_degree("tau", 0);
        b += static_cast<long>(zpow) * table_degree("zeta", 1);
        return static_cast<int>(b);
    };
    int bound = 0;
    if (std::holds_alternative<PointElem>(x)) {
        for (const auto& [m, c] : std::get<PointElem>(x).terms())
            bound = std::max(bound, mono_bound(m, 0));
    } else {
        const ModelElem& me = std::get<ModelElem>(x);
        for (std::size_t k = 0; k < me.coef().size(); ++k)
            for (const auto& [m, c] : me.coef()[k].terms())
                bound = std::max(bound, mono_bound(m, static_cast<int>(k)));
    }
    return bound;
}

LocalizedClass power_on_inverse(int i, long p) {
    if (i < 0) throw InputError("power_on_inverse: negative index");
    CharacterLattice gamma(0, {Int(p)});
    auto ring = EquivariantPointRing::create(gamma);
    Character canonical = gamma.make({Int(1)});
    if (i == 0)
        return LocalizedClass{CohomClass(ring->one()), {canonical}};
    long e = static_cast<long>(i) * (p - 1) - 1;
    PointElem num = ring->v(1).pow(static_cast<int>(e));
    if (i % 2 != 0) num = -num;
    return LocalizedClass{CohomClass(num), {}};
}

std::vector<LocalizedClass> series_inverse_oracle(long p, int order) {
    CharacterLattice gamma(0, {Int(p)});
    auto ring = EquivariantPointRing::create(gamma);
    Character canonical = gamma.make({Int(1)});
    PointElem v = ring->v(1);
    PointElem vp = v.pow(static_cast<int>(p));

    // (v + v^p t) sum c_i t^i = 1: v c_0 = 1 and v c_i = -v^p c_{i-1}.
    std::vector<LocalizedClass> out;
    out.push_back(LocalizedClass{CohomClass(ring->one()), {canonical}});
    for (int i = 1; i <= order; ++i) {
        const LocalizedClass& prev = out.back();
        PointElem num = -(vp * std::get<PointElem>(prev.num));
        std::vector<Character> den = prev.den;
        den.push_back(canonical);
        out.push_back(LocalizedClass{CohomClass(num), std::move(den)});
    }
    return out;
}

namespace {

struct StripState {
    SteenrodModule module;
    CohomClass num;
    std::vector<Character> dens;
};

// Change character coordinates by A on the whole problem, carrying any zeta
// action table along.
StripState transform_state(const StripState& st, const std::vector<std::vector<long>>& a) {
    const PointRingPtr& ring = st.module.point_ring();
    const CharacterLattice& gamma = ring->group();
    StripState out = st;
    out.dens.clear();
    for (const auto& chi : st.dens) out.dens.push_back(apply_matrix(a, chi, gamma));
    if (st.module.is_model()) {
        std::vector<Character> weights;
        for (const auto& w : st.module.model()->weights())
            weights.push_back(apply_matrix(a, w, gamma));
        ModelRingPtr new_model = ProjectiveModelRing::create(ring, std::move(weights));
        auto transform_model = [&](const ModelElem& me) {
            std::vector<PointElem> coef;
            for (const auto& c : me.coef()) coef.push_back(transform_point(c, a));
            return ModelElem(new_model, std::move(coef));
        };
        out.module = SteenrodModule::model_module(new_model);
        if (const ActionTable* table = st.module.zeta_override()) {
            ActionTable moved;
            for (const auto& [i, val] : *table)
                moved[i] = std::holds_alternative<ModelElem>(val)
                               ? CohomClass(transform_model(std::get<ModelElem>(val)))
                               : CohomClass(transform_point(std::get<PointElem>(val), a));
            out.module.override_action("zeta", std::move(moved));
        }
        out.num = transform_model(std::get<ModelElem>(st.num));
    } else {
        out.num = transform_point(std::get<PointElem>(st.num), a);
    }
    return out;
}

bool class_divisible_by_v1(const CohomClass& x) {
    if (std::holds_alternative<PointElem>(x)) return divisible_by_v(std::get<PointElem>(x), 0);
    for (const auto& c : std::get<ModelElem>(x).coef())
        if (!c.is_zero() && !divisible_by_v(c, 0)) return false;
    return true;
}

CohomClass class_divide_by_v1(const CohomClass& x) {
    if (std::holds_alternative<PointElem>(x)) return divide_by_v(std::get<PointElem>(x), 0);
    const ModelElem& me = std::get<ModelElem>(x);
    std::vector<PointElem> coef;
    for (const auto& c : me.coef()) coef.push_back(divide_by_v(c, 0));
    return ModelElem(me.ring(), std::move(coef));
}

// For y = x / prod l_j the total operation is P(y) = Q(t) / prod l_j with
// Q = P(x) * prod (1 + l_j^{p-1} t)^{-1}.  Returns Q_{bound+1} .. Q_{bound+s}
// (coefficients in the unlocalized module): y is unstable iff they all
// vanish, for any bound >= the Steenrod degree of x, since the Q_i obey a
// depth-s linear recurrence past the numerator degree and the leading
// recurrence coefficient prod l_j^{p-1} is a nonzerodivisor.
std::vector<CohomClass> q_tail(const SteenrodModule& m, const CohomClass& x,
                               const std::vector<Character>& dens, int bound) {
    const PointRingPtr& ring = m.point_ring();
    const long p = m.prime();
    const std::size_t s = dens.size();
    std::vector<PointElem> cpoly{ring->one()};  // prod (1 + l^{p-1} t)
    for (const auto& chi : dens) {
        PointElem lp = ring->linear_form(chi).pow(static_cast<int>(p - 1));
        std::vector<PointElem> next(cpoly.size() + 1, ring->zero());
        for (std::size_t i = 0; i < cpoly.size(); ++i) {
            next[i] = next[i] + cpoly[i];
            next[i + 1] = next[i + 1] + cpoly[i] * lp;
        }
        cpoly = std::move(next);
    }

    const int top = bound + static_cast<int>(s);
    std::vector<CohomClass> px = m.total_power(x, top);
    std::vector<CohomClass> q(static_cast<std::size_t>(top) + 1, m.zero_class());
    for (int i = 0; i <= top; ++i) {
        CohomClass qi = px[static_cast<std::size_t>(i)];
        for (std::size_t j = 1; j <= s && static_cast<int>(j) <= i; ++j)
            qi = cc_add(qi, cc_neg(cc_mul(q[static_cast<std::size_t>(i) - j],
                                          CohomClass(cpoly[j]))));
        q[static_cast<std::size_t>(i)] = qi;
    }
    std::vector<CohomClass> tail;
    for (int i = bound + 1; i <= top; ++i) tail.push_back(q[static_cast<std::size_t>(i)]);
    return tail;
}

}  // namespace

bool is_unstable(const SteenrodModule& m, const LocalizedClass& y,
                 const SubgroupPresentation& c) {
    const long p = m.prime();
    if (!y.den.empty() && m.has_point_overrides())
        throw InputError(
            "is_unstable: localized certification needs the standard action on v, u");
    for (const auto& chi : y.den) {
        if (c.restricts_trivially(chi))
            throw InputError("is_unstable: denominator not in E_C");
        if (m.point_ring()->linear_form(chi).is_zero())
            throw InputError("is_unstable: denominator has vanishing Euler class");
    }
    StripState st{m, y.num, y.den};
    if (cc_is_zero(st.num)) return true;

    // Strip exactly divisible factors, one linear form at a time, through a
    // GL_n(F_p) change of character coordinates taking the form to v_1.
    bool progress = true;
    while (progress && !st.dens.empty()) {
        progress = false;
        for (std::size_t i = 0; i < st.dens.size(); ++i) {
            auto a = gl_taking_to_v1(st.dens[i], p);
            StripState cand = transform_state(st, a);
            if (class_divisible_by_v1(cand.num)) {
                cand.num = class_divide_by_v1(cand.num);
                cand.dens.erase(cand.dens.begin() + static_cast<std::ptrdiff_t>(i));
                st = std::move(cand);
                progress = true;
                break;
            }
        }
    }
    if (st.dens.empty()) return true;  // lies in the unlocalized module

    auto tail = q_tail(st.module, st.num, st.dens,
                       st.module.steenrod_degree_bound(st.num));
    for (const auto& qi : tail)
        if (!cc_is_zero(qi)) return false;
    return true;
}

namespace {

// Projective representatives of the nonzero characters inverted by the
// localization (those restricting nontrivially to C).
std::vector<Character> ec_linear_forms(const PointRingPtr& ring,
                                       const SubgroupPresentation& c) {
    const CharacterLattice& gamma = ring->group();
    const long p = ring->torsion_prime();
    const std::size_t n = gamma.torsion_orders().size();
    std::vector<Character> out;
    std::vector<long> coords(n, 0);
    while (true) {
        std::size_t i = 0;
        while (i < n && ++coords[i] == p) coords[i++] = 0;
        if (i == n) break;
        // Canonical representative: first nonzero coordinate equals 1.
        std::size_t lead = 0;
        while (lead < n && coords[lead] == 0) ++lead;
        if (coords[lead] != 1) continue;
        std::vector<Int> v(coords.begin(), coords.end());
        Character chi;
        chi.torsion_part = std::move(v);
        chi = gamma.reduce(chi);
        if (!c.restricts_trivially(chi)) out.push_back(chi);
    }
    return out;
}

std::vector<std::vector<Character>> denominator_multisets(const std::vector<Character>& forms,
                                                          int budget) {
    std::vector<std::vector<Character>> out{{}};
    std::vector<std::vector<Character>> frontier{{}};
    for (int step = 0; step < budget; ++step) {
        std::vector<std::vector<Character>> next;
        for (const auto& base : frontier)
            for (std::size_t f = 0; f < forms.size(); ++f) {
                // Nondecreasing form index keeps multisets canonical.
                if (!base.empty() && forms[f] < base.back()) continue;
                auto d = base;
                d.push_back(forms[f]);
                next.push_back(d);
                out.push_back(d);
            }
        frontier = std::move(next);
    }
    return out;
}

std::vector<PMono> point_monomials_in_box(const PointRingPtr& ring, long amax, long bmax) {
    const int s = ring->torsion_count();
    const bool tau = ring->has_tau();
    std::vector<PMono> out;
    std::vector<int> beta(static_cast<std::size_t>(s), 0);
    while (true) {
        long vdeg = 0;
        for (int j = 0; j < s; ++j) vdeg += beta[static_cast<std::size_t>(j)];
        if (2 * vdeg <= amax && vdeg <= bmax) {
            for (std::uint32_t mask = 0; mask < (1u << s); ++mask) {
                long uc = 0;
                for (int j = 0; j < s; ++j)
                    if (mask & (1u << j)) ++uc;
                long a = 2 * vdeg + uc;
                long b = vdeg + uc;
                if (a > amax || b > bmax) continue;
                long tmax = tau ? bmax - b : 0;
                for (long tpow = 0; tpow <= tmax; ++tpow) {
                    PMono m;
                    m.powers.assign(ring->npowers(), 0);
                    for (int j = 0; j < s; ++j) m.powers[j] = beta[static_cast<std::size_t>(j)];
                    if (tau) m.powers[ring->npowers() - 1] = static_cast<int>(tpow);
                    m.umask = mask;
                    out.push_back(std::move(m));
                }
            }
        }
        // Next exponent vector with entries bounded by amax/2.
        std::size_t i = 0;
        while (i < beta.size() && 2L * (++beta[i]) > amax) beta[i++] = 0;
        if (i == beta.size()) break;
        if (beta.empty()) break;
    }
    if (beta.empty() && out.empty()) {
        PMono m;
        m.powers.assign(ring->npowers(), 0);
        out.push_back(m);
    }
    return out;
}

std::vector<CohomClass> module_monomials(const SteenrodModule& m, long amax, long bmax) {
    std::vector<CohomClass> out;
    const PointRingPtr& ring = m.point_ring();
    if (!m.is_model()) {
        for (const auto& mono : point_monomials_in_box(ring, amax, bmax)) {
            PointElem x(ring);
            x.add_term(mono, Scalar::one(ring->coefficients()));
            out.push_back(std::move(x));
        }
        return out;
    }
    const ModelRingPtr& model = m.model();
    const std::size_t n = model->dim();
    for (std::size_t k = 0; k < n; ++k) {
        long ka = 2 * static_cast<long>(k), kb = static_cast<long>(k);
        if (ka > amax || kb > bmax) continue;
        for (const auto& mono : point_monomials_in_box(ring, amax - ka, bmax - kb)) {
            std::vector<PointElem> coef(n, ring->zero());
            PointElem x(ring);
            x.add_term(mono, Scalar::one(ring->coefficients()));
            coef[k] = std::move(x);
            out.push_back(ModelElem(model, std::move(coef)));
        }
    }
    return out;
}

// Coordinates of a class over a fixed monomial indexing, for F_p/Q linear
// algebra on numerators.
using CoordKey = std::pair<long, PMono>;  // (zeta power | -1, point monomial)

void vectorize(const CohomClass& x, std::map<CoordKey, Scalar>& into) {
    if (std::holds_alternative<PointElem>(x)) {
        for (const auto& [m, c] : std::get<PointElem>(x).terms()) into[{-1, m}] = c;
        return;
    }
    const ModelElem& me = std::get<ModelElem>(x);
    for (std::size_t k = 0; k < me.coef().size(); ++k)
        for (const auto& [m, c] : me.coef()[k].terms()) into[{static_cast<long>(k), m}] = c;
}

int matrix_rank(std::vector<std::vector<Scalar>> a) {
    int rank = 0;
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows && a[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[static_cast<std::size_t>(rank)], a[piv]);
        Scalar inv = a[static_cast<std::size_t>(rank)][col].inverse();
        for (std::size_t j = col; j < cols; ++j)
            a[static_cast<std::size_t>(rank)][j] = a[static_cast<std::size_t>(rank)][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == static_cast<std::size_t>(rank)) continue;
            Scalar f = a[i][col];
            if (f.is_zero()) continue;
            for (std::size_t j = col; j < cols; ++j)
                a[i][j] = a[i][j] - f * a[static_cast<std::size_t>(rank)][j];
        }
        ++rank;
    }
    return rank;
}

// Null space of the matrix whose j-th column is cols[j], as coefficient
// vectors over the basis indexed by j.
std::vector<std::vector<Scalar>> kernel_basis(
    const std::vector<std::map<std::pair<int, CoordKey>, Scalar>>& cols, FieldSpec field) {
    std::map<std::pair<int, CoordKey>, std::size_t> index;
    for (const auto& col : cols)
        for (const auto& [k, s] : col) index.emplace(k, 0);
    std::size_t nrows = 0;
    for (auto& [k, pos] : index) pos = nrows++;
    const std::size_t ncols = cols.size();
    std::vector<std::vector<Scalar>> a(nrows, std::vector<Scalar>(ncols, Scalar::zero(field)));
    for (std::size_t j = 0; j < ncols; ++j)
        for (const auto& [k, s] : cols[j]) a[index.at(k)][j] = s;

    // Row echelon with pivot bookkeeping; free columns span the kernel.
    std::vector<long> pivot_of_col(ncols, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
        std::size_t piv = row;
        while (piv < nrows && a[piv][col].is_zero()) ++piv;
        if (piv == nrows) continue;
        std::swap(a[row], a[piv]);
        Scalar inv = a[row][col].inverse();
        for (std::size_t j = col; j < ncols; ++j) a[row][j] = a[row][j] * inv;
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == row) continue;
            Scalar f = a[i][col];
            if (f.is_zero()) continue;
            for (std::size_t j = col; j < ncols; ++j) a[i][j] = a[i][j] - f * a[row][j];
        }
        pivot_of_col[col] = static_cast<long>(row);
        ++row;
    }
    std::vector<std::vector<Scalar>> kernel;
    for (std::size_t col = 0; col < ncols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<Scalar> v(ncols, Scalar::zero(field));
        v[col] = Scalar::one(field);
        for (std::size_t c2 = 0; c2 < col; ++c2)
            if (pivot_of_col[c2] >= 0)
                v[c2] = -a[static_cast<std::size_t>(pivot_of_col[c2])][col];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

CohomClass combine(const std::vector<CohomClass>& basis, const std::vector<Scalar>& coeffs,
                   const SteenrodModule& m) {
    CohomClass acc = m.zero_class();
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (coeffs[j].is_zero()) continue;
        CohomClass scaled = std::holds_alternative<PointElem>(basis[j])
                                ? CohomClass(std::get<PointElem>(basis[j]).scaled(coeffs[j]))
                                : CohomClass(std::get<ModelElem>(basis[j]).scaled(coeffs[j]));
        acc = cc_add(acc, scaled);
    }
    return acc;
}

}  // namespace

// The window slice of Un(M[E_C^{-1}]) is computed exactly per denominator
// multiset: instability of num / prod(den) is a linear condition on the
// numerator (the q_tail map), so each slice is the kernel of that map.
// Denominators are processed shortest first, and only classes that extend
// the span already obtained from shorter denominators are reported.
UnstablePart unstable_part(const SteenrodModule& m, const SubgroupPresentation& c,
                           const Window& window, int denominator_budget) {
    UnstablePart out;
    out.window = window;
    out.denominator_budget = denominator_budget;
    const PointRingPtr& ring = m.point_ring();
    if (denominator_budget > 0 && m.has_point_overrides())
        throw InputError("unstable_part: localization needs the standard action on v, u");
    const FieldSpec field = ring->coefficients();
    auto forms = ec_linear_forms(ring, c);
    auto dens = denominator_multisets(forms, denominator_budget);  // shortest first
    const long amax = window.a1 + 2L * denominator_budget;
    const long bmax = window.b1 + denominator_budget;

    std::map<Bidegree, std::vector<CohomClass>> monos_by_deg;
    for (const auto& x : module_monomials(m, amax, bmax)) {
        auto d = cc_bidegree(x);
        if (d) monos_by_deg[*d].push_back(x);
    }

    // Full kernel spans per (denominator, window bidegree).
    std::map<std::vector<Character>, std::map<Bidegree, std::vector<CohomClass>>> spans;

    for (const auto& den : dens) {
        Bidegree dden{2L * static_cast<long>(den.size()), static_cast<long>(den.size())};
        for (long b = window.b0; b <= window.b1; ++b)
            for (long a = window.a0; a <= window.a1; ++a) {
                Bidegree target{a, b};
                auto bucket = monos_by_deg.find(target + dden);
                if (bucket == monos_by_deg.end()) continue;
                const std::vector<CohomClass>& basis = bucket->second;

                std::vector<CohomClass> kernel;
                if (den.empty()) {
                    kernel = basis;  // unlocalized classes are unstable
                } else {
                    int bound = 0;
                    for (const auto& x : basis)
                        bound = std::max(bound, m.steenrod_degree_bound(x));
                    std::vector<std::map<std::pair<int, CoordKey>, Scalar>> cols;
                    for (const auto& x : basis) {
                        auto tail = q_tail(m, x, den, bound);
                        std::map<std::pair<int, CoordKey>, Scalar> col;
                        for (std::size_t i = 0; i < tail.size(); ++i) {
                            std::map<CoordKey, Scalar> v;
                            vectorize(tail[i], v);
                            for (const auto& [k, s] : v) col[{static_cast<int>(i), k}] = s;
                        }
                        if (!col.empty())
                            out.rejected.push_back(LocalizedClass{x, den});
                        cols.push_back(std::move(col));
                    }
                    for (const auto& coeffs : kernel_basis(cols, field))
                        kernel.push_back(combine(basis, coeffs, m));
                }
                if (kernel.empty()) continue;
                spans[den][target] = kernel;

                // Span already reachable from shorter denominators.
                std::map<CoordKey, std::size_t> index;
                std::vector<std::map<CoordKey, Scalar>> image_vecs, kernel_vecs;
                for (std::size_t i = 0; i < den.size(); ++i) {
                    if (i > 0 && den[i] == den[i - 1]) continue;
                    std::vector<Character> smaller = den;
                    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
                    auto it = spans.find(smaller);
                    if (it == spans.end()) continue;
                    auto jt = it->second.find(target);
                    if (jt == it->second.end()) continue;
                    PointElem form = ring->linear_form(den[i]);
                    for (const auto& y : jt->second) {
                        std::map<CoordKey, Scalar> v;
                        vectorize(cc_mul(y, CohomClass(form)), v);
                        for (const auto& [k, s] : v) index.emplace(k, 0);
                        image_vecs.push_back(std::move(v));
                    }
                }
                for (const auto& y : kernel) {
                    std::map<CoordKey, Scalar> v;
                    vectorize(y, v);
                    for (const auto& [k, s] : v) index.emplace(k, 0);
                    kernel_vecs.push_back(std::move(v));
                }
                std::size_t ncols = 0;
                for (auto& [k, pos] : index) pos = ncols++;
                auto to_row = [&](const std::map<CoordKey, Scalar>& v) {
                    std::vector<Scalar> row(ncols, Scalar::zero(field));
                    for (const auto& [k, s] : v) row[index.at(k)] = s;
                    return row;
                };
                std::vector<std::vector<Scalar>> grow;
                for (const auto& v : image_vecs) grow.push_back(to_row(v));
                int current = matrix_rank(grow);
                for (std::size_t j = 0; j < kernel.size(); ++j) {
                    grow.push_back(to_row(kernel_vecs[j]));
                    int r = matrix_rank(grow);
                    if (r > current) {
                        current = r;
                        out.certified.push_back(LocalizedClass{kernel[j], den});
                    } else {
                        grow.pop_back();
                    }
                }
            }
    }
    return out;
}

SteenrodModule kunneth_extend(long p) {
    CharacterLattice gamma(0, {Int(p)});
    return SteenrodModule::point_module(EquivariantPointRing::create(gamma));
}

SteenrodModule kunneth_extend(const SteenrodModule& m) {
    const PointRingPtr& old_ring = m.point_ring();
    const long p = old_ring->torsion_prime();
    std::vector<Int> torsion(old_ring->group().torsion_orders());
    torsion.insert(torsion.begin(), Int(p));
    CharacterLattice gamma(0, torsion);
    auto ring = EquivariantPointRing::create(gamma, old_ring->options());
    if (!m.is_model()) return SteenrodModule::point_module(ring);

    std::vector<Character> weights;
    for (const auto& w : m.model()->weights()) {
        Character chi;
        chi.torsion_part = w.torsion_part;
        chi.torsion_part.insert(chi.torsion_part.begin(), Int(0));
        weights.push_back(gamma.reduce(chi));
    }
    return SteenrodModule::model_module(ProjectiveModelRing::create(ring, std::move(weights)));
}

namespace {

PMono extend_mono(const PMono& m, const PointRingPtr& old_ring, const PointRingPtr& new_ring) {
    PMono out;
    out.powers.assign(new_ring->npowers(), 0);
    const int s = old_ring->torsion_count();
    for (int j = 0; j < s; ++j) out.powers[j + 1] = m.powers[j];
    if (old_ring->has_tau()) out.powers[new_ring->npowers() - 1] = m.powers[old_ring->npowers() - 1];
    out.umask = m.umask << 1;
    return out;
}

PointElem extend_point(const PointElem& x, const PointRingPtr& old_ring,
                       const PointRingPtr& new_ring) {
    PointElem out(new_ring);
    for (const auto& [mono, coeff] : x.terms()) out.add_term(extend_mono(mono, old_ring, new_ring), coeff);
    return out;
}

}  // namespace

CohomClass kunneth_extend_class(const SteenrodModule& extended, const CohomClass& x) {
    const PointRingPtr& new_ring = extended.point_ring();
    if (std::holds_alternative<PointElem>(x)) {
        const PointElem& pe = std::get<PointElem>(x);
        return extend_point(pe, pe.ring(), new_ring);
    }
    const ModelElem& me = std::get<ModelElem>(x);
    std::vector<PointElem> coef;
    for (const auto& cpart : me.coef()) coef.push_back(extend_point(cpart, cpart.ring(), new_ring));
    return ModelElem(extended.model(), std::move(coef));
}

namespace {

CohomClass multiply_generator(const CohomClass& x, const PointElem& g) {
    if (std::holds_alternative<PointElem>(x)) return std::get<PointElem>(x) * g;
    const ModelElem& me = std::get<ModelElem>(x);
    return me * me.ring()->embed(g);
}

}  // namespace

int SmithRanks::total() const {
    int t = 0;
    for (const auto& [d, r] : rank) t += r;
    return t;
}

SmithRanks smith_fixed_cohomology(const SteenrodModule& m, const Window& window,
                                  int denominator_budget) {
    const PointRingPtr& ring = m.point_ring();
    auto c = SubgroupPresentation::whole_group(ring->group());

    // Certify the window together with the shifted bidegrees needed for the
    // quotient by (v_i, u_i, tau).
    Window extended = window;
    extended.a0 = window.a0 - 2;
    extended.b0 = window.b0 - 1;
    UnstablePart un = unstable_part(m, c, extended, denominator_budget);

    // Bucket certified classes by bidegree.
    std::map<Bidegree, std::vector<LocalizedClass>> buckets;
    for (const auto& y : un.certified) {
        auto nb = cc_bidegree(y.num);
        Bidegree d = *nb - Bidegree{2L * static_cast<long>(y.den.size()),
                                    static_cast<long>(y.den.size())};
        buckets[d].push_back(y);
    }

    std::vector<PointElem> gens2;  // bidegree (2,1): v_i
    std::vector<PointElem> gens1;  // bidegree (1,1): u_i
    for (int j = 1; j <= ring->torsion_count(); ++j) {
        gens2.push_back(ring->v(j));
        gens1.push_back(ring->u(j));
    }

    SmithRanks out;
    out.window = window;
    out.denominator_budget = denominator_budget;

    FieldSpec field = ring->coefficients();
    for (long b = window.b0; b <= window.b1; ++b)
        for (long a = window.a0; a <= window.a1; ++a) {
            Bidegree d{a, b};
            auto here = buckets.find(d);
            const std::vector<LocalizedClass> empty;
            const auto& cs = here == buckets.end() ? empty : here->second;

            // Image of multiplication by the augmentation generators.
            std::vector<LocalizedClass> image;
            auto push_products = [&](const std::vector<PointElem>& gens, Bidegree shift) {
                auto low = buckets.find(d - shift);
                if (low == buckets.end()) return;
                for (const auto& y : low->second)
                    for (const auto& g : gens) {
                        CohomClass prod = multiply_generator(y.num, g);
                        if (cc_is_zero(prod)) continue;
                        image.push_back(LocalizedClass{prod, y.den});
                    }
            };
            push_products(gens2, Bidegree{2, 1});
            push_products(gens1, Bidegree{1, 1});
            if (ring->has_tau()) push_products({ring->tau()}, Bidegree{0, 1});

            if (cs.empty()) {
                out.rank[d] = 0;
                continue;
            }

            // Common denominator across everything compared here.
            std::map<Character, int> common;
            auto count_den = [&](const std::vector<LocalizedClass>& v) {
                for (const auto& y : v) {
                    std::map<Character, int> local;
                    for (const auto& chi : y.den) local[chi]++;
                    for (const auto& [chi, k] : local)
                        common[chi] = std::max(common[chi], k);
                }
            };
            count_den(cs);
            count_den(image);

            auto scale_up = [&](const LocalizedClass& y) {
                std::map<Character, int> local;
                for (const auto& chi : y.den) local[chi]++;
                CohomClass num = y.num;
                for (const auto& [chi, k] : common) {
                    int missing = k - local[chi];
                    for (int i = 0; i < missing; ++i)
                        num = multiply_generator(num, ring->linear_form(chi));
                }
                return num;
            };

            // Assemble coordinates.
            std::map<CoordKey, std::size_t> index;
            std::vector<std::map<CoordKey, Scalar>> image_vecs, class_vecs;
            for (const auto& y : image) {
                std::map<CoordKey, Scalar> v;
                vectorize(scale_up(y), v);
                for (const auto& [k, s] : v) index.emplace(k, 0);
                image_vecs.push_back(std::move(v));
            }
            for (const auto& y : cs) {
                std::map<CoordKey, Scalar> v;
                vectorize(scale_up(y), v);
                for (const auto& [k, s] : v) index.emplace(k, 0);
                class_vecs.push_back(std::move(v));
            }
            std::size_t ncols = 0;
            for (auto& [k, pos] : index) pos = ncols++;

            auto to_row = [&](const std::map<CoordKey, Scalar>& v) {
                std::vector<Scalar> row(ncols, Scalar::zero(field));
                for (const auto& [k, s] : v) row[index.at(k)] = s;
                return row;
            };
            std::vector<std::vector<Scalar>> img_rows, all_rows;
            for (const auto& v : image_vecs) img_rows.push_back(to_row(v));
            all_rows = img_rows;
            for (const auto& v : class_vecs) all_rows.push_back(to_row(v));

            int rank_image = matrix_rank(img_rows);
            int rank_all = matrix_rank(all_rows);
            out.rank[d] = rank_all - rank_image;

            if (out.rank[d] > 0) {
                // Report representatives: classes extending the image span.
                std::vector<std::vector<Scalar>> grow = img_rows;
                int current = rank_image;
                for (std::size_t i = 0; i < class_vecs.size(); ++i) {
                    grow.push_back(to_row(class_vecs[i]));
                    int r = matrix_rank(grow);
                    if (r > current) {
                        current = r;
                        std::ostringstream os;
                        os << cc_str(cs[i].num);
                        if (!cs[i].den.empty()) {
                            os << " / (";
                            for (std::size_t k = 0; k < cs[i].den.size(); ++k) {
                                if (k) os << "*";
                                os << "e" << cs[i].den[k].str();
                            }
                            os << ")";
                        }
                        out.generators.push_back(os.str());
                    } else {
                        grow.pop_back();
                    }
                }
            }
        }
    return out;
}

}  // namespace equiloc
