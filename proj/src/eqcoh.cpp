#include "equiloc/eqcoh.hpp"

#include <algorithm>
#include <sstream>

#include "equiloc/errors.hpp"
#include "equiloc/groebner.hpp"

namespace equiloc {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<int> mask_to_list(std::uint32_t mask) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) out.push_back(i);
    return out;
}

}  // namespace

EquivariantPointRing::EquivariantPointRing(const CharacterLattice& group, PointRingOptions opts)
    : group_(group), opts_(opts) {
    const auto& torsion = group_.torsion_orders();
    if (!torsion.empty()) {
        Int p = torsion.front();
        for (const Int& m : torsion)
            if (m != p)
                throw InputError("point ring: mixed torsion orders are not supported");
        if (!p.fits_slong_p() || !is_prime(p.get_si()))
            throw InputError("point ring: torsion order must be a single prime");
        p_ = p.get_si();
        field_ = FieldSpec{p_};
    } else {
        field_ = FieldSpec{0};
    }
    if (torsion.size() > 31) throw InputError("point ring: too many torsion factors");
    if (opts_.usq == USquareRelation::TauV && torsion.empty())
        throw InputError("point ring: tau relation requires torsion factors");
}

PointRingPtr EquivariantPointRing::create(const CharacterLattice& group, PointRingOptions opts) {
    return PointRingPtr(new EquivariantPointRing(group, opts));
}

std::size_t EquivariantPointRing::npowers() const {
    return static_cast<std::size_t>(torus_rank()) + torsion_count() + (has_tau() ? 1 : 0);
}

PointElem EquivariantPointRing::zero() const { return PointElem(shared_from_this()); }

PointElem EquivariantPointRing::one() const { return scalar(Scalar::one(field_)); }

PointElem EquivariantPointRing::scalar(const Scalar& c) const {
    PointElem x(shared_from_this());
    x.add_term(PMono{std::vector<int>(npowers(), 0), 0}, c);
    return x;
}

PointElem EquivariantPointRing::t(int i) const {
    if (i < 1 || i > torus_rank()) throw InputError("point ring: t index out of range");
    PMono m{std::vector<int>(npowers(), 0), 0};
    m.powers[i - 1] = 1;
    PointElem x(shared_from_this());
    x.add_term(std::move(m), Scalar::one(field_));
    return x;
}

PointElem EquivariantPointRing::v(int j) const {
    if (j < 1 || j > torsion_count()) throw InputError("point ring: v index out of range");
    PMono m{std::vector<int>(npowers(), 0), 0};
    m.powers[torus_rank() + j - 1] = 1;
    PointElem x(shared_from_this());
    x.add_term(std::move(m), Scalar::one(field_));
    return x;
}

PointElem EquivariantPointRing::u(int j) const {
    if (j < 1 || j > torsion_count()) throw InputError("point ring: u index out of range");
    PMono m{std::vector<int>(npowers(), 0), 0};
    m.umask = 1u << (j - 1);
    PointElem x(shared_from_this());
    x.add_term(std::move(m), Scalar::one(field_));
    return x;
}

PointElem EquivariantPointRing::tau() const {
    if (!has_tau()) throw InputError("point ring: tau is not adjoined");
    PMono m{std::vector<int>(npowers(), 0), 0};
    m.powers[npowers() - 1] = 1;
    PointElem x(shared_from_this());
    x.add_term(std::move(m), Scalar::one(field_));
    return x;
}

PointElem EquivariantPointRing::linear_form(const Character& chi) const {
    group_.require_member(chi);
    Character red = group_.reduce(chi);
    PointElem x(shared_from_this());
    for (int i = 0; i < torus_rank(); ++i) {
        Scalar c = Scalar::of_int(red.free_part[i], field_);
        if (c.is_zero()) continue;
        PMono m{std::vector<int>(npowers(), 0), 0};
        m.powers[i] = 1;
        x.add_term(std::move(m), c);
    }
    for (int j = 0; j < torsion_count(); ++j) {
        Scalar c = Scalar::of_int(red.torsion_part[j], field_);
        if (c.is_zero()) continue;
        PMono m{std::vector<int>(npowers(), 0), 0};
        m.powers[torus_rank() + j] = 1;
        x.add_term(std::move(m), c);
    }
    return x;
}

std::optional<Character> EquivariantPointRing::extract_character(const PointElem& x) const {
    std::vector<Int> coords(group_.dim(), 0);
    const int r = torus_rank();
    const int s = torsion_count();
    for (const auto& [m, c] : x.terms()) {
        if (m.umask != 0) return std::nullopt;
        int idx = -1;
        for (std::size_t k = 0; k < m.powers.size(); ++k) {
            if (m.powers[k] == 0) continue;
            if (m.powers[k] != 1 || idx >= 0) return std::nullopt;
            idx = static_cast<int>(k);
        }
        if (idx < 0 || idx >= r + s) return std::nullopt;  // constant or tau term
        if (idx < r) {
            // Free coordinates are recoverable only when the coefficient
            // field sees integers exactly.
            if (s > 0) return std::nullopt;  // known mod p only: ambiguous lift
            if (c.value().get_den() != 1) return std::nullopt;
            coords[idx] = c.value().get_num();
        } else {
            coords[idx] = c.value().get_num();
        }
    }
    Character chi = group_.make(std::move(coords));
    if (!(linear_form(chi) == x)) return std::nullopt;
    return chi;
}

Bidegree EquivariantPointRing::mono_bidegree(const PMono& m) const {
    const int r = torus_rank();
    const int s = torsion_count();
    Bidegree d;
    for (int i = 0; i < r + s; ++i) {
        d.a += 2L * m.powers[i];
        d.b += m.powers[i];
    }
    if (has_tau()) d.b += m.powers[r + s];
    int uc = static_cast<int>(mask_to_list(m.umask).size());
    d.a += uc;
    d.b += uc;
    return d;
}

void PointElem::add_term(PMono m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), c);
        return;
    }
    Scalar s = it->second + c;
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = s;
}

PointElem PointElem::operator+(const PointElem& o) const {
    PointElem r = *this;
    if (!r.ring_) r.ring_ = o.ring_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

PointElem PointElem::operator-(const PointElem& o) const { return *this + (-o); }

PointElem PointElem::operator-() const {
    PointElem r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

PointElem PointElem::operator*(const PointElem& o) const {
    PointElem r(ring_ ? ring_ : o.ring_);
    if (!r.ring_) return r;
    const auto& ring = *r.ring_;
    const bool tau_rel = ring.has_tau();
    const int rr = ring.torus_rank();

    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            // Sign from interleaving the two ascending u lists.
            auto la = mask_to_list(ma.umask);
            auto lb = mask_to_list(mb.umask);
            long inversions = 0;
            for (int a : la)
                for (int b : lb)
                    if (a > b) ++inversions;
            std::uint32_t common = ma.umask & mb.umask;
            PMono m;
            m.powers = ma.powers;
            for (std::size_t k = 0; k < m.powers.size(); ++k) m.powers[k] += mb.powers[k];
            m.umask = ma.umask ^ mb.umask;
            Scalar coeff = ca * cb;
            if (inversions % 2 != 0) coeff = -coeff;
            if (common != 0) {
                if (!tau_rel) continue;  // u_i^2 = 0
                // u_i^2 = tau * v_i for each repeated index.
                for (int i : mask_to_list(common)) {
                    m.powers[rr + i] += 1;
                    m.powers[ring.npowers() - 1] += 1;
                }
            }
            if (coeff.is_zero()) continue;
            r.add_term(std::move(m), coeff);
        }
    return r;
}

PointElem PointElem::scaled(const Scalar& c) const {
    PointElem r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
}

PointElem PointElem::pow(int n) const {
    if (n < 0) throw InputError("negative power of a point ring element");
    if (!ring_) throw InternalError("pow on detached element");
    PointElem r = ring_->one();
    PointElem base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

std::optional<Bidegree> PointElem::bidegree() const {
    if (terms_.empty()) return std::nullopt;
    std::optional<Bidegree> d;
    for (const auto& [m, c] : terms_) {
        Bidegree md = ring_->mono_bidegree(m);
        if (!d)
            d = md;
        else if (!(*d == md))
            return std::nullopt;
    }
    return d;
}

std::map<Bidegree, PointElem> PointElem::bidegree_components() const {
    std::map<Bidegree, PointElem> out;
    for (const auto& [m, c] : terms_) {
        Bidegree d = ring_->mono_bidegree(m);
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, PointElem(ring_)).first;
        it->second.add_term(m, c);
    }
    return out;
}

bool PointElem::is_bidegree_homogeneous() const {
    return bidegree_components().size() <= 1;
}

std::string PointElem::str() const {
    if (terms_.empty()) return "0";
    const auto& ring = *ring_;
    const int r = ring.torus_rank();
    const int s = ring.torsion_count();
    auto gen_name = [&](int idx) -> std::string {
        if (idx < r) return r == 1 ? "t" : "t" + std::to_string(idx + 1);
        if (idx < r + s) return s == 1 ? "v" : "v" + std::to_string(idx - r + 1);
        return "tau";
    };
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat val = c.value();
        bool neg = val < 0;
        Rat av = abs(val);
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::ostringstream body;
        bool printed = false;
        for (std::size_t k = 0; k < m.powers.size(); ++k) {
            if (m.powers[k] == 0) continue;
            if (printed) body << "*";
            body << gen_name(static_cast<int>(k));
            if (m.powers[k] != 1) body << "^" << m.powers[k];
            printed = true;
        }
        for (int i : mask_to_list(m.umask)) {
            if (printed) body << "*";
            body << (s == 1 ? "u" : "u" + std::to_string(i + 1));
            printed = true;
        }
        if (!printed) {
            os << av.get_str();
        } else {
            if (av != 1) os << av.get_str() << "*";
            os << body.str();
        }
    }
    return os.str();
}

ProjectiveModelRing::ProjectiveModelRing(PointRingPtr base, std::vector<Character> weights)
    : base_(std::move(base)) {
    if (weights.empty()) throw InputError("projective model needs at least one weight");
    weights_.reserve(weights.size());
    for (auto& w : weights) weights_.push_back(base_->group().reduce(w));

    // prod_j (zeta + e(chi_j)) = sum_k sigma_{n-k} zeta^k; store
    // zeta^n = sum_i reduction_[i] zeta^i with reduction_[i] = -sigma_{n-i}.
    std::vector<PointElem> sigma{base_->one()};  // coefficients of the product, low power first
    for (const auto& w : weights_) {
        PointElem e = base_->linear_form(w);
        std::vector<PointElem> next(sigma.size() + 1, base_->zero());
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            next[i + 1] = next[i + 1] + sigma[i];      // zeta * sigma_i
            next[i] = next[i] + sigma[i] * e;          // e * sigma_i
        }
        sigma = std::move(next);
    }
    reduction_.reserve(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) reduction_.push_back(-sigma[i]);
}

ModelRingPtr ProjectiveModelRing::create(PointRingPtr base, std::vector<Character> weights) {
    return ModelRingPtr(new ProjectiveModelRing(std::move(base), std::move(weights)));
}

ModelElem ProjectiveModelRing::zero() const {
    return ModelElem(shared_from_this(), std::vector<PointElem>(dim(), base_->zero()));
}

ModelElem ProjectiveModelRing::one() const {
    auto c = std::vector<PointElem>(dim(), base_->zero());
    c[0] = base_->one();
    return ModelElem(shared_from_this(), std::move(c));
}

ModelElem ProjectiveModelRing::zeta() const {
    auto c = std::vector<PointElem>(dim(), base_->zero());
    if (dim() == 1) {
        // zeta = -e(chi_1) in the 0-dimensional model.
        c[0] = reduction_[0];
    } else {
        c[1] = base_->one();
    }
    return ModelElem(shared_from_this(), std::move(c));
}

ModelElem ProjectiveModelRing::embed(const PointElem& x) const {
    auto c = std::vector<PointElem>(dim(), base_->zero());
    c[0] = x;
    return ModelElem(shared_from_this(), std::move(c));
}

ModelElem::ModelElem(ModelRingPtr ring, std::vector<PointElem> coef)
    : ring_(std::move(ring)), coef_(std::move(coef)) {
    if (coef_.size() != ring_->dim()) throw InternalError("model element length mismatch");
}

bool ModelElem::is_zero() const {
    return std::all_of(coef_.begin(), coef_.end(), [](const PointElem& c) { return c.is_zero(); });
}

ModelElem ModelElem::operator+(const ModelElem& o) const {
    std::vector<PointElem> c(coef_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + o.coef_[i];
    return ModelElem(ring_, std::move(c));
}

ModelElem ModelElem::operator-(const ModelElem& o) const { return *this + (-o); }

ModelElem ModelElem::operator-() const {
    std::vector<PointElem> c(coef_);
    for (auto& x : c) x = -x;
    return ModelElem(ring_, std::move(c));
}

ModelElem ModelElem::operator*(const ModelElem& o) const {
    const std::size_t n = ring_->dim();
    std::vector<PointElem> prod(2 * n - 1, ring_->base()->zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) prod[i + j] = prod[i + j] + coef_[i] * o.coef_[j];
    // Reduce zeta^d for d >= n via the ring relation.
    for (std::size_t d = prod.size(); d-- > n;) {
        PointElem c = prod[d];
        if (c.is_zero()) continue;
        prod[d] = ring_->base()->zero();
        for (std::size_t i = 0; i < n; ++i)
            prod[d - n + i] = prod[d - n + i] + c * ring_->reduction()[i];
    }
    prod.resize(n);
    return ModelElem(ring_, std::move(prod));
}

ModelElem ModelElem::scaled(const Scalar& c) const {
    std::vector<PointElem> out(coef_);
    for (auto& x : out) x = x.scaled(c);
    return ModelElem(ring_, std::move(out));
}

ModelElem ModelElem::pow(int n) const {
    if (n < 0) throw InputError("negative power of a model element");
    ModelElem r = ring_->one();
    ModelElem base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

bool ModelElem::operator==(const ModelElem& o) const { return coef_ == o.coef_; }

std::optional<Bidegree> ModelElem::bidegree() const {
    std::optional<Bidegree> total;
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        if (coef_[i].is_zero()) continue;
        auto d = coef_[i].bidegree();
        if (!d) return std::nullopt;
        Bidegree here = *d + Bidegree{2L * static_cast<long>(i), static_cast<long>(i)};
        if (!total)
            total = here;
        else if (!(*total == here))
            return std::nullopt;
    }
    return total;
}

std::string ModelElem::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        if (coef_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << coef_[i].str();
            continue;
        }
        os << "(" << coef_[i].str() << ")*zeta";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

PointElem euler_class(const std::vector<Character>& rep, const PointRingPtr& ring) {
    PointElem prod = ring->one();
    for (const auto& chi : rep) prod = prod * ring->linear_form(chi);
    return prod;
}

PointElem euler_class(const FactoredEuler& rep, const PointRingPtr& ring) {
    return euler_class(rep.factors, ring);
}

bool in_ec(const FactoredEuler& x, const SubgroupPresentation& c) {
    for (const auto& chi : x.factors)
        if (c.restricts_trivially(chi)) return false;
    return true;
}

bool in_ec(const PointElem& x, const SubgroupPresentation& c, const PointRingPtr& ring) {
    auto chi = ring->extract_character(x);
    if (!chi)
        throw InputError("in_EC: class is not presented as a product of linear forms");
    return !c.restricts_trivially(*chi);
}

namespace {

const PointRingPtr& ring_of(const CohomClass& x) {
    if (std::holds_alternative<PointElem>(x)) return std::get<PointElem>(x).ring();
    return std::get<ModelElem>(x).ring()->base();
}

CohomClass mul_class(const CohomClass& x, const PointElem& c) {
    if (std::holds_alternative<PointElem>(x)) return std::get<PointElem>(x) * c;
    const ModelElem& m = std::get<ModelElem>(x);
    return m * m.ring()->embed(c);
}

CohomClass add_class(const CohomClass& x, const CohomClass& y) {
    if (std::holds_alternative<PointElem>(x) && std::holds_alternative<PointElem>(y))
        return std::get<PointElem>(x) + std::get<PointElem>(y);
    if (std::holds_alternative<ModelElem>(x) && std::holds_alternative<ModelElem>(y))
        return std::get<ModelElem>(x) + std::get<ModelElem>(y);
    if (std::holds_alternative<ModelElem>(x))
        return std::get<ModelElem>(x) +
               std::get<ModelElem>(x).ring()->embed(std::get<PointElem>(y));
    return std::get<ModelElem>(y) + std::get<ModelElem>(y).ring()->embed(std::get<PointElem>(x));
}

bool class_is_zero(const CohomClass& x) {
    if (std::holds_alternative<PointElem>(x)) return std::get<PointElem>(x).is_zero();
    return std::get<ModelElem>(x).is_zero();
}

bool class_eq(const CohomClass& x, const CohomClass& y) {
    return class_is_zero(add_class(x, std::holds_alternative<PointElem>(y)
                                          ? CohomClass(-std::get<PointElem>(y))
                                          : CohomClass(-std::get<ModelElem>(y))));
}

void validate_denominator(const std::vector<Character>& den, const SubgroupPresentation& c,
                          const PointRingPtr& ring) {
    for (const auto& chi : den) {
        if (c.restricts_trivially(chi))
            throw InputError("localization denominator not in E_C");
        if (ring->linear_form(chi).is_zero())
            throw InputError("localization denominator has vanishing Euler class");
    }
}

}  // namespace

LocalizedClass make_localized(CohomClass num, std::vector<Character> den,
                              const SubgroupPresentation& c, const PointRingPtr& ring) {
    validate_denominator(den, c, ring);
    std::sort(den.begin(), den.end());
    return LocalizedClass{std::move(num), std::move(den)};
}

LocalizedClass loc_add(const LocalizedClass& x, const LocalizedClass& y) {
    const PointRingPtr& ring = ring_of(x.num);
    PointElem ex = euler_class(y.den, ring);
    PointElem ey = euler_class(x.den, ring);
    CohomClass num = add_class(mul_class(x.num, ex), mul_class(y.num, ey));
    std::vector<Character> den = x.den;
    den.insert(den.end(), y.den.begin(), y.den.end());
    std::sort(den.begin(), den.end());
    return LocalizedClass{std::move(num), std::move(den)};
}

bool localize_eq(const LocalizedClass& x, const LocalizedClass& y,
                 const SubgroupPresentation& c) {
    const PointRingPtr& ring = ring_of(x.num);
    validate_denominator(x.den, c, ring);
    validate_denominator(y.den, c, ring);
    CohomClass lhs = mul_class(x.num, euler_class(y.den, ring));
    CohomClass rhs = mul_class(y.num, euler_class(x.den, ring));
    return class_eq(lhs, rhs);
}

std::vector<FixedComponent> fixed_components(const ModelRingPtr& p,
                                             const SubgroupPresentation& c) {
    const CharacterLattice& gamma = p->base()->group();
    std::map<Character, std::vector<std::size_t>> classes;
    for (std::size_t j = 0; j < p->weights().size(); ++j)
        classes[c.restrict(p->weights()[j])].push_back(j);

    std::vector<FixedComponent> out;
    for (const auto& [gamma_c, indices] : classes) {
        FixedComponent comp;
        comp.restriction = gamma_c;
        comp.indices = indices;
        comp.pivot = indices.front();
        const Character& pivot_chi = p->weights()[comp.pivot];
        std::vector<Character> twisted;
        for (std::size_t j : indices) {
            comp.weights.push_back(p->weights()[j]);
            twisted.push_back(gamma.add(p->weights()[j], gamma.negate(pivot_chi)));
        }
        for (std::size_t k = 0; k < p->weights().size(); ++k) {
            if (std::find(indices.begin(), indices.end(), k) != indices.end()) continue;
            comp.normal_weights.push_back(gamma.add(p->weights()[k], gamma.negate(pivot_chi)));
        }
        comp.model = ProjectiveModelRing::create(p->base(), std::move(twisted));
        out.push_back(std::move(comp));
    }
    return out;
}

ModelElem restrict_to_component(const ModelElem& x, const FixedComponent& comp) {
    const ModelRingPtr& target = comp.model;
    const PointRingPtr& base = target->base();
    const Character& pivot_chi = x.ring()->weights()[comp.pivot];
    // zeta |-> zeta_comp - e(chi_j0); evaluate by Horner.
    ModelElem image = target->zeta() - target->embed(base->linear_form(pivot_chi));
    ModelElem acc = target->zero();
    for (std::size_t i = x.coef().size(); i-- > 0;)
        acc = acc * image + target->embed(x.coef()[i]);
    return acc;
}

ModelElem component_class(const ModelRingPtr& p, const FixedComponent& comp) {
    if (comp.indices.size() != 1)
        throw InputError("component_class: component is not a point");
    ModelElem prod = p->one();
    for (std::size_t k = 0; k < p->weights().size(); ++k) {
        if (k == comp.indices.front()) continue;
        prod = prod * (p->zeta() + p->embed(p->base()->linear_form(p->weights()[k])));
    }
    return prod;
}

PointElem presentation_pushforward(const ModelElem& x) { return x.coef().back(); }

LocalizedClass presentation_pushforward(const LocalizedClass& x) {
    if (!std::holds_alternative<ModelElem>(x.num))
        throw InputError("presentation pushforward needs a projective-model class");
    return LocalizedClass{presentation_pushforward(std::get<ModelElem>(x.num)), x.den};
}

namespace {

LocalizedClass bott_sum(const ModelElem& x, const std::vector<Character>& extra_den,
                        const SubgroupPresentation& c) {
    const ModelRingPtr& p = x.ring();
    const PointRingPtr& base = p->base();
    auto comps = fixed_components(p, c);
    for (const auto& comp : comps)
        if (comp.indices.size() != 1)
            throw InputError(
                "bott_pushforward: fixed components are not all points (repeated restrictions)");

    LocalizedClass acc{CohomClass(base->zero()), {}};
    for (const auto& comp : comps) {
        std::size_t j = comp.indices.front();
        // Restriction of x at the point component: zeta |-> -e(chi_j).
        PointElem minus_e = -base->linear_form(p->weights()[j]);
        PointElem val = base->zero();
        for (std::size_t i = x.coef().size(); i-- > 0;)
            val = val * minus_e + x.coef()[i];
        std::vector<Character> den = comp.normal_weights;
        for (const auto& chi : den)
            if (base->linear_form(chi).is_zero())
                throw InputError("bott_pushforward: normal Euler class vanishes");
        LocalizedClass term = make_localized(CohomClass(std::move(val)), std::move(den), c, base);
        acc = loc_add(acc, term);
    }
    acc.den.insert(acc.den.end(), extra_den.begin(), extra_den.end());
    std::sort(acc.den.begin(), acc.den.end());
    return acc;
}

}  // namespace

LocalizedClass bott_pushforward(const ModelElem& x, const SubgroupPresentation& c) {
    return bott_sum(x, {}, c);
}

LocalizedClass bott_pushforward(const LocalizedClass& x, const SubgroupPresentation& c) {
    if (!std::holds_alternative<ModelElem>(x.num))
        throw InputError("bott_pushforward needs a projective-model class");
    return bott_sum(std::get<ModelElem>(x.num), x.den, c);
}

namespace {

// Point ring elements with no u part live in the commutative polynomial
// subring on t, v (and tau); converting makes exact division available.
RingPtr commutative_ring(const PointRingPtr& ring) {
    std::vector<std::string> vars;
    for (int i = 1; i <= ring->torus_rank(); ++i) vars.push_back("t" + std::to_string(i));
    for (int j = 1; j <= ring->torsion_count(); ++j) vars.push_back("v" + std::to_string(j));
    if (ring->has_tau()) vars.push_back("tau");
    return make_ring(ring->coefficients(), std::move(vars));
}

Poly to_poly(const PointElem& x, const RingPtr& r) {
    Poly f = Poly::zero(r);
    for (const auto& [m, c] : x.terms()) {
        if (m.umask != 0) throw InternalError("to_poly: element has exterior part");
        f = f + Poly::term(r, m.powers, c);
    }
    return f;
}

}  // namespace

ConcentrationCheck concentration_check(const ModelRingPtr& p, const SubgroupPresentation& c) {
    const PointRingPtr& base = p->base();
    const std::size_t n = p->dim();
    auto comps = fixed_components(p, c);

    // Restriction matrix: rows = basis zeta^i, columns = component bases.
    std::vector<std::vector<PointElem>> mat(n, std::vector<PointElem>(n, base->zero()));
    ModelElem power = p->one();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) power = power * p->zeta();
        std::size_t col = 0;
        for (const auto& comp : comps) {
            ModelElem restricted = restrict_to_component(power, comp);
            for (std::size_t l = 0; l < comp.indices.size(); ++l)
                mat[i][col + l] = restricted.coef()[l];
            col += comp.indices.size();
        }
    }

    RingPtr cr = commutative_ring(base);
    std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = to_poly(mat[i][j], cr);

    // Fraction-free Bareiss determinant.
    Poly detp = Poly::constant(cr, Scalar::one(cr->field));
    bool zero = false;
    Scalar sign = Scalar::one(cr->field);
    Poly prev = Poly::constant(cr, Scalar::one(cr->field));
    for (std::size_t k = 0; k + 1 < n && !zero; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k].is_zero()) ++piv;
            if (piv == n) {
                zero = true;
                break;
            }
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                auto q = exact_divide(num, prev);
                if (!q) throw InternalError("Bareiss division failed");
                a[i][j] = *q;
            }
        prev = a[k][k];
    }
    detp = zero ? Poly::zero(cr) : a[n - 1][n - 1].scaled(sign);

    ConcentrationCheck out;
    out.unit = Scalar::zero(cr->field);
    if (detp.is_zero()) {
        out.invertible = false;
        out.determinant = base->zero();
        return out;
    }

    // Trial-divide by the cross-component linear forms e(chi_k - chi_j),
    // one factor per pair per pass (the forms may be proportional, so a
    // greedy per-pair exhaustion would misattribute multiplicities).
    const CharacterLattice& gamma = base->group();
    std::vector<Character> candidates;
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
        for (std::size_t cj = ci + 1; cj < comps.size(); ++cj)
            for (std::size_t j : comps[ci].indices)
                for (std::size_t k : comps[cj].indices)
                    candidates.push_back(
                        gamma.add(p->weights()[k], gamma.negate(p->weights()[j])));
    Poly rem = detp;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const Character& diff : candidates) {
            Poly factor = to_poly(base->linear_form(diff), cr);
            if (factor.is_zero()) continue;
            auto q = exact_divide(rem, factor);
            if (!q) continue;
            rem = *q;
            out.factors.push_back(diff);
            progress = true;
        }
    }
    std::sort(out.factors.begin(), out.factors.end());

    if (rem.term_count() == 1 && rem.leading_mono() == Mono(cr->nvars(), 0)) {
        out.unit = rem.leading_coeff();
        out.invertible = true;
    }

    // Convert the determinant back for reporting.
    PointElem d(base);
    for (const auto& [m, coef] : detp.terms()) d.add_term(PMono{m, 0}, coef);
    out.determinant = d;
    return out;
}

}  // namespace equiloc
