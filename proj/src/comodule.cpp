#include "equiloc/comodule.hpp"

#include <sstream>

#include "equiloc/errors.hpp"

namespace equiloc {

void GroupAlgebraElem::add_term(const Character& gamma, const Scalar& c) {
    Character g = lattice_.reduce(gamma);
    auto it = terms_.find(g);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(g, c);
        return;
    }
    Scalar s = it->second + c;
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = s;
}

GroupAlgebraElem GroupAlgebraElem::operator+(const GroupAlgebraElem& o) const {
    GroupAlgebraElem r = *this;
    for (const auto& [g, c] : o.terms_) r.add_term(g, c);
    return r;
}

GroupAlgebraElem GroupAlgebraElem::operator*(const GroupAlgebraElem& o) const {
    GroupAlgebraElem r(lattice_, field_);
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) r.add_term(lattice_.add(a, b), ca * cb);
    return r;
}

std::string GroupAlgebraElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (!c.is_one()) os << c.str() << "*";
        os << "e" << g.str();
    }
    return os.str();
}

GroupAlgebraElem GroupAlgebra::basis(const Character& gamma) const {
    GroupAlgebraElem x(lattice_, field_);
    x.add_term(gamma, Scalar::one(field_));
    return x;
}

Scalar GroupAlgebra::counit(const GroupAlgebraElem& x) const {
    Scalar s = Scalar::zero(field_);
    for (const auto& [g, c] : x.terms()) s = s + c;
    return s;
}

GroupAlgebraElem GroupAlgebra::antipode(const GroupAlgebraElem& x) const {
    GroupAlgebraElem r(lattice_, field_);
    for (const auto& [g, c] : x.terms()) r.add_term(lattice_.negate(g), c);
    return r;
}

std::map<std::pair<Character, Character>, Scalar> GroupAlgebra::coproduct(
    const GroupAlgebraElem& x) const {
    std::map<std::pair<Character, Character>, Scalar> out;
    for (const auto& [g, c] : x.terms()) out[{g, g}] = c;
    return out;
}

FreeComodule make_free_comodule(CharacterLattice lattice, std::vector<Character> weights,
                                FieldSpec field) {
    FreeComodule m;
    m.lattice = std::move(lattice);
    m.field = field;
    m.weights.reserve(weights.size());
    m.names.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        m.weights.push_back(m.lattice.reduce(weights[i]));
        m.names.push_back("m" + std::to_string(i));
    }
    return m;
}

bool check_comodule_axioms(const FreeComodule& m) {
    // mu(m_i) = e_{w_i} (x) m_i.  Counit axiom: (eps (x) id) mu = id, i.e.
    // eps(e_{w_i}) m_i = m_i.  Coassociativity: (id (x) mu) mu and
    // (mu_G (x) id) mu both send m_i to e_{w_i} (x) e_{w_i} (x) m_i.
    GroupAlgebra a(m.lattice, m.field);
    for (std::size_t i = 0; i < m.rank(); ++i) {
        const Character w = m.lattice.reduce(m.weights[i]);
        if (!(a.counit(a.basis(w)) == Scalar::one(m.field))) return false;
        // Left side tensor legs: (id (x) mu) applied to e_w (x) m_i.
        std::pair<Character, Character> lhs{w, w};
        // Right side: coproduct of e_w paired with m_i.
        auto cop = a.coproduct(a.basis(w));
        if (cop.size() != 1) return false;
        if (cop.begin()->first != lhs) return false;
    }
    return true;
}

bool check_comodule_axioms(const Grading& g, const Ideal& ideal) {
    return is_homogeneous(ideal, g);
}

FixedPart fixed_part(const FreeComodule& m, const SubgroupPresentation& c) {
    if (!(c.ambient() == m.lattice)) throw InputError("fixed_part: lattice mismatch");
    FixedPart out;
    out.comodule.lattice = m.lattice;
    out.comodule.field = m.field;
    for (std::size_t i = 0; i < m.rank(); ++i)
        if (c.restricts_trivially(m.weights[i])) {
            out.comodule.weights.push_back(m.weights[i]);
            out.comodule.names.push_back(m.names[i]);
            out.basis.push_back(i);
        }
    return out;
}

ComoduleVec reynolds(const FreeComodule& m, const ComoduleVec& x, const SubgroupPresentation& c) {
    if (x.size() != m.rank()) throw InputError("reynolds: element has wrong length");
    ComoduleVec out = x;
    for (std::size_t i = 0; i < m.rank(); ++i)
        if (!c.restricts_trivially(m.weights[i])) out[i] = Scalar::zero(m.field);
    return out;
}

GroupAlgebraElem reynolds(const GroupAlgebra& a, const GroupAlgebraElem& x,
                          const SubgroupPresentation& c) {
    GroupAlgebraElem out(a.lattice(), a.field());
    for (const auto& [g, coeff] : x.terms())
        if (c.restricts_trivially(g)) out.add_term(g, coeff);
    return out;
}

GroupAlgebraElem fixed_part(const GroupAlgebra& a, const GroupAlgebraElem& x,
                            const SubgroupPresentation& c) {
    return reynolds(a, x, c);
}

FreeComodule tensor(const FreeComodule& m, const FreeComodule& n) {
    if (!(m.lattice == n.lattice)) throw InputError("tensor: lattice mismatch");
    FreeComodule out;
    out.lattice = m.lattice;
    out.field = m.field;
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = 0; j < n.rank(); ++j) {
            out.weights.push_back(m.lattice.add(m.weights[i], n.weights[j]));
            out.names.push_back(m.names[i] + "*" + n.names[j]);
        }
    return out;
}

}  // namespace equiloc
