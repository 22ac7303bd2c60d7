#include "equiloc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "equiloc/errors.hpp"

namespace equiloc {

std::optional<std::size_t> PolyRing::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return i;
    return std::nullopt;
}

RingPtr make_ring(FieldSpec field, std::vector<std::string> vars, MonoOrder order) {
    auto ring = std::make_shared<PolyRing>();
    ring->field = field;
    ring->vars = std::move(vars);
    ring->order = order;
    return ring;
}

bool mono_less(const Mono& a, const Mono& b, MonoOrder order) {
    if (a.size() != b.size()) throw InternalError("monomial arity mismatch");
    switch (order) {
        case MonoOrder::Lex:
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i];
            return false;
        case MonoOrder::GrevLex: {
            long da = std::accumulate(a.begin(), a.end(), 0L);
            long db = std::accumulate(b.begin(), b.end(), 0L);
            if (da != db) return da < db;
            // a > b iff the last nonzero entry of a-b is negative.
            for (std::size_t i = a.size(); i-- > 0;)
                if (a[i] != b[i]) return a[i] > b[i];
            return false;
        }
    }
    throw InternalError("unknown monomial order");
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

Mono mono_div(const Mono& a, const Mono& b) {
    Mono c = a;
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] -= b[i];
        if (c[i] < 0) throw InternalError("monomial division underflow");
    }
    return c;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::max(a[i], b[i]);
    return c;
}

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {}

Poly Poly::constant(RingPtr ring, const Scalar& c) {
    Poly f(std::move(ring));
    if (!c.is_zero()) f.terms_.emplace(Mono(f.ring_->nvars(), 0), c);
    return f;
}

Poly Poly::variable(RingPtr ring, std::size_t index, int power) {
    Poly f(ring);
    if (index >= ring->nvars()) throw InputError("variable index out of range");
    Mono m(ring->nvars(), 0);
    m[index] = power;
    f.terms_.emplace(std::move(m), Scalar::one(ring->field));
    return f;
}

Poly Poly::term(RingPtr ring, Mono mono, const Scalar& c) {
    Poly f(std::move(ring));
    if (mono.size() != f.ring_->nvars()) throw InputError("monomial arity mismatch");
    if (!c.is_zero()) f.terms_.emplace(std::move(mono), c);
    return f;
}

const Mono& Poly::leading_mono() const {
    if (is_zero()) throw InternalError("leading term of zero");
    const Mono* best = nullptr;
    for (const auto& [m, c] : terms_)
        if (!best || mono_less(*best, m, ring_->order)) best = &m;
    return *best;
}

const Scalar& Poly::leading_coeff() const { return terms_.at(leading_mono()); }

void Poly::insert(const Mono& m, const Scalar& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    Scalar s = it->second + c;
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = s;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.insert(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.insert(m, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(ring_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.insert(mono_mul(ma, mb), ca * cb);
    return r;
}

Poly Poly::scaled(const Scalar& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

Poly Poly::mono_scaled(const Mono& m, const Scalar& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [ma, ca] : terms_) r.terms_.emplace(mono_mul(ma, m), ca * c);
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading_coeff().inverse());
}

Poly Poly::pow(int n) const {
    if (n < 0) throw InputError("negative polynomial power");
    Poly r = Poly::constant(ring_, Scalar::one(ring_->field));
    Poly base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

bool Poly::operator==(const Poly& o) const { return terms_ == o.terms_; }

Poly Poly::substitute(const std::vector<Poly>& images, RingPtr target) const {
    if (images.size() != ring_->nvars()) throw InputError("substitution arity mismatch");
    Poly out = Poly::zero(target);
    for (const auto& [m, c] : terms_) {
        Poly t = Poly::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) t = t * images[i].pow(m[i]);
        out = out + t;
    }
    return out;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    // Print strongest term first.
    std::vector<const std::pair<const Mono, Scalar>*> ordered;
    for (const auto& t : terms_) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(), [&](auto* a, auto* b) {
        return mono_less(b->first, a->first, ring_->order);
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ordered) {
        const auto& [m, c] = *t;
        Rat v = c.value();
        bool neg = v < 0;
        Rat av = abs(v);
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool is_const = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
        bool unit = av == 1;
        if (!unit || is_const) os << av.get_str();
        bool printed = !unit || is_const;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (printed) os << "*";
            os << ring_->vars[i];
            if (m[i] != 1) os << "^" << m[i];
            printed = true;
        }
    }
    return os.str();
}

std::optional<Poly> exact_divide(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw InputError("division by the zero polynomial");
    Poly q = Poly::zero(f.ring());
    Poly r = f;
    while (!r.is_zero()) {
        if (!mono_divides(g.leading_mono(), r.leading_mono())) return std::nullopt;
        Mono m = mono_div(r.leading_mono(), g.leading_mono());
        Scalar c = r.leading_coeff() / g.leading_coeff();
        q = q + Poly::term(f.ring(), m, c);
        r = r - g.mono_scaled(m, c);
    }
    return q;
}

Character Grading::mono_degree(const Mono& m) const {
    if (m.size() != weights.size()) throw InputError("grading arity mismatch");
    Character d = lattice.zero();
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) d = lattice.add(d, lattice.scale(Int(m[i]), weights[i]));
    return d;
}

bool Grading::is_homogeneous(const Poly& f) const { return components(f).size() <= 1; }

std::optional<Character> Grading::degree(const Poly& f) const {
    auto comps = components(f);
    if (comps.size() == 1) return comps.begin()->first;
    if (comps.empty()) return lattice.zero();  // degree of 0 taken as 0
    return std::nullopt;
}

std::map<Character, Poly> Grading::components(const Poly& f) const {
    std::map<Character, Poly> out;
    for (const auto& [m, c] : f.terms()) {
        Character d = mono_degree(m);
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, Poly::zero(f.ring())).first;
        it->second = it->second + Poly::term(f.ring(), m, c);
    }
    return out;
}

std::map<Character, Poly> homogeneous_components(const Poly& f, const Grading& g,
                                                 const SubgroupPresentation& c) {
    std::map<Character, Poly> out;
    for (const auto& [m, coeff] : f.terms()) {
        Character d = c.restrict(g.mono_degree(m));
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, Poly::zero(f.ring())).first;
        it->second = it->second + Poly::term(f.ring(), m, coeff);
    }
    return out;
}

namespace {

struct Token {
    enum Kind { Ident, Number, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
    std::string text;
    ParsePosition pos;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_space();
        Token t;
        t.pos = pos_;
        if (i_ >= text_.size()) {
            t.kind = Token::End;
            return t;
        }
        char c = text_[i_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
                ++j;
            t.kind = Token::Ident;
            t.text = text_.substr(i_, j - i_);
            advance(j - i_);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
            t.kind = Token::Number;
            t.text = text_.substr(i_, j - i_);
            advance(j - i_);
            return t;
        }
        switch (c) {
            case '+': t.kind = Token::Plus; break;
            case '-': t.kind = Token::Minus; break;
            case '*': t.kind = Token::Star; break;
            case '^': t.kind = Token::Caret; break;
            case '(': t.kind = Token::LParen; break;
            case ')': t.kind = Token::RParen; break;
            default:
                throw PolyParseError(std::string("unexpected character '") + c + "'", pos_);
        }
        advance(1);
        return t;
    }

  private:
    void skip_space() {
        while (i_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[i_])))
            advance(1);
    }
    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text_[i_] == '\n') {
                ++pos_.line;
                pos_.column = 1;
            } else {
                ++pos_.column;
            }
            ++i_;
        }
    }

    const std::string& text_;
    std::size_t i_ = 0;
    ParsePosition pos_;
};

class PolyParser {
  public:
    PolyParser(RingPtr ring, const std::string& text) : ring_(std::move(ring)), lex_(text) {
        cur_ = lex_.next();
    }

    Poly parse() {
        Poly f = expr();
        if (cur_.kind != Token::End)
            throw PolyParseError("trailing input after polynomial", cur_.pos);
        return f;
    }

  private:
    void bump() { cur_ = lex_.next(); }

    Poly expr() {
        bool neg = false;
        if (cur_.kind == Token::Plus) bump();
        else if (cur_.kind == Token::Minus) {
            neg = true;
            bump();
        }
        Poly f = term();
        if (neg) f = -f;
        while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
            bool minus = cur_.kind == Token::Minus;
            bump();
            Poly g = term();
            f = minus ? f - g : f + g;
        }
        return f;
    }

    Poly term() {
        Poly f = factor();
        while (cur_.kind == Token::Star) {
            bump();
            f = f * factor();
        }
        return f;
    }

    Poly factor() {
        Poly base = atom();
        if (cur_.kind == Token::Caret) {
            bump();
            if (cur_.kind != Token::Number)
                throw PolyParseError("expected integer exponent after '^'", cur_.pos);
            long e = std::stol(cur_.text);
            bump();
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    Poly atom() {
        if (cur_.kind == Token::Number) {
            Scalar c(Rat(cur_.text), ring_->field.p);
            bump();
            return Poly::constant(ring_, c);
        }
        if (cur_.kind == Token::Ident) {
            auto idx = ring_->var_index(cur_.text);
            if (!idx)
                throw PolyParseError("unknown variable '" + cur_.text + "'", cur_.pos);
            bump();
            return Poly::variable(ring_, *idx);
        }
        if (cur_.kind == Token::LParen) {
            bump();
            Poly f = expr();
            if (cur_.kind != Token::RParen)
                throw PolyParseError("expected ')'", cur_.pos);
            bump();
            return f;
        }
        if (cur_.kind == Token::Minus) {
            bump();
            return -atom();
        }
        throw PolyParseError("expected polynomial atom", cur_.pos);
    }

    RingPtr ring_;
    Lexer lex_;
    Token cur_;
};

}  // namespace

Poly parse_poly(RingPtr ring, const std::string& text) {
    return PolyParser(std::move(ring), text).parse();
}

}  // namespace equiloc
