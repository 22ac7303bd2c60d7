#include "equiloc/problem.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace equiloc {

namespace {

using nlohmann::json;

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    lines.push_back(cur);
    return lines;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : line) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == ' ' || c == '\t') && depth == 0) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int parse_int(const std::string& token, int line, const std::string& what) {
    try {
        std::size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size())
            throw ProblemParseError("bad " + what + " '" + token + "'", line);
        return value;
    } catch (const ProblemParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ProblemParseError("bad " + what + " '" + token + "'", line);
    }
}

std::vector<Int> parse_character_tuple(const std::string& token, int line) {
    if (token.size() < 2 || token.front() != '(' || token.back() != ')')
        throw ProblemParseError("expected a character tuple like (1,-2), got '" + token + "'",
                                line);
    std::vector<Int> coords;
    std::string body = token.substr(1, token.size() - 2);
    std::string cur;
    auto flush = [&]() {
        std::string t = strip(cur);
        if (t.empty()) throw ProblemParseError("empty coordinate in character tuple", line);
        try {
            coords.emplace_back(t);
        } catch (const std::invalid_argument&) {
            throw ProblemParseError("bad integer '" + t + "' in character tuple", line);
        }
        cur.clear();
    };
    for (char c : body) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    if (!strip(cur).empty() || coords.empty()) {
        if (strip(cur).empty()) throw ProblemParseError("empty character tuple", line);
        flush();
    }
    return coords;
}

std::string format_character(const std::vector<Int>& coords) {
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ",";
        out += coords[i].get_str();
    }
    return out + ")";
}

std::string format_character(const Character& chi) {
    std::vector<Int> coords(chi.free_part);
    coords.insert(coords.end(), chi.torsion_part.begin(), chi.torsion_part.end());
    return format_character(coords);
}

Window parse_window(const std::string& token, int line) {
    // a0..a1,b0..b1
    auto parse_range = [&](const std::string& s, long& lo, long& hi) {
        std::size_t dots = s.find("..");
        if (dots == std::string::npos)
            throw ProblemParseError("expected a range like 0..4 in window", line);
        try {
            lo = std::stol(s.substr(0, dots));
            hi = std::stol(s.substr(dots + 2));
        } catch (const std::exception&) {
            throw ProblemParseError("bad window bound in '" + s + "'", line);
        }
    };
    std::size_t comma = token.find(',');
    if (comma == std::string::npos)
        throw ProblemParseError("window needs two ranges: a0..a1,b0..b1", line);
    Window w;
    parse_range(token.substr(0, comma), w.a0, w.a1);
    parse_range(token.substr(comma + 1), w.b0, w.b1);
    return w;
}

std::string format_window(const Window& w) {
    std::ostringstream os;
    os << w.a0 << ".." << w.a1 << "," << w.b0 << ".." << w.b1;
    return os.str();
}

// Split a generator list on top-level commas.
std::vector<std::string> split_generators(const std::string& body) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    std::string last = strip(cur);
    if (!last.empty()) out.push_back(last);
    return out;
}

struct BuiltProblem {
    CharacterLattice gamma;
    SubgroupPresentation subgroup;
    RingPtr ring;                 // null when no variables
    std::optional<Grading> grading;
    std::vector<Poly> ideal_gens;
};

Character make_character(const CharacterLattice& gamma, const std::vector<Int>& coords,
                         int line) {
    if (coords.size() != gamma.dim())
        throw ProblemParseError("character has " + std::to_string(coords.size()) +
                                    " coordinates, group needs " + std::to_string(gamma.dim()),
                                line);
    return gamma.make(coords);
}

BuiltProblem build(const ProblemFile& p, const GroebnerOptions& gopts) {
    BuiltProblem b{CharacterLattice(p.free_rank, p.torsion), SubgroupPresentation(), nullptr,
                   std::nullopt, {}};
    std::vector<Character> relations;
    for (const auto& coords : p.subgroup_relations)
        relations.push_back(make_character(b.gamma, coords, 0));
    b.subgroup = relations.empty() ? SubgroupPresentation::whole_group(b.gamma)
                                   : quotient_lattice(b.gamma, relations);
    if (!p.var_names.empty()) {
        b.ring = make_ring(p.field, p.var_names);
        std::vector<Character> weights;
        for (const auto& coords : p.weights) weights.push_back(make_character(b.gamma, coords, 0));
        b.grading = Grading{b.gamma, std::move(weights)};
        for (const auto& text : p.ideal_texts) b.ideal_gens.push_back(parse_poly(b.ring, text));
        // Validate homogeneity here so parse-time diagnostics can name the
        // generator and its component degrees.
        Ideal ideal{b.ring, b.ideal_gens};
        if (!is_homogeneous(ideal, *b.grading, gopts)) {
            for (const Poly& g : b.ideal_gens) {
                auto comps = b.grading->components(g);
                if (comps.size() <= 1) continue;
                std::vector<Poly> gb = groebner(ideal.generators, gopts);
                bool inside = true;
                for (const auto& [deg, part] : comps)
                    if (!normal_form(part, gb).is_zero()) inside = false;
                if (inside) continue;
                std::string degrees;
                for (const auto& [deg, part] : comps) {
                    if (!degrees.empty()) degrees += ", ";
                    degrees += format_character(deg);
                }
                throw InputError("generator '" + g.str() +
                                 "' is not homogeneous: component degrees {" + degrees + "}");
            }
            throw InputError("ideal is not homogeneous for the given weights");
        }
    }
    return b;
}

std::string kind_name(QueryKind k) {
    switch (k) {
        case QueryKind::FixedLocus: return "fixedlocus";
        case QueryKind::Section: return "section";
        case QueryKind::Euler: return "euler";
        case QueryKind::Bott: return "bott";
        case QueryKind::Concentration: return "concentration";
        case QueryKind::Smith: return "smith";
    }
    return "?";
}

QueryKind kind_of(const std::string& name, int line) {
    if (name == "fixedlocus") return QueryKind::FixedLocus;
    if (name == "section") return QueryKind::Section;
    if (name == "euler") return QueryKind::Euler;
    if (name == "bott") return QueryKind::Bott;
    if (name == "concentration") return QueryKind::Concentration;
    if (name == "smith") return QueryKind::Smith;
    throw ProblemParseError("unknown query kind '" + name + "'", line);
}

std::vector<std::string> ideal_strings(const std::vector<Poly>& gens) {
    std::vector<std::string> out;
    for (const Poly& g : gens) out.push_back(g.str());
    return out;
}

// Small admissible fields for the fixed-point oracle cross-check.
std::vector<long> admissible_fields(const ProblemFile& p, const BuiltProblem& b) {
    if (!b.ring) return {};
    if (b.ring->nvars() > 3) return {};
    std::vector<long> out;
    for (long q : {4L, 5L, 7L, 8L, 9L, 11L, 13L, 16L, 25L, 31L, 41L, 61L}) {
        if (p.field.p != 0) {
            long qq = q, pp = p.field.p;
            while (qq % pp == 0) qq /= pp;
            if (qq != 1) continue;
        }
        bool ok = true;
        for (const Int& m : b.subgroup.quotient().torsion_orders())
            if (Int(q - 1) % m != 0) ok = false;
        if (!ok) continue;
        double points = 1;
        for (std::size_t i = 0; i < b.ring->nvars(); ++i) points *= static_cast<double>(q);
        if (points > 20000) continue;
        out.push_back(q);
        if (out.size() == 2) break;
    }
    return out;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
    ProblemFile p;
    bool saw_field = false, saw_group = false;
    auto lines = split_lines(text);
    for (int ln = 0; ln < static_cast<int>(lines.size()); ++ln) {
        const int line = ln + 1;
        std::string s = strip(lines[static_cast<std::size_t>(ln)]);
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = strip(s.substr(0, hash));
        if (s.empty()) continue;
        auto toks = tokens_of(s);
        const std::string& head = toks[0];

        if (head == "field") {
            if (toks.size() == 2 && toks[1] == "rational") {
                p.field = FieldSpec{0};
            } else if (toks.size() == 3 && toks[1] == "prime") {
                try {
                    p.field = FieldSpec{std::stol(toks[2])};
                } catch (const std::exception&) {
                    throw ProblemParseError("bad prime '" + toks[2] + "'", line);
                }
                if (p.field.p < 2) throw ProblemParseError("field prime must be >= 2", line);
            } else {
                throw ProblemParseError("field must be 'rational' or 'prime p'", line);
            }
            saw_field = true;
        } else if (head == "group") {
            std::size_t i = 1;
            if (i < toks.size() && toks[i] == "free") {
                if (i + 1 >= toks.size())
                    throw ProblemParseError("group free needs a rank", line);
                try {
                    p.free_rank = std::stoi(toks[i + 1]);
                } catch (const std::exception&) {
                    throw ProblemParseError("bad rank '" + toks[i + 1] + "'", line);
                }
                i += 2;
            }
            if (i < toks.size()) {
                if (toks[i] != "torsion")
                    throw ProblemParseError("expected 'torsion' in group spec", line);
                ++i;
                for (; i < toks.size(); ++i) {
                    try {
                        p.torsion.emplace_back(toks[i]);
                    } catch (const std::invalid_argument&) {
                        throw ProblemParseError("bad torsion order '" + toks[i] + "'", line);
                    }
                }
                if (p.torsion.empty())
                    throw ProblemParseError("torsion needs at least one order", line);
            }
            saw_group = true;
        } else if (head == "subgroup") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                p.subgroup_relations.push_back(parse_character_tuple(toks[i], line));
        } else if (head == "var") {
            if (toks.size() != 3)
                throw ProblemParseError("var needs a name and a weight tuple", line);
            const std::string& name = toks[1];
            bool valid = std::isalpha(static_cast<unsigned char>(name[0]));
            for (char ch : name)
                if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') valid = false;
            if (!valid)
                throw ProblemParseError("variable name '" + name +
                                            "' must match [a-zA-Z][a-zA-Z0-9_]*",
                                        line);
            if (std::find(p.var_names.begin(), p.var_names.end(), name) != p.var_names.end())
                throw ProblemParseError("duplicate variable '" + name + "'", line);
            p.var_names.push_back(name);
            p.weights.push_back(parse_character_tuple(toks[2], line));
        } else if (head == "ideal") {
            std::string body = strip(s.substr(5));
            for (const auto& g : split_generators(body)) p.ideal_texts.push_back(g);
        } else if (head == "query") {
            if (toks.size() < 2) throw ProblemParseError("query needs a kind", line);
            QuerySpec q;
            q.kind = kind_of(toks[1], line);
            for (std::size_t i = 2; i < toks.size(); ++i) {
                if (toks[i] == "rep") {
                    for (++i; i < toks.size() && toks[i].front() == '('; ++i)
                        q.rep.push_back(parse_character_tuple(toks[i], line));
                    --i;
                } else if (toks[i] == "power" && i + 1 < toks.size()) {
                    q.power = parse_int(toks[++i], line, "power");
                } else if (toks[i] == "minimal") {
                    q.minimal = true;
                } else if (toks[i] == "window" && i + 1 < toks.size()) {
                    q.window = parse_window(toks[++i], line);
                } else if (toks[i] == "budget" && i + 1 < toks.size()) {
                    q.budget = parse_int(toks[++i], line, "budget");
                } else if (toks[i] == "truncation" && i + 1 < toks.size()) {
                    q.truncation = parse_int(toks[++i], line, "truncation");
                } else {
                    throw ProblemParseError("unknown query parameter '" + toks[i] + "'", line);
                }
            }
            p.queries.push_back(std::move(q));
        } else {
            throw ProblemParseError("unknown directive '" + head + "'", line);
        }
    }
    if (!saw_field) throw ProblemParseError("missing 'field' declaration", 1);
    if (!saw_group) throw ProblemParseError("missing 'group' declaration", 1);
    if (p.var_names.size() != p.weights.size())
        throw ProblemParseError("every variable needs a weight", 1);

    // Validate and canonicalize: characters fit the group, polynomials parse,
    // the ideal is homogeneous.
    GroebnerOptions gopts;
    BuiltProblem b = build(p, gopts);
    std::vector<std::string> canonical;
    for (const Poly& g : b.ideal_gens) canonical.push_back(g.str());
    p.ideal_texts = std::move(canonical);
    return p;
}

std::string format_problem(const ProblemFile& p) {
    std::ostringstream os;
    if (p.field.is_rational())
        os << "field rational\n";
    else
        os << "field prime " << p.field.p << "\n";
    os << "group free " << p.free_rank;
    if (!p.torsion.empty()) {
        os << " torsion";
        for (const auto& m : p.torsion) os << " " << m.get_str();
    }
    os << "\n";
    if (!p.subgroup_relations.empty()) {
        os << "subgroup";
        for (const auto& r : p.subgroup_relations) os << " " << format_character(r);
        os << "\n";
    }
    for (std::size_t i = 0; i < p.var_names.size(); ++i)
        os << "var " << p.var_names[i] << " " << format_character(p.weights[i]) << "\n";
    if (!p.ideal_texts.empty()) {
        os << "ideal ";
        for (std::size_t i = 0; i < p.ideal_texts.size(); ++i) {
            if (i) os << ", ";
            os << p.ideal_texts[i];
        }
        os << "\n";
    }
    for (const auto& q : p.queries) {
        os << "query " << kind_name(q.kind);
        if (!q.rep.empty()) {
            os << " rep";
            for (const auto& chi : q.rep) os << " " << format_character(chi);
        }
        if (q.power != 0) os << " power " << q.power;
        if (q.minimal) os << " minimal";
        if (q.window) os << " window " << format_window(*q.window);
        if (q.budget) os << " budget " << *q.budget;
        if (q.truncation) os << " truncation " << *q.truncation;
        os << "\n";
    }
    return os.str();
}

namespace {

struct QueryOutcome {
    json data;
    std::vector<std::string> checks;  // oracle provenance
};

QueryOutcome run_fixedlocus(const ProblemFile& p, const BuiltProblem& b,
                            const GroebnerOptions& gopts) {
    if (!b.ring) throw InputError("fixedlocus query needs variables");
    EquivariantAffineScheme x(b.ring, *b.grading, Ideal{b.ring, b.ideal_gens}, gopts);
    Ideal fixed = fixed_locus_ideal(x, b.subgroup);
    std::vector<Poly> gb = groebner(fixed.generators, gopts);
    QueryOutcome out;
    out.data["ideal"] = ideal_strings(gb);
    out.data["unit_ideal"] = ideal_is_unit(fixed, gopts);
    if (ideal_is_unit(fixed, gopts)) out.data["note"] = "empty fixed locus (unit ideal)";

    json oracle = json::array();
    for (long q : admissible_fields(p, b)) {
        GaloisField f(q);
        bool agree = rational_points(Ideal{b.ring, gb}, f) == fixed_points_oracle(x, b.subgroup, q);
        oracle.push_back({{"q", q}, {"agrees", agree}});
        out.checks.push_back("fixed-point oracle at q=" + std::to_string(q) + ": " +
                             (agree ? "agree" : "DISAGREE"));
    }
    out.data["oracle"] = oracle;
    return out;
}

QueryOutcome run_section(const QuerySpec& q, const BuiltProblem& b,
                         const GroebnerOptions& gopts) {
    if (!b.ring) throw InputError("section query needs variables");
    EquivariantAffineScheme x(b.ring, *b.grading, Ideal{b.ring, b.ideal_gens}, gopts);
    ConcentrationResult res = concentration_section(x, b.subgroup, q.minimal, gopts);
    QueryOutcome out;
    json chars = json::array();
    for (const auto& chi : res.rep.chars) chars.push_back(format_character(chi));
    json comps = json::array();
    for (const auto& f : res.section.components) comps.push_back(f.str());
    out.data["representation"] = chars;
    out.data["section"] = comps;
    out.data["verified"] = res.verified;
    out.checks.push_back(std::string("zero-locus certificate: ") +
                         (res.verified ? "verified" : "FAILED"));
    return out;
}

PointRingPtr point_ring_for(const BuiltProblem& b) {
    return EquivariantPointRing::create(b.gamma);
}

std::vector<Character> rep_characters(const QuerySpec& q, const BuiltProblem& b) {
    std::vector<Character> chars;
    for (const auto& coords : q.rep) chars.push_back(make_character(b.gamma, coords, 0));
    return chars;
}

QueryOutcome run_euler(const QuerySpec& q, const BuiltProblem& b) {
    auto ring = point_ring_for(b);
    auto chars = rep_characters(q, b);
    PointElem e = euler_class(chars, ring);
    QueryOutcome out;
    out.data["euler_class"] = e.str();
    if (auto d = e.bidegree()) out.data["bidegree"] = {d->a, d->b};
    out.data["in_E_C"] = in_ec(FactoredEuler{chars}, b.subgroup);
    return out;
}

QueryOutcome run_bott(const QuerySpec& q, const BuiltProblem& b) {
    auto ring = point_ring_for(b);
    auto chars = rep_characters(q, b);
    if (chars.empty()) throw InputError("bott query needs rep characters");
    auto model = ProjectiveModelRing::create(ring, chars);
    ModelElem x = model->zeta().pow(q.power);
    LocalizedClass bott = bott_pushforward(x, b.subgroup);
    LocalizedClass pres{CohomClass(presentation_pushforward(x)), {}};
    bool agree = localize_eq(bott, pres, b.subgroup);
    QueryOutcome out;
    out.data["class"] = "zeta^" + std::to_string(q.power);
    json den = json::array();
    for (const auto& chi : bott.den) den.push_back(format_character(chi));
    out.data["bott_numerator"] = std::holds_alternative<PointElem>(bott.num)
                                     ? std::get<PointElem>(bott.num).str()
                                     : std::get<ModelElem>(bott.num).str();
    out.data["bott_denominator"] = den;
    out.data["presentation_pushforward"] = std::get<PointElem>(pres.num).str();
    out.data["agrees"] = agree;
    out.checks.push_back(std::string("bott vs presentation pushforward: ") +
                         (agree ? "agree" : "DISAGREE"));
    return out;
}

QueryOutcome run_concentration(const QuerySpec& q, const BuiltProblem& b) {
    auto ring = point_ring_for(b);
    auto chars = rep_characters(q, b);
    if (chars.empty()) throw InputError("concentration query needs rep characters");
    auto model = ProjectiveModelRing::create(ring, chars);
    ConcentrationCheck check = concentration_check(model, b.subgroup);
    QueryOutcome out;
    out.data["determinant"] = check.determinant.str();
    json factors = json::array();
    for (const auto& chi : check.factors) factors.push_back(format_character(chi));
    out.data["euler_factors"] = factors;
    out.data["unit"] = check.unit.str();
    out.data["invertible_after_localization"] = check.invertible;
    out.checks.push_back(std::string("restriction determinant factors over E_C: ") +
                         (check.invertible ? "yes" : "NO"));
    return out;
}

QueryOutcome run_smith(const QuerySpec& q, const BuiltProblem& b, const RunOptions& opts) {
    auto ring = point_ring_for(b);
    SteenrodModule m = q.rep.empty()
                           ? SteenrodModule::point_module(ring)
                           : SteenrodModule::model_module(
                                 ProjectiveModelRing::create(ring, rep_characters(q, b)));
    Window w = opts.window ? *opts.window : (q.window ? *q.window : Window{0, 8, 0, 4});
    int budget = q.budget ? *q.budget : 2;
    SmithRanks ranks = smith_fixed_cohomology(m, w, budget);
    QueryOutcome out;
    json table = json::array();
    for (const auto& [d, r] : ranks.rank)
        if (r != 0) table.push_back({{"bidegree", {d.a, d.b}}, {"rank", r}});
    out.data["window"] = format_window(w);
    out.data["budget"] = budget;
    out.data["ranks"] = table;
    out.data["total_rank"] = ranks.total();
    out.data["generators"] = ranks.generators;
    out.checks.push_back("unstable-part certification budget " + std::to_string(budget));
    if (ring->u_square_is_convention())
        out.checks.push_back("p = 2: using the u^2 = 0 convention (configurable)");
    return out;
}

void render_text(std::ostringstream& os, const json& report) {
    os << "equiloc report\n";
    os << "field: " << report["field"].get<std::string>() << "\n";
    os << "group: " << report["group"].get<std::string>() << "\n";
    int idx = 1;
    for (const auto& q : report["queries"]) {
        os << "\n[" << idx++ << "] " << q["kind"].get<std::string>() << "\n";
        if (q.contains("error")) {
            os << "  error: " << q["error"].get<std::string>() << "\n";
            continue;
        }
        const json& d = q["result"];
        for (auto it = d.begin(); it != d.end(); ++it) {
            os << "  " << it.key() << ": ";
            if (it.value().is_string())
                os << it.value().get<std::string>();
            else
                os << it.value().dump();
            os << "\n";
        }
        for (const auto& c : q["checks"]) os << "  check: " << c.get<std::string>() << "\n";
    }
}

}  // namespace

RunResult run_problem_ex(const ProblemFile& p, const RunOptions& opts) {
    GroebnerOptions gopts;
    gopts.max_reductions = opts.groebner_budget;
    BuiltProblem b = build(p, gopts);

    RunResult result;
    json report;
    report["schema"] = 1;
    report["field"] = p.field.is_rational() ? "rational" : "F_" + std::to_string(p.field.p);
    report["group"] = b.gamma.str();
    report["seed"] = opts.seed;
    report["queries"] = json::array();

    for (std::size_t i = 0; i < p.queries.size(); ++i) {
        const QuerySpec& q = p.queries[i];
        json entry;
        entry["kind"] = kind_name(q.kind);
        try {
            QueryOutcome out;
            switch (q.kind) {
                case QueryKind::FixedLocus: out = run_fixedlocus(p, b, gopts); break;
                case QueryKind::Section: out = run_section(q, b, gopts); break;
                case QueryKind::Euler: out = run_euler(q, b); break;
                case QueryKind::Bott: out = run_bott(q, b); break;
                case QueryKind::Concentration: out = run_concentration(q, b); break;
                case QueryKind::Smith: out = run_smith(q, b, opts); break;
            }
            entry["result"] = out.data;
            entry["checks"] = out.checks;
        } catch (const ResourceError&) {
            throw;  // budget exhaustion aborts the whole run (exit code 2)
        } catch (const Error& e) {
            entry["error"] = std::string("query ") + std::to_string(i + 1) + ": " + e.what();
            result.ok = false;
        }
        report["queries"].push_back(entry);
    }

    if (opts.json) {
        result.report = report.dump(2) + "\n";
    } else {
        std::ostringstream os;
        render_text(os, report);
        result.report = os.str();
    }
    return result;
}

std::string run_problem(const ProblemFile& p, const RunOptions& opts) {
    return run_problem_ex(p, opts).report;
}

}  // namespace equiloc
