#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "equiloc/problem.hpp"

namespace py = pybind11;
using namespace equiloc;

namespace {

IntMat to_intmat(const std::vector<std::vector<long>>& rows) {
    IntMat m;
    for (const auto& r : rows) {
        std::vector<Int> row;
        for (long x : r) row.emplace_back(x);
        m.push_back(std::move(row));
    }
    return m;
}

std::vector<std::vector<long>> from_intmat(const IntMat& m) {
    std::vector<std::vector<long>> out;
    for (const auto& r : m) {
        std::vector<long> row;
        for (const auto& x : r) row.push_back(x.get_si());
        out.push_back(std::move(row));
    }
    return out;
}

Character make_char(const CharacterLattice& gamma, const std::vector<long>& coords) {
    std::vector<Int> v(coords.begin(), coords.end());
    return gamma.make(std::move(v));
}

CharacterLattice make_lattice(int rank, const std::vector<long>& torsion) {
    std::vector<Int> t(torsion.begin(), torsion.end());
    return CharacterLattice(rank, std::move(t));
}

SubgroupPresentation make_subgroup(const CharacterLattice& gamma,
                                   const std::vector<std::vector<long>>& relations) {
    if (relations.empty()) return SubgroupPresentation::whole_group(gamma);
    std::vector<Character> rels;
    for (const auto& r : relations) rels.push_back(make_char(gamma, r));
    return quotient_lattice(gamma, rels);
}

struct SchemeArgs {
    int rank;
    std::vector<long> torsion;
    std::vector<std::vector<long>> relations;
    std::vector<std::string> vars;
    std::vector<std::vector<long>> weights;
    std::vector<std::string> gens;
    long p;
};

std::pair<EquivariantAffineScheme, SubgroupPresentation> build_scheme(const SchemeArgs& a) {
    CharacterLattice gamma = make_lattice(a.rank, a.torsion);
    auto ring = make_ring(FieldSpec{a.p}, a.vars);
    std::vector<Character> weights;
    for (const auto& w : a.weights) weights.push_back(make_char(gamma, w));
    Ideal ideal{ring, {}};
    for (const auto& g : a.gens) ideal.generators.push_back(parse_poly(ring, g));
    SubgroupPresentation subgroup = make_subgroup(gamma, a.relations);
    return {EquivariantAffineScheme(ring, Grading{gamma, std::move(weights)}, std::move(ideal)),
            std::move(subgroup)};
}

std::vector<std::string> poly_strings(const std::vector<Poly>& polys) {
    std::vector<std::string> out;
    for (const auto& f : polys) out.push_back(f.str());
    return out;
}

}  // namespace

PYBIND11_MODULE(_equiloc, m) {
    m.doc() = "equiloc: exact equivariant fixed loci, concentration and localization";

    m.def("smith_normal_form",
          [](const std::vector<std::vector<long>>& rows) {
              SmithResult s = smith_normal_form(to_intmat(rows));
              return py::make_tuple(from_intmat(s.u), from_intmat(s.d), from_intmat(s.v));
          },
          py::arg("matrix"), "U*M*V = D with U, V unimodular and d1 | d2 | ...");

    m.def("quotient_invariants",
          [](int rank, const std::vector<long>& torsion,
             const std::vector<std::vector<long>>& relations) {
              CharacterLattice gamma = make_lattice(rank, torsion);
              auto c = make_subgroup(gamma, relations);
              std::vector<long> orders;
              for (const auto& d : c.quotient().torsion_orders()) orders.push_back(d.get_si());
              return py::make_tuple(c.quotient().rank(), orders);
          },
          py::arg("rank"), py::arg("torsion"), py::arg("relations"));

    m.def("restrict_character",
          [](int rank, const std::vector<long>& torsion,
             const std::vector<std::vector<long>>& relations, const std::vector<long>& chi) {
              CharacterLattice gamma = make_lattice(rank, torsion);
              auto c = make_subgroup(gamma, relations);
              Character r = c.restrict(make_char(gamma, chi));
              std::vector<long> out;
              for (const auto& x : r.free_part) out.push_back(x.get_si());
              for (const auto& x : r.torsion_part) out.push_back(x.get_si());
              return out;
          },
          py::arg("rank"), py::arg("torsion"), py::arg("relations"), py::arg("chi"));

    m.def("groebner_basis",
          [](long p, const std::vector<std::string>& vars,
             const std::vector<std::string>& gens) {
              auto ring = make_ring(FieldSpec{p}, vars);
              std::vector<Poly> polys;
              for (const auto& g : gens) polys.push_back(parse_poly(ring, g));
              return poly_strings(groebner(polys));
          },
          py::arg("p"), py::arg("vars"), py::arg("generators"),
          "Reduced Groebner basis over Q (p=0) or F_p, grevlex order.");

    m.def("ideal_member",
          [](long p, const std::vector<std::string>& vars, const std::string& f,
             const std::vector<std::string>& gens) {
              auto ring = make_ring(FieldSpec{p}, vars);
              Ideal ideal{ring, {}};
              for (const auto& g : gens) ideal.generators.push_back(parse_poly(ring, g));
              return ideal_member(parse_poly(ring, f), ideal);
          },
          py::arg("p"), py::arg("vars"), py::arg("f"), py::arg("generators"));

    m.def("fixed_locus",
          [](int rank, const std::vector<long>& torsion,
             const std::vector<std::vector<long>>& relations,
             const std::vector<std::string>& vars,
             const std::vector<std::vector<long>>& weights,
             const std::vector<std::string>& gens, long p) {
              auto [scheme, subgroup] =
                  build_scheme(SchemeArgs{rank, torsion, relations, vars, weights, gens, p});
              return poly_strings(groebner(fixed_locus_ideal(scheme, subgroup).generators));
          },
          py::arg("rank"), py::arg("torsion"), py::arg("relations"), py::arg("vars"),
          py::arg("weights"), py::arg("generators"), py::arg("p") = 0,
          "Reduced basis of the fixed-locus ideal I + <x_i : w_i not C-trivial>.");

    m.def("concentration_section",
          [](int rank, const std::vector<long>& torsion,
             const std::vector<std::vector<long>>& relations,
             const std::vector<std::string>& vars,
             const std::vector<std::vector<long>>& weights,
             const std::vector<std::string>& gens, long p, bool minimal) {
              auto [scheme, subgroup] =
                  build_scheme(SchemeArgs{rank, torsion, relations, vars, weights, gens, p});
              ConcentrationResult res = concentration_section(scheme, subgroup, minimal);
              py::dict out;
              std::vector<std::string> chars;
              for (const auto& chi : res.rep.chars) chars.push_back(chi.str());
              out["representation"] = chars;
              out["section"] = poly_strings(res.section.components);
              out["verified"] = res.verified;
              return out;
          },
          py::arg("rank"), py::arg("torsion"), py::arg("relations"), py::arg("vars"),
          py::arg("weights"), py::arg("generators"), py::arg("p") = 0,
          py::arg("minimal") = false);

    m.def("fixed_points",
          [](long q, int rank, const std::vector<long>& torsion,
             const std::vector<std::vector<long>>& relations,
             const std::vector<std::string>& vars,
             const std::vector<std::vector<long>>& weights,
             const std::vector<std::string>& gens, long p) {
              auto [scheme, subgroup] =
                  build_scheme(SchemeArgs{rank, torsion, relations, vars, weights, gens, p});
              PointSet pts = fixed_points_oracle(scheme, subgroup, q);
              return std::vector<std::vector<int>>(pts.begin(), pts.end());
          },
          py::arg("q"), py::arg("rank"), py::arg("torsion"), py::arg("relations"),
          py::arg("vars"), py::arg("weights"), py::arg("generators"), py::arg("p") = 0,
          "Brute-force F_q points of V(I) fixed by every element of C(F_q).");

    m.def("euler_class",
          [](int rank, const std::vector<long>& torsion,
             const std::vector<std::vector<long>>& rep) {
              CharacterLattice gamma = make_lattice(rank, torsion);
              auto ring = EquivariantPointRing::create(gamma);
              std::vector<Character> chars;
              for (const auto& chi : rep) chars.push_back(make_char(gamma, chi));
              return euler_class(chars, ring).str();
          },
          py::arg("rank"), py::arg("torsion"), py::arg("rep"));

    m.def("bott_pushforward",
          [](int rank, const std::vector<long>& torsion,
             const std::vector<std::vector<long>>& rep, int power) {
              CharacterLattice gamma = make_lattice(rank, torsion);
              auto ring = EquivariantPointRing::create(gamma);
              auto whole = SubgroupPresentation::whole_group(gamma);
              std::vector<Character> chars;
              for (const auto& chi : rep) chars.push_back(make_char(gamma, chi));
              auto model = ProjectiveModelRing::create(ring, chars);
              ModelElem x = model->zeta().pow(power);
              LocalizedClass bott = bott_pushforward(x, whole);
              LocalizedClass pres{CohomClass(presentation_pushforward(x)), {}};
              py::dict out;
              out["numerator"] = std::get<PointElem>(bott.num).str();
              std::vector<std::string> den;
              for (const auto& chi : bott.den) den.push_back(chi.str());
              out["denominator"] = den;
              out["presentation"] = std::get<PointElem>(pres.num).str();
              out["agrees"] = localize_eq(bott, pres, whole);
              return out;
          },
          py::arg("rank"), py::arg("torsion"), py::arg("rep"), py::arg("power"));

    m.def("concentration_determinant",
          [](int rank, const std::vector<long>& torsion,
             const std::vector<std::vector<long>>& rep) {
              CharacterLattice gamma = make_lattice(rank, torsion);
              auto ring = EquivariantPointRing::create(gamma);
              auto whole = SubgroupPresentation::whole_group(gamma);
              std::vector<Character> chars;
              for (const auto& chi : rep) chars.push_back(make_char(gamma, chi));
              auto check = concentration_check(ProjectiveModelRing::create(ring, chars), whole);
              py::dict out;
              out["determinant"] = check.determinant.str();
              std::vector<std::string> factors;
              for (const auto& chi : check.factors) factors.push_back(chi.str());
              out["factors"] = factors;
              out["unit"] = check.unit.str();
              out["invertible"] = check.invertible;
              return out;
          },
          py::arg("rank"), py::arg("torsion"), py::arg("rep"));

    m.def("power_on_inverse",
          [](int i, long p) {
              LocalizedClass c = power_on_inverse(i, p);
              py::dict out;
              out["numerator"] = std::get<PointElem>(c.num).str();
              out["denominator_factors"] = static_cast<int>(c.den.size());
              return out;
          },
          py::arg("i"), py::arg("p"), "P^i(v^{-1}) = (-1)^i v^{i(p-1)-1}.");

    m.def("total_power_of_v",
          [](long p, int exponent, int order) {
              CharacterLattice gamma(0, {Int(p)});
              auto ring = EquivariantPointRing::create(gamma);
              auto mod = SteenrodModule::point_module(ring);
              auto series = mod.total_power(CohomClass(ring->v(1).pow(exponent)), order);
              std::vector<std::string> out;
              for (const auto& c : series) out.push_back(std::get<PointElem>(c).str());
              return out;
          },
          py::arg("p"), py::arg("exponent"), py::arg("order"));

    m.def("smith_ranks",
          [](long p, const std::vector<std::vector<long>>& rep, long a0, long a1, long b0,
             long b1, int budget) {
              CharacterLattice gamma(0, {Int(p)});
              auto ring = EquivariantPointRing::create(gamma);
              SteenrodModule mod = SteenrodModule::point_module(ring);
              if (!rep.empty()) {
                  std::vector<Character> chars;
                  for (const auto& chi : rep) chars.push_back(make_char(gamma, chi));
                  mod = SteenrodModule::model_module(ProjectiveModelRing::create(ring, chars));
              }
              auto ranks = smith_fixed_cohomology(mod, Window{a0, a1, b0, b1}, budget);
              py::dict out;
              py::list table;
              for (const auto& [d, r] : ranks.rank)
                  if (r != 0) table.append(py::make_tuple(d.a, d.b, r));
              out["ranks"] = table;
              out["total"] = ranks.total();
              out["generators"] = ranks.generators;
              return out;
          },
          py::arg("p"), py::arg("rep"), py::arg("a0"), py::arg("a1"), py::arg("b0"),
          py::arg("b1"), py::arg("budget") = 2,
          "Dwyer-Wilkerson H(X^G) ranks per bidegree for G = mu_p.");

    m.def("run_problem",
          [](const std::string& text, bool json) {
              RunOptions opts;
              opts.json = json;
              return run_problem(parse_problem(text), opts);
          },
          py::arg("text"), py::arg("json") = false,
          "Parse and run a problem file, returning the report.");

    m.def("canonical_problem",
          [](const std::string& text) { return format_problem(parse_problem(text)); },
          py::arg("text"), "Canonical formatting of a problem file.");

    py::register_exception<InputError>(m, "InputError");
    py::register_exception<ResourceError>(m, "ResourceError");
}
