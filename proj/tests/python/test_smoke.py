"""Smoke tests for the _equiloc extension."""

import json

import equiloc


def test_smith_normal_form():
    u, d, v = equiloc.smith_normal_form([[3, 0], [0, 5]])
    assert d[0][0] == 1 and d[1][1] == 15
    u, d, v = equiloc.smith_normal_form([[2, 4], [6, 8]])
    assert d[0][0] == 2 and d[1][1] == 4


def test_lattice_quotients():
    rank, orders = equiloc.quotient_invariants(1, [], [[5]])
    assert rank == 0 and orders == [5]
    rank, orders = equiloc.quotient_invariants(2, [], [[2, 4]])
    assert rank == 1 and orders == [2]
    assert equiloc.restrict_character(1, [], [[5]], [5]) == [0]
    assert equiloc.restrict_character(1, [], [[5]], [2]) == [2]


def test_groebner():
    gb = equiloc.groebner_basis(0, ["x", "y"], ["x*y - 1", "x", "y"])
    assert gb == ["1"]
    assert equiloc.ideal_member(0, ["x", "y"], "x^3", ["x^2 + y^2", "x*y"])
    assert not equiloc.ideal_member(0, ["x", "y"], "x", ["x^2"])


def test_fixed_locus_and_section():
    gb = equiloc.fixed_locus(1, [], [], ["x", "y"], [[1], [0]], [])
    assert gb == ["x"]
    gb = equiloc.fixed_locus(1, [], [], ["x", "y"], [[1], [-1]], ["x*y - 1"])
    assert gb == ["1"]
    res = equiloc.concentration_section(1, [], [], ["x", "y"], [[1], [2]], [])
    assert res["verified"]
    # Characters are sorted: (-2) pairs with y, (-1) with x.
    assert res["representation"] == ["(-2)", "(-1)"]
    assert res["section"] == ["y", "x"]


def test_fixed_points_oracle():
    pts = equiloc.fixed_points(7, 1, [], [[3]], ["x"], [[1]], [])
    assert pts == [[0]]
    pts = equiloc.fixed_points(5, 1, [], [], ["x", "y"], [[1], [-1]], ["x*y - 1"])
    assert pts == []


def test_euler_and_bott():
    assert equiloc.euler_class(0, [3], [[1]]) == "v"
    assert equiloc.euler_class(0, [5], [[2]]) == "2*v"
    res = equiloc.bott_pushforward(1, [], [[0], [1]], 1)
    assert res["agrees"]
    assert res["presentation"] == "1"
    det = equiloc.concentration_determinant(1, [], [[0], [1]])
    assert det["invertible"]


def test_steenrod():
    series = equiloc.total_power_of_v(3, 1, 3)
    assert series[0] == "v" and series[1] == "v^3"
    inv1 = equiloc.power_on_inverse(1, 3)
    # -v prints as 2*v over F_3.
    assert inv1["numerator"] == "2*v" and inv1["denominator_factors"] == 0
    ranks = equiloc.smith_ranks(3, [[0], [1]], 0, 4, 0, 2)
    assert ranks["total"] == 2


def test_problem_roundtrip():
    text = (
        "field rational\n"
        "group free 1\n"
        "var x (1)\n"
        "var y (-1)\n"
        "ideal x*y - 1\n"
        "query fixedlocus\n"
    )
    canon = equiloc.canonical_problem(text)
    assert equiloc.canonical_problem(canon) == canon
    report = equiloc.run_problem(text)
    assert "unit ideal" in report
    report_json = json.loads(equiloc.run_problem(text, json=True))
    assert report_json["schema"] == 1
    assert report_json["queries"][0]["result"]["unit_ideal"]


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
