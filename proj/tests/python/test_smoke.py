import json
import math

import pytest

import l2alex


def one_var(coeffs):
    return l2alex.poly({(k,): c for k, c in enumerate(coeffs) if c != 0})


def test_quadratic_measure():
    q = one_var([1, -3, 1])
    assert l2alex.mahler_1v(q) == pytest.approx((3 + math.sqrt(5)) / 2, abs=1e-12)
    mags = sorted(abs(z) for z in l2alex.roots(q))
    assert mags == pytest.approx([(3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2], abs=1e-12)


def test_two_variable_measure():
    p = l2alex.poly({(0, 0): 1, (1, 0): 1, (0, 1): 1})
    r = l2alex.mahler_mv(p, 1e-8)
    assert r["measure"] == pytest.approx(1.3813564445184978, abs=1e-8)
    assert r["achieved_tol"] <= 1e-8


def test_polynomial_arithmetic():
    z1 = l2alex.LaurentPoly.variable(2, 0)
    z2 = l2alex.LaurentPoly.variable(2, 1)
    assert (z1 + z2) * (z1 - z2) == z1 * z1 - z2 * z2
    assert (z1 * z2).coeff([1, 1]) == 1


def test_det_function_and_asymptote():
    v = l2alex.det_function([[one_var([1, -3, 1])]], l2alex.CohomClass.from_sigma([1.0]))
    assert v(1.0) == pytest.approx((3 + math.sqrt(5)) / 2, rel=1e-12)
    a = l2alex.asymptote(v)
    assert a == {"d_plus": 2, "d_minus": 0, "deg_b": 2, "C_plus": 1, "C_minus": 1,
                 "method": "exact-chief-part"}
    rep = l2alex.convexity_check(v, l2alex.geometric_grid(1e-3, 1e3, 21))
    assert rep["passed"]
    assert rep["slope_bound"] == 2


def test_index_divisor_halves_degree():
    q = one_var([1, -1])
    v = l2alex.det_function([[q * q * q * q]], l2alex.CohomClass.from_sigma([1.0]), 2)
    assert v(10.0) == pytest.approx(100.0, rel=1e-12)
    assert l2alex.asymptote(v)["deg_b"] == pytest.approx(2.0)


def test_torsion_closed_forms():
    h = math.log((3 + math.sqrt(5)) / 2)
    assert l2alex.fibered_torsion(h, 1, 0.3) == 1
    assert l2alex.fibered_torsion(h, 1, 3.0) == 3
    assert l2alex.fibered_torsion(h, 1, 1.0) is None
    assert l2alex.graph_torsion(3, 2.0) == 8


def test_figure_eight_gluing_scenario():
    r = l2alex.section9([1, -1, 0])
    assert r["norm"] == 2
    assert r["leading"] == pytest.approx(math.exp(l2alex.V3 / (3 * math.pi)), abs=1e-12)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        l2alex.mahler_1v(l2alex.poly({(0, 0): 1}))
    with pytest.raises(ValueError):
        l2alex.parse_input("{not json")


def test_cli_round_trip():
    doc = {"variables": ["z"], "matrix": [[[{"exp": [1], "re": 1, "im": 0}, {"exp": [0], "re": -1}]]],
           "class": {"sigma": [1]}}
    v, normalized = l2alex.parse_input(json.dumps(doc))
    assert normalized["variables"] == ["z"]
    assert v(5.0) == pytest.approx(5.0)
    code, out, err = l2alex.run_cli(["scenario", "section9", "--phi", "0,0,0"])
    assert code == 0, err
    assert json.loads(out)["leading"] == pytest.approx(1.381356444518, abs=1e-11)
    code, _, err = l2alex.run_cli(["scenario", "section9", "--phi", "1,1"])
    assert code == 1 and err
