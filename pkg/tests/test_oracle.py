import json
import math

import pytest

from geosaddle.certify import Classification, Verdict
from geosaddle.expr import eval_value
from geosaddle.oracle import (
    Expected as E,
    Match,
    catalog,
    compare,
    complex_power,
    complex_power_expected,
    monomial_difference_expected,
    monomial_product_expected,
    monomial_sum_expected,
    two_parabola,
)
from geosaddle.path import ExtremumKind as K
from geosaddle.path import classify_along, transversal


def test_product_examples():
    assert monomial_product_expected(1, 1) is E.STRICT_SADDLE
    assert monomial_product_expected(2, 2) is E.NO_SADDLE
    assert monomial_product_expected(3, 2) is E.NO_SADDLE


def test_difference_examples():
    assert monomial_difference_expected(2, 2) is E.STRICT_SADDLE
    assert monomial_difference_expected(2, 4) is E.STRICT_SADDLE
    assert monomial_difference_expected(3, 2) is E.NO_SADDLE
    assert monomial_difference_expected(1, 4) is E.NO_CRITICAL_POINT


def test_sum_examples():
    assert monomial_sum_expected(2, 2) is E.NO_SADDLE
    assert monomial_sum_expected(2, 3) is E.NO_SADDLE
    assert monomial_sum_expected(4, 6) is E.NO_SADDLE


def test_complex_examples():
    assert complex_power_expected(1, "Re") is E.NO_SADDLE
    assert complex_power_expected(3, "Re") is E.STRICT_SADDLE
    assert complex_power_expected(2, "Im") is E.STRICT_SADDLE
    with pytest.raises(ValueError):
        complex_power_expected(2, "Arg")


@pytest.mark.parametrize("fn", [monomial_product_expected, monomial_difference_expected, monomial_sum_expected])
def test_symmetric_in_m_n(fn):
    for m in range(1, 7):
        for n in range(1, 7):
            assert fn(m, n) is fn(n, m)


def test_invalid_exponents():
    with pytest.raises(ValueError):
        monomial_product_expected(0, 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_complex_power_expansion(n):
    for r, th in [(0.7, 0.3), (1.3, -2.1), (0.2, 2.9)]:
        x, y = r * math.cos(th), r * math.sin(th)
        z = complex(x, y) ** n
        assert eval_value(complex_power(n, "Re"), (x, y)) == pytest.approx(z.real, abs=1e-12)
        assert eval_value(complex_power(n, "Im"), (x, y)) == pytest.approx(z.imag, abs=1e-12)


def test_two_parabola_parameters():
    with pytest.raises(ValueError):
        two_parabola(2, 1)


def test_catalog_shape():
    cat = catalog()
    names = [e.name for e in cat]
    assert len(names) == len(set(names))
    assert catalog()[0].name == cat[0].name
    by = {e.name: e for e in cat}
    assert by["dog-saddle"].expected is E.STRICT_SADDLE
    assert by["fake-saddle"].expected is E.CLASSICAL_SADDLE_ONLY
    assert by["two-parabola"].params["c"] == "3/2"
    assert sum(e.family == "product" for e in cat) == 25
    assert sum(e.family == "complex-power" for e in cat) == 12
    json.dumps([e.to_json() for e in cat])


@pytest.mark.parametrize("entry", [e for e in catalog() if e.reference_paths], ids=lambda e: e.name)
def test_reference_paths_have_claimed_kinds(entry):
    g_max, g_min = entry.reference_paths
    assert classify_along(entry.f, g_max).kind is K.STRICT_MAX
    assert classify_along(entry.f, g_min).kind is K.STRICT_MIN
    assert transversal(g_max, g_min)


def test_monkey_reference_composition():
    g_max, g_min = {e.name: e for e in catalog()}["monkey-saddle"].reference_paths
    f = {e.name: e for e in catalog()}["monkey-saddle"].f
    for t in (0.05, 0.3, -0.7):
        assert eval_value(f, g_min(t)) == pytest.approx(24 * t**4 - 8 * t**6, rel=1e-10)
        assert eval_value(f, g_max(t)) == pytest.approx(8 * t**6 - 24 * t**4, rel=1e-10)


def test_fake_saddle_decoys_are_not_transversal():
    e = {x.name: x for x in catalog()}["fake-saddle"]
    g_max, g_min = e.decoy_paths
    assert classify_along(e.f, g_max).kind is K.STRICT_MAX
    assert classify_along(e.f, g_min).kind is K.STRICT_MIN
    assert not transversal(g_max, g_min)


def _fake(v):
    return Classification(verdict=v, point=(0, 0), differentiable=True)


def test_compare_rules():
    by = {e.name: e for e in catalog()}
    assert compare(by["x^2*y^2"], _fake(Verdict.REFUTED_SADDLE)) is Match.PASS
    assert compare(by["x^2*y^2"], _fake(Verdict.UNKNOWN)) is Match.FAIL
    assert compare(by["x^2*y^3"], _fake(Verdict.UNKNOWN)) is Match.UNKNOWN_ALLOWED
    assert compare(by["x^2*y^3"], _fake(Verdict.STRICT_SADDLE)) is Match.FAIL
    assert compare(by["x*y" if "x*y" in by else "hyperbolic-paraboloid"], _fake(Verdict.UNKNOWN)) is Match.FAIL
    assert compare(by["fake-saddle"], _fake(Verdict.REFUTED_SADDLE)) is Match.FAIL
    assert compare(by["x^1-y^3"], _fake(Verdict.NOT_CRITICAL)) is Match.PASS
    assert compare(by["Re(x+iy)^1"], _fake(Verdict.NOT_CRITICAL)) is Match.PASS
