import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from geosaddle.errors import NotIndefinite
from geosaddle.quadform import Definiteness as D
from geosaddle.quadform import QuadForm, classify, evaluate, indefinite_witness


def test_evaluate_examples():
    assert evaluate(QuadForm(0, 1, 0), (1, 1)) == 2
    assert evaluate(QuadForm(1, 0, -1), (1, 0)) == 1


@pytest.mark.parametrize(
    "q, expected",
    [
        ((0, 1, 0), D.INDEFINITE),
        ((1, 0, 1), D.POSITIVE_DEFINITE),
        ((-1, 0, -2), D.NEGATIVE_DEFINITE),
        ((1, 1, 1), D.POSITIVE_SEMIDEFINITE),
        ((-1, 1, -1), D.NEGATIVE_SEMIDEFINITE),
        ((0, 0, 0), D.ZERO),
        ((0, 0, 3), D.POSITIVE_SEMIDEFINITE),
    ],
)
def test_classify_examples(q, expected):
    assert classify(QuadForm(*q)) is expected


def _eig_class(a, b, c, band=1e-9):
    lo, hi = np.linalg.eigvalsh(np.array([[a, b], [b, c]], dtype=float))
    if lo < -band and hi > band:
        return D.INDEFINITE
    if lo > band:
        return D.POSITIVE_DEFINITE
    if hi < -band:
        return D.NEGATIVE_DEFINITE
    if abs(lo) <= band and abs(hi) <= band:
        return D.ZERO
    return D.POSITIVE_SEMIDEFINITE if hi > band else D.NEGATIVE_SEMIDEFINITE


ints = st.integers(-20, 20)


@given(ints, ints, ints)
def test_classify_matches_eigenvalues(a, b, c):
    assert classify(QuadForm(a, b, c)) is _eig_class(a, b, c)


def test_witness_examples():
    w = indefinite_witness(QuadForm(1, 0, -1))
    assert w.u_pos == (1, 0) and w.u_neg == (0, -1)
    w = indefinite_witness(QuadForm(0, 1, 0))
    assert w.u_pos == (1, 1) and w.u_neg == (1, -1)
    w = indefinite_witness(QuadForm(0, 1, 2))
    assert {w.u_pos, w.u_neg} == {(0, 1), (2, -1)}
    assert evaluate(QuadForm(0, 1, 2), w.u_pos) == 2
    assert evaluate(QuadForm(0, 1, 2), w.u_neg) == -2


def test_witness_requires_indefinite():
    for q in [(1, 0, 1), (1, 1, 1), (0, 0, 0)]:
        with pytest.raises(NotIndefinite):
            indefinite_witness(QuadForm(*q))


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10))
def test_homogeneity(a, b, c, h1, h2, t):
    q = QuadForm(a, b, c)
    assert evaluate(q, (t * h1, t * h2)) == pytest.approx(t * t * evaluate(q, (h1, h2)), rel=1e-9, abs=1e-6)


def test_scaled():
    assert QuadForm(1, 2, 3).scaled(2) == QuadForm(2, 4, 6)
    assert QuadForm(1, 2, 3).det == -1
