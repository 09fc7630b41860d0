"""Binary quadratic forms Q(h) = a*h1^2 + 2*b*h1*h2 + c*h2^2."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import NotIndefinite

ZERO_BAND = 1e-12


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    POSITIVE_SEMIDEFINITE = "PositiveSemidefinite"
    NEGATIVE_SEMIDEFINITE = "NegativeSemidefinite"
    INDEFINITE = "Indefinite"
    ZERO = "Zero"


@dataclass(frozen=True, slots=True)
class QuadForm:
    a: float
    b: float
    c: float

    @property
    def det(self):
        return self.a * self.c - self.b * self.b

    def __call__(self, h) -> float:
        return evaluate(self, h)

    def scaled(self, s) -> QuadForm:
        return QuadForm(s * self.a, s * self.b, s * self.c)


@dataclass(frozen=True, slots=True)
class IndefiniteWitness:
    u_pos: tuple
    u_neg: tuple


def evaluate(q: QuadForm, h) -> float:
    h1, h2 = h
    return q.a * h1 * h1 + 2 * q.b * h1 * h2 + q.c * h2 * h2


def classify(q: QuadForm, band: float = ZERO_BAND) -> Definiteness:
    """Definiteness of ``q``; determinants within ``band`` of zero count as zero."""
    d = q.det
    if d < -band:
        return Definiteness.INDEFINITE
    if d > band:
        return Definiteness.POSITIVE_DEFINITE if q.a + q.c > 0 else Definiteness.NEGATIVE_DEFINITE
    if max(abs(q.a), abs(q.b), abs(q.c)) <= band:
        return Definiteness.ZERO
    if q.a + q.c > 0:
        return Definiteness.POSITIVE_SEMIDEFINITE
    return Definiteness.NEGATIVE_SEMIDEFINITE


def indefinite_witness(q: QuadForm) -> IndefiniteWitness:
    """Vectors with Q > 0 and Q < 0 from the three-case construction.

    a != 0:          (1, 0) and (b, -a),   product a^2 (ac - b^2)
    a == 0, c != 0:  (0, 1) and (c, -b),   product c^2 (ac - b^2)
    a == c == 0:     (1, 1) and (1, -1),   product -4 b^2
    """
    if not q.det < 0:
        raise NotIndefinite(f"ac - b^2 = {q.det} is not negative")
    a, b, c = q.a, q.b, q.c
    if a != 0:
        u, v = (1, 0), (b, -a)
    elif c != 0:
        u, v = (0, 1), (c, -b)
    else:
        u, v = (1, 1), (1, -1)
    if evaluate(q, u) > 0:
        return IndefiniteWitness(u, v)
    return IndefiniteWitness(v, u)
