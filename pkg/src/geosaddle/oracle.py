"""Analytic answer key for the worked example families.

Each entry pairs a function and a point with the classification known from
hand analysis, plus (where known) an explicit pair of witness paths.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .certify import Classification, Verdict
from .expr import X, Y, Expr, Max, Min, Neg, parse, polynomial
from .path import ParametricPath, make_line, make_parabola, make_polypair
from .poly import UniPoly


class Expected(enum.Enum):
    STRICT_SADDLE = "StrictSaddle"
    NO_SADDLE = "NoSaddle"
    CLASSICAL_SADDLE_ONLY = "ClassicalSaddleOnly"
    NO_CRITICAL_POINT = "NoCriticalPoint"


ORIGIN = (Fraction(0), Fraction(0))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    f: Expr
    expected: Expected
    point: tuple = ORIGIN
    # (path with a strict max, path with a strict min), transversal
    reference_paths: tuple[ParametricPath, ParametricPath] | None = None
    # a max/min pair through p that is *not* transversal
    decoy_paths: tuple[ParametricPath, ParametricPath] | None = None
    # a negative case the engine may legitimately leave undecided
    unknown_allowed: bool = False
    family: str = ""
    params: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self) -> dict:
        def paths(pair):
            if pair is None:
                return None
            return {"max": pair[0].to_json(), "min": pair[1].to_json()}

        return {
            "name": self.name,
            "f": str(self.f),
            "point": [float(c) for c in self.point],
            "expected": self.expected.value,
            "reference_paths": paths(self.reference_paths),
            "decoy_paths": paths(self.decoy_paths),
            "unknown_allowed": self.unknown_allowed,
            "family": self.family,
            "params": self.params,
            "note": self.note,
        }


def monomial_product_expected(m: int, n: int) -> Expected:
    """x^m y^n: strict saddle at the origin iff m and n are both odd."""
    _check_positive(m, n)
    if m % 2 == 1 and n % 2 == 1:
        return Expected.STRICT_SADDLE
    return Expected.NO_SADDLE


def monomial_difference_expected(m: int, n: int) -> Expected:
    """x^m - y^n: not critical if m or n is 1, saddle iff both even."""
    _check_positive(m, n)
    if m == 1 or n == 1:
        return Expected.NO_CRITICAL_POINT
    if m % 2 == 0 and n % 2 == 0:
        return Expected.STRICT_SADDLE
    return Expected.NO_SADDLE


def monomial_sum_expected(m: int, n: int) -> Expected:
    _check_positive(m, n)
    if m == 1 or n == 1:
        return Expected.NO_CRITICAL_POINT
    return Expected.NO_SADDLE


def complex_power_expected(n: int, part: str) -> Expected:
    """Re or Im of (x + iy)^n at the origin."""
    _check_positive(n)
    if part not in ("Re", "Im"):
        raise ValueError("part must be 'Re' or 'Im'")
    return Expected.NO_SADDLE if n == 1 else Expected.STRICT_SADDLE


def _check_positive(*ks: int) -> None:
    if any(not isinstance(k, int) or k < 1 for k in ks):
        raise ValueError("exponents must be positive integers")


def complex_power(n: int, part: str) -> Expr:
    """Re/Im (x + iy)^n expanded into monomials."""
    terms = {}
    for k in range(n + 1):
        # i^k is real for even k and imaginary for odd k
        if (k % 2 == 0) != (part == "Re"):
            continue
        sign = -1 if (k // 2) % 2 else 1
        terms[(n - k, k)] = sign * comb(n, k)
    return polynomial(terms)


def min_abs_saddle() -> Expr:
    """min(|x|,|y|) where xy >= 0 and -min(|x|,|y|) where xy < 0.

    Written as max(min(x, y), min(-x, -y)), which agrees with the piecewise
    definition everywhere, axes included.
    """
    return Max(Min(X, Y), Min(Neg(X), Neg(Y)))


def bilinear(a, b, c, d) -> Expr:
    """(ax + by)(cx + dy)."""
    return polynomial({(1, 0): a, (0, 1): b}) * polynomial({(1, 0): c, (0, 1): d})


def two_parabola(c1=1, c2=2) -> Expr:
    """(y - c1 x^2)(y - c2 x^2)."""
    c1, c2 = Fraction(c1), Fraction(c2)
    if not 0 < c1 < c2:
        raise ValueError("need 0 < c1 < c2")
    return polynomial({(0, 1): 1, (2, 0): -c1}) * polynomial({(0, 1): 1, (2, 0): -c2})


def _line(ux, uy) -> ParametricPath:
    return make_line(ORIGIN, (ux, uy), Fraction(1, 2))


_DIAGONALS = (lambda: (_line(1, -1), _line(1, 1)))
_AXES = (lambda: (_line(0, 1), _line(1, 0)))


def _monkey_paths(delta=1) -> tuple[ParametricPath, ParametricPath]:
    r3 = math.sqrt(3)
    # phi = 8t^6 - 24t^4 along the second, 24t^4 - 8t^6 along the first
    first = make_parabola(ORIGIN, (-r3, 1.0), (1.0, r3), delta)
    second = make_parabola(ORIGIN, (r3, 1.0), (-1.0, r3), delta)
    return second, first


def _odd_power_paths(n: int) -> tuple[ParametricPath, ParametricPath]:
    a = math.pi / (2 * n)
    ca, sa = math.cos(a), math.sin(a)
    g1 = make_parabola(ORIGIN, (-ca, sa), (sa, ca), Fraction(1, 2))
    g2 = make_parabola(ORIGIN, (ca, sa), (-sa, ca), Fraction(1, 2))
    # along g1 the function is positive, along g2 negative
    return g2, g1


def _even_power_paths(n: int) -> tuple[ParametricPath, ParametricPath]:
    if n == 2:
        along = _line(0, 1)
    else:
        along = make_line(ORIGIN, (math.cos(math.pi / n), math.sin(math.pi / n)), Fraction(1, 2))
    return along, _line(1, 0)


def catalog() -> list[CatalogEntry]:
    t = UniPoly.t()
    entries = [
        CatalogEntry(
            "hyperbolic-paraboloid", X * Y, Expected.STRICT_SADDLE,
            reference_paths=_DIAGONALS(), family="named",
        ),
        CatalogEntry(
            "bilinear", bilinear(1, 2, 3, 4), Expected.STRICT_SADDLE,
            family="named", params={"a": 1, "b": 2, "c": 3, "d": 4},
            note="(ax+by)(cx+dy) with ad-bc != 0",
        ),
        CatalogEntry(
            "monkey-saddle", parse("x^3 - 3*x*y^2"), Expected.STRICT_SADDLE,
            reference_paths=_monkey_paths(), family="named",
        ),
        CatalogEntry(
            "fake-saddle", parse("x^3"), Expected.CLASSICAL_SADDLE_ONLY,
            decoy_paths=(make_polypair(-(t**2), t, 1), make_polypair(t**2, t, 1)),
            family="named",
        ),
        CatalogEntry(
            "dog-saddle", parse("x^3*y - x*y^3"), Expected.STRICT_SADDLE,
            reference_paths=(_line(1, Fraction(-1, 2)), _line(1, Fraction(1, 2))),
            family="named",
        ),
        CatalogEntry(
            "min-abs", min_abs_saddle(), Expected.STRICT_SADDLE,
            reference_paths=_DIAGONALS(), family="named",
            note="nondifferentiable at the origin",
        ),
        CatalogEntry(
            "two-parabola", two_parabola(1, 2), Expected.STRICT_SADDLE,
            reference_paths=(
                make_parabola(ORIGIN, (1, 0), (0, Fraction(3, 2)), Fraction(1, 2)),
                _line(0, 1),
            ),
            family="named", params={"c1": 1, "c2": 2, "c": "3/2"},
        ),
    ]
    for m in range(1, 6):
        for n in range(1, 6):
            exp = monomial_product_expected(m, n)
            both_even = m % 2 == 0 and n % 2 == 0
            entries.append(CatalogEntry(
                f"x^{m}*y^{n}", polynomial({(m, n): 1}), exp,
                reference_paths=_DIAGONALS() if exp is Expected.STRICT_SADDLE else None,
                unknown_allowed=exp is Expected.NO_SADDLE and not both_even,
                family="product", params={"m": m, "n": n},
            ))
    for m in range(1, 6):
        for n in range(1, 6):
            exp = monomial_difference_expected(m, n)
            entries.append(CatalogEntry(
                f"x^{m}-y^{n}", polynomial({(m, 0): 1, (0, n): -1}), exp,
                reference_paths=_AXES() if exp is Expected.STRICT_SADDLE else None,
                unknown_allowed=exp is Expected.NO_SADDLE,
                family="difference", params={"m": m, "n": n},
            ))
    for m in range(1, 6):
        for n in range(1, 6):
            exp = monomial_sum_expected(m, n)
            both_even = m % 2 == 0 and n % 2 == 0
            entries.append(CatalogEntry(
                f"x^{m}+y^{n}", polynomial({(m, 0): 1, (0, n): 1}), exp,
                unknown_allowed=exp is Expected.NO_SADDLE and not both_even,
                family="sum", params={"m": m, "n": n},
            ))
    for n in range(1, 7):
        for part in ("Re", "Im"):
            exp = complex_power_expected(n, part)
            refs = None
            if part == "Re" and n >= 2:
                refs = _even_power_paths(n) if n % 2 == 0 else _odd_power_paths(n)
            entries.append(CatalogEntry(
                f"{part}(x+iy)^{n}", complex_power(n, part), exp,
                reference_paths=refs, family="complex-power",
                params={"n": n, "part": part},
            ))
    return entries


class Match(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNKNOWN_ALLOWED = "UNKNOWN-ALLOWED"


_NEGATIVE_VERDICTS = {
    Verdict.REFUTED_SADDLE,
    Verdict.LOCAL_MIN,
    Verdict.LOCAL_MAX,
    Verdict.CLASSICAL_SADDLE_ONLY,
    Verdict.NOT_CRITICAL,
}


def compare(entry: CatalogEntry, result: Classification) -> Match:
    """Score one engine verdict against the entry's expected answer."""
    v = result.verdict
    exp = entry.expected
    if exp is Expected.STRICT_SADDLE:
        ok = v is Verdict.STRICT_SADDLE and result.certificate is not None and result.certificate.strict
        return Match.PASS if ok else Match.FAIL
    if v is Verdict.STRICT_SADDLE:
        return Match.FAIL
    if exp is Expected.NO_CRITICAL_POINT:
        return Match.PASS if v is Verdict.NOT_CRITICAL else Match.FAIL
    if exp is Expected.CLASSICAL_SADDLE_ONLY:
        return Match.PASS if v is Verdict.CLASSICAL_SADDLE_ONLY else Match.FAIL
    if v in _NEGATIVE_VERDICTS:
        return Match.PASS
    if v is Verdict.UNKNOWN and entry.unknown_allowed:
        return Match.UNKNOWN_ALLOWED
    return Match.FAIL
