"""Univariate and bivariate polynomials over exact rationals (or floats).

Coefficients are whatever numbers the caller supplies; with ``int`` and
``Fraction`` inputs every operation stays exact.  Float coefficients are
accepted so that irrational data (approximated) can flow through the same
code, at the cost of exactness.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number
from typing import Iterable, Sequence


def is_exact(c) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


def _normalize(coeffs: Iterable) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class UniPoly:
    """Polynomial in one variable ``t``, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        self.coeffs = _normalize(coeffs)

    @classmethod
    def const(cls, c) -> UniPoly:
        return cls([c])

    @classmethod
    def t(cls) -> UniPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = UniPoly.const(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts)

    @staticmethod
    def _coerce(other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, Number):
            return UniPoly.const(other)
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    def __add__(self, other) -> UniPoly:
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> UniPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> UniPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> UniPoly:
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = UniPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self) -> UniPoly:
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose_neg(self) -> UniPoly:
        """p(-t)."""
        return UniPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def lowest_term(self) -> tuple[int, object] | None:
        """(degree, coefficient) of the lowest-order nonzero term."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k, c
        return None

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = Fraction(c) / lead if is_exact(c) and is_exact(lead) else c / lead
            quot[k - dq] = q
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= q * b
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def monic(self) -> UniPoly:
        lead = self.coeffs[-1]
        return UniPoly([Fraction(c) / lead for c in self.coeffs])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the rationals; both inputs must be exact."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def count_roots_in(p: UniPoly, lo, hi) -> int:
    """Distinct real roots of an exact polynomial in the closed interval [lo, hi] (Sturm)."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2].divmod(seq[-1])[1]
        seq.append(-r)
    seq.pop()

    def changes(x) -> int:
        vals = [q(x) for q in seq]
        vals = [v for v in vals if v != 0]
        return sum(1 for u, v in zip(vals, vals[1:]) if (u < 0) != (v < 0))

    n = changes(lo) - changes(hi)
    if p(lo) == 0:
        n += 1
    return n


class BiPoly:
    """Sparse polynomial in two variables, ``{(i, j): c}`` for ``c * x^i * y^j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def var(cls, which: str, shift=0) -> BiPoly:
        if which == "x":
            return cls({(1, 0): 1, (0, 0): shift})
        return cls({(0, 1): 1, (0, 0): shift})

    @staticmethod
    def _coerce(other) -> BiPoly:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, Number):
            return BiPoly.const(other)
        raise TypeError(f"cannot combine BiPoly with {type(other).__name__}")

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"BiPoly({dict(sorted(self.terms.items()))!r})"

    def __add__(self, other) -> BiPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> BiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> BiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> BiPoly:
        other = self._coerce(other)
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, m), b in other.terms.items():
                key = (i + k, j + m)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> BiPoly:
        result = BiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    @property
    def lowest_degree(self) -> int:
        return min((i + j for i, j in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> BiPoly:
        return BiPoly({k: v for k, v in self.terms.items() if sum(k) == d})

    def drop_constant(self) -> BiPoly:
        return BiPoly({k: v for k, v in self.terms.items() if k != (0, 0)})

    def __call__(self, x, y):
        return sum((c * x**i * y**j for (i, j), c in self.terms.items()), 0)

    def along(self, xt: UniPoly, yt: UniPoly) -> UniPoly:
        """Substitute x = xt, y = yt."""
        if not self.terms:
            return UniPoly()
        if xt.exact and yt.exact and all(is_exact(c) for c in self.terms.values()):
            return self._along_rational(xt, yt)
        mi = max(i for i, _ in self.terms)
        mj = max(j for _, j in self.terms)
        xp = [UniPoly.const(1)]
        for _ in range(mi):
            xp.append(xp[-1] * xt)
        yp = [UniPoly.const(1)]
        for _ in range(mj):
            yp.append(yp[-1] * yt)
        acc = UniPoly()
        for (i, j), c in self.terms.items():
            acc = acc + (xp[i] * yp[j]) * c
        return acc

    def _along_rational(self, xt: UniPoly, yt: UniPoly) -> UniPoly:
        # Clear denominators so the expansion runs on plain integers.
        den = math.lcm(*(Fraction(c).denominator for c in xt.coeffs + yt.coeffs)) if (xt.coeffs or yt.coeffs) else 1
        cden = math.lcm(*(Fraction(c).denominator for c in self.terms.values()))
        xi = [int(Fraction(c) * den) for c in xt.coeffs]
        yi = [int(Fraction(c) * den) for c in yt.coeffs]
        top = max(i + j for i, j in self.terms)
        mi = max(i for i, _ in self.terms)
        mj = max(j for _, j in self.terms)
        xp, yp = [[1]], [[1]]
        for _ in range(mi):
            xp.append(_imul(xp[-1], xi))
        for _ in range(mj):
            yp.append(_imul(yp[-1], yi))
        out: list[int] = []
        for (i, j), c in self.terms.items():
            k = int(Fraction(c) * cden) * den ** (top - i - j)
            prod = _imul(xp[i], yp[j])
            if len(out) < len(prod):
                out.extend([0] * (len(prod) - len(out)))
            for n, v in enumerate(prod):
                out[n] += k * v
        scale = cden * den**top
        return UniPoly([Fraction(v, scale) for v in out])


def _imul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out
