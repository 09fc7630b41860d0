"""Second-order forward-mode differentiation of bivariate expressions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NondifferentiablePoint
from .expr import Expr, _fold
from .quadform import QuadForm

KINK_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class Jet2:
    """Value, gradient and (symmetric) Hessian of a scalar at a point.

    Arithmetic on jets applies the product/quotient/chain rules, so folding an
    expression tree over jets seeded with :meth:`variable` yields its exact
    second-order Taylor data (up to floating point).
    """

    value: float
    fx: float = 0.0
    fy: float = 0.0
    fxx: float = 0.0
    fxy: float = 0.0
    fyy: float = 0.0

    @classmethod
    def constant(cls, c) -> Jet2:
        return cls(float(c))

    @classmethod
    def variable(cls, which: str, at) -> Jet2:
        if which == "x":
            return cls(float(at), fx=1.0)
        return cls(float(at), fy=1.0)

    @property
    def grad(self) -> tuple[float, float]:
        return (self.fx, self.fy)

    @property
    def hess(self) -> tuple[float, float, float]:
        return (self.fxx, self.fxy, self.fyy)

    @property
    def gradient_norm(self) -> float:
        return math.hypot(self.fx, self.fy)

    def hessian_form(self) -> QuadForm:
        return QuadForm(self.fxx, self.fxy, self.fyy)

    def chain(self, g0: float, g1: float, g2: float) -> Jet2:
        """g(self) for a scalar g with g(v)=g0, g'(v)=g1, g''(v)=g2."""
        return Jet2(
            g0,
            g1 * self.fx,
            g1 * self.fy,
            g1 * self.fxx + g2 * self.fx * self.fx,
            g1 * self.fxy + g2 * self.fx * self.fy,
            g1 * self.fyy + g2 * self.fy * self.fy,
        )

    @staticmethod
    def _coerce(other) -> Jet2:
        return other if isinstance(other, Jet2) else Jet2.constant(other)

    def __add__(self, other) -> Jet2:
        o = self._coerce(other)
        return Jet2(
            self.value + o.value,
            self.fx + o.fx,
            self.fy + o.fy,
            self.fxx + o.fxx,
            self.fxy + o.fxy,
            self.fyy + o.fyy,
        )

    __radd__ = __add__

    def __neg__(self) -> Jet2:
        return Jet2(-self.value, -self.fx, -self.fy, -self.fxx, -self.fxy, -self.fyy)

    def __sub__(self, other) -> Jet2:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Jet2:
        return self._coerce(other) - self

    def __mul__(self, other) -> Jet2:
        o = self._coerce(other)
        a, b = self, o
        return Jet2(
            a.value * b.value,
            a.fx * b.value + a.value * b.fx,
            a.fy * b.value + a.value * b.fy,
            a.fxx * b.value + 2 * a.fx * b.fx + a.value * b.fxx,
            a.fxy * b.value + a.fx * b.fy + a.fy * b.fx + a.value * b.fxy,
            a.fyy * b.value + 2 * a.fy * b.fy + a.value * b.fyy,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> Jet2:
        v = self.value
        if v == 0:
            raise DomainError("division by zero")
        return self.chain(1 / v, -1 / (v * v), 2 / (v * v * v))

    def __truediv__(self, other) -> Jet2:
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> Jet2:
        return self._coerce(other) * self.reciprocal()


def _jpow(a: Jet2, k: int) -> Jet2:
    r = Jet2.constant(1.0)
    for _ in range(k):
        r = r * a
    return r


def _jabs(a: Jet2) -> Jet2:
    if abs(a.value) <= KINK_TOL:
        raise NondifferentiablePoint("abs evaluated at its kink")
    return a if a.value > 0 else -a


def _jmin(a: Jet2, b: Jet2) -> Jet2:
    if abs(a.value - b.value) <= KINK_TOL:
        raise NondifferentiablePoint("min evaluated where its arguments tie")
    return a if a.value < b.value else b


def _jmax(a: Jet2, b: Jet2) -> Jet2:
    if abs(a.value - b.value) <= KINK_TOL:
        raise NondifferentiablePoint("max evaluated where its arguments tie")
    return a if a.value > b.value else b


def _jexp(a: Jet2) -> Jet2:
    try:
        e = math.exp(a.value)
    except OverflowError as err:
        raise DomainError("exp overflow") from err
    return a.chain(e, e, e)


def _jsin(a: Jet2) -> Jet2:
    s, c = math.sin(a.value), math.cos(a.value)
    return a.chain(s, c, -s)


def _jcos(a: Jet2) -> Jet2:
    s, c = math.sin(a.value), math.cos(a.value)
    return a.chain(c, -s, -c)


_JET_OPS = {
    "div": lambda a, b: a / b,
    "pow": _jpow,
    "abs": _jabs,
    "min": _jmin,
    "max": _jmax,
    "sin": _jsin,
    "cos": _jcos,
    "exp": _jexp,
}


def eval_jet(f: Expr, p) -> Jet2:
    """Value, gradient and Hessian of ``f`` at ``p``.

    Raises NondifferentiablePoint when an abs/min/max kink lies within
    ``KINK_TOL`` of ``p`` and DomainError on division by zero.
    """
    jx = Jet2.variable("x", p[0])
    jy = Jet2.variable("y", p[1])
    return _fold(f, jx, jy, Jet2.constant, _JET_OPS)


def discriminant(f: Expr, p) -> float:
    """f_xx * f_yy - f_xy^2 at p."""
    j = eval_jet(f, p)
    return j.fxx * j.fyy - j.fxy * j.fxy


def is_differentiable_at(f: Expr, p) -> bool:
    try:
        eval_jet(f, p)
    except NondifferentiablePoint:
        return False
    return True
