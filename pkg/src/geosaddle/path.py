"""Regular parametric paths through a point and extrema of f along them.

Every path is centred at t = 0 on the symmetric domain [-delta, delta].  Paths
whose data are all ints/Fractions are *exact*: restricting a polynomial to
them is done in rational arithmetic and the local behaviour is read off the
lowest-order term.  Float data marks an approximation of irrational
coefficients; those paths are analysed by sampling.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DifferentCenters, NotPolynomial, NotRegular, ZeroDirection
from .expr import Expr, eval_value, expand, is_polynomial
from .poly import BiPoly, UniPoly, count_roots_in, is_exact, poly_gcd

DEFAULT_DELTA = Fraction(1, 2)
SAMPLE_LEVELS = 20
SAMPLE_MARGIN = 1e-14
MIN_RESOLVED_RADII = 3


class PathKind(enum.Enum):
    LINE = "line"
    PARABOLA = "parabola"
    POLYPAIR = "polypair"


class ExtremumKind(enum.Enum):
    STRICT_MAX = "StrictMax"
    STRICT_MIN = "StrictMin"
    MAX = "Max"
    MIN = "Min"
    NO_EXTREMUM = "NoExtremum"
    CONSTANT = "Constant"
    INCONCLUSIVE = "Inconclusive"


class Method(enum.Enum):
    EXACT = "ExactPolynomial"
    SAMPLED = "Sampled"


def _num(c):
    if is_exact(c):
        return Fraction(c)
    return float(c)


@dataclass(frozen=True)
class ParametricPath:
    """gamma(t) = (x(t), y(t)) for |t| <= delta, passing through ``center`` at t = 0."""

    kind: PathKind
    x: UniPoly
    y: UniPoly
    delta: Fraction | float = DEFAULT_DELTA

    @property
    def center(self) -> tuple:
        return (self.x.coeff(0), self.y.coeff(0))

    @property
    def u(self) -> tuple:
        """Tangent gamma'(0)."""
        return (self.x.coeff(1), self.y.coeff(1))

    @property
    def v(self) -> tuple:
        """Second-order coefficient, gamma''(0) / 2."""
        return (self.x.coeff(2), self.y.coeff(2))

    @property
    def exact(self) -> bool:
        return self.x.exact and self.y.exact

    def __call__(self, t):
        return (self.x(t), self.y(t))

    def point_at(self, t):
        return self(t)

    def derivative_at(self, t):
        return (self.x.derivative()(t), self.y.derivative()(t))

    def reversed(self) -> ParametricPath:
        """The same curve traversed backwards, t -> -t."""
        return ParametricPath(self.kind, self.x.compose_neg(), self.y.compose_neg(), self.delta)

    def with_delta(self, delta) -> ParametricPath:
        return ParametricPath(self.kind, self.x, self.y, delta)

    def describe(self) -> str:
        fmt = lambda v: "(" + ", ".join(f"{float(c):.6g}" for c in v) + ")"
        if self.kind is PathKind.LINE:
            return f"line u={fmt(self.u)}"
        if self.kind is PathKind.PARABOLA:
            return f"parabola u={fmt(self.u)} v={fmt(self.v)}"
        return f"polypair x(t)={self.x} y(t)={self.y}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "center": [float(c) for c in self.center],
            "u": [float(c) for c in self.u],
            "v": [float(c) for c in self.v],
            "delta": float(self.delta),
        }


def _check_delta(delta):
    if not delta > 0:
        raise ValueError("delta must be positive")


def make_line(p, u, delta=DEFAULT_DELTA) -> ParametricPath:
    """gamma(t) = p + t*u."""
    _check_delta(delta)
    if u[0] == 0 and u[1] == 0:
        raise ZeroDirection("line direction is the zero vector")
    px, py = map(_num, p)
    ux, uy = map(_num, u)
    return ParametricPath(PathKind.LINE, UniPoly([px, ux]), UniPoly([py, uy]), delta)


def make_parabola(p, u, v, delta=DEFAULT_DELTA) -> ParametricPath:
    """gamma(t) = p + t*u + t^2*v, rejected if u + 2tv vanishes on [-delta, delta]."""
    _check_delta(delta)
    if u[0] == 0 and u[1] == 0:
        raise ZeroDirection("parabola tangent is the zero vector")
    px, py = map(_num, p)
    ux, uy = map(_num, u)
    vx, vy = map(_num, v)
    vv = vx * vx + vy * vy
    if vv != 0 and ux * vy - uy * vx == 0:
        # u parallel to v: the derivative vanishes at t* = -(u.v) / (2|v|^2)
        t_star = -(ux * vx + uy * vy) / (2 * vv)
        if abs(t_star) <= delta:
            raise NotRegular(f"derivative vanishes at t={t_star}")
    return ParametricPath(
        PathKind.PARABOLA, UniPoly([px, ux, vx]), UniPoly([py, uy, vy]), delta
    )


def make_polypair(x: UniPoly, y: UniPoly, delta=DEFAULT_DELTA) -> ParametricPath:
    """gamma(t) = (x(t), y(t)); the centre is (x(0), y(0))."""
    _check_delta(delta)
    dx, dy = x.derivative(), y.derivative()
    if dx.is_zero() and dy.is_zero():
        raise NotRegular("path is constant")
    if dx.exact and dy.exact:
        g = poly_gcd(dx, dy)
        lo, hi = -Fraction(delta), Fraction(delta)
        if g.degree > 0 and count_roots_in(g, lo, hi) > 0:
            raise NotRegular("derivative vanishes inside the domain")
        return ParametricPath(PathKind.POLYPAIR, x, y, delta)
    # float data: common roots of x' and y' located numerically
    base, other = (dx, dy) if not dx.is_zero() else (dy, dx)
    roots = np.roots([float(c) for c in reversed(base.coeffs)]) if base.degree > 0 else []
    scale = max(1.0, max(abs(float(c)) for c in other.coeffs)) if other.coeffs else 1.0
    for r in roots:
        if abs(r.imag) < 1e-9 and abs(r.real) <= float(delta):
            if abs(float(other(r.real))) <= 1e-9 * scale:
                raise NotRegular(f"derivative vanishes near t={r.real:.6g}")
    return ParametricPath(PathKind.POLYPAIR, x, y, delta)


def derivative_at(gamma: ParametricPath, t):
    return gamma.derivative_at(t)


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def transversal(g1: ParametricPath, g2: ParametricPath, tol: float = 1e-9) -> bool:
    """True iff both paths pass through the same centre with non-parallel tangents."""
    c1, c2 = g1.center, g2.center
    if math.hypot(float(c1[0] - c2[0]), float(c1[1] - c2[1])) >= tol:
        raise DifferentCenters(f"paths centred at {c1} and {c2}")
    u1, u2 = g1.u, g2.u
    n1 = math.hypot(float(u1[0]), float(u1[1]))
    n2 = math.hypot(float(u2[0]), float(u2[1]))
    return abs(float(cross(u1, u2))) > tol * n1 * n2


def normalized_cross(g1: ParametricPath, g2: ParametricPath) -> float:
    u1, u2 = g1.u, g2.u
    n1 = math.hypot(float(u1[0]), float(u1[1]))
    n2 = math.hypot(float(u2[0]), float(u2[1]))
    return abs(float(cross(u1, u2))) / (n1 * n2)


@dataclass(frozen=True)
class ExtremumReport:
    kind: ExtremumKind
    method: Method
    delta: float  # window on which the verdict is claimed
    degree: int | None = None  # lowest-order term of phi(t) - phi(0), exact only
    coeff_sign: int = 0
    radii: tuple = ()
    worst_margin: float | None = None
    strength: float = 0.0  # ranking aid: size of the departure from phi(0)
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def is_strict(self) -> bool:
        return self.kind in (ExtremumKind.STRICT_MAX, ExtremumKind.STRICT_MIN)

    def lowest_term_json(self) -> dict:
        return {"degree": self.degree, "coeff_sign": self.coeff_sign}


@lru_cache(maxsize=256)
def _increment(f: Expr, center: tuple) -> BiPoly:
    return expand(f, center).drop_constant()


def restrict_exact(f: Expr, gamma: ParametricPath) -> UniPoly:
    """phi(t) - phi(0) for polynomial f along an exact path."""
    if not is_polynomial(f):
        raise NotPolynomial("exact restriction requires a polynomial expression")
    if not gamma.exact:
        raise ValueError("exact restriction requires a path with rational data")
    center = tuple(Fraction(c) for c in gamma.center)
    inc = _increment(f, center)
    return inc.along(gamma.x - center[0], gamma.y - center[1])


def _speed(gamma: ParametricPath) -> float:
    return math.hypot(float(gamma.u[0]), float(gamma.u[1]))


def _classify_exact(f: Expr, gamma: ParametricPath) -> ExtremumReport:
    phi = restrict_exact(f, gamma)
    lowest = phi.lowest_term()
    delta = Fraction(gamma.delta) if is_exact(gamma.delta) else Fraction(gamma.delta)
    if lowest is None:
        return ExtremumReport(ExtremumKind.CONSTANT, Method.EXACT, float(delta))
    d, c = lowest
    sign = 1 if c > 0 else -1
    if d % 2 == 1:
        return ExtremumReport(ExtremumKind.NO_EXTREMUM, Method.EXACT, float(delta), d, sign)
    higher = sum(abs(phi.coeff(k)) for k in range(d + 1, phi.degree + 1))
    window = delta
    if higher:
        # |c_d| t^d dominates the tail whenever |t| <= rho < 1
        rho = min(Fraction(1), abs(c) / higher) / 2
        window = min(delta, rho)
    kind = ExtremumKind.STRICT_MIN if sign > 0 else ExtremumKind.STRICT_MAX
    strength = float(abs(c)) / _speed(gamma) ** d
    return ExtremumReport(kind, Method.EXACT, float(window), d, sign, strength=strength)


def _classify_sampled(
    f: Expr, gamma: ParametricPath, levels: int = SAMPLE_LEVELS, margin_rel: float = SAMPLE_MARGIN
) -> ExtremumReport:
    xs = [float(c) for c in gamma.x.coeffs]
    ys = [float(c) for c in gamma.y.coeffs]

    def at(t: float) -> tuple[float, float]:
        return (UniPoly(xs)(t), UniPoly(ys)(t))

    phi0 = eval_value(f, at(0.0))
    margin = margin_rel * max(1.0, abs(phi0))
    delta = float(gamma.delta)

    def cls(d: float) -> str:
        if d > margin:
            return "pos"
        if d < -margin:
            return "neg"
        return "zero" if d == 0 else "small"

    radii, worst = [], math.inf
    seen = set()
    resolved: list[tuple[str, float]] = []
    opposite = False
    for k in range(levels + 1):
        r = delta * 2.0**-k
        dp = eval_value(f, at(r)) - phi0
        dm = eval_value(f, at(-r)) - phi0
        radii.append(r)
        cp, cm = cls(dp), cls(dm)
        seen.update((cp, cm))
        if {cp, cm} == {"pos", "neg"}:
            opposite = True
        if cp == cm and cp in ("pos", "neg"):
            resolved.append((cp, min(abs(dp), abs(dm))))
            worst = min(worst, min(abs(dp), abs(dm)) - margin)

    notes = {"margin": margin, "resolved_radii": len(resolved)}
    common = dict(method=Method.SAMPLED, delta=delta, radii=tuple(radii), notes=notes)
    worst_margin = None if worst is math.inf else worst
    if opposite or {"pos", "neg"} <= seen:
        return ExtremumReport(ExtremumKind.NO_EXTREMUM, worst_margin=worst_margin, **common)
    if "pos" in seen or "neg" in seen:
        sign = 1 if "pos" in seen else -1
        strength = resolved[0][1] if resolved else 0.0
        if "zero" in seen:
            kind = ExtremumKind.MIN if sign > 0 else ExtremumKind.MAX
            return ExtremumReport(kind, coeff_sign=sign, worst_margin=worst_margin, **common)
        if len(resolved) >= MIN_RESOLVED_RADII:
            kind = ExtremumKind.STRICT_MIN if sign > 0 else ExtremumKind.STRICT_MAX
            return ExtremumReport(
                kind, coeff_sign=sign, worst_margin=worst_margin, strength=strength, **common
            )
    return ExtremumReport(ExtremumKind.INCONCLUSIVE, worst_margin=worst_margin, **common)


def classify_along(f: Expr, gamma: ParametricPath, method: str = "auto") -> ExtremumReport:
    """Local behaviour at t = 0 of phi(t) = f(gamma(t)).

    ``method`` is ``"exact"``, ``"sampled"`` or ``"auto"`` (exact when f is a
    polynomial and the path has rational data).
    """
    if method == "auto":
        method = "exact" if gamma.exact and is_polynomial(f) else "sampled"
    if method == "exact":
        return _classify_exact(f, gamma)
    if method == "sampled":
        return _classify_sampled(f, gamma)
    raise ValueError(f"unknown method {method!r}")
