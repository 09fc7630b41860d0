"""Critical-point classification and geometric saddle certificates.

A certificate is a pair of regular paths through p that cross transversally,
with f having a strict local maximum along one and a strict local minimum
along the other.  Negative verdicts are only issued when something actually
rules a saddle out (a definite Hessian, or f - f(p) keeping one sign near p);
failing to find paths yields ``Unknown``, never "not a saddle".
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DomainError, NondifferentiablePoint
from .expr import Expr, eval_value, expand, is_polynomial
from .jet import Jet2, eval_jet
from .path import (
    DEFAULT_DELTA,
    SAMPLE_MARGIN,
    ExtremumKind,
    ExtremumReport,
    Method,
    ParametricPath,
    PathKind,
    classify_along,
    make_line,
    make_parabola,
    normalized_cross,
    transversal,
)
from .poly import is_exact
from .quadform import QuadForm, evaluate, indefinite_witness

log = logging.getLogger(__name__)

GRAD_TOL = 1e-9
TRANSVERSAL_TOL = 1e-9
ZERO_BAND = 1e-12
DEFAULT_PARABOLA_COEFFS = tuple(
    Fraction(s) for s in ("1/4", "1/2", "1", "3/2", "2", "3")
)


@dataclass(frozen=True)
class SearchConfig:
    K: int = 64
    parabola_coeffs: tuple = DEFAULT_PARABOLA_COEFFS
    delta: Fraction | float = DEFAULT_DELTA
    grad_tol: float = GRAD_TOL
    transversal_tol: float = TRANSVERSAL_TOL
    zero_band: float = ZERO_BAND
    # lines/parabolas tangent to the zero directions of the lowest-order form
    tangent_family: bool = True
    allow_nonstrict: bool = False
    refute_grid: int = 20
    classical_radii: tuple = (1e-1, 1e-2, 1e-3)
    samples_per_circle: int = 360

    def __post_init__(self):
        if self.K < 4:
            raise ValueError("K must be at least 4")
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if min(self.grad_tol, self.transversal_tol, self.zero_band) <= 0:
            raise ValueError("tolerances must be positive")


DEFAULT_CONFIG = SearchConfig()


class Verdict(enum.Enum):
    STRICT_SADDLE = "StrictSaddle"
    LOCAL_MIN = "LocalMin"
    LOCAL_MAX = "LocalMax"
    NOT_CRITICAL = "NotCritical"
    REFUTED_SADDLE = "RefutedSaddle"
    CLASSICAL_SADDLE_ONLY = "ClassicalSaddleOnly"
    UNKNOWN = "Unknown"


class DiscriminantOutcome(enum.Enum):
    STRICT_SADDLE = "StrictSaddle"
    LOCAL_MIN = "LocalMin"
    LOCAL_MAX = "LocalMax"
    INCONCLUSIVE = "Inconclusive"
    NOT_CRITICAL = "NotCritical"


class ClassicalOutcome(enum.Enum):
    CLASSICAL_SADDLE = "ClassicalSaddleEvidence"
    LOCAL_EXTREMUM = "LocalExtremumEvidence"
    NOT_CRITICAL = "NotCritical"
    INCONCLUSIVE = "Inconclusive"
    NOT_APPLICABLE = "NotApplicable"


def _as_point(p) -> tuple:
    return tuple(Fraction(c) if is_exact(c) else float(c) for c in p)


def _point_exact(p) -> bool:
    return all(is_exact(c) for c in p)


# --------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class SaddleCertificate:
    point: tuple
    path_max: ParametricPath
    report_max: ExtremumReport
    path_min: ParametricPath
    report_min: ExtremumReport
    cross: float  # |u1 x u2| / (|u1| |u2|)
    strict: bool = True
    gradient_norm: float | None = None

    @property
    def grade(self) -> str:
        exact = self.report_max.method is Method.EXACT and self.report_min.method is Method.EXACT
        return "exact" if exact else "sampled"

    def to_json(self) -> dict:
        def path_json(path: ParametricPath, rep: ExtremumReport) -> dict:
            return {
                "kind": path.kind.value,
                "u": [float(c) for c in path.u],
                "v": [float(c) for c in path.v],
                "delta": float(rep.delta),
                "phi_lowest_term": rep.lowest_term_json(),
                "extremum": rep.kind.value,
                "method": rep.method.value,
            }

        return {
            "point": [float(c) for c in self.point],
            "strict": self.strict,
            "grade": self.grade,
            "path_max": path_json(self.path_max, self.report_max),
            "path_min": path_json(self.path_min, self.report_min),
            "cross": self.cross,
            "gradient_norm": self.gradient_norm,
        }


_PATH_SCHEMA = {
    "type": "object",
    "required": ["kind", "u", "v", "delta", "phi_lowest_term"],
    "properties": {
        "kind": {"enum": [k.value for k in PathKind]},
        "u": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "v": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "delta": {"type": "number", "exclusiveMinimum": 0},
        "phi_lowest_term": {
            "type": "object",
            "required": ["degree", "coeff_sign"],
            "properties": {
                "degree": {"type": ["integer", "null"]},
                "coeff_sign": {"enum": [-1, 0, 1]},
            },
        },
    },
}

CERTIFICATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["point", "strict", "grade", "path_max", "path_min", "cross", "gradient_norm"],
    "properties": {
        "point": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "strict": {"type": "boolean"},
        "grade": {"enum": ["exact", "sampled"]},
        "path_max": _PATH_SCHEMA,
        "path_min": _PATH_SCHEMA,
        "cross": {"type": "number"},
        "gradient_norm": {"type": ["number", "null"]},
    },
}


def _gradient_or_none(f: Expr, p) -> Jet2 | None:
    try:
        return eval_jet(f, p)
    except NondifferentiablePoint:
        return None


def verify_certificate(f: Expr, cert: SaddleCertificate, cfg: SearchConfig = DEFAULT_CONFIG) -> bool:
    """Independently re-check every claim a certificate makes."""
    p = cert.point
    for path in (cert.path_max, cert.path_min):
        c = path.center
        if math.hypot(float(c[0]) - float(p[0]), float(c[1]) - float(p[1])) >= cfg.transversal_tol:
            return False
    try:
        if not transversal(cert.path_max, cert.path_min, cfg.transversal_tol):
            return False
    except ValueError:
        return False
    rmax = classify_along(f, cert.path_max, _method_name(cert.report_max))
    rmin = classify_along(f, cert.path_min, _method_name(cert.report_min))
    if cert.strict:
        if rmax.kind is not ExtremumKind.STRICT_MAX or rmin.kind is not ExtremumKind.STRICT_MIN:
            return False
    else:
        if rmax.kind not in _MAX_LIKE or rmin.kind not in _MIN_LIKE:
            return False
    jet = _gradient_or_none(f, p)
    if jet is not None and not jet.gradient_norm < cfg.grad_tol:
        return False
    return True


def _method_name(rep: ExtremumReport) -> str:
    return "exact" if rep.method is Method.EXACT else "sampled"


_MAX_LIKE = (ExtremumKind.STRICT_MAX, ExtremumKind.MAX, ExtremumKind.CONSTANT)
_MIN_LIKE = (ExtremumKind.STRICT_MIN, ExtremumKind.MIN, ExtremumKind.CONSTANT)


# --------------------------------------------------------------------------
# Discriminant test


@dataclass(frozen=True)
class DiscriminantResult:
    outcome: DiscriminantOutcome
    discriminant: float | None
    jet: Jet2
    certificate: SaddleCertificate | None = None


def _unit(v) -> tuple[float, float]:
    n = math.hypot(float(v[0]), float(v[1]))
    return (float(v[0]) / n, float(v[1]) / n)


def discriminant_test(f: Expr, p, cfg: SearchConfig = DEFAULT_CONFIG) -> DiscriminantResult:
    """Second-derivative test with straight-line witnesses for the saddle case."""
    p = _as_point(p)
    jet = eval_jet(f, p)
    if jet.gradient_norm >= cfg.grad_tol:
        return DiscriminantResult(DiscriminantOutcome.NOT_CRITICAL, None, jet)
    q = jet.hessian_form()
    disc = q.det
    if disc > cfg.zero_band:
        outcome = DiscriminantOutcome.LOCAL_MIN if q.a > 0 else DiscriminantOutcome.LOCAL_MAX
        return DiscriminantResult(outcome, disc, jet)
    if disc >= -cfg.zero_band:
        return DiscriminantResult(DiscriminantOutcome.INCONCLUSIVE, disc, jet)

    exact = _point_exact(p)
    for d_max, d_min in _line_witnesses(q, exact):
        delta = cfg.delta
        for _ in range(3):
            path_max = make_line(p, d_max, delta)
            path_min = make_line(p, d_min, delta)
            rmax = classify_along(f, path_max)
            rmin = classify_along(f, path_min)
            if rmax.kind is ExtremumKind.STRICT_MAX and rmin.kind is ExtremumKind.STRICT_MIN:
                cert = SaddleCertificate(
                    p, path_max, rmax, path_min, rmin,
                    normalized_cross(path_max, path_min),
                    gradient_norm=jet.gradient_norm,
                )
                return DiscriminantResult(DiscriminantOutcome.STRICT_SADDLE, disc, jet, cert)
            delta = delta / 16
    log.warning("line witnesses at %s did not confirm numerically", p)
    return DiscriminantResult(DiscriminantOutcome.INCONCLUSIVE, disc, jet)


def _line_witnesses(q: QuadForm, exact: bool) -> list[tuple[tuple, tuple]]:
    """(max direction, min direction) pairs to try, orthogonal pair first.

    The orthogonal pair sits near the principal axes, where Q takes both
    signs; with an exact point it is a rational unit vector and its exact
    perpendicular.  The three-case witnesses follow as a fallback.
    """
    theta = 0.5 * math.atan2(2 * q.b, q.a - q.c)
    if exact:
        u = _direction(theta % math.pi)
    else:
        u = (math.cos(theta), math.sin(theta))
    v = _perp(u)
    pairs = []
    if evaluate(q, u) > 0 > evaluate(q, v):
        pairs.append((v, u))
    w = indefinite_witness(q)
    three_case = []
    for vec in (w.u_neg, w.u_pos):
        e = _unit(vec)
        three_case.append(tuple(Fraction(c) for c in e) if exact else e)
    pairs.append(tuple(three_case))
    return pairs


# --------------------------------------------------------------------------
# Path-family search


@dataclass(frozen=True)
class Candidate:
    index: int
    family: str
    path: ParametricPath
    report: ExtremumReport

    @property
    def rank(self) -> tuple:
        r = self.report
        return (
            0 if r.method is Method.EXACT else 1,
            0 if self.path.kind is PathKind.LINE else 1,
            r.degree if r.degree is not None else 0,
            -r.strength,
            self.index,
        )


def _direction(theta: float) -> tuple[Fraction, Fraction]:
    """A rational point on the unit circle within ~1e-8 of angle theta in [0, pi)."""
    tau = Fraction(math.tan(theta / 2)).limit_denominator(10**4)
    d = 1 + tau * tau
    return ((1 - tau * tau) / d, 2 * tau / d)


def _perp(u):
    return (-u[1], u[0])


def _scale(s, u):
    return (s * u[0], s * u[1])


def tangent_directions(f: Expr, p) -> list[tuple]:
    """Unit-ish directions along which the lowest-order part of f(p+h) - f(p) vanishes.

    Rational directions come back as exact (1, r) or (0, 1); irrational ones as
    float unit vectors.
    """
    if not (is_polynomial(f) and _point_exact(p)):
        return []
    inc = expand(f, p).drop_constant()
    if inc.is_zero():
        return []
    d = inc.lowest_degree
    if d < 2:
        return []
    form = inc.homogeneous_part(d)
    h = [form.terms.get((d - k, k), 0) for k in range(d + 1)]  # H(1, s) = sum h_k s^k
    dirs: list[tuple] = []
    if h[d] == 0:
        dirs.append((Fraction(0), Fraction(1)))
    while h and h[-1] == 0:
        h.pop()
    if len(h) < 2:
        return dirs
    roots = np.roots([float(c) for c in reversed(h)])
    seen: list[float] = []
    for r in roots:
        if abs(r.imag) > 1e-7 * (1 + abs(r.real)):
            continue
        s = float(r.real)
        if any(abs(s - t) < 1e-7 * (1 + abs(s)) for t in seen):
            continue
        seen.append(s)
        snapped = Fraction(s).limit_denominator(10**6)
        if abs(float(snapped) - s) < 1e-6 and sum(c * snapped**k for k, c in enumerate(h)) == 0:
            dirs.append((Fraction(1), snapped))
        else:
            n = math.hypot(1.0, s)
            dirs.append((1.0 / n, s / n))
    return dirs


def _enumerate(f: Expr, p, cfg: SearchConfig, include_parabolas: bool) -> Iterator[tuple[str, ParametricPath]]:
    """Candidate paths in a fixed order: grid lines, grid parabolas, tangent family."""
    grid = [_direction(k * math.pi / cfg.K) for k in range(cfg.K)]
    exact_p = _point_exact(p)

    def prep(u):
        return u if exact_p else (float(u[0]), float(u[1]))

    for u in grid:
        yield "line", make_line(p, prep(u), cfg.delta)
    if include_parabolas:
        for u in grid:
            for s in cfg.parabola_coeffs:
                for sgn in (1, -1):
                    v = _scale(sgn * s, _perp(u))
                    yield "parabola", make_parabola(p, prep(u), prep(v), cfg.delta)
    if not cfg.tangent_family:
        return
    for u in tangent_directions(f, p):
        yield "tangent-line", make_line(p, u, cfg.delta)
        if include_parabolas:
            for s in cfg.parabola_coeffs:
                for sgn in (1, -1):
                    s_ = sgn * s if is_exact(u[0]) else float(sgn * s)
                    yield "tangent-parabola", make_parabola(p, u, _scale(s_, _perp(u)), cfg.delta)


@dataclass
class SearchResult:
    certificate: SaddleCertificate | None
    candidates: list[Candidate]
    counts: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {"families": self.counts, "candidates": len(self.candidates)}


def _tally(cands: list[Candidate]) -> dict:
    counts: dict = {}
    for c in cands:
        fam = counts.setdefault(c.family, {"tried": 0})
        fam["tried"] += 1
        key = c.report.kind.value
        fam[key] = fam.get(key, 0) + 1
    return counts


def _pair(maxes: list[Candidate], mins: list[Candidate], tol: float):
    mins = sorted(mins, key=lambda c: c.rank)
    for cm in sorted(maxes, key=lambda c: c.rank):
        for cn in mins:
            if transversal(cm.path, cn.path, tol):
                return cm, cn
    return None


def survey_paths(f: Expr, p, cfg: SearchConfig = DEFAULT_CONFIG) -> SearchResult:
    """Classify every candidate path (no early exit); used for diagnostics."""
    p = _as_point(p)
    include = bool(cfg.parabola_coeffs)
    cands = [
        Candidate(i, fam, path, classify_along(f, path))
        for i, (fam, path) in enumerate(_enumerate(f, p, cfg, include))
    ]
    return SearchResult(None, cands, _tally(cands))


def search_saddle_paths(f: Expr, p, cfg: SearchConfig = DEFAULT_CONFIG) -> SearchResult:
    """Look for a transversal (strict max, strict min) pair among the candidate paths.

    Candidates are classified tier by tier (exact lines, exact parabolas,
    sampled paths) and the search stops at the first tier yielding a pair, so
    exact evidence beats sampled and lines beat parabolas.  Within a tier the
    strongest, lowest-order witnesses are preferred; ties go to enumeration
    order.
    """
    p = _as_point(p)
    include = bool(cfg.parabola_coeffs)
    paths = list(enumerate(_enumerate(f, p, cfg, include)))
    poly = is_polynomial(f)

    def tier_of(path: ParametricPath) -> int:
        if poly and path.exact:
            return 0 if path.kind is PathKind.LINE else 1
        return 2

    done: list[Candidate] = []
    for tier in (0, 1, 2):
        for i, (fam, path) in paths:
            if tier_of(path) == tier:
                done.append(Candidate(i, fam, path, classify_along(f, path)))
        maxes = [c for c in done if c.report.kind is ExtremumKind.STRICT_MAX]
        mins = [c for c in done if c.report.kind is ExtremumKind.STRICT_MIN]
        hit = _pair(maxes, mins, cfg.transversal_tol)
        if hit:
            return SearchResult(_certificate(f, p, *hit, strict=True), done, _tally(done))

    if cfg.allow_nonstrict:
        maxes = [c for c in done if c.report.kind in _MAX_LIKE]
        mins = [c for c in done if c.report.kind in _MIN_LIKE]
        hit = _pair(maxes, mins, cfg.transversal_tol)
        if hit:
            return SearchResult(_certificate(f, p, *hit, strict=False), done, _tally(done))
    return SearchResult(None, done, _tally(done))


def _certificate(f, p, cm: Candidate, cn: Candidate, strict: bool) -> SaddleCertificate:
    jet = _gradient_or_none(f, p)
    return SaddleCertificate(
        p, cm.path, cm.report, cn.path, cn.report,
        normalized_cross(cm.path, cn.path),
        strict=strict,
        gradient_norm=None if jet is None else jet.gradient_norm,
    )


# --------------------------------------------------------------------------
# Classical definition and sign refutation


@dataclass(frozen=True)
class ClassicalResult:
    outcome: ClassicalOutcome
    per_radius: tuple = ()  # (r, max value, min value)


def _margin(fp: float) -> float:
    return SAMPLE_MARGIN * max(1.0, abs(fp))


def classical_saddle_check(
    f: Expr,
    p,
    radii=(1e-1, 1e-2, 1e-3),
    samples_per_circle: int = 360,
    cfg: SearchConfig = DEFAULT_CONFIG,
) -> ClassicalResult:
    """Sampled test of "critical point that is not a local extremum"."""
    p = _as_point(p)
    jet = _gradient_or_none(f, p)
    if jet is None:
        return ClassicalResult(ClassicalOutcome.NOT_APPLICABLE)
    if jet.gradient_norm >= cfg.grad_tol:
        return ClassicalResult(ClassicalOutcome.NOT_CRITICAL)
    px, py = float(p[0]), float(p[1])
    fp = eval_value(f, (px, py))
    margin = _margin(fp)
    rows = []
    both_everywhere = True
    lo_all, hi_all = math.inf, -math.inf
    for r in radii:
        vals = []
        for j in range(samples_per_circle):
            a = 2 * math.pi * j / samples_per_circle
            vals.append(eval_value(f, (px + r * math.cos(a), py + r * math.sin(a))) - fp)
        hi, lo = max(vals), min(vals)
        rows.append((r, hi, lo))
        hi_all, lo_all = max(hi_all, hi), min(lo_all, lo)
        if not (hi > margin and lo < -margin):
            both_everywhere = False
    if both_everywhere:
        return ClassicalResult(ClassicalOutcome.CLASSICAL_SADDLE, tuple(rows))
    if lo_all >= -margin or hi_all <= margin:
        return ClassicalResult(ClassicalOutcome.LOCAL_EXTREMUM, tuple(rows))
    return ClassicalResult(ClassicalOutcome.INCONCLUSIVE, tuple(rows))


@dataclass(frozen=True)
class Refutation:
    """f - f(p) keeps one weak sign near p, so no strict max (sign=+1) or
    no strict min (sign=-1) exists along any path through p."""

    sign: int
    grade: str  # "exact" | "sampled"
    reason: str = "SignSemidefiniteNeighborhood"
    detail: str = ""


def _exact_sign_pattern(f: Expr, p) -> Refutation | None:
    if not (is_polynomial(f) and _point_exact(p)):
        return None
    inc = expand(f, p).drop_constant()
    if inc.is_zero():
        return Refutation(1, "exact", detail="f is constant")
    if not all(i % 2 == 0 and j % 2 == 0 for i, j in inc.terms):
        return None
    signs = {1 if c > 0 else -1 for c in inc.terms.values()}
    if len(signs) != 1:
        return None
    return Refutation(signs.pop(), "exact", detail="sum of even-power monomials of one sign")


def _neighborhood_samples(p, delta: float, n: int) -> Iterator[tuple[float, float]]:
    px, py = float(p[0]), float(p[1])
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            if i or j:
                yield (px + delta * i / n, py + delta * j / n)
    for k in range(12):
        r = delta * 2.0**-k
        for j in range(72):
            a = 2 * math.pi * j / 72
            yield (px + r * math.cos(a), py + r * math.sin(a))


def refute_strict_saddle_by_sign(f: Expr, p, cfg: SearchConfig = DEFAULT_CONFIG) -> Refutation | None:
    p = _as_point(p)
    exact = _exact_sign_pattern(f, p)
    if exact is not None:
        return exact
    fp = eval_value(f, p)
    margin = _margin(fp)
    nonneg = nonpos = True
    for q in _neighborhood_samples(p, float(cfg.delta), cfg.refute_grid):
        try:
            d = eval_value(f, q) - fp
        except DomainError:
            continue
        nonneg &= d >= -margin
        nonpos &= d <= margin
        if not (nonneg or nonpos):
            return None
    if nonneg:
        return Refutation(1, "sampled", detail="f - f(p) >= 0 on the sampled neighbourhood")
    return Refutation(-1, "sampled", detail="f - f(p) <= 0 on the sampled neighbourhood")


# --------------------------------------------------------------------------
# Pipeline


@dataclass
class Classification:
    verdict: Verdict
    point: tuple
    differentiable: bool
    certificate: SaddleCertificate | None = None
    gradient: tuple | None = None
    discriminant: float | None = None
    discriminant_outcome: DiscriminantOutcome | None = None
    hessian: QuadForm | None = None
    refutation: Refutation | None = None
    classical: ClassicalResult | None = None
    search: dict | None = None
    route: str = ""

    @property
    def definitive(self) -> bool:
        return self.verdict is not Verdict.UNKNOWN

    def to_json(self) -> dict:
        out: dict = {
            "verdict": self.verdict.value,
            "point": [float(c) for c in self.point],
            "differentiable": self.differentiable,
            "route": self.route,
            "discriminant": self.discriminant,
        }
        if self.discriminant_outcome is not None:
            out["discriminant_test"] = self.discriminant_outcome.value
        if self.gradient is not None:
            out["gradient"] = list(self.gradient)
        if self.hessian is not None:
            out["hessian"] = [self.hessian.a, self.hessian.b, self.hessian.c]
        if self.refutation is not None:
            r = self.refutation
            out["refutation"] = {"reason": r.reason, "sign": r.sign, "grade": r.grade, "detail": r.detail}
        if self.classical is not None:
            out["classical"] = self.classical.outcome.value
        if self.search is not None:
            out["search"] = self.search
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def classify_point(f: Expr, p, cfg: SearchConfig = DEFAULT_CONFIG) -> Classification:
    p = _as_point(p)
    jet = _gradient_or_none(f, p)
    differentiable = jet is not None
    base = dict(point=p, differentiable=differentiable)
    if jet is not None:
        base.update(gradient=jet.grad, hessian=jet.hessian_form())
        if jet.gradient_norm >= cfg.grad_tol:
            return Classification(Verdict.NOT_CRITICAL, route="gradient", **base)
        dt = discriminant_test(f, p, cfg)
        base["discriminant"] = dt.discriminant
        base["discriminant_outcome"] = dt.outcome
        if dt.outcome is DiscriminantOutcome.STRICT_SADDLE:
            return Classification(
                Verdict.STRICT_SADDLE, certificate=dt.certificate, route="discriminant", **base
            )
        if dt.outcome is DiscriminantOutcome.LOCAL_MIN:
            return Classification(Verdict.LOCAL_MIN, route="discriminant", **base)
        if dt.outcome is DiscriminantOutcome.LOCAL_MAX:
            return Classification(Verdict.LOCAL_MAX, route="discriminant", **base)

    ref = refute_strict_saddle_by_sign(f, p, cfg)
    if ref is not None:
        return Classification(Verdict.REFUTED_SADDLE, refutation=ref, route="sign", **base)
    res = search_saddle_paths(f, p, cfg)
    if res.certificate is not None:
        return Classification(
            Verdict.STRICT_SADDLE, certificate=res.certificate, search=res.summary(),
            route="path-search", **base,
        )
    if differentiable:
        cl = classical_saddle_check(f, p, cfg.classical_radii, cfg.samples_per_circle, cfg)
        if cl.outcome is ClassicalOutcome.CLASSICAL_SADDLE:
            return Classification(
                Verdict.CLASSICAL_SADDLE_ONLY, classical=cl, search=res.summary(),
                route="classical", **base,
            )
    return Classification(Verdict.UNKNOWN, search=res.summary(), route="exhausted", **base)


# --------------------------------------------------------------------------
# Critical points


@dataclass(frozen=True)
class CriticalPoint:
    location: tuple
    gradient_norm: float
    discriminant: float
    hessian: QuadForm


def _newton(f: Expr, seed, tol: float, max_iter: int):
    x = np.array(seed, dtype=float)
    for _ in range(max_iter):
        j = eval_jet(f, x)
        g = np.array(j.grad)
        gn = float(np.linalg.norm(g))
        if gn == 0:
            return x, gn
        h = np.array([[j.fxx, j.fxy], [j.fxy, j.fyy]])
        hscale = max(float(np.abs(h).max()), 1e-300)
        if abs(np.linalg.det(h)) > 1e-14 * hscale * hscale:
            step = np.linalg.solve(h, g)
            x = x - step
            # keep refining below tol: multiple roots converge only linearly
            if gn < tol and np.linalg.norm(step) <= 1e-14 * (1 + np.linalg.norm(x)):
                break
            continue
        if gn < tol:
            break
        # singular Jacobian: damped descent on |grad f|^2 / 2, whose gradient is H g
        d = -(h @ g)
        if not np.any(d):
            return None
        step = 1.0
        for _ in range(40):
            cand = x + step * d
            if np.linalg.norm(eval_jet(f, cand).grad) < gn:
                x = cand
                break
            step /= 2
        else:
            return None
    j = eval_jet(f, x)
    gn = j.gradient_norm
    return (x, gn) if gn < tol else None


def _snap(f: Expr, x) -> tuple:
    """Replace a converged float location by a nearby rational one whose
    exact gradient vanishes; polynomials only."""
    if not is_polynomial(f):
        return (float(x[0]), float(x[1]))
    cand = tuple(Fraction(float(c)).limit_denominator(10**6) for c in x)
    if max(abs(float(c) - float(v)) for c, v in zip(cand, x)) > 1e-8:
        return (float(x[0]), float(x[1]))
    inc = expand(f, cand)
    if inc.terms.get((1, 0), 0) == 0 and inc.terms.get((0, 1), 0) == 0:
        return cand
    return (float(x[0]), float(x[1]))


def find_critical_points(
    f: Expr, region, grid_n: int = 9, newton_tol: float = GRAD_TOL, max_iter: int = 50
) -> list[CriticalPoint]:
    """Newton's method on grad f = 0 from a grid of seeds over ``region``."""
    xmin, xmax, ymin, ymax = map(float, region)
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    slack = 1e-9 * max(xmax - xmin, ymax - ymin, 1.0)
    found: list[tuple[np.ndarray, float]] = []
    for i in range(grid_n):
        for j in range(grid_n):
            seed = (
                xmin + (xmax - xmin) * i / (grid_n - 1),
                ymin + (ymax - ymin) * j / (grid_n - 1),
            )
            try:
                out = _newton(f, seed, newton_tol, max_iter)
            except (NondifferentiablePoint, DomainError, OverflowError, np.linalg.LinAlgError):
                continue
            if out is None:
                continue
            x, gn = out
            if not np.all(np.isfinite(x)):
                continue
            if not (xmin - slack <= x[0] <= xmax + slack and ymin - slack <= x[1] <= ymax + slack):
                continue
            found.append((x, gn))

    found.sort(key=lambda t: t[1])
    kept: list[tuple[np.ndarray, float]] = []
    for x, gn in found:
        if all(np.linalg.norm(x - k) > 1e-6 for k, _ in kept):
            kept.append((x, gn))

    points = []
    for x, gn in kept:
        loc = _snap(f, x)
        j = eval_jet(f, loc)
        q = j.hessian_form()
        points.append(CriticalPoint(loc, j.gradient_norm, q.det, q))
    points.sort(key=lambda c: (float(c.location[0]), float(c.location[1])))
    return points
