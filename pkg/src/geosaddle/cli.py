"""Command-line front end: ``geosaddle classify|critical-points|oracle-suite|plot``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import render
from .certify import (
    Classification,
    SearchConfig,
    Verdict,
    classify_point,
    find_critical_points,
)
from .errors import SaddleError
from .expr import parse

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_UNKNOWN = 3


class UsageError(Exception):
    pass


def _point(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"point must be x,y: {text!r}")
    try:
        return tuple(Fraction(s.strip()) for s in parts)
    except (ValueError, ZeroDivisionError) as err:
        raise UsageError(f"bad point {text!r}: {err}") from None


def _region(text: str):
    try:
        return render.parse_region(text)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _coeffs(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(Fraction(s.strip()) for s in text.split(","))
    except (ValueError, ZeroDivisionError) as err:
        raise UsageError(f"bad parabola coefficients: {err}") from None


def _config(args) -> SearchConfig:
    try:
        return SearchConfig(
            K=args.K,
            parabola_coeffs=_coeffs(args.parabola_coeffs),
            delta=Fraction(args.delta),
        )
    except (ValueError, ZeroDivisionError) as err:
        raise UsageError(str(err)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def classification_text(r: Classification) -> str:
    lines = [
        f"verdict: {r.verdict.value}",
        f"point: {_fmt(r.point[0])},{_fmt(r.point[1])}",
        f"differentiable: {str(r.differentiable).lower()}",
        f"route: {r.route}",
    ]
    if r.gradient is not None:
        lines.append(f"gradient: {_fmt(r.gradient[0])},{_fmt(r.gradient[1])}")
    if r.hessian is not None:
        q = r.hessian
        lines.append(f"hessian: {_fmt(q.a)},{_fmt(q.b)},{_fmt(q.c)}")
    if r.discriminant is not None:
        lines.append(f"discriminant: {_fmt(r.discriminant)}")
    if r.discriminant_outcome is not None:
        lines.append(f"discriminant_test: {r.discriminant_outcome.value}")
    if r.refutation is not None:
        lines.append(f"refutation: {r.refutation.reason} ({r.refutation.grade})")
    if r.classical is not None:
        lines.append(f"classical: {r.classical.outcome.value}")
    c = r.certificate
    if c is not None:
        lines.append(f"grade: {c.grade}")
        lines.append(f"cross: {_fmt(c.cross)}")
        lines.append(f"max_path: {c.path_max.describe()} [{c.report_max.kind.value}]")
        lines.append(f"min_path: {c.path_min.describe()} [{c.report_min.kind.value}]")
    return "\n".join(lines) + "\n"


def _exit_for(v: Verdict) -> int:
    return EXIT_UNKNOWN if v is Verdict.UNKNOWN else EXIT_OK


def cmd_classify(args) -> int:
    f = parse(args.f)
    p = _point(args.at)
    r = classify_point(f, p, _config(args))
    if args.json:
        _emit(json.dumps(r.to_json(), indent=2) + "\n", args.out)
    else:
        _emit(classification_text(r), args.out)
    if args.png:
        if args.region:
            region = _region(args.region)
        else:
            x0, y0 = float(p[0]), float(p[1])
            region = (x0 - 1, x0 + 1, y0 - 1, y0 + 1)
        grid = render.sample_grid(f, region, args.nx, args.ny)
        render.save_figure(grid, args.png, certificate=r.certificate, title=f"{args.f}: {r.verdict.value}")
    return _exit_for(r.verdict)


def cmd_critical_points(args) -> int:
    f = parse(args.f)
    region = _region(args.region)
    cfg = _config(args)
    pts = find_critical_points(f, region, grid_n=args.seeds)
    rows = []
    for cp in pts:
        r = classify_point(f, cp.location, cfg)
        rows.append((cp, r))
    if args.json:
        doc = [
            {
                "point": [float(c) for c in cp.location],
                "exact_point": [_fmt(c) for c in cp.location],
                "gradient_norm": cp.gradient_norm,
                "discriminant": cp.discriminant,
                "hessian": [cp.hessian.a, cp.hessian.b, cp.hessian.c],
                "verdict": r.verdict.value,
            }
            for cp, r in rows
        ]
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        out = ["x\ty\tgradient_norm\tdiscriminant\tverdict"]
        for cp, r in rows:
            x, y = cp.location
            out.append(f"{_fmt(x)}\t{_fmt(y)}\t{cp.gradient_norm:.3g}\t{_fmt(cp.discriminant)}\t{r.verdict.value}")
        _emit("\n".join(out) + "\n", args.out)
    return EXIT_OK


def run_oracle_suite(cfg: SearchConfig | None = None, names=None):
    from .oracle import catalog, compare

    cfg = cfg or SearchConfig()
    rows = []
    for entry in catalog():
        if names and entry.name not in names:
            continue
        r = classify_point(entry.f, entry.point, cfg)
        rows.append((entry, r, compare(entry, r)))
    return rows


def cmd_oracle_suite(args) -> int:
    from .oracle import Match

    rows = run_oracle_suite(_config(args), set(args.only.split(",")) if args.only else None)
    fails = sum(m is Match.FAIL for _, _, m in rows)
    if args.json:
        doc = {
            "entries": [
                {**e.to_json(), "verdict": r.verdict.value, "match": m.value,
                 "certificate": r.certificate.to_json() if r.certificate else None}
                for e, r, m in rows
            ],
            "fail": fails,
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        out = ["name\texpected\tverdict\tmatch\tgrade\tmax_path_kind"]
        for e, r, m in rows:
            c = r.certificate
            grade = c.grade if c else "-"
            kind = c.path_max.kind.value if c else "-"
            out.append(f"{e.name}\t{e.expected.value}\t{r.verdict.value}\t{m.value}\t{grade}\t{kind}")
        counts = {k: sum(m.value == k for _, _, m in rows) for k in ("PASS", "FAIL", "UNKNOWN-ALLOWED")}
        out.append("# " + " ".join(f"{k}={v}" for k, v in counts.items()))
        _emit("\n".join(out) + "\n", args.out)
    return EXIT_OK if fails == 0 else 1


def cmd_plot(args) -> int:
    f = parse(args.f)
    region = _region(args.region)
    grid = render.sample_grid(f, region, args.nx, args.ny)
    try:
        levels = [float(s) for s in args.levels.split(",") if s.strip()]
    except ValueError as err:
        raise UsageError(f"bad levels: {err}") from None
    targets = {"csv": args.csv, "mesh": args.mesh, "svg": args.svg, "png": args.png, "curves": args.curves}
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        defaults = {"csv": "grid.csv", "mesh": "surface.mesh", "svg": "contours.svg",
                    "png": "figure.png", "curves": "level_curves.csv"}
        for k, name in defaults.items():
            targets[k] = targets[k] or os.path.join(args.out, name)
    if not any(targets.values()):
        raise UsageError("nothing to write: give --out or one of --csv/--mesh/--svg/--png/--curves")
    curves = render.level_curves(grid, levels, f) if levels else {}
    report = []
    if targets["csv"]:
        _write(targets["csv"], render.grid_csv(grid))
        report.append(f"csv: {targets['csv']}")
    if targets["mesh"]:
        text = render.surface_mesh(grid)
        _write(targets["mesh"], text)
        v, fc = render.mesh_counts(text)
        report.append(f"mesh: {targets['mesh']} vertices={v} faces={fc}")
    if targets["curves"]:
        _write(targets["curves"], render.polylines_csv(curves))
        report.append(f"curves: {targets['curves']}")
    if targets["svg"]:
        _write(targets["svg"], render.contours_svg(grid, curves))
        report.append(f"svg: {targets['svg']} polylines={sum(len(v) for v in curves.values())}")
    if targets["png"]:
        cert = None
        if args.at:
            cert = classify_point(f, _point(args.at), _config(args)).certificate
        render.save_figure(grid, targets["png"], curves=curves or None, certificate=cert, title=args.f)
        report.append(f"png: {targets['png']}")
    sys.stdout.write("\n".join(report) + "\n")
    return EXIT_OK


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geosaddle", description="Classify and certify saddle points of f(x, y).")
    sub = ap.add_subparsers(dest="command", required=True)

    def engine(p):
        p.add_argument("--K", type=int, default=64, help="number of sampled directions")
        p.add_argument("--parabola-coeffs", default="0.25,0.5,1,1.5,2,3",
                       help="curvatures of trial parabolas; empty for lines only")
        p.add_argument("--delta", default="0.5", help="path half-length")
        p.add_argument("--json", action="store_true")
        p.add_argument("--out", help="output file (directory for plot)")

    p = sub.add_parser("classify", help="classify one point")
    p.add_argument("--f", required=True)
    p.add_argument("--at", required=True, help="x,y")
    p.add_argument("--png", help="also write a figure with the certificate paths")
    p.add_argument("--region", help="figure region xmin,xmax,ymin,ymax")
    p.add_argument("--nx", type=int, default=65)
    p.add_argument("--ny", type=int, default=65)
    engine(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("critical-points", help="find and classify critical points in a region")
    p.add_argument("--f", required=True)
    p.add_argument("--region", required=True)
    p.add_argument("--seeds", type=int, default=9, help="Newton seeds per axis")
    engine(p)
    p.set_defaults(func=cmd_critical_points)

    p = sub.add_parser("oracle-suite", help="run the analytic catalog")
    p.add_argument("--only", help="comma-separated entry names")
    engine(p)
    p.set_defaults(func=cmd_oracle_suite)

    p = sub.add_parser("plot", help="write grid, mesh and contour files")
    p.add_argument("--f", required=True)
    p.add_argument("--region", default="-1,1,-1,1")
    p.add_argument("--nx", type=int, default=65)
    p.add_argument("--ny", type=int, default=65)
    p.add_argument("--levels", default="0", help="comma-separated contour levels")
    p.add_argument("--csv")
    p.add_argument("--mesh")
    p.add_argument("--svg")
    p.add_argument("--png")
    p.add_argument("--curves", help="level-curve polylines as CSV")
    p.add_argument("--at", help="overlay the certificate at x,y on the figure")
    engine(p)
    p.set_defaults(func=cmd_plot)
    return ap


_VALUE_FLAGS = {"--at", "--region", "--levels", "--f"}


def _join_values(argv: list[str]) -> list[str]:
    # values such as "-2,2,-2,2" would otherwise be read as options
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_values(argv))
    try:
        return args.func(args)
    except (SaddleError, UsageError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
