"""Grid sampling, surface meshes, level curves and figure output."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .expr import Expr, eval_value


@dataclass(frozen=True)
class Grid:
    """Uniform samples of f; ``values[j, i]`` is f(xs[i], ys[j]), NaN if missing."""

    region: tuple[float, float, float, float]
    nx: int
    ny: int
    values: np.ndarray

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.region[0], self.region[1], self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.region[2], self.region[3], self.ny)

    @property
    def missing(self) -> np.ndarray:
        return ~np.isfinite(self.values)

    def flat(self) -> list[float]:
        """Row-major values, y outer and x inner."""
        return [float(v) for v in self.values.ravel()]


def parse_region(text: str) -> tuple[float, float, float, float]:
    parts = [float(s) for s in text.split(",")]
    if len(parts) != 4:
        raise ValueError("region must be xmin,xmax,ymin,ymax")
    xmin, xmax, ymin, ymax = parts
    if not (xmin < xmax and ymin < ymax):
        raise ValueError("region must have xmin < xmax and ymin < ymax")
    return xmin, xmax, ymin, ymax


def sample_grid(f: Expr, region, nx: int, ny: int) -> Grid:
    if nx < 2 or ny < 2:
        raise ValueError("nx and ny must be at least 2")
    region = tuple(float(r) for r in region)
    xs = np.linspace(region[0], region[1], nx)
    ys = np.linspace(region[2], region[3], ny)
    vals = np.full((ny, nx), np.nan)
    for j, y in enumerate(ys):
        for i, x in enumerate(xs):
            try:
                v = eval_value(f, (float(x), float(y)))
            except (DomainError, OverflowError, ValueError):
                continue
            if math.isfinite(v):
                vals[j, i] = v
    return Grid(region, nx, ny, vals)


def surface_mesh(grid: Grid) -> str:
    """Plain-text triangle mesh: ``v x y z`` lines then 1-indexed ``f i j k`` lines.

    Missing samples get no vertex; faces touching them are dropped and the
    remaining vertices are numbered consecutively.
    """
    xs, ys, vals = grid.xs, grid.ys, grid.values
    index = {}
    out = io.StringIO()
    for j in range(grid.ny):
        for i in range(grid.nx):
            z = vals[j, i]
            if not math.isfinite(z):
                continue
            index[(i, j)] = len(index) + 1
            out.write(f"v {xs[i]!r} {ys[j]!r} {float(z)!r}\n")
    for j in range(grid.ny - 1):
        for i in range(grid.nx - 1):
            a, b = index.get((i, j)), index.get((i + 1, j))
            c, d = index.get((i + 1, j + 1)), index.get((i, j + 1))
            if None in (a, b, c, d):
                continue
            out.write(f"f {a} {b} {c}\nf {a} {c} {d}\n")
    return out.getvalue()


def mesh_counts(text: str) -> tuple[int, int]:
    verts = faces = 0
    for line in text.splitlines():
        if line.startswith("v "):
            verts += 1
        elif line.startswith("f "):
            faces += 1
    return verts, faces


# Marching squares.  Corners are numbered 0..3 counterclockwise from the
# lower left; edges 0..3 are bottom, right, top, left.
_EDGE_CORNERS = ((0, 1), (1, 2), (2, 3), (3, 0))
_CASES = {
    1: ((3, 0),), 2: ((0, 1),), 3: ((3, 1),), 4: ((1, 2),),
    6: ((0, 2),), 7: ((3, 2),), 8: ((2, 3),), 9: ((0, 2),),
    11: ((1, 2),), 12: ((1, 3),), 13: ((0, 1),), 14: ((3, 0),),
}


def _cell_segments(corners, vals, level, center):
    """Segments of one cell as pairs of points."""
    code = sum(1 << k for k, v in enumerate(vals) if v > level)
    if code in (0, 15):
        return []
    if code in (5, 10):
        # saddle cell: the center value decides which corners connect
        high_center = center > level
        # a high center joins the high corners, so the low ones are cut off
        cut_low_13 = (code == 5) == high_center
        pairs = ((0, 1), (2, 3)) if cut_low_13 else ((3, 0), (1, 2))
    else:
        pairs = _CASES[code]
    segs = []
    for e1, e2 in pairs:
        segs.append((_crossing(corners, vals, level, e1), _crossing(corners, vals, level, e2)))
    return segs


def _crossing(corners, vals, level, edge):
    a, b = _EDGE_CORNERS[edge]
    va, vb = vals[a], vals[b]
    s = 0.5 if vb == va else (level - va) / (vb - va)
    (xa, ya), (xb, yb) = corners[a], corners[b]
    return (xa + s * (xb - xa), ya + s * (yb - ya))


def _stitch(segments, tol):
    """Join segments sharing endpoints into polylines."""

    def key(pt):
        return (round(pt[0] / tol), round(pt[1] / tol))

    # a level passing exactly through a sample yields degenerate pieces
    segments = [(p, q) for p, q in segments if key(p) != key(q)]
    ends: dict = {}
    for n, (p, q) in enumerate(segments):
        ends.setdefault(key(p), []).append((n, 0))
        ends.setdefault(key(q), []).append((n, 1))
    used = [False] * len(segments)

    def extend(line):
        while True:
            tip = key(line[-1])
            nxt = None
            for n, side in ends.get(tip, ()):
                if not used[n]:
                    nxt = (n, side)
                    break
            if nxt is None:
                return
            n, side = nxt
            used[n] = True
            line.append(segments[n][1 - side])

    lines = []
    for n, (p, q) in enumerate(segments):
        if used[n]:
            continue
        used[n] = True
        line = [p, q]
        extend(line)
        line.reverse()
        extend(line)
        lines.append(line)
    return lines


def level_curves(grid: Grid, levels, f: Expr | None = None) -> dict[float, list[list[tuple[float, float]]]]:
    """Polylines of ``{f = level}`` for each level.

    Ambiguous cells are resolved by the value at the cell center: f evaluated
    there when ``f`` is given, the mean of the four corners otherwise.
    Cells with a missing corner are skipped.
    """
    xs, ys, vals = grid.xs, grid.ys, grid.values
    tol = 1e-9 * max(xs[-1] - xs[0], ys[-1] - ys[0])
    out = {}
    for level in levels:
        level = float(level)
        segs = []
        for j in range(grid.ny - 1):
            for i in range(grid.nx - 1):
                cv = (vals[j, i], vals[j, i + 1], vals[j + 1, i + 1], vals[j + 1, i])
                if not all(math.isfinite(v) for v in cv):
                    continue
                corners = ((xs[i], ys[j]), (xs[i + 1], ys[j]), (xs[i + 1], ys[j + 1]), (xs[i], ys[j + 1]))
                center = sum(cv) / 4
                code = sum(1 << k for k, v in enumerate(cv) if v > level)
                if f is not None and code in (5, 10):
                    try:
                        center = eval_value(f, ((xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2))
                    except DomainError:
                        pass
                segs.extend(_cell_segments(corners, cv, level, center))
        out[level] = [
            [(float(x), float(y)) for x, y in line] for line in _stitch(segs, tol)
        ]
    return out


def grid_csv(grid: Grid) -> str:
    out = io.StringIO()
    out.write("x,y,f\n")
    for j, y in enumerate(grid.ys):
        for i, x in enumerate(grid.xs):
            v = grid.values[j, i]
            out.write(f"{x!r},{y!r},{float(v)!r}\n" if math.isfinite(v) else f"{x!r},{y!r},\n")
    return out.getvalue()


def polylines_csv(curves) -> str:
    out = io.StringIO()
    out.write("level,polyline,x,y\n")
    for level, lines in curves.items():
        for k, line in enumerate(lines):
            for x, y in line:
                out.write(f"{level!r},{k},{x!r},{y!r}\n")
    return out.getvalue()


def contours_svg(grid: Grid, curves, size: int = 400) -> str:
    xmin, xmax, ymin, ymax = grid.region
    sx = size / (xmax - xmin)
    sy = size / (ymax - ymin)

    def pt(x, y):
        return f"{(x - xmin) * sx:.3f},{(ymax - y) * sy:.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    for level, lines in curves.items():
        for line in lines:
            d = "M " + " L ".join(pt(x, y) for x, y in line)
            parts.append(f'<path d="{d}" fill="none" stroke="black" stroke-width="1" data-level="{level}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _path_points(path, n=101):
    d = float(path.delta)
    ts = np.linspace(-d, d, n)
    return np.array([[float(c) for c in path(t)] for t in ts])


def save_figure(grid: Grid, filename, curves=None, certificate=None, title: str | None = None) -> None:
    """Surface plot and contour panel written as an image file.

    When a certificate is given its two paths are drawn over the contours.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs, ys = np.meshgrid(grid.xs, grid.ys)
    z = np.ma.masked_invalid(grid.values)
    fig = plt.figure(figsize=(10, 4.5))
    ax3 = fig.add_subplot(1, 2, 1, projection="3d")
    ax3.plot_surface(xs, ys, z, cmap="viridis", linewidth=0, antialiased=True)
    ax3.set_xlabel("x")
    ax3.set_ylabel("y")
    ax2 = fig.add_subplot(1, 2, 2)
    if curves:
        for level, lines in curves.items():
            for line in lines:
                arr = np.asarray(line)
                ax2.plot(arr[:, 0], arr[:, 1], color="0.3", lw=0.8)
    else:
        ax2.contour(xs, ys, z, levels=15, cmap="viridis", linewidths=0.8)
    if certificate is not None:
        for path, colour, label in (
            (certificate.path_max, "tab:red", "max path"),
            (certificate.path_min, "tab:blue", "min path"),
        ):
            pts = _path_points(path)
            ax2.plot(pts[:, 0], pts[:, 1], color=colour, lw=2, label=label)
        ax2.plot(*[float(c) for c in certificate.point], "ko")
        ax2.legend(loc="upper right", fontsize=8)
    ax2.set_xlim(grid.region[0], grid.region[1])
    ax2.set_ylim(grid.region[2], grid.region[3])
    ax2.set_aspect("equal")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(filename, dpi=100)
    plt.close(fig)
