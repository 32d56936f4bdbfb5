"""SVG figures of rank-2 G-fans and scattering diagrams via matplotlib's SVG backend.

Output is byte-stable: fixed figure size, fixed hash salt, no date metadata
and text kept as ``<text>`` elements.  The viewBox is always
``0 0 432 432`` (6 x 6 inches at 72 points per inch).
"""

from __future__ import annotations

import io
from fractions import Fraction
from typing import Sequence

import matplotlib

matplotlib.use("svg")

from matplotlib.backends.backend_svg import FigureCanvasSVG  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from .errors import UnsupportedRank  # noqa: E402
from .fan import GFan, angle_key  # noqa: E402
from .poly import format_monomial  # noqa: E402
from .scattering import ScatteringDiagram, WallFunction, ray_table  # noqa: E402

FIGSIZE = (6.0, 6.0)
VIEWBOX = "0 0 432 432"
RC = {"svg.hashsalt": "clusterscatter", "svg.fonttype": "none", "font.size": 8}


def _figure() -> tuple[Figure, object]:
    fig = Figure(figsize=FIGSIZE)
    FigureCanvasSVG(fig)
    ax = fig.add_axes((0.05, 0.05, 0.9, 0.9))
    ax.set_xlim(-1.25, 1.25)
    ax.set_ylim(-1.25, 1.25)
    ax.set_aspect("equal")
    ax.axis("off")
    return fig, ax


def _unit(v: Sequence) -> tuple[float, float]:
    x, y = float(v[0]), float(v[1])
    r = (x * x + y * y) ** 0.5
    return x / r, y / r


def _to_svg(fig: Figure) -> str:
    buf = io.StringIO()
    with matplotlib.rc_context(RC):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def _matrix_label(g) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in g) + "]"


def render_fan(fan: GFan) -> str:
    """Rays of every G-cone, with each cone labeled by its G-matrix at the bisector."""
    if fan.initial.n != 2:
        raise UnsupportedRank("fan rendering needs rank 2")
    fig, ax = _figure()
    for r in sorted(fan.rays, key=angle_key):
        ux, uy = _unit(r)
        ax.plot([0, ux], [0, uy], color="black", linewidth=1.0)
        ax.annotate(f"({r[0]},{r[1]})", (1.08 * ux, 1.08 * uy), ha="center", va="center", fontsize=6)
    for g in fan.matrices():
        a, b = _unit((g[0][0], g[1][0])), _unit((g[0][1], g[1][1]))
        mx, my = a[0] + b[0], a[1] + b[1]
        norm = (mx * mx + my * my) ** 0.5 or 1.0
        ax.fill([0, a[0], b[0]], [0, a[1], b[1]], color="0.85", linewidth=0)
        ax.annotate(_matrix_label(g), (0.55 * mx / norm, 0.55 * my / norm), ha="center", va="center", fontsize=5)
    status = "complete" if fan.complete else "incomplete"
    ax.set_title(f"{len(fan.cones)} cones, {status}")
    return _to_svg(fig)


def wall_label(f: WallFunction, ell: int) -> str:
    """``1 + yhat^(1,1) + ...`` truncated at ``ell``."""
    parts = ["1"]
    for j, c in enumerate(f.truncate(ell).coeffs, 1):
        if not c:
            continue
        mono = format_monomial(tuple(j * x for x in f.direction), "yhat")
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts)


def render_scatter(d: ScatteringDiagram, ell: int | None = None) -> str:
    """Walls as rays from the origin: incoming solid, outgoing dashed, labeled by their functions."""
    if d.n != 2:
        raise UnsupportedRank("scattering rendering needs rank 2")
    ell = d.ell if ell is None else ell
    fig, ax = _figure()
    incoming_rays = set()
    for w in d.walls:
        if w.incoming:
            incoming_rays.update(tuple(int(x) for x in g) for g in w.support)
    table = ray_table(d, ell)
    for r in sorted(table, key=angle_key):
        ux, uy = _unit(r)
        style = "-" if r in incoming_rays else "--"
        ax.plot([0, ux], [0, uy], color="black", linestyle=style, linewidth=1.0)
        label = wall_label(table[r], min(ell, 4))
        ax.annotate(label, (0.8 * ux, 0.8 * uy), ha="center", va="bottom", fontsize=5, rotation=0)
    ax.set_title(f"B = {_matrix_label(d.initial.b)}, truncation {ell}")
    return _to_svg(fig)


def point_label(q: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in q) + ")"


__all__ = ["FIGSIZE", "VIEWBOX", "render_fan", "render_scatter", "wall_label"]
