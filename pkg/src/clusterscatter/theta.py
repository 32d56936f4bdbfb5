"""Broken lines and theta functions on rank-2 consistent scattering diagrams.

Lines are enumerated backwards from the endpoint: walking along ``+m`` from
``Q``, every wall hit is either passed straight or bent at, and a bend by
``s`` replaces ``m`` with ``m - s B n0``.  A candidate is complete when the
backward ray escapes to infinity carrying ``x^{m0}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvariantViolation, UnsupportedRank
from .fan import cross
from .matrix import ExchangeMatrix, mat_vec
from .scattering import (
    ScatteringDiagram,
    TruncatedSeries,
    WallFunction,
    degree,
    n0_prime,
    pair_int,
    ray_table,
    series_power,
)

Vector = tuple[int, ...]
Point = tuple[Fraction, Fraction]

PERTURBATION = (Fraction(1, 1009), Fraction(1, 1013))
MAX_RETRIES = 3


class NonGenericEndpoint(ValueError):
    """The endpoint lies on a wall or a broken line meets the singular locus."""


@dataclass(frozen=True)
class Bend:
    """A bend at ``point`` on the wall ray ``ray``; ``coefficient`` is the chosen term."""

    point: Point
    ray: Vector
    s: int
    coefficient: int


@dataclass(frozen=True)
class BrokenLine:
    """A broken line for ``m0`` ending at ``endpoint``.

    ``exponents`` are the monomial exponents ``m_0, ..., m_r`` on successive
    segments in forward order; the velocity on segment ``j`` is ``-exponents[j]``.
    """

    m0: Vector
    endpoint: Point
    exponents: tuple[Vector, ...]
    bends: tuple[Bend, ...]
    coefficient: int
    degree_vector: Vector

    @property
    def final_exponent(self) -> Vector:
        return self.exponents[-1]


@dataclass
class ThetaResult:
    series: TruncatedSeries
    lines: list[BrokenLine]
    endpoint: Point


def _as_point(q: Sequence) -> Point:
    return (Fraction(q[0]), Fraction(q[1]))


def _on_ray(p: Point, r: Vector) -> bool:
    return cross(p, r) == 0 and p[0] * r[0] + p[1] * r[1] > 0


def _next_hit(table: dict[Vector, WallFunction], p: Point, m: Vector) -> tuple[Fraction, Vector] | None:
    """First wall ray met by ``p + t m`` with ``t > 0``."""
    best = None
    for r in table:
        den = cross(m, r)
        if den == 0:
            if cross(p, r) == 0 and p[0] * r[0] + p[1] * r[1] >= 0:
                raise NonGenericEndpoint("segment runs inside a wall")
            continue
        t = -Fraction(cross(p, r)) / den
        if t <= 0:
            continue
        u = Fraction(cross(p, m)) / cross(r, m)
        if u < 0:
            continue
        if u == 0:
            raise NonGenericEndpoint("broken line passes through the origin")
        if best is None or t < best[0]:
            best = (t, r)
        elif t == best[0]:
            raise NonGenericEndpoint("two walls met at one point")
    return best


def _enumerate(
    b0: ExchangeMatrix,
    table: dict[Vector, WallFunction],
    m0: Vector,
    q: Point,
    ell: int,
) -> list[BrokenLine]:
    b = b0.b
    n = b0.n
    for r in table:
        if _on_ray(q, r):
            raise NonGenericEndpoint(f"endpoint {q} lies on the wall ray {r}")
    if q == (0, 0):
        raise NonGenericEndpoint("endpoint is the origin")

    lines: list[BrokenLine] = []

    def exponent_of(nvec: Sequence[int]) -> Vector:
        return tuple(a + c for a, c in zip(m0, mat_vec(b, nvec)))

    def walk(p: Point, nvec: Vector, coeff: int, trail: list[tuple[Vector, Bend | None]]) -> None:
        m = exponent_of(nvec)
        if not any(m):
            return  # a segment with zero velocity cannot come from infinity
        hit = _next_hit(table, p, m)
        if hit is None:
            if not any(nvec):
                exps = (m,) + tuple(e for e, _ in reversed(trail))
                bends = tuple(bd for _, bd in reversed(trail) if bd is not None)
                lines.append(BrokenLine(m0, q, exps, bends, coeff, final_n))
            return
        t, r = hit
        point = (p[0] + t * m[0], p[1] + t * m[1])
        f = table[r]
        n0 = f.direction
        e = abs(pair_int(b0, n0_prime(b0, n0), m))
        # pass straight through the wall
        walk(point, nvec, coeff, trail)
        if e == 0:
            return
        smax = degree(nvec) // degree(n0)
        if smax <= 0:
            return
        pw = series_power(f.coeffs, e, smax)
        for s in range(1, smax + 1):
            a = pw[s]
            if not a:
                continue
            prev = tuple(x - s * y for x, y in zip(nvec, n0))
            if any(x < 0 for x in prev):
                continue
            if a < 0:
                raise InvariantViolation("negative bend coefficient")
            walk(point, prev, coeff * a, trail + [(m, Bend(point, r, s, a))])

    final_n: Vector = ()
    for total in range(ell + 1):
        for nvec in _compositions(total, n):
            final_n = nvec
            walk(q, nvec, 1, [])
    return lines


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_broken_lines(
    d: ScatteringDiagram, m0: Sequence[int], q: Sequence, ell: int | None = None
) -> tuple[list[BrokenLine], Point]:
    """All broken lines for ``m0`` ending at ``q`` with final degree at most ``ell``.

    Returns the lines and the endpoint actually used, which differs from
    ``q`` only after a genericity retry.
    """
    if d.n != 2:
        raise UnsupportedRank("broken lines are implemented for rank 2")
    ell = d.ell if ell is None else ell
    m0 = tuple(int(x) for x in m0)
    if not any(m0):
        raise ValueError("m0 must be nonzero; the theta function of 0 is 1")
    table = ray_table(d, ell)
    point = _as_point(q)
    for attempt in range(MAX_RETRIES + 1):
        try:
            return _enumerate(d.initial, table, m0, point, ell), point
        except NonGenericEndpoint:
            if attempt == MAX_RETRIES:
                raise
            point = (point[0] + PERTURBATION[0], point[1] + PERTURBATION[1])
    raise AssertionError("unreachable")


def theta(d: ScatteringDiagram, m0: Sequence[int], q: Sequence, ell: int | None = None) -> ThetaResult:
    """``theta_{Q, m0}`` truncated at degree ``ell``: the sum of final monomials of broken lines."""
    ell = d.ell if ell is None else ell
    m0 = tuple(int(x) for x in m0)
    if not any(m0):
        return ThetaResult(TruncatedSeries.monomial(m0, ell), [], _as_point(q))
    lines, point = enumerate_broken_lines(d, m0, q, ell)
    terms: dict[Vector, int] = {}
    for line in lines:
        terms[line.degree_vector] = terms.get(line.degree_vector, 0) + line.coefficient
    return ThetaResult(TruncatedSeries(m0, terms, ell), lines, point)


def check_line(b0: ExchangeMatrix, table: dict[Vector, WallFunction], line: BrokenLine) -> list[str]:
    """Re-verify a broken line forwards: each bend takes a term of the crossing image."""
    problems = []
    if line.exponents[0] != line.m0:
        problems.append("first exponent is not m0")
    coeff = 1
    for j, bend in enumerate(line.bends):
        before, after = line.exponents[j], line.exponents[j + 1]
        f = table[bend.ray]
        n0 = f.direction
        e = abs(pair_int(b0, n0_prime(b0, n0), before))
        step = tuple(mat_vec(b0.b, tuple(bend.s * x for x in n0)))
        if tuple(a + s for a, s in zip(before, step)) != after:
            problems.append(f"bend {j} does not move along the wall's exponent")
        a = series_power(f.coeffs, e, bend.s)[bend.s]
        if a != bend.coefficient or a <= 0:
            problems.append(f"bend {j} coefficient {bend.coefficient} is not the term {a}")
        # velocity -before must actually cross the wall ray transversally
        if cross(before, bend.ray) == 0:
            problems.append(f"segment {j} is parallel to its bend wall")
        coeff *= a
    if coeff != line.coefficient:
        problems.append("line coefficient is not the product of its bends")
    return problems


__all__ = [
    "Bend",
    "BrokenLine",
    "NonGenericEndpoint",
    "ThetaResult",
    "check_line",
    "enumerate_broken_lines",
    "theta",
]
