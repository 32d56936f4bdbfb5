"""Walls, wall-crossing automorphisms and scattering diagrams.

A wall function is a one-variable power series in ``z = y-hat^{n0}`` for a
primitive normal ``n0``; a truncated series is ``x^{m0}`` times a power
series in the ``y-hat`` variables.  Degrees are total ``y-hat`` degrees.
Consistent completion and the loop checks are rank-2 only; cluster walls
and diagram mutation work in any rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InvariantViolation, SingularMatrix, UnsupportedRank
from .fan import Cone, angle_key, face, outgoing_test, pl_matrix
from .matrix import (
    ExchangeMatrix,
    column,
    inverse,
    mat_vec,
    primitive,
    rank,
)
from .pattern import PatternPoint, fast_mutate, initial_point
from .poly import LaurentPoly, format_monomial

Vector = tuple[int, ...]


def degree(n: Sequence[int]) -> int:
    return sum(n)


# -- one-variable series ----------------------------------------------------


@lru_cache(maxsize=8192)
def series_power(coeffs: tuple[int, ...], e: int, jmax: int) -> tuple[int, ...]:
    """Coefficients ``g_0..g_jmax`` of ``(1 + sum_j coeffs[j-1] z^j)^e`` for any integer ``e``.

    Uses ``k g_k = sum_{j=1}^{k} (e j - (k - j)) f_j g_{k-j}``; every division is exact.
    """
    f = (1,) + coeffs
    g = [1] + [0] * jmax
    for k in range(1, jmax + 1):
        acc = 0
        for j in range(1, min(k, len(f) - 1) + 1):
            if f[j]:
                acc += (e * j - (k - j)) * f[j] * g[k - j]
        q, r = divmod(acc, k)
        if r:
            raise InvariantViolation("non-integral power series coefficient")
        g[k] = q
    return tuple(g)


def series_mul(a: Sequence[int], b: Sequence[int], jmax: int) -> tuple[int, ...]:
    """Product of ``1 + sum a_j z^j`` and ``1 + sum b_j z^j``; returns ``c_1..c_jmax``."""
    fa = (1,) + tuple(a)
    fb = (1,) + tuple(b)
    out = [0] * (jmax + 1)
    for i, x in enumerate(fa):
        if not x or i > jmax:
            continue
        for j, y in enumerate(fb):
            if i + j > jmax:
                break
            out[i + j] += x * y
    return _strip(tuple(out[1:]))


def _strip(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def factor_exponents(coeffs: Sequence[int], jmax: int) -> tuple[int, ...]:
    """Exponents ``e_j`` with ``1 + sum c_j z^j = prod_j (1 + z^j)^{e_j}`` modulo ``z^{jmax+1}``."""
    current = list((1,) + tuple(coeffs) + (0,) * max(0, jmax - len(coeffs)))[: jmax + 1]
    exps = []
    for j in range(1, jmax + 1):
        e = current[j]
        exps.append(e)
        if e:
            # divide by (1 + z^j)^e, i.e. multiply by (1 + z^j)^{-e}
            inv = series_power((0,) * (j - 1) + (1,), -e, jmax)
            prod = [0] * (jmax + 1)
            for a, x in enumerate(current):
                if x:
                    for b in range(0, jmax + 1 - a):
                        if inv[b]:
                            prod[a + b] += x * inv[b]
            current = prod
    return tuple(exps)


@dataclass(frozen=True)
class WallFunction:
    """``1 + sum_j coeffs[j-1] z^j`` with ``z = y-hat^{direction}``.

    ``direction`` is a primitive integer vector; it lies in the positive
    orthant for walls of a scattering diagram.
    """

    direction: Vector
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "direction", tuple(int(x) for x in self.direction))
        object.__setattr__(self, "coeffs", _strip(int(x) for x in self.coeffs))
        if not any(self.direction) or primitive(self.direction) != self.direction:
            raise ValueError(f"wall direction {self.direction} is not primitive")

    @classmethod
    def binomial(cls, n: Sequence[int]) -> "WallFunction":
        """``1 + y-hat^n`` for any nonzero ``n`` (``n`` need not be primitive)."""
        n = tuple(int(x) for x in n)
        p = primitive(n)
        j = next(a // b for a, b in zip(n, p) if b)
        return cls(p, (0,) * (j - 1) + (1,))

    @property
    def step(self) -> int:
        return abs(degree(self.direction)) or 1

    def jmax(self, ell: int) -> int:
        return ell // self.step

    def truncate(self, ell: int) -> "WallFunction":
        return WallFunction(self.direction, self.coeffs[: self.jmax(ell)])

    def is_trivial(self) -> bool:
        return not self.coeffs

    def times(self, other: "WallFunction", ell: int) -> "WallFunction":
        if other.direction != self.direction:
            raise ValueError("cannot multiply wall functions with different directions")
        return WallFunction(self.direction, series_mul(self.coeffs, other.coeffs, self.jmax(ell)))

    def power(self, e: int, ell: int) -> tuple[int, ...]:
        return series_power(self.coeffs, e, self.jmax(ell))

    def factor_exponents(self, ell: int) -> tuple[int, ...]:
        return factor_exponents(self.coeffs, self.jmax(ell))

    def terms(self) -> dict[Vector, int]:
        out = {(0,) * len(self.direction): 1}
        for j, c in enumerate(self.coeffs, start=1):
            if c:
                out[tuple(j * x for x in self.direction)] = c
        return out

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly(len(self.direction), self.terms(), "yhat")

    def __str__(self) -> str:
        return str(self.as_poly())


# -- truncated series ------------------------------------------------------------


class TruncatedSeries:
    """``x^{base} * sum_n c_n y-hat^n`` keeping only ``degree(n) <= ell``."""

    __slots__ = ("base", "terms", "ell")

    def __init__(self, base: Sequence[int], terms: dict[Vector, int], ell: int):
        self.base = tuple(int(x) for x in base)
        self.terms = {tuple(n): c for n, c in terms.items() if c and degree(n) <= ell}
        self.ell = ell

    @classmethod
    def monomial(cls, base: Sequence[int], ell: int) -> "TruncatedSeries":
        return cls(base, {(0,) * len(base): 1}, ell)

    @classmethod
    def from_f(cls, base: Sequence[int], f: LaurentPoly, ell: int) -> "TruncatedSeries":
        """``x^{base} F(y-hat)`` for a polynomial ``F`` in the ``y``-variables."""
        return cls(base, dict(f.terms), ell)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.base == other.base:
            return self.terms == other.terms and self.ell == other.ell
        return False

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if other.base != self.base or other.ell != self.ell:
            raise ValueError("series with different bases or truncations")
        out = dict(self.terms)
        for n, c in other.terms.items():
            out[n] = out.get(n, 0) + c
        return TruncatedSeries(self.base, out, self.ell)

    def truncate(self, ell: int) -> "TruncatedSeries":
        return TruncatedSeries(self.base, self.terms, min(ell, self.ell))

    def coefficient(self, n: Sequence[int]) -> int:
        return self.terms.get(tuple(n), 0)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def as_f(self) -> LaurentPoly:
        """The series factor as a polynomial in ``y``."""
        return LaurentPoly(len(self.base), self.terms)

    def to_laurent(self, b: Sequence[Sequence[int]]) -> LaurentPoly:
        """Expand in the x-variables using ``y-hat_j = x^{b_j}``."""
        out: dict[Vector, int] = {}
        for n, c in self.terms.items():
            m = tuple(x + y for x, y in zip(self.base, mat_vec(b, n)))
            out[m] = out.get(m, 0) + c
        return LaurentPoly(len(self.base), out, "x")

    def sorted_terms(self) -> list[tuple[Vector, int]]:
        return sorted(self.terms.items(), key=lambda t: (degree(t[0]), t[0]))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"

    def __str__(self) -> str:
        head = format_monomial(self.base, "x")
        body = str(self.as_f().with_symbol("yhat")) if self.terms else "0"
        return f"{head} * ({body})" if head != "1" else body


# -- pairings and walls --------------------------------------------------------


def p_star(b0: ExchangeMatrix, n: Sequence[int]) -> Vector:
    """``B0 n``: the exponent of ``y-hat^n`` in the x-variables."""
    return tuple(mat_vec(b0.b, n))


def require_nonsingular(b0: ExchangeMatrix) -> None:
    if b0.det() == 0:
        raise SingularMatrix("scattering diagrams need a nonsingular exchange matrix")


def pairing(b0: ExchangeMatrix, n: Sequence, m: Sequence) -> Fraction:
    """``<n, m> = sum n_i m_i / d_i``."""
    return b0.skew.inner(n, m)


def n0_prime(b0: ExchangeMatrix, n0: Sequence[int]) -> Vector:
    """Smallest positive multiple of ``n0`` in the sublattice spanned by ``d_i e_i``."""
    c = reduce(lcm, (d // gcd(d, abs(x)) if x else 1 for d, x in zip(b0.d, n0)), 1)
    return tuple(c * x for x in n0)


def pair_int(b0: ExchangeMatrix, n: Sequence, m: Sequence) -> int:
    v = pairing(b0, n, m)
    if v.denominator != 1:
        raise InvariantViolation(f"pairing <{n}, {m}> = {v} is not integral")
    return v.numerator


@dataclass(frozen=True)
class Wall:
    """A wall: a codimension-one cone with a wall function.

    ``support`` lists generators; in rank 2 a single generator is a ray and
    a pair ``(r, -r)`` is a full line.
    """

    support: tuple[Vector, ...]
    function: WallFunction
    incoming: bool

    @property
    def normal(self) -> Vector:
        return self.function.direction

    def cone(self) -> Cone:
        return Cone(self.support)


def make_wall(b0: ExchangeMatrix, support: Iterable[Sequence[int]], function: WallFunction, check: bool = True) -> Wall:
    gens = tuple(tuple(int(x) for x in g) for g in support)
    if check:
        for g in gens:
            if pairing(b0, function.direction, g) != 0:
                raise InvariantViolation(f"normal {function.direction} is not orthogonal to {g}")
    incoming = Cone(gens).contains(p_star(b0, function.direction))
    return Wall(gens, function, incoming)


@dataclass
class ScatteringDiagram:
    walls: list[Wall]
    initial: ExchangeMatrix
    ell: int

    @property
    def n(self) -> int:
        return self.initial.n

    def incoming(self) -> list[Wall]:
        return [w for w in self.walls if w.incoming]

    def outgoing(self) -> list[Wall]:
        return [w for w in self.walls if not w.incoming]


def wall_cross(b0: ExchangeMatrix, function: WallFunction, eps: int, s: TruncatedSeries) -> TruncatedSeries:
    """Apply ``x^m -> x^m f^{eps <n0', m>}`` term by term."""
    n0 = function.direction
    nprime = n0_prime(b0, n0)
    step = degree(n0)
    out: dict[Vector, int] = {}
    for n, c in s.terms.items():
        m = tuple(x + y for x, y in zip(s.base, mat_vec(b0.b, n)))
        e = eps * pair_int(b0, nprime, m)
        room = s.ell - degree(n)
        if e == 0 or function.is_trivial() or room < step:
            out[n] = out.get(n, 0) + c
            continue
        pw = series_power(function.coeffs, e, room // step)
        for j, a in enumerate(pw):
            if a:
                key = tuple(x + j * y for x, y in zip(n, n0))
                out[key] = out.get(key, 0) + c * a
    return TruncatedSeries(s.base, out, s.ell)


def path_ordered_product(
    b0: ExchangeMatrix, crossings: Sequence[tuple[WallFunction | Wall, int]], s: TruncatedSeries
) -> TruncatedSeries:
    """Compose wall crossings in path order: the first crossing acts first."""
    for w, eps in crossings:
        f = w.function if isinstance(w, Wall) else w
        s = wall_cross(b0, f, eps, s)
    return s


def crossing_sign(b0: ExchangeMatrix, n0: Sequence[int], velocity: Sequence) -> int:
    """``+1`` when the path moves against the normal, ``-1`` otherwise."""
    v = pairing(b0, n0, velocity)
    if v == 0:
        raise InvariantViolation("path is tangent to a wall")
    return 1 if v < 0 else -1


# -- cluster walls ------------------------------------------------------------------


def pattern_points(b0: ExchangeMatrix, depth: int) -> list[PatternPoint]:
    """One tropical pattern point per labeled G-matrix within ``depth`` mutations."""
    start = initial_point(b0, with_f=False)
    seen = {start.g}
    layer = [start]
    out = [start]
    for _ in range(depth):
        nxt = []
        for p in layer:
            for k in range(1, b0.n + 1):
                q = fast_mutate(p, k, with_f=False)
                if q.g not in seen:
                    seen.add(q.g)
                    nxt.append(q)
        out.extend(nxt)
        layer = nxt
    return out


def cluster_walls(b0: ExchangeMatrix, depth: int, ell: int = 8) -> ScatteringDiagram:
    """Walls ``(sigma_i(G_t), 1 + y-hat^{c+_{i;t}})`` over the depth-bounded pattern, without duplicates."""
    require_nonsingular(b0)
    walls: dict[tuple[frozenset, Vector], Wall] = {}
    for p in pattern_points(b0, depth):
        for i in range(1, b0.n + 1):
            cp = p.c_plus(i)
            support = face(p.g, i).generators
            key = (frozenset(support), cp)
            if key in walls:
                continue
            w = make_wall(b0, support, WallFunction.binomial(cp))
            if w.incoming != outgoing_test(p, i):
                raise InvariantViolation("incoming flag disagrees with the facet test")
            walls[key] = w
    return ScatteringDiagram(list(walls.values()), b0, ell)


# -- rank 2 -----------------------------------------------------------------------


def _rank2(b0: ExchangeMatrix) -> None:
    if b0.n != 2:
        raise UnsupportedRank("this operation is implemented for rank 2 only")


def wall_rays(w: Wall) -> list[Vector]:
    """Rays covered by a rank-2 wall support (one ray or both halves of a line)."""
    gens = w.support
    if len(gens) == 1:
        return [primitive(gens[0])]
    if len(gens) == 2 and rank(gens) == 1:
        a, b = primitive(gens[0]), primitive(gens[1])
        return [a] if a == b else [a, b]
    raise ValueError(f"support {gens} is not one-dimensional")


def ray_table(d: ScatteringDiagram, ell: int | None = None) -> dict[Vector, WallFunction]:
    """Per-ray product of all wall functions, trivial rays removed."""
    _rank2(d.initial)
    ell = d.ell if ell is None else ell
    table: dict[Vector, WallFunction] = {}
    for w in d.walls:
        for r in wall_rays(w):
            f = w.function.truncate(ell)
            table[r] = table[r].times(f, ell) if r in table else f
    return {r: f for r, f in table.items() if not f.is_trivial()}


def ccw_velocity(r: Sequence[int]) -> Vector:
    return (-r[1], r[0])


def loop_crossings(b0: ExchangeMatrix, table: dict[Vector, WallFunction]) -> list[tuple[WallFunction, int]]:
    """Crossings of a counterclockwise loop starting just below the positive x-axis."""
    out = []
    for r in sorted(table, key=angle_key):
        f = table[r]
        out.append((f, crossing_sign(b0, f.direction, ccw_velocity(r))))
    return out


def path_crossings(
    b0: ExchangeMatrix,
    table: dict[Vector, WallFunction],
    start: Sequence,
    end: Sequence,
    orientation: str = "ccw",
) -> list[tuple[WallFunction, int]]:
    """Crossings of an arc around the origin from ``start`` to ``end``.

    Neither endpoint may lie on a wall ray.
    """
    ks, ke = angle_key(start), angle_key(end)
    rays = sorted(table, key=angle_key)
    for r in rays:
        if angle_key(r) in (ks, ke):
            raise ValueError("path endpoint lies on a wall")
    if orientation == "ccw":
        if ks <= ke:
            hit = [r for r in rays if ks < angle_key(r) < ke]
        else:
            hit = [r for r in rays if angle_key(r) > ks] + [r for r in rays if angle_key(r) < ke]
        return [(table[r], crossing_sign(b0, table[r].direction, ccw_velocity(r))) for r in hit]
    if orientation == "cw":
        back = path_crossings(b0, table, end, start, "ccw")
        return [(f, -e) for f, e in reversed(back)]
    raise ValueError("orientation must be 'ccw' or 'cw'")


def apply_path(b0: ExchangeMatrix, crossings, m: Sequence[int], ell: int) -> TruncatedSeries:
    return path_ordered_product(b0, crossings, TruncatedSeries.monomial(m, ell))


def loop_discrepancy(b0: ExchangeMatrix, table: dict[Vector, WallFunction], ell: int) -> dict[int, TruncatedSeries]:
    """The loop product applied to ``x_1`` and ``x_2``, keyed by variable index (1-based)."""
    loop = loop_crossings(b0, table)
    return {i: apply_path(b0, loop, tuple(int(j == i - 1) for j in range(2)), ell) for i in (1, 2)}


def _is_identity(s: TruncatedSeries) -> bool:
    return s.terms == {(0,) * len(s.base): 1}


def incoming_table(b0: ExchangeMatrix) -> dict[Vector, WallFunction]:
    """Rays of the two incoming lines ``e_i^perp`` with functions ``1 + y-hat_i``."""
    table = {}
    for i in range(2):
        e = tuple(int(j == i) for j in range(2))
        # the ray orthogonal to e_i in the D-pairing is the other coordinate axis
        r = tuple(int(j != i) for j in range(2))
        f = WallFunction(e, (1,))
        table[r] = f
        table[tuple(-x for x in r)] = f
    return table


def complete_rank2(b0: ExchangeMatrix, ell: int = 8) -> ScatteringDiagram:
    """Consistent completion modulo degree ``ell + 1`` by order-by-order loop cancellation."""
    _rank2(b0)
    require_nonsingular(b0)
    table = incoming_table(b0)
    for k in range(2, ell + 1):
        disc = loop_discrepancy(b0, table, k)
        corrections: dict[Vector, int] = {}
        for i, s in disc.items():
            for n, c in s.terms.items():
                if degree(n) == 0:
                    if c != 1:
                        raise InvariantViolation("loop changes the leading coefficient")
                    continue
                if degree(n) < k:
                    raise InvariantViolation(f"loop discrepancy survives below degree {k}: {n}")
                corrections.setdefault(n, 0)
        for n in sorted(corrections):
            n0 = primitive(n)
            j = degree(n) // degree(n0)
            if any(x < 0 for x in n0):
                raise InvariantViolation(f"discrepancy in a non-positive direction {n}")
            if sum(1 for x in n0 if x) == 1:
                raise InvariantViolation(f"discrepancy along a coordinate direction {n}")
            ray = primitive(tuple(-x for x in p_star(b0, n0)))
            nprime = n0_prime(b0, n0)
            eps = crossing_sign(b0, n0, ccw_velocity(ray))
            solved = None
            for i in (1, 2):
                m = tuple(int(t == i - 1) for t in range(2))
                a = disc[i].coefficient(n)
                pm = pair_int(b0, nprime, m)
                if pm == 0:
                    if a:
                        raise InvariantViolation(f"discrepancy at {n} cannot be cancelled by a wall")
                    continue
                q, r = divmod(-a, eps * pm)
                if r:
                    raise InvariantViolation(f"non-integral wall correction at {n}")
                if solved is None:
                    solved = q
                elif solved != q:
                    raise InvariantViolation(f"inconsistent wall corrections at {n}")
            if not solved:
                continue
            add = WallFunction(n0, (0,) * (j - 1) + (solved,))
            table[ray] = table[ray].times(add, ell) if ray in table else add
    return diagram_from_table(b0, table, ell)


def diagram_from_table(b0: ExchangeMatrix, table: dict[Vector, WallFunction], ell: int) -> ScatteringDiagram:
    """Rank-2 diagram with opposite rays of equal function joined into lines, in angle order."""
    walls = []
    done = set()
    for r in sorted(table, key=angle_key):
        if r in done:
            continue
        f = table[r]
        if f.is_trivial():
            continue
        opp = tuple(-x for x in r)
        if table.get(opp) == f:
            walls.append(make_wall(b0, (r, opp), f))
            done.add(opp)
        else:
            walls.append(make_wall(b0, (r,), f))
        done.add(r)
    return ScatteringDiagram(walls, b0, ell)


def normalize(d: ScatteringDiagram, ell: int | None = None) -> ScatteringDiagram:
    """Merge walls per support, drop trivial walls, and order canonically.

    In rank 2 walls are merged per ray and opposite rays with equal functions
    are joined into lines; in higher rank walls with identical support and
    normal are merged.
    """
    ell = d.ell if ell is None else ell
    if d.n == 2:
        return diagram_from_table(d.initial, ray_table(d, ell), ell)
    merged: dict[tuple[frozenset, Vector], WallFunction] = {}
    supports: dict[tuple[frozenset, Vector], tuple[Vector, ...]] = {}
    for w in d.walls:
        key = (frozenset(w.support), w.normal)
        f = w.function.truncate(ell)
        merged[key] = merged[key].times(f, ell) if key in merged else f
        supports.setdefault(key, w.support)
    walls = [
        make_wall(d.initial, supports[k], f, check=False)
        for k, f in sorted(merged.items(), key=lambda kv: (sorted(kv[0][0]), kv[0][1]))
        if not f.is_trivial()
    ]
    return ScatteringDiagram(walls, d.initial, ell)


def equivalent(d1: ScatteringDiagram, d2: ScatteringDiagram, ell: int | None = None) -> bool:
    """Rank-2 equivalence: identical per-ray functions modulo degree ``ell + 1``."""
    ell = min(d1.ell, d2.ell) if ell is None else ell
    if d1.initial.b != d2.initial.b:
        return False
    return ray_table(d1, ell) == ray_table(d2, ell)


def check_consistency_rank2(d: ScatteringDiagram, ell: int | None = None) -> bool:
    """The full counterclockwise loop acts trivially on ``x_1`` and ``x_2`` modulo degree ``ell + 1``."""
    ell = d.ell if ell is None else ell
    disc = loop_discrepancy(d.initial, ray_table(d, ell), ell)
    return all(_is_identity(s) for s in disc.values())


def factorization_exponents(d: ScatteringDiagram, ell: int | None = None) -> dict[Vector, tuple[int, ...]]:
    """Per-ray exponents ``c_j`` with ``f = prod_j (1 + z^j)^{c_j}``."""
    ell = d.ell if ell is None else ell
    return {r: f.factor_exponents(ell) for r, f in ray_table(d, ell).items()}


# -- diagram mutation ---------------------------------------------------------------


def split_cone(gens: Sequence[Sequence[int]], k: int, side: int) -> list[Vector]:
    """Generators of ``cone(gens) cap {side * m_k >= 0}``."""
    kk = k - 1
    out = []
    for g in gens:
        if side * g[kk] >= 0:
            out.append(tuple(g))
    for g in gens:
        for h in gens:
            if side * g[kk] > 0 and side * h[kk] < 0:
                v = tuple(side * (g[kk] * x - h[kk] * y) for x, y in zip(h, g))
                if any(v):
                    out.append(primitive(v))
    return list(dict.fromkeys(primitive(v) for v in out if any(v)))


@dataclass
class TransformedWall:
    """A wall after the piecewise-linear transformation, before re-basing.

    ``exponent`` is the x-exponent of ``z``; the function is ``1 + sum c_j x^{j * exponent}``.
    """

    support: tuple[Vector, ...]
    exponent: Vector
    coeffs: tuple[int, ...]

    def yhat_direction(self, b: Sequence[Sequence[int]]) -> Vector:
        """``B^{-1} exponent`` as an integer vector."""
        v = mat_vec(inverse(b), self.exponent)
        if any(Fraction(x).denominator != 1 for x in v):
            raise InvariantViolation(f"exponent {self.exponent} is not in the image of B")
        return tuple(int(x) for x in v)


def transform_walls(d: ScatteringDiagram, k: int) -> list[TransformedWall]:
    """Split walls at ``m_k = 0``, apply ``S_k`` on the positive side and flip the incoming ``e_k`` wall.

    Supports and exponents are still written in the original seed.
    """
    b0 = d.initial
    require_nonsingular(b0)
    n = b0.n
    s_k = pl_matrix(b0, k, "S")
    ek = tuple(int(i == k - 1) for i in range(n))
    out = []
    for w in d.walls:
        f = w.function
        v = p_star(b0, f.direction)
        if f.direction == ek:
            neg = tuple(-x for x in v)
            out.append(TransformedWall(w.support, neg, f.coeffs))
            continue
        for side in (1, -1):
            gens = split_cone(w.support, k, side)
            if len(gens) == 0 or rank(gens) < n - 1:
                continue
            if side == 1:
                gens = [primitive(mat_vec(s_k, g)) for g in gens]
                exp = tuple(mat_vec(s_k, v))
            else:
                exp = v
            out.append(TransformedWall(tuple(gens), exp, f.coeffs))
    return out


def mutate_diagram(d: ScatteringDiagram, k: int, ell: int | None = None) -> ScatteringDiagram:
    """Mutation at ``k`` re-expressed in the mutated seed, truncated at ``ell``."""
    b0 = d.initial
    ell = d.ell if ell is None else ell
    new = b0.mutate(k)
    require_nonsingular(new)
    eta = pl_matrix(b0, k, "eta")
    walls = []
    for tw in transform_walls(d, k):
        gens = tuple(primitive(mat_vec(eta, g)) for g in tw.support)
        exp = tuple(mat_vec(eta, tw.exponent))
        n_new = TransformedWall(gens, exp, tw.coeffs).yhat_direction(new.b)
        if any(x < 0 for x in n_new):
            raise InvariantViolation(f"mutated wall normal {n_new} is not positive")
        if primitive(n_new) != n_new:
            raise InvariantViolation(f"mutated wall normal {n_new} is not primitive")
        f = WallFunction(n_new, tw.coeffs).truncate(ell)
        if f.is_trivial():
            continue
        walls.append(make_wall(new, gens, f))
    return normalize(ScatteringDiagram(walls, new, ell)) if new.n == 2 else ScatteringDiagram(walls, new, ell)


def mutation_truncation(b0: ExchangeMatrix, k: int, ell: int) -> int:
    """Truncation needed before mutating so that the result is exact to degree ``ell``.

    The mutated degree of ``n`` is a linear function of ``n`` on each side;
    this bounds the original degree by the column sums of the inverse maps.
    """
    new = b0.mutate(k)
    n = b0.n
    bound = 1
    inv_new = inverse(new.b)
    eta = pl_matrix(b0, k, "eta")
    for side_matrix in (pl_matrix(b0, k, "S"), tuple(tuple(int(i == j) for j in range(n)) for i in range(n))):
        # n -> B'^{-1} eta S B n
        lin = _mat_mul_f(inv_new, _mat_mul_f(eta, _mat_mul_f(side_matrix, b0.b)))
        back = inverse(lin)
        for j in range(n):
            bound = max(bound, int(sum(abs(Fraction(back[i][j])) for i in range(n)) + Fraction(1, 2)))
    return ell * bound


def _mat_mul_f(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(Fraction(x) * y for x, y in zip(row, col)) for col in bt) for row in a)


def chamber_check_rank2(d: ScatteringDiagram, points: Iterable[PatternPoint]) -> list[str]:
    """Each G-cone interior avoids every wall ray of ``d``."""
    table = ray_table(d)
    problems = []
    for p in points:
        cone = Cone(tuple(column(p.g, j) for j in range(2)))
        for r in table:
            if cone.contains(r, interior=True):
                problems.append(f"wall ray {r} meets the interior of {p.g}")
    return problems


__all__ = [
    "ScatteringDiagram",
    "TransformedWall",
    "TruncatedSeries",
    "Wall",
    "WallFunction",
    "apply_path",
    "chamber_check_rank2",
    "check_consistency_rank2",
    "cluster_walls",
    "complete_rank2",
    "crossing_sign",
    "degree",
    "diagram_from_table",
    "equivalent",
    "factor_exponents",
    "factorization_exponents",
    "incoming_table",
    "loop_crossings",
    "loop_discrepancy",
    "make_wall",
    "mutate_diagram",
    "mutation_truncation",
    "n0_prime",
    "normalize",
    "p_star",
    "pair_int",
    "pairing",
    "path_crossings",
    "path_ordered_product",
    "pattern_points",
    "ray_table",
    "series_mul",
    "series_power",
    "split_cone",
    "transform_walls",
    "wall_cross",
    "wall_rays",
]
