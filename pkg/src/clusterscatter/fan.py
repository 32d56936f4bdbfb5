"""G-cones, G-fans and the piecewise-linear maps between them.

All geometry is exact: cone membership solves small rational systems,
intersections are computed from integer minors, and rank-2 rays are
ordered by integer cross products.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt, lcm
from typing import Iterable, Sequence

from .errors import InvariantViolation, UnsupportedRank
from .matrix import (
    ExchangeMatrix,
    IntMatrix,
    column,
    column_part,
    determinant,
    identity,
    inverse,
    j_matrix,
    mat_add,
    mat_vec,
    mat_neg,
    positive_part,
    primitive,
)
from .pattern import PatternPoint, Walk, fast_mutate, initial_point

Vector = tuple[int, ...]


# -- cones --------------------------------------------------------------------


def _solve_independent(gens: Sequence[Sequence[int]], v: Sequence) -> tuple[Fraction, ...] | None:
    """Coefficients ``lam`` with ``sum lam_j gens[j] = v``, or ``None`` if ``v`` is outside the span.

    ``gens`` must be linearly independent.
    """
    n = len(v)
    r = len(gens)
    rows = [[Fraction(gens[j][i]) for j in range(r)] + [Fraction(v[i])] for i in range(n)]
    piv_row = 0
    pivots = []
    for col in range(r):
        pr = next((i for i in range(piv_row, n) if rows[i][col] != 0), None)
        if pr is None:
            raise ValueError("generators are linearly dependent")
        rows[piv_row], rows[pr] = rows[pr], rows[piv_row]
        p = rows[piv_row][col]
        rows[piv_row] = [x / p for x in rows[piv_row]]
        for i in range(n):
            if i != piv_row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[piv_row])]
        pivots.append(col)
        piv_row += 1
    if any(rows[i][r] != 0 for i in range(piv_row, n)):
        return None
    return tuple(rows[i][r] for i in range(r))


def _independent(vectors: Sequence[Sequence[int]]) -> bool:
    from .matrix import rank

    return rank(vectors) == len(vectors)


@dataclass(frozen=True)
class Cone:
    """The closed cone spanned by integer ``generators``."""

    generators: tuple[Vector, ...]

    @classmethod
    def of(cls, gens: Iterable[Sequence[int]]) -> "Cone":
        return cls(tuple(tuple(int(x) for x in g) for g in gens))

    @property
    def dim(self) -> int:
        from .matrix import rank

        return rank(self.generators) if self.generators else 0

    def contains(self, v: Sequence, interior: bool = False) -> bool:
        """Exact membership.  Simplicial cones use one solve; others use Caratheodory subsets.

        ``interior`` asks for the relative interior (all coefficients positive),
        only meaningful for simplicial cones.
        """
        if not any(v):
            return not interior or not self.generators
        gens = self.generators
        if _independent(gens):
            lam = _solve_independent(gens, v)
            if lam is None:
                return False
            return all(x > 0 for x in lam) if interior else all(x >= 0 for x in lam)
        if interior:
            raise ValueError("interior membership needs a simplicial cone")
        d = self.dim
        for size in range(1, d + 1):
            for sub in combinations(gens, size):
                if not _independent(sub):
                    continue
                lam = _solve_independent(sub, v)
                if lam is not None and all(x >= 0 for x in lam):
                    return True
        return False


def g_cone(g: IntMatrix) -> Cone:
    return Cone.of(column(g, j) for j in range(len(g)))


def face(g: IntMatrix, i: int) -> Cone:
    """``sigma_i(G)``: the facet spanned by all columns except the ``i``-th (1-based)."""
    return Cone.of(column(g, j) for j in range(len(g)) if j != i - 1)


def cone_key(g: IntMatrix) -> frozenset[Vector]:
    return frozenset(column(g, j) for j in range(len(g)))


# -- D-inner product, pl maps and the outgoing test --------------------------


def inner_product_D(b: ExchangeMatrix, u: Sequence, v: Sequence) -> Fraction:
    """``u^T D v`` with ``D = diag(1/d_i)``."""
    return b.skew.inner(u, v)


def _b_rows(b: ExchangeMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    return b.b if isinstance(b, ExchangeMatrix) else tuple(tuple(r) for r in b)


def pl_matrix(b: ExchangeMatrix | Sequence[Sequence[int]], k: int, variant: str, side: int = 1) -> IntMatrix:
    """The linear piece used by ``pl_map``; ``side`` picks the half space ``v_k >= 0`` (+1) or ``<= 0`` (-1)."""
    rows = _b_rows(b)
    n = len(rows)
    if variant == "phi":
        src = rows if side >= 0 else mat_neg(rows)
        return mat_add(j_matrix(n, k), column_part(positive_part(src), k))
    if variant == "S":
        return mat_add(identity(n), column_part(rows, k))
    if variant == "T":
        return pl_matrix(b, k, "S") if side >= 0 else identity(n)
    if variant == "eta":
        return mat_add(j_matrix(n, k), column_part(positive_part(mat_neg(rows)), k))
    raise ValueError(f"unknown variant {variant!r}")


def pl_map(b: ExchangeMatrix | Sequence[Sequence[int]], k: int, variant: str, v: Sequence) -> tuple:
    """Evaluate ``phi``, ``T``, ``S`` or ``eta`` for direction ``k`` at ``v``."""
    side = 1 if v[k - 1] >= 0 else -1
    return tuple(mat_vec(pl_matrix(b, k, variant, side), v))


def outgoing_test(p: PatternPoint, i: int) -> bool:
    """True iff ``c-hat+_i`` lies in the facet ``sigma_i(G_t)``.

    A wall satisfying this is incoming.  Whenever it holds, the ``c+``-vector
    must be a standard basis vector, which is asserted.
    """
    hit = face(p.g, i).contains(p.c_hat_plus(i))
    if hit:
        cp = p.c_plus(i)
        if sorted(cp) != [0] * (len(cp) - 1) + [1]:
            raise InvariantViolation(f"c+ vector {cp} of an incoming cluster wall is not a unit vector")
    return hit


# -- G-fans -------------------------------------------------------------------


@dataclass
class GFan:
    """Maximal G-cones found within ``depth`` mutations of the initial vertex."""

    initial: ExchangeMatrix
    depth: int
    cones: dict[frozenset[Vector], IntMatrix]
    labeled: int
    frontier_closed: bool
    facets_paired: bool

    @property
    def complete(self) -> bool:
        return self.frontier_closed and self.facets_paired

    @property
    def rays(self) -> set[Vector]:
        return {v for key in self.cones for v in key}

    def matrices(self) -> list[IntMatrix]:
        return [self.cones[k] for k in sorted(self.cones, key=lambda s: sorted(s))]


def build_g_fan(b0: ExchangeMatrix, depth: int) -> GFan:
    """Breadth-first search over labeled G-matrices up to ``depth`` mutations."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    start = initial_point(b0, with_f=False)
    seen: dict[IntMatrix, PatternPoint] = {start.g: start}
    layer = [start]
    cones: dict[frozenset[Vector], IntMatrix] = {cone_key(start.g): start.g}
    frontier_closed = False
    for level in range(depth + 1):
        nxt = []
        for p in layer:
            for k in range(1, b0.n + 1):
                if p.walk.directions and p.walk.directions[-1] == k:
                    continue
                q = fast_mutate(p, k, with_f=False)
                if q.g in seen:
                    continue
                if level < depth:
                    seen[q.g] = q
                    cones.setdefault(cone_key(q.g), q.g)
                nxt.append(q)
        if level == depth:
            frontier_closed = not nxt
            break
        if not nxt:
            frontier_closed = True
            break
        layer = nxt
    return GFan(b0, depth, cones, len(seen), frontier_closed, facets_paired(cones.values()))


def facets_paired(cones: Iterable[IntMatrix]) -> bool:
    """Every codimension-one face is shared by exactly two maximal cones."""
    counts: dict[frozenset[Vector], int] = {}
    for g in cones:
        cols = [column(g, j) for j in range(len(g))]
        for sub in combinations(cols, len(cols) - 1):
            key = frozenset(sub)
            counts[key] = counts.get(key, 0) + 1
    return bool(counts) and all(c == 2 for c in counts.values())


def _kernel_vector(rows: Sequence[Sequence[int]]) -> Vector | None:
    """Primitive integer generator of the kernel of ``n-1`` rows, or ``None`` if the rank drops."""
    m = len(rows)
    n = m + 1
    out = []
    for j in range(n):
        minor = [[r[c] for c in range(n) if c != j] for r in rows]
        out.append((-1) ** j * int(determinant(minor)) if m else 1)
    if not any(out):
        return None
    return primitive(out)


def cone_intersection_rays(g1: IntMatrix, g2: IntMatrix) -> set[Vector]:
    """Extreme rays of ``sigma(G1) cap sigma(G2)`` for full-rank simplicial cones.

    Both cones are given by inequalities ``G^{-1} v >= 0``; every extreme ray
    is cut out by ``n-1`` linearly independent active inequalities.
    """
    n = len(g1)
    ineq = []
    for g in (g1, g2):
        inv = inverse(g)
        den = 1
        for row in inv:
            for x in row:
                den = lcm(den, Fraction(x).denominator)
        ineq.extend(tuple(int(Fraction(x) * den) for x in row) for row in inv)
    ineq = list(dict.fromkeys(ineq))
    rays: set[Vector] = set()
    for active in combinations(ineq, n - 1):
        v = _kernel_vector(active)
        if v is None:
            continue
        for cand in (v, tuple(-x for x in v)):
            if all(sum(a * b for a, b in zip(row, cand)) >= 0 for row in ineq):
                rays.add(cand)
    return rays


@dataclass
class FanReport:
    pairs_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_fan(cones: GFan | Iterable[IntMatrix], max_rank: int = 4) -> FanReport:
    """Check that every pair of maximal cones meets in the cone of their shared columns."""
    mats = cones.matrices() if isinstance(cones, GFan) else list(cones)
    rep = FanReport()
    if not mats:
        return rep
    n = len(mats[0])
    if n > max_rank:
        raise UnsupportedRank(f"verify_fan is limited to rank <= {max_rank}")
    keys = [cone_key(g) for g in mats]
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            rep.pairs_checked += 1
            got = cone_intersection_rays(mats[a], mats[b])
            shared = keys[a] & keys[b]
            if got != set(shared):
                rep.failures.append(
                    f"cones {sorted(keys[a])} and {sorted(keys[b])}: intersection rays {sorted(got)}, shared {sorted(shared)}"
                )
    return rep


def transport_cones(b0: ExchangeMatrix, k: int, points: Iterable[PatternPoint]) -> list[str]:
    """``phi`` maps ``sigma(G_t^{t0})`` onto ``sigma(G_t^{t1})`` where ``t1 = mu_k(t0)``."""
    from .pattern import dual_mutate_initial

    problems = []
    for p in points:
        q = dual_mutate_initial(p, k)
        for i in range(1, p.n + 1):
            img = pl_map(b0, k, "phi", p.g_vector(i))
            if img != q.g_vector(i):
                problems.append(f"walk {p.walk.directions}: phi(g_{i}) = {img} != {q.g_vector(i)}")
    return problems


# -- rank 2 ---------------------------------------------------------------------


def g_vector_sequence(b0: ExchangeMatrix, first: int, length: int) -> list[Vector]:
    """New g-vectors produced along the alternating walk starting at direction ``first``."""
    if b0.n != 2:
        raise UnsupportedRank("rank-2 sequences need a 2x2 matrix")
    p = initial_point(b0, with_f=False)
    out = []
    k = first
    for _ in range(length):
        p = fast_mutate(p, k, with_f=False)
        out.append(p.g_vector(k))
        k = 3 - k
    return out


def angle_key(v: Sequence) -> tuple[int, Fraction]:
    """Exact counterclockwise angle key from the positive x-axis: ``(quadrant, slope)``."""
    x, y = Fraction(v[0]), Fraction(v[1])
    if x == 0 and y == 0:
        raise ValueError("zero vector has no angle")
    if x > 0 and y >= 0:
        return (0, y / x)
    if x <= 0 and y > 0:
        return (1, -x / y)
    if x < 0 and y <= 0:
        return (2, y / x)
    return (3, -x / y)


def cross(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


def limit_rays_bracket(b: int, c: int, vec: Sequence[int], which: str) -> int:
    """Compare the ray of ``vec`` with the limit ray ``v`` (``which='v'``) or ``v'`` in the fourth quadrant.

    Returns the sign of ``cross(limit, vec)``, computed exactly: the limit
    vector is ``(bc -+ sqrt(bc(bc-4)), -2b)``.
    """
    x, y = vec
    s = 1 if which == "v" else -1
    # cross((p - s r, -2b), (x, y)) = (p - s r) y + 2 b x with p = bc, r = sqrt(bc(bc-4))
    p = b * c
    disc = b * c * (b * c - 4)
    a0 = p * y + 2 * b * x  # rational part
    a1 = -s * y  # coefficient of r
    return _sign_surd(a0, a1, disc)


def _sign_surd(a0: int, a1: int, disc: int) -> int:
    """Sign of ``a0 + a1 sqrt(disc)`` for ``disc >= 0``."""
    r = isqrt(disc)
    if r * r == disc:
        t = a0 + a1 * r
        return (t > 0) - (t < 0)
    s0 = (a0 > 0) - (a0 < 0)
    s1 = (a1 > 0) - (a1 < 0)
    if s1 == 0:
        return s0
    if s0 == 0 or s0 == s1:
        return s1
    # opposite signs: compare a0^2 with a1^2 disc
    lhs, rhs = a0 * a0, a1 * a1 * disc
    if lhs == rhs:
        return 0
    return s0 if lhs > rhs else s1


def check_nonaffine_limits(b: int, c: int, length: int) -> list[str]:
    """Monotone convergence of the two g-vector sequences toward the limit rays.

    ``g_i`` (walk 1,2,...) turn counterclockwise and stay clockwise of ``v``;
    ``g'_i`` (walk 2,1,...) turn clockwise and stay counterclockwise of ``v'``.
    """
    if b * c < 5:
        raise ValueError("non-affine type needs bc >= 5")
    bm = ExchangeMatrix.from_rows([[0, -c], [b, 0]])
    problems = []
    seq = [v for v in g_vector_sequence(bm, 1, length) if v[0] > 0 and v[1] < 0]
    seq2 = [v for v in g_vector_sequence(bm, 2, length) if v[0] > 0 and v[1] < 0]
    for prev, cur in zip(seq, seq[1:]):
        if cross(prev, cur) <= 0:
            problems.append(f"g-sequence not monotone at {prev} -> {cur}")
    for prev, cur in zip(seq2, seq2[1:]):
        if cross(prev, cur) >= 0:
            problems.append(f"g'-sequence not monotone at {prev} -> {cur}")
    for v in seq:
        if limit_rays_bracket(b, c, v, "v") >= 0:
            problems.append(f"{v} is not clockwise of the limit ray v")
    for v in seq2:
        if limit_rays_bracket(b, c, v, "v'") <= 0:
            problems.append(f"{v} is not counterclockwise of the limit ray v'")
    return problems


def rank2_fan_rays(b0: ExchangeMatrix, length: int) -> list[Vector]:
    """Rays of the rank-2 fan found within ``length`` mutations, sorted by angle."""
    rays = {(1, 0), (0, 1)}
    for first in (1, 2):
        rays.update(g_vector_sequence(b0, first, length))
    return sorted(rays, key=angle_key)


def g_vectors_by_walks(b0: ExchangeMatrix, depth: int) -> dict[Vector, list[tuple[Walk, int]]]:
    """All g-vectors within ``depth`` with the (walk, index) pairs realizing them."""
    out: dict[Vector, list[tuple[Walk, int]]] = {}
    start = initial_point(b0, with_f=False)
    queue = deque([start])
    seen = {start.g}
    while queue:
        p = queue.popleft()
        for i in range(1, p.n + 1):
            out.setdefault(p.g_vector(i), []).append((p.walk, i))
        if len(p.walk) >= depth:
            continue
        for k in range(1, p.n + 1):
            q = fast_mutate(p, k, with_f=False)
            if q.g not in seen:
                seen.add(q.g)
                queue.append(q)
    return out


def rank2_gaps(fan: GFan) -> list[tuple[Vector, Vector]]:
    """Uncovered sectors of a rank-2 fan as (start ray, end ray) in counterclockwise order."""
    if fan.initial.n != 2:
        raise UnsupportedRank("gaps are computed for rank 2 only")
    sectors = []
    for g in fan.cones.values():
        a, b = column(g, 0), column(g, 1)
        if cross(a, b) < 0:
            a, b = b, a
        sectors.append((a, b))
    sectors.sort(key=lambda s: angle_key(s[0]))
    gaps = []
    for (_, end), (start, _) in zip(sectors, sectors[1:] + sectors[:1]):
        if end != start:
            gaps.append((end, start))
    return gaps


def row_sign_coherent(g: IntMatrix) -> bool:
    return all(not (any(x > 0 for x in row) and any(x < 0 for x in row)) for row in g)


__all__ = [
    "Cone",
    "FanReport",
    "GFan",
    "angle_key",
    "build_g_fan",
    "check_nonaffine_limits",
    "cone_intersection_rays",
    "cone_key",
    "cross",
    "face",
    "facets_paired",
    "g_cone",
    "g_vector_sequence",
    "g_vectors_by_walks",
    "inner_product_D",
    "outgoing_test",
    "pl_map",
    "pl_matrix",
    "rank2_fan_rays",
    "rank2_gaps",
    "row_sign_coherent",
    "transport_cones",
    "verify_fan",
]
