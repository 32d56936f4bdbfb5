"""C-, G- and F-patterns along walks in the n-regular tree.

A vertex of the tree is encoded by a reduced walk from the initial vertex.
All directions and indices are 1-based.  Four update rules are provided:

* the definitional rules with ``eps = +1`` (``mutate_point``),
* the epsilon-expressions for either sign (``mutate_point(..., eps=-1)``),
* the signed one-product rules driven by tropical signs (``fast_mutate``),
* the dual rules that move the initial vertex (``dual_mutate_initial``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InexactDivision, InvariantViolation
from .matrix import (
    ExchangeMatrix,
    IntMatrix,
    column,
    column_part,
    identity,
    j_matrix,
    mat_add,
    mat_mul,
    mat_sub,
    mutate_matrix,
    positive_part,
    row_part,
    scalar_mul,
    transpose,
)
from .poly import LaurentPoly

FPolynomial = LaurentPoly


@dataclass(frozen=True)
class Walk:
    """A reduced sequence of directions; adjacent repeats cancel on construction."""

    directions: tuple[int, ...]

    def __init__(self, directions: Iterable[int] = ()):
        stack: list[int] = []
        for k in directions:
            k = int(k)
            if k < 1:
                raise ValueError(f"direction {k} must be positive")
            if stack and stack[-1] == k:
                stack.pop()
            else:
                stack.append(k)
        object.__setattr__(self, "directions", tuple(stack))

    def __len__(self) -> int:
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)

    def then(self, *ks: int) -> "Walk":
        return Walk(self.directions + ks)

    def was_reduced(self, raw: Sequence[int]) -> bool:
        """True when ``raw`` needed cancellation to give this walk."""
        return tuple(raw) != self.directions


def tropical_signs_of(c: IntMatrix) -> tuple[int, ...]:
    """Common signs of the columns of a C-matrix; raises on a mixed column."""
    signs = []
    for j in range(len(c)):
        col = column(c, j)
        pos = any(x > 0 for x in col)
        neg = any(x < 0 for x in col)
        if pos == neg:
            raise InvariantViolation(f"column {j + 1} of C is not sign-coherent: {col}")
        signs.append(1 if pos else -1)
    return tuple(signs)


def row_signs_of(g: IntMatrix) -> tuple[int, ...]:
    """Common signs of the rows of a G-matrix; raises on a mixed row."""
    signs = []
    for i, row in enumerate(g):
        pos = any(x > 0 for x in row)
        neg = any(x < 0 for x in row)
        if pos == neg:
            raise InvariantViolation(f"row {i + 1} of G is not sign-coherent: {row}")
        signs.append(1 if pos else -1)
    return tuple(signs)


@dataclass(frozen=True)
class PatternPoint:
    """Full tropical and F-data at the tree vertex reached by ``walk``.

    ``f`` is ``None`` when the point was produced by a tropical-only update.
    """

    initial: ExchangeMatrix
    walk: Walk
    b: IntMatrix
    c: IntMatrix
    g: IntMatrix
    f: tuple[LaurentPoly, ...] | None

    @property
    def n(self) -> int:
        return self.initial.n

    @property
    def exchange(self) -> ExchangeMatrix:
        return ExchangeMatrix(self.b, self.initial.skew)

    @property
    def eps(self) -> tuple[int, ...]:
        return tropical_signs_of(self.c)

    def c_vector(self, i: int) -> tuple[int, ...]:
        return column(self.c, i - 1)

    def g_vector(self, i: int) -> tuple[int, ...]:
        return column(self.g, i - 1)

    def c_plus(self, i: int) -> tuple[int, ...]:
        e = tropical_sign(self, i)
        return tuple(e * x for x in self.c_vector(i))

    def c_hat(self, i: int) -> tuple[int, ...]:
        return column(hat_c_matrix(self), i - 1)

    def c_hat_plus(self, i: int) -> tuple[int, ...]:
        e = tropical_sign(self, i)
        return tuple(e * x for x in self.c_hat(i))


def initial_point(b0: ExchangeMatrix, with_f: bool = True) -> PatternPoint:
    n = b0.n
    f = tuple(LaurentPoly.constant(n) for _ in range(n)) if with_f else None
    return PatternPoint(b0, Walk(), b0.b, identity(n), identity(n), f)


def tropical_sign(p: PatternPoint, i: int) -> int:
    """The common sign of the nonzero entries of the c-vector ``i``."""
    col = p.c_vector(i)
    pos = any(x > 0 for x in col)
    neg = any(x < 0 for x in col)
    if pos == neg:
        raise InvariantViolation(f"c-vector {i} is not sign-coherent: {col}")
    return 1 if pos else -1


# -- matrix rules -----------------------------------------------------------


def mutate_c(c: IntMatrix, b: IntMatrix, k: int, eps: int = 1) -> IntMatrix:
    """``C J_k + C [eps B]_+^{k.} + [-eps C]_+^{.k} B``."""
    n = len(c)
    return mat_add(
        mat_mul(c, j_matrix(n, k)),
        mat_mul(c, row_part(positive_part(scalar_mul(eps, b)), k)),
        mat_mul(column_part(positive_part(scalar_mul(-eps, c)), k), b),
    )


def mutate_g(g: IntMatrix, b: IntMatrix, b0: IntMatrix, c: IntMatrix, k: int, eps: int = 1) -> IntMatrix:
    """``G J_k + G [-eps B]_+^{.k} - B_0 [-eps C]_+^{.k}``."""
    n = len(g)
    return mat_sub(
        mat_add(mat_mul(g, j_matrix(n, k)), mat_mul(g, column_part(positive_part(scalar_mul(-eps, b)), k))),
        mat_mul(b0, column_part(positive_part(scalar_mul(-eps, c)), k)),
    )


def mutate_f(f: Sequence[LaurentPoly], b: IntMatrix, c: IntMatrix, k: int) -> tuple[LaurentPoly, ...]:
    """Exchange ``F_k`` by ``M_k / F_k`` with exact division."""
    n = len(f)
    kk = k - 1
    plus_exp = tuple(max(c[j][kk], 0) for j in range(n))
    minus_exp = tuple(max(-c[j][kk], 0) for j in range(n))
    t1 = LaurentPoly.monomial(plus_exp)
    t2 = LaurentPoly.monomial(minus_exp)
    for j in range(n):
        bjk = b[j][kk]
        if bjk > 0:
            t1 = t1 * f[j] ** bjk
        elif bjk < 0:
            t2 = t2 * f[j] ** (-bjk)
    try:
        new = (t1 + t2).divide_exact(f[kk])
    except InexactDivision as exc:
        raise InexactDivision(f"F-polynomial division at direction {k} is not exact") from exc
    if not new.is_polynomial():
        raise InvariantViolation("F-polynomial acquired a negative exponent")
    return tuple(new if j == kk else f[j] for j in range(n))


def _check_k(p: PatternPoint, k: int) -> None:
    if not isinstance(k, int) or not 1 <= k <= p.n:
        raise ValueError(f"direction {k} out of range 1..{p.n}")


def mutate_point(p: PatternPoint, k: int, eps: int = 1) -> PatternPoint:
    """One step by the definitional rules (``eps=+1``) or their epsilon-expression."""
    _check_k(p, k)
    c = mutate_c(p.c, p.b, k, eps)
    g = mutate_g(p.g, p.b, p.initial.b, p.c, k, eps)
    f = mutate_f(p.f, p.b, p.c, k) if p.f is not None else None
    return PatternPoint(p.initial, p.walk.then(k), mutate_matrix(p.b, k, eps), c, g, f)


def fast_mutate(p: PatternPoint, k: int, with_f: bool = True) -> PatternPoint:
    """One step by the signed one-product rules.

    ``C' = C (J_k + [e B]_+^{k.})`` and ``G' = G (J_k + [-e B]_+^{.k})`` with
    ``e`` the tropical sign of the c-vector ``k``.
    """
    _check_k(p, k)
    n = p.n
    e = tropical_sign(p, k)
    c = mat_mul(p.c, mat_add(j_matrix(n, k), row_part(positive_part(scalar_mul(e, p.b)), k)))
    g = mat_mul(p.g, mat_add(j_matrix(n, k), column_part(positive_part(scalar_mul(-e, p.b)), k)))
    f = None
    if with_f and p.f is not None:
        f = mutate_f(p.f, p.b, p.c, k)
    return PatternPoint(p.initial, p.walk.then(k), mutate_matrix(p.b, k), c, g, f)


def mutate_vectors(p: PatternPoint, k: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Vector-form update of c- and g-vectors; an independent rendering of ``fast_mutate``."""
    n = p.n
    e = tropical_sign(p, k)
    cs = [p.c_vector(i) for i in range(1, n + 1)]
    gs = [p.g_vector(i) for i in range(1, n + 1)]
    ck = cs[k - 1]
    new_c = []
    for i in range(1, n + 1):
        if i == k:
            new_c.append(tuple(-x for x in ck))
        else:
            w = max(e * p.b[k - 1][i - 1], 0)
            new_c.append(tuple(a + w * b for a, b in zip(cs[i - 1], ck)))
    gk = [-x for x in gs[k - 1]]
    for j in range(1, n + 1):
        w = max(-e * p.b[j - 1][k - 1], 0)
        if w:
            gk = [a + w * b for a, b in zip(gk, gs[j - 1])]
    new_g = [tuple(gk) if i == k else gs[i - 1] for i in range(1, n + 1)]
    return new_c, new_g


@lru_cache(maxsize=4096)
def _evaluate(b0: ExchangeMatrix, directions: tuple[int, ...], with_f: bool) -> PatternPoint:
    if not directions:
        return initial_point(b0, with_f)
    prev = _evaluate(b0, directions[:-1], with_f)
    return mutate_point(prev, directions[-1])


def evaluate_walk(b0: ExchangeMatrix, walk: Walk | Sequence[int], with_f: bool = True) -> PatternPoint:
    """Apply the definitional mutation rules along ``walk`` from the initial vertex."""
    if not isinstance(walk, Walk):
        walk = Walk(walk)
    for k in walk:
        if not 1 <= k <= b0.n:
            raise ValueError(f"direction {k} out of range 1..{b0.n}")
    return _evaluate(b0, walk.directions, with_f)


def evaluate_walk_fast(b0: ExchangeMatrix, walk: Walk | Sequence[int], with_f: bool = False) -> PatternPoint:
    """Same vertex as :func:`evaluate_walk`, reached with the signed rules."""
    if not isinstance(walk, Walk):
        walk = Walk(walk)
    p = initial_point(b0, with_f)
    for k in walk:
        p = fast_mutate(p, k, with_f)
    return p


# -- Ĉ-matrices, dual mutations and principal extension ---------------------


def hat_c_matrix(p: PatternPoint) -> IntMatrix:
    """``B_{t0} C_t``, checked against ``G_t B_t``."""
    left = mat_mul(p.initial.b, p.c)
    if left != mat_mul(p.g, p.b):
        raise InvariantViolation("first duality G B = B0 C fails")
    return left


def dual_mutate_initial(p: PatternPoint, k: int) -> PatternPoint:
    """Re-express the vertex of ``p`` relative to the initial vertex mutated at ``k``.

    C and G come from the dual rules using the row sign of ``G``; the
    F-polynomials are recomputed along the rebased walk.
    """
    _check_k(p, k)
    n = p.n
    e = row_signs_of(p.g)[k - 1]
    b0 = p.initial.b
    c1 = mat_mul(mat_add(j_matrix(n, k), row_part(positive_part(scalar_mul(-e, b0)), k)), p.c)
    g1 = mat_mul(mat_add(j_matrix(n, k), column_part(positive_part(scalar_mul(e, b0)), k)), p.g)
    new_initial = p.initial.mutate(k)
    walk = Walk((k,) + p.walk.directions)
    f = None
    if p.f is not None:
        f = evaluate_walk(new_initial, walk).f
    return PatternPoint(new_initial, walk, p.b, c1, g1, f)


def principal_extension(bm: ExchangeMatrix) -> ExchangeMatrix:
    """The block matrix ``[[B, -I], [I, O]]`` of rank ``2n``."""
    n = bm.n
    top = [tuple(bm.b[i]) + tuple(-int(i == j) for j in range(n)) for i in range(n)]
    bottom = [tuple(int(i == j) for j in range(n)) + (0,) * n for i in range(n)]
    return ExchangeMatrix.from_rows(top + bottom)


def transposed_pattern_point(p: PatternPoint, walk_back: Walk) -> PatternPoint:
    """Evaluate the transposed B-pattern with initial vertex ``t`` along ``walk_back``."""
    return evaluate_walk(ExchangeMatrix.from_rows(transpose(p.b)), walk_back, with_f=False)


def reverse_walk(w: Walk) -> Walk:
    return Walk(tuple(reversed(w.directions)))


__all__ = [
    "FPolynomial",
    "PatternPoint",
    "Walk",
    "dual_mutate_initial",
    "evaluate_walk",
    "evaluate_walk_fast",
    "fast_mutate",
    "hat_c_matrix",
    "initial_point",
    "mutate_c",
    "mutate_f",
    "mutate_g",
    "mutate_point",
    "mutate_vectors",
    "principal_extension",
    "reverse_walk",
    "row_signs_of",
    "tropical_sign",
    "tropical_signs_of",
]
