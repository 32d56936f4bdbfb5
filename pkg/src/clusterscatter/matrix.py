"""Exact integer matrices, skew-symmetrizers and exchange-matrix mutation.

Matrices are tuples of row tuples of Python ints, so they are immutable,
hashable and never overflow.  Directions ``k`` are 1-based everywhere in
the public API, matching the usual mathematical labelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NotSkewSymmetrizable

IntMatrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    """Convert nested iterables into a square integer matrix."""
    m = tuple(tuple(int(a) for a in row) for row in rows)
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("matrix must be square and nonempty")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(n))


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*a))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_add(*ms: Sequence[Sequence]) -> tuple:
    return tuple(tuple(sum(vals) for vals in zip(*rows)) for rows in zip(*ms))


def mat_neg(a: Sequence[Sequence]) -> tuple:
    return tuple(tuple(-x for x in row) for row in a)


def mat_sub(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    return mat_add(a, mat_neg(b))


def column(a: Sequence[Sequence], j: int) -> tuple:
    """Column ``j`` (0-based) as a tuple."""
    return tuple(row[j] for row in a)


def columns(a: Sequence[Sequence]) -> list[tuple]:
    return [tuple(col) for col in zip(*a)]


def from_columns(cols: Sequence[Sequence]) -> tuple:
    return tuple(zip(*cols))


def determinant(a: Sequence[Sequence]) -> Fraction | int:
    """Exact determinant by fraction-free Bareiss elimination."""
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num / prev if isinstance(num, Fraction) else _exact_div(num, prev)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _exact_div(a, b):
    if isinstance(b, Fraction) or isinstance(a, Fraction):
        return Fraction(a) / b
    q, r = divmod(a, b)
    return q if r == 0 else Fraction(a, b)


def inverse(a: Sequence[Sequence]) -> tuple:
    """Exact inverse over the rationals (Gauss-Jordan).  Raises on singular input."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(_demote(x) for x in row[n:]) for row in m)


def _demote(x: Fraction) -> Fraction | int:
    return x.numerator if x.denominator == 1 else x


def solve(a: Sequence[Sequence], b: Sequence) -> tuple:
    """Solve ``a x = b`` exactly for square nonsingular ``a``."""
    return tuple(_demote(Fraction(x)) for x in mat_vec(inverse(a), b))


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank of a list of vectors over the rationals."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = reduce(gcd, (abs(int(x)) for x in v), 0)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(int(x) // g for x in v)


def primitive_rational(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the ray of a rational vector."""
    fr = [Fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    return primitive([int(x * den) for x in fr])


# -- masked and positive-part operators ---------------------------------------


def positive_part(a: Sequence[Sequence[int]]) -> IntMatrix:
    """Entrywise ``max(a_ij, 0)``."""
    return tuple(tuple(max(x, 0) for x in row) for row in a)


def column_part(a: Sequence[Sequence[int]], k: int) -> IntMatrix:
    """Keep only column ``k`` (1-based); all other entries become zero."""
    return tuple(tuple(x if j == k - 1 else 0 for j, x in enumerate(row)) for row in a)


def row_part(a: Sequence[Sequence[int]], k: int) -> IntMatrix:
    """Keep only row ``k`` (1-based)."""
    n = len(a[0])
    return tuple(tuple(row) if i == k - 1 else (0,) * n for i, row in enumerate(a))


def j_matrix(n: int, k: int) -> IntMatrix:
    """Identity with ``-1`` at diagonal position ``k`` (1-based)."""
    return tuple(tuple((-1 if i == k - 1 else 1) if i == j else 0 for j in range(n)) for i in range(n))


def masked(a: Sequence[Sequence[int]], mode: str, k: int | None = None) -> IntMatrix:
    """Dispatch over the four matrix operators.

    ``mode`` is one of ``"plus"``, ``"colk"``, ``"rowk"``, ``"jk"``.  For
    ``"jk"`` the entries of ``a`` are ignored and only its size is used.
    """
    if mode == "plus":
        return positive_part(a)
    n = len(a)
    if k is None or not 1 <= k <= n:
        raise ValueError(f"direction {k} out of range 1..{n}")
    if mode == "colk":
        return column_part(a, k)
    if mode == "rowk":
        return row_part(a, k)
    if mode == "jk":
        return j_matrix(n, k)
    raise ValueError(f"unknown mode {mode!r}")


def scalar_mul(s: int, a: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(s * x for x in row) for row in a)


# -- skew-symmetrizers ---------------------------------------------------------


@dataclass(frozen=True)
class SkewSymmetrizer:
    """Positive integers ``d_i`` with ``D = diag(1/d_i)`` making ``DB`` skew-symmetric."""

    d: tuple[int, ...]

    @property
    def D(self) -> tuple[tuple[Fraction, ...], ...]:
        n = len(self.d)
        return tuple(tuple(Fraction(1, self.d[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        """The D-inner product ``u^T D v``."""
        return sum((Fraction(a) * b / di for a, b, di in zip(u, v, self.d)), Fraction(0))


def find_skew_symmetrizer(b: Sequence[Sequence[int]]) -> SkewSymmetrizer | None:
    """Return the normalized skew-symmetrizer of ``b`` or ``None``.

    Solves ``b_ij / d_i = -b_ji / d_j`` by propagating ratios along the graph
    of nonzero entries.  Each connected component is scaled to coprime
    integers, so the result is unique.
    """
    b = as_matrix(b)
    n = len(b)
    for i in range(n):
        if b[i][i] != 0:
            return None
        for j in range(n):
            if (b[i][j] == 0) != (b[j][i] == 0):
                return None
            if b[i][j] * b[j][i] > 0:
                return None
    ratio: list[Fraction | None] = [None] * n
    comps: list[list[int]] = []
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        comp = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if b[i][j] == 0:
                    continue
                # d_j = -d_i * b_ji / b_ij
                want = -ratio[i] * Fraction(b[j][i], b[i][j])
                if ratio[j] is None:
                    ratio[j] = want
                    comp.append(j)
                    stack.append(j)
                elif ratio[j] != want:
                    return None
        comps.append(comp)
    d = [0] * n
    for comp in comps:
        den = reduce(lcm, (ratio[i].denominator for i in comp), 1)
        ints = [int(ratio[i] * den) for i in comp]
        g = reduce(gcd, ints, 0)
        for i, v in zip(comp, ints):
            d[i] = v // g
    if any(x <= 0 for x in d):
        return None
    return SkewSymmetrizer(tuple(d))


# -- exchange matrices -------------------------------------------------------


@dataclass(frozen=True)
class ExchangeMatrix:
    """A skew-symmetrizable integer matrix together with its skew-symmetrizer."""

    b: IntMatrix
    skew: SkewSymmetrizer

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "ExchangeMatrix":
        b = as_matrix(rows)
        skew = find_skew_symmetrizer(b)
        if skew is None:
            raise NotSkewSymmetrizable(f"no positive skew-symmetrizer for {b}")
        return cls(b, skew)

    def __post_init__(self) -> None:
        n = len(self.b)
        if len(self.skew.d) != n:
            raise ValueError("skew-symmetrizer size mismatch")
        d = self.skew.d
        for i in range(n):
            for j in range(n):
                if self.b[i][j] * d[j] != -self.b[j][i] * d[i]:
                    raise NotSkewSymmetrizable(f"D B is not skew-symmetric at ({i + 1},{j + 1})")

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def d(self) -> tuple[int, ...]:
        return self.skew.d

    def column(self, k: int) -> Vector:
        """Column ``k`` (1-based)."""
        return column(self.b, k - 1)

    def det(self) -> int:
        return int(determinant(self.b))

    def mutate(self, k: int, eps: int = 1) -> "ExchangeMatrix":
        return mutate_exchange(self, k, eps)

    def transpose(self) -> "ExchangeMatrix":
        """The transposed exchange matrix, skew-symmetrized by the reciprocal weights."""
        return ExchangeMatrix.from_rows(transpose(self.b))


def _check_direction(n: int, k: int) -> None:
    if not isinstance(k, int) or not 1 <= k <= n:
        raise ValueError(f"direction {k} out of range 1..{n}")


def mutate_matrix(b: Sequence[Sequence[int]], k: int, eps: int = 1) -> IntMatrix:
    """Entrywise mutation of a bare integer matrix at ``k`` with sign ``eps``."""
    n = len(b)
    _check_direction(n, k)
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    kk = k - 1
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + b[i][kk] * max(eps * b[kk][j], 0) + max(-eps * b[i][kk], 0) * b[kk][j])
        out.append(tuple(row))
    return tuple(out)


def mutate_matrix_product(b: Sequence[Sequence[int]], k: int) -> IntMatrix:
    """Mutation in product form ``(J_k + [-B]_+^{.k}) B (J_k + [B]_+^{k.})``."""
    n = len(b)
    _check_direction(n, k)
    left = mat_add(j_matrix(n, k), column_part(positive_part(mat_neg(b)), k))
    right = mat_add(j_matrix(n, k), row_part(positive_part(b), k))
    return mat_mul(mat_mul(left, b), right)


def mutate_exchange(bm: ExchangeMatrix, k: int, eps: int = 1) -> ExchangeMatrix:
    """Mutate an exchange matrix; the skew-symmetrizer carries over unchanged."""
    return ExchangeMatrix(mutate_matrix(bm.b, k, eps), bm.skew)
