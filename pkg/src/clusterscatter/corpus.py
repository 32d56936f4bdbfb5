"""Seeded random exchange matrices and walks for the property suites."""

from __future__ import annotations

import random
from math import gcd
from dataclasses import dataclass

from .matrix import ExchangeMatrix
from .pattern import Walk


@dataclass(frozen=True)
class Case:
    ident: int
    b0: ExchangeMatrix
    walk: Walk


def random_exchange(rng: random.Random, n: int) -> ExchangeMatrix:
    """``b_ij = s_ij d_i / gcd(d_i, d_j)`` with ``s`` skew-symmetric in ``{-1, 0, 1}``.

    ``d`` skew-symmetrizes the result and ``|b_ij b_ji| <= 2``.
    """
    d = [rng.choice((1, 1, 2)) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            s = rng.choice((-1, 0, 1))
            g = gcd(d[i], d[j])
            rows[i][j] = s * d[i] // g
            rows[j][i] = -s * d[j] // g
    return ExchangeMatrix.from_rows(rows)


def random_walk(rng: random.Random, n: int, length: int) -> Walk:
    dirs: list[int] = []
    while len(dirs) < length:
        k = rng.randint(1, n)
        if n > 1 and dirs and dirs[-1] == k:
            continue
        dirs.append(k)
        if n == 1:
            break
    return Walk(dirs)


def corpus(seed: int, count: int, max_rank: int = 4, max_depth: int = 10, min_rank: int = 2) -> list[Case]:
    """``count`` reproducible cases with rank in ``[min_rank, max_rank]`` and walk length up to ``max_depth``."""
    rng = random.Random(seed)
    out = []
    for ident in range(count):
        n = rng.randint(min_rank, max_rank)
        b0 = random_exchange(rng, n)
        out.append(Case(ident, b0, random_walk(rng, n, rng.randint(0, max_depth))))
    return out


__all__ = ["Case", "corpus", "random_exchange", "random_walk"]
