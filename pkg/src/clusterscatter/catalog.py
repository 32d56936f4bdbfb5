"""Named exchange matrices used throughout the tests and the CLI."""

from __future__ import annotations

from .matrix import ExchangeMatrix

RANK2 = {
    "A2": ((0, -1), (1, 0)),
    "B2": ((0, -1), (2, 0)),
    "G2": ((0, -1), (3, 0)),
    "A1^(1)": ((0, -2), (2, 0)),
    "A2^(2)": ((0, -1), (4, 0)),
}

HIGHER = {
    "A3": ((0, -1, 0), (1, 0, -1), (0, 1, 0)),
    "B3": ((0, -1, 0), (1, 0, -1), (0, 2, 0)),
    "C3": ((0, -1, 0), (1, 0, -2), (0, 1, 0)),
    "A4": ((0, -1, 0, 0), (1, 0, -1, 0), (0, 1, 0, -1), (0, 0, 1, 0)),
}

FINITE_TYPES = ("A2", "B2", "G2", "A3", "B3", "C3")
AFFINE_TYPES = ("A1^(1)", "A2^(2)")

# Outgoing walls of the finite-type consistent diagrams: ray -> normal n0, function 1 + y-hat^{n0}.
FINITE_OUTGOING = {
    "A2": {(1, -1): (1, 1)},
    "B2": {(1, -2): (1, 1), (1, -1): (1, 2)},
    "G2": {(1, -3): (1, 1), (1, -2): (2, 3), (2, -3): (1, 2), (1, -1): (1, 3)},
}


def _square_series(ell: int, step: int) -> tuple[int, ...]:
    """Coefficients of ``(sum_k z^k)^2`` up to degree ``ell // step``."""
    return tuple(j + 1 for j in range(1, ell // step + 1))


def _twisted_square_series(ell: int, step: int) -> tuple[int, ...]:
    """Coefficients of ``(1 + z) (sum_k z^k)^2`` up to degree ``ell // step``."""
    return tuple(2 * j + 1 for j in range(1, ell // step + 1))


# The one non-cluster wall of the affine rank-2 diagrams: ray, normal, coefficients at truncation ell.
AFFINE_EXTRA = {
    "A1^(1)": ((1, -1), (1, 1), lambda ell: _square_series(ell, 2)),
    "A2^(2)": ((1, -2), (1, 2), lambda ell: _twisted_square_series(ell, 3)),
}

# Walls after the piecewise-linear step of A2 mutation: (support rays, y-hat normal in the old seed).
A2_TRANSFORMED = {
    1: [(((0, 1), (0, -1)), (-1, 0)), (((1, 1),), (-1, 1)), (((1, 0),), (0, 1)), (((-1, 0),), (0, 1))],
    2: [(((1, 0), (-1, 0)), (0, -1)), (((-1, 1),), (1, 1)), (((0, -1),), (1, 0)), (((1, -1),), (1, 1))],
}

ALIASES = {"A11": "A1^(1)", "A22": "A2^(2)"}


def named(name: str) -> ExchangeMatrix:
    """The exchange matrix registered under ``name`` (``A11`` and ``A22`` are accepted)."""
    key = ALIASES.get(name, name)
    rows = RANK2.get(key) or HIGHER.get(key)
    if rows is None:
        raise KeyError(f"unknown matrix name {name!r}")
    return ExchangeMatrix.from_rows(rows)


def rank2(b: int, c: int) -> ExchangeMatrix:
    """``[[0, -c], [b, 0]]`` for positive ``b``, ``c``; non-affine when ``bc > 4``."""
    if b <= 0 or c <= 0:
        raise ValueError("b and c must be positive")
    return ExchangeMatrix.from_rows(((0, -c), (b, 0)))


def names() -> list[str]:
    return list(RANK2) + list(HIGHER)


__all__ = ["A2_TRANSFORMED", "AFFINE_EXTRA", "AFFINE_TYPES", "FINITE_OUTGOING", "FINITE_TYPES", "HIGHER", "RANK2", "named", "names", "rank2"]
