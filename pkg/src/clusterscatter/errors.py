"""Exception types shared across the package."""

from __future__ import annotations


class InvariantViolation(RuntimeError):
    """A mathematical invariant that must always hold was found broken.

    Raising this means a bug in the engine, never bad user input.
    """


class InexactDivision(InvariantViolation):
    """A polynomial division that theory guarantees to be exact left a remainder."""


class NotSkewSymmetrizable(ValueError):
    """The matrix admits no positive diagonal skew-symmetrizer."""


class SingularMatrix(ValueError):
    """An operation needs a nonsingular exchange matrix."""


class UnsupportedRank(ValueError):
    """The operation is only implemented for a restricted rank."""
