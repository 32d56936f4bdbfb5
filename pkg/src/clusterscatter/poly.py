"""Sparse multivariate Laurent polynomials over the integers.

A polynomial is a mapping from exponent tuples to nonzero integer
coefficients.  Exponents may be negative, so the same class carries
F-polynomials (nonnegative exponents) and Laurent cluster variables.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InexactDivision

Exponent = tuple[int, ...]


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """Immutable Laurent polynomial in ``nvars`` variables.

    ``symbol`` only affects printing (``x`` or ``y``); equality compares terms.
    """

    __slots__ = ("nvars", "terms", "symbol", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None, symbol: str = "y"):
        self.nvars = nvars
        clean: dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(int(x) for x in e)
                    if len(e) != nvars:
                        raise ValueError("exponent length mismatch")
                    clean[e] = int(c)
        self.terms = clean
        self.symbol = symbol
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, int], symbol: str) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p.symbol = symbol
        p._hash = None
        return p

    @classmethod
    def constant(cls, nvars: int, c: int = 1, symbol: str = "y") -> "LaurentPoly":
        return cls._raw(nvars, {(0,) * nvars: c} if c else {}, symbol)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: int = 1, symbol: str = "y") -> "LaurentPoly":
        e = tuple(int(x) for x in exponent)
        return cls._raw(len(e), {e: coeff} if coeff else {}, symbol)

    @classmethod
    def variable(cls, nvars: int, i: int, symbol: str = "y") -> "LaurentPoly":
        """The ``i``-th variable, 1-based."""
        e = [0] * nvars
        e[i - 1] = 1
        return cls.monomial(e, 1, symbol)

    def with_symbol(self, symbol: str) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, self.terms, symbol)

    # -- basic queries -------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, exponent: Sequence[int]) -> int:
        return self.terms.get(tuple(exponent), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def min_exponent(self) -> Exponent:
        """Entrywise minimum of the exponents (the monomial gcd)."""
        if not self.terms:
            raise ValueError("zero polynomial")
        return tuple(min(col) for col in zip(*self.terms))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.nvars, other, self.symbol)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out, self.symbol)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.symbol)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly._raw(self.nvars, {}, self.symbol)
            return LaurentPoly._raw(self.nvars, {e: c * other for e, c in self.terms.items()}, self.symbol)
        other = self._coerce(other)
        if len(other.terms) == 1:
            (oe, oc), = other.terms.items()
            return LaurentPoly._raw(self.nvars, {_add_exp(e, oe): c * oc for e, c in self.terms.items()}, self.symbol)
        out: dict[Exponent, int] = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[tuple(x + y for x, y in zip(e1, e2))] += c1 * c2
        return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if c}, self.symbol)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("negative power needs a unit coefficient")
            return LaurentPoly.monomial(tuple(k * x for x in e), c ** (-k), self.symbol)
        result = LaurentPoly.constant(self.nvars, 1, self.symbol)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division in the Laurent polynomial ring.

        Uses leading-term elimination in lex order.  Newton polytopes add
        under multiplication, so every quotient exponent lies in the box
        ``[min(self) - min(divisor), max(self) - max(divisor)]`` taken
        coordinatewise.  Leaving the box, or a nondivisible coefficient,
        raises :class:`InexactDivision`.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly._raw(self.nvars, {}, self.symbol)
        if divisor.is_monomial():
            (de, dc), = divisor.terms.items()
            out = {}
            for e, c in self.terms.items():
                q, r = divmod(c, dc)
                if r:
                    raise InexactDivision("coefficient not divisible")
                out[_sub_exp(e, de)] = q
            return LaurentPoly._raw(self.nvars, out, self.symbol)
        d_lead = max(divisor.terms)
        d_lc = divisor.terms[d_lead]
        lo = _sub_exp(self.min_exponent(), divisor.min_exponent())
        hi = _sub_exp(tuple(max(col) for col in zip(*self.terms)), tuple(max(col) for col in zip(*divisor.terms)))
        rem = dict(self.terms)
        heap = [tuple(-x for x in e) for e in rem]
        heapq.heapify(heap)
        quotient: dict[Exponent, int] = {}
        d_items = list(divisor.terms.items())
        while rem:
            while True:
                e = tuple(-x for x in heapq.heappop(heap))
                if e in rem:
                    break
            qe = _sub_exp(e, d_lead)
            if any(q < a or q > b for q, a, b in zip(qe, lo, hi)):
                raise InexactDivision("nonzero remainder in Laurent division")
            qc, r = divmod(rem[e], d_lc)
            if r:
                raise InexactDivision("leading coefficient not divisible")
            quotient[qe] = qc
            for de, dc in d_items:
                te = _add_exp(qe, de)
                v = rem.get(te, 0) - qc * dc
                if v:
                    if te not in rem:
                        heapq.heappush(heap, tuple(-x for x in te))
                    rem[te] = v
                else:
                    rem.pop(te, None)
            if e in rem:
                heapq.heappush(heap, tuple(-x for x in e))
        return LaurentPoly._raw(self.nvars, quotient, self.symbol)

    # -- substitution --------------------------------------------------------

    def substitute_monomials(self, images: Sequence[Sequence[int]], symbol: str | None = None) -> "LaurentPoly":
        """Substitute variable ``i`` by the monomial with exponent ``images[i]``.

        Exponent vectors transform linearly: ``e -> sum_i e_i * images[i]``.
        """
        m = len(images[0]) if images else 0
        out: dict[Exponent, int] = defaultdict(int)
        for e, c in self.terms.items():
            ne = [0] * m
            for ei, img in zip(e, images):
                if ei:
                    for j, v in enumerate(img):
                        ne[j] += ei * v
            out[tuple(ne)] += c
        return LaurentPoly._raw(m, {e: c for e, c in out.items() if c}, symbol or self.symbol)

    def substitute(self, images: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Substitute variable ``i`` by an arbitrary Laurent polynomial.

        Negative exponents require monomial images.
        """
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars
        sym = images[0].symbol
        cache: dict[tuple[int, int], LaurentPoly] = {}

        def power(i: int, k: int) -> LaurentPoly:
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        out = LaurentPoly.constant(target, 0, sym)
        for e, c in self.terms.items():
            term = LaurentPoly.constant(target, c, sym)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    # -- printing ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in graded-lex order: by total degree, then lexicographically."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = format_monomial(e, self.symbol)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[list]:
        return [[list(e), c] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable, symbol: str = "y") -> "LaurentPoly":
        return cls(nvars, {tuple(e): c for e, c in data}, symbol)


def format_monomial(e: Sequence[int], symbol: str) -> str:
    """Render an exponent vector as ``y^(1,2)``; the zero vector renders as ``1``."""
    if not any(e):
        return "1"
    return f"{symbol}^(" + ",".join(str(x) for x in e) + ")"


def poly_from_dict(nvars: int, terms: Mapping[Exponent, int], symbol: str = "y") -> LaurentPoly:
    return LaurentPoly(nvars, terms, symbol)
