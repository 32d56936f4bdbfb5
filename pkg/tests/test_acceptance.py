"""Acceptance criteria, one test each.

Every criterion prints one line ``PASS``/``FAIL`` with its runtime and limit.
Under pytest the lines are repeated in the terminal summary; running this
file directly prints them and exits non-zero on any failure.
"""

from __future__ import annotations

import sys
from time import perf_counter

from clusterscatter import catalog
from clusterscatter.fan import g_vector_sequence
from clusterscatter.matrix import ExchangeMatrix
from clusterscatter.pattern import evaluate_walk
from clusterscatter.poly import LaurentPoly
from clusterscatter.scattering import complete_rank2, ray_table
from clusterscatter.separation import SubtractionFreeRational, tropicalize
from clusterscatter.suites import (
    applications,
    consistency_rank2,
    dualities,
    fans,
    laurent,
    mutation,
    pl_maps,
    signs,
    theta_suite,
    tropical,
)

LINES: list[str] = []
SEED = 0


def _run(number: int, title: str, limit: float | None, body) -> None:
    start = perf_counter()
    try:
        detail = body() or ""
        ok = True
    except AssertionError as exc:
        ok, detail = False, str(exc) or "assertion failed"
    elapsed = perf_counter() - start
    fast = limit is None or elapsed < limit
    budget = f" < {limit:g} s" if limit is not None else ""
    status = "PASS" if ok and fast else "FAIL"
    line = f"{status} criterion {number:2d}: {title} [{elapsed:.2f} s{budget}]"
    if detail:
        line += f" {detail}"
    LINES.append(line)
    print(line)
    assert ok, line
    assert fast, line


def _suite(rep) -> str:
    assert rep.ok, "; ".join(rep.failures[:5])
    checks = sum(rep.counts.values())
    notes = f"; {'; '.join(rep.notes)}" if rep.notes else ""
    return f"({checks} checks{notes})"


# -- 1 -------------------------------------------------------------------------------

A2_G = [
    ((1, 0), (0, 1)),
    ((-1, 0), (0, 1)),
    ((-1, 0), (0, -1)),
    ((1, 0), (-1, -1)),
    ((1, 1), (-1, 0)),
    ((0, 1), (1, 0)),
]


def test_criterion_01_a2_g_matrices():
    def body():
        b0 = ExchangeMatrix.from_rows([[0, -1], [1, 0]])
        walk = [1, 2, 1, 2, 1]
        got = [evaluate_walk(b0, walk[:t]).g for t in range(6)]
        assert got == A2_G, f"G-matrices {got}"
        assert got[5] == ((0, 1), (1, 0)), "G_t5 is not the transposition"
        return "(6 matrices, pentagon)"

    _run(1, "A2 G-matrix sequence", 1.0, body)


# -- 2 -------------------------------------------------------------------------------

LISTED = {
    "B2": [(-1, 0), (0, -1), (1, -2), (1, -1), (1, 0), (0, 1)],
    "G2": [(-1, 0), (0, -1), (1, -3), (1, -2), (2, -3), (1, -1), (1, 0), (0, 1)],
    "A1^(1)": [(-1, 0), (0, -1), (1, -2), (2, -3), (3, -4)],
    "A2^(2)": [(-1, 0), (0, -1), (1, -4), (1, -3), (3, -8), (2, -5), (5, -12), (3, -7)],
}
LISTED_REVERSE = {
    "A1^(1)": [(2, -1), (3, -2), (4, -3), (5, -4)],
    "A2^(2)": [(1, -1), (3, -4), (2, -3), (5, -8), (3, -5), (7, -12)],
}


def _recursion(first, second, a, b, length):
    """``v_{i+2} = -v_i + a v_{i+1}`` for odd ``i``, ``-v_i + b v_{i+1}`` for even ``i``."""
    seq = [first, second]
    while len(seq) < length:
        i = len(seq) - 1  # 1-based index of the older term
        w = a if i % 2 == 1 else b
        seq.append(tuple(-x + w * y for x, y in zip(seq[-2], seq[-1])))
    return seq


def _check_rank2(name: str) -> str:
    b0 = catalog.named(name)
    c, b = -b0.b[0][1], b0.b[1][0]
    first = g_vector_sequence(b0, 1, 12)
    listed = LISTED[name]
    if name in ("B2", "G2"):
        assert first[: len(listed)] == listed, f"{name}: {first}"
        assert set(first) == set(listed), f"{name}: extra vectors within depth 12"
        return f"{len(set(listed))} rays"
    second = g_vector_sequence(b0, 2, 12)
    assert first[: len(listed)] == listed, f"{name}: {first}"
    assert second[: len(LISTED_REVERSE[name])] == LISTED_REVERSE[name], f"{name}: {second}"
    assert first == _recursion((-1, 0), (0, -1), b, c, 12), f"{name}: recursion broken"
    assert second == _recursion((c, -1), (b * c - 1, -b), c, b, 12), f"{name}: reverse recursion broken"
    return "24 vectors"


def test_criterion_02_rank2_g_vector_catalogs():
    parts = []

    def body():
        for name in LISTED:
            start = perf_counter()
            info = _check_rank2(name)
            took = perf_counter() - start
            assert took < 1.0, f"{name} took {took:.2f} s"
            parts.append(f"{name}: {info}")
        return "(" + ", ".join(parts) + ")"

    _run(2, "rank-2 g-vector catalogs to depth 12", 4.0, body)


# -- 3 to 8: corpus and fan suites -----------------------------------------------------------


def test_criterion_03_dualities():
    _run(3, "duality identities on 500 random cases", 30.0, lambda: _suite(dualities(SEED, 500, 4, 10)))


def test_criterion_04_signs_and_f_properties():
    _run(4, "sign-coherence and F-polynomial properties", None, lambda: _suite(signs(SEED, 500, 4, 10)))


def test_criterion_05_laurent_oracle():
    _run(5, "exchange relations vs separation formula on 100 walks", 60.0, lambda: _suite(laurent(SEED, 100, 3, 8)))


def test_criterion_06_tropicalization():
    def body():
        u = [LaurentPoly.variable(3, i, "u") for i in (1, 2, 3)]
        num = 3 * u[0] * u[1] ** 2 * u[2] ** 2 + 2 * u[0] ** 2 * u[1] * u[2]
        den = 3 * u[1] ** 2 + u[0] ** 2 * u[1] ** 2 + u[0] * u[1] ** 3 * u[2]
        value = tropicalize(SubtractionFreeRational(num, den))
        assert value == (1, -1, 1), f"worked example gives {value}"
        return _suite(tropical(SEED, 500, 4, 10))

    _run(6, "tropicalization", None, body)


def test_criterion_07_fans():
    _run(7, "fan property and completeness flags", 60.0, lambda: _suite(fans(SEED)))


def test_criterion_08_pl_maps():
    _run(8, "piecewise-linear maps", None, lambda: _suite(pl_maps(SEED)))


# -- 9 to 11: scattering diagrams and theta functions -----------------------------------------


def test_criterion_09_rank2_consistency():
    def body():
        ell = 8
        a11 = ray_table(complete_rank2(catalog.named("A1^(1)"), ell), ell)[(1, -1)]
        # (sum_k z^k)^2 = sum_j (j + 1) z^j with z = yhat1 yhat2 of degree 2
        assert a11.direction == (1, 1) and a11.coeffs == (2, 3, 4, 5), f"A1^(1) extra wall {a11}"
        a22 = ray_table(complete_rank2(catalog.named("A2^(2)"), ell), ell)[(1, -2)]
        assert a22.direction == (1, 2) and a22.coeffs == (3, 5), f"A2^(2) extra wall {a22}"
        return _suite(consistency_rank2(ell))

    _run(9, "rank-2 scattering consistency and catalogs", 30.0, body)


def test_criterion_10_diagram_mutation():
    _run(10, "diagram mutation", 30.0, lambda: _suite(mutation(8)))


def test_criterion_11_theta():
    _run(11, "theta functions", 120.0, lambda: _suite(theta_suite(8)))


# -- 12 ------------------------------------------------------------------------------


def test_criterion_12_applications():
    _run(12, "g-vector/x-variable bijection, detropicalization, A2 complex", None, lambda: _suite(applications(12)))


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    print(f"{12 - failed}/12 criteria pass")
    sys.exit(1 if failed else 0)
