"""Invariant suites shared by ``clusterscatter verify`` and the acceptance tests.

Each suite returns a :class:`SuiteReport` counting how often every identity
was checked and listing failures.  Suites are deterministic for a fixed seed.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from . import catalog
from .corpus import corpus, random_exchange
from .errors import InvariantViolation
from .fan import (
    build_g_fan,
    check_nonaffine_limits,
    cone_key,
    pl_map,
    pl_matrix,
    row_sign_coherent,
    transport_cones,
    verify_fan,
)
from .matrix import ExchangeMatrix, determinant, identity, mat_mul, mutate_matrix, transpose
from .pattern import (
    PatternPoint,
    Walk,
    dual_mutate_initial,
    evaluate_walk,
    fast_mutate,
    hat_c_matrix,
    initial_point,
    mutate_point,
    mutate_vectors,
    principal_extension,
    reverse_walk,
    transposed_pattern_point,
)
from .poly import LaurentPoly
from .scattering import (
    TruncatedSeries,
    WallFunction,
    apply_path,
    chamber_check_rank2,
    check_consistency_rank2,
    cluster_walls,
    complete_rank2,
    equivalent,
    mutate_diagram,
    mutation_truncation,
    path_crossings,
    path_ordered_product,
    pattern_points,
    ray_table,
    transform_walls,
)
from .separation import (
    SubtractionFreeRational,
    check_pairings,
    cluster,
    detropicalization_pairs,
    initial_cluster,
    mutate_x_direct,
    permute_cluster,
    tropicalize,
    x_variable,
    y_variable,
)
from .theta import check_line, theta

F_STEP_BUDGET = 20000


@dataclass
class SuiteReport:
    name: str
    counts: Counter = field(default_factory=Counter)
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def check(self, identity: str, ok: bool, detail: str = "") -> bool:
        self.counts[identity] += 1
        if not ok:
            self.failures.append(f"{identity}: {detail}" if detail else identity)
        return ok

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "SuiteReport") -> None:
        self.counts.update(other.counts)
        self.failures.extend(f"[{other.name}] {f}" for f in other.failures)
        self.notes.extend(f"[{other.name}] {n}" for n in other.notes)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "checks": dict(sorted(self.counts.items())),
            "failures": list(self.failures),
            "notes": list(self.notes),
        }

    def __str__(self) -> str:
        lines = [f"suite {self.name}: {'pass' if self.ok else 'FAIL'}"]
        for k, v in sorted(self.counts.items()):
            lines.append(f"  {k}: {v}")
        lines.extend(f"  note: {n}" for n in self.notes)
        lines.extend(f"  failure: {f}" for f in self.failures[:50])
        if len(self.failures) > 50:
            lines.append(f"  ... {len(self.failures) - 50} more failures")
        return "\n".join(lines)


def _drop_f(p: PatternPoint) -> PatternPoint:
    return replace(p, f=None)


def f_step_cost(p: PatternPoint, k: int) -> int:
    """Term-count bound for the products formed when mutating the F-polynomials at ``k``."""
    sizes = [len(f.terms) for f in p.f]
    plus = minus = 1
    for j in range(p.n):
        bjk = p.b[j][k - 1]
        if bjk > 0:
            plus *= sizes[j] ** bjk
        elif bjk < 0:
            minus *= sizes[j] ** (-bjk)
    return max(plus, minus)


def _path(b0: ExchangeMatrix, walk: Walk, with_f: bool, budget: int = F_STEP_BUDGET) -> list[PatternPoint]:
    """Points along ``walk``; F-tracking stops before a step whose cost bound exceeds ``budget``."""
    p = initial_point(b0, with_f)
    out = [p]
    for k in walk:
        if p.f is not None and f_step_cost(p, k) > budget:
            p = _drop_f(p)
        p = mutate_point(p, k)
        out.append(p)
    return out


# -- pattern identities ---------------------------------------------------------


def _second_duality(p: PatternPoint) -> bool:
    d = p.initial.d
    n = p.n
    gt = transpose(p.g)
    lhs = tuple(
        tuple(sum(Fraction(d[i]) * gt[i][j] * Fraction(1, d[j]) * p.c[j][m] for j in range(n)) for m in range(n))
        for i in range(n)
    )
    return lhs == identity(n)


def _cbc(p: PatternPoint) -> bool:
    n = p.n
    d = p.initial.d
    db0 = tuple(tuple(Fraction(p.initial.b[i][j], d[i]) for j in range(n)) for i in range(n))
    dbt = tuple(tuple(Fraction(p.b[i][j], d[i]) for j in range(n)) for i in range(n))
    return mat_mul(mat_mul(transpose(p.c), db0), p.c) == dbt


def dualities(seed: int = 0, count: int = 500, max_rank: int = 4, max_depth: int = 10) -> SuiteReport:
    """Dualities, unimodularity, epsilon-independence and the alternative update rules."""
    rep = SuiteReport("dualities")
    rng = random.Random(seed + 1)
    for case in corpus(seed, count, max_rank, max_depth):
        b0 = case.b0
        pts = _path(b0, case.walk, with_f=False)
        for p in pts:
            tag = f"case {case.ident} walk {p.walk.directions}"
            rep.check("first duality G B = B0 C", mat_mul(p.g, p.b) == mat_mul(b0.b, p.c), tag)
            rep.check("second duality D^-1 G^T D C = I", _second_duality(p), tag)
            rep.check("unimodularity |det C| = |det G| = 1", abs(determinant(p.c)) == 1 == abs(determinant(p.g)), tag)
            rep.check("C^T (D B0) C = D B", _cbc(p), tag)
            try:
                hat_c_matrix(p)
                ok = True
            except InvariantViolation:
                ok = False
            rep.check("c-hat = B0 C = G B", ok, tag)
            rep.check("pairings (g, d c)_D and (c, d c-hat)_D", not check_pairings(p), tag)
            back = transposed_pattern_point(p, reverse_walk(p.walk))
            rep.check("third duality C = (G-tilde)^T", p.c == transpose(back.g), tag)
        for p, q in zip(pts, pts[1:]):
            k = q.walk.directions[-1] if len(q.walk) > len(p.walk) else None
            if k is None:
                continue
            tag = f"case {case.ident} walk {q.walk.directions}"
            neg = mutate_point(p, k, eps=-1)
            rep.check("eps-independence of C, G, B", (neg.c, neg.g, neg.b) == (q.c, q.g, q.b), tag)
            fast = fast_mutate(p, k, with_f=False)
            rep.check("signed one-product rule", (fast.c, fast.g) == (q.c, q.g), tag)
            cs, gs = mutate_vectors(p, k)
            rep.check("vector-form update", [q.c_vector(i) for i in range(1, p.n + 1)] == cs
                      and [q.g_vector(i) for i in range(1, p.n + 1)] == gs, tag)
            back = mutate_point(q, k)
            rep.check("mutation involution", (back.c, back.g, back.b) == (p.c, p.g, p.b), tag)
        end = pts[-1]
        k = rng.randint(1, b0.n)
        re = dual_mutate_initial(end, k)
        ref = evaluate_walk(b0.mutate(k), Walk((k,) + end.walk.directions), with_f=False)
        rep.check("dual mutation of the initial vertex", (re.c, re.g) == (ref.c, ref.g), f"case {case.ident} k={k}")
        if b0.n <= 3:
            ext = principal_extension(b0)
            pe = evaluate_walk(ext, end.walk, with_f=False)
            n = b0.n
            blocks_ok = all(
                pe.c[i][j] == (end.c[i][j] if i < n and j < n else int(i == j))
                and pe.g[i][j] == (end.g[i][j] if i < n and j < n else int(i == j))
                for i in range(2 * n)
                for j in range(2 * n)
            )
            rep.check("principal extension block stability", blocks_ok, f"case {case.ident}")
    return rep


def signs(seed: int = 0, count: int = 500, max_rank: int = 4, max_depth: int = 10,
          budget: int = F_STEP_BUDGET) -> SuiteReport:
    """Sign-coherence of C and G and the constant-term and positivity properties of F."""
    rep = SuiteReport("signs")
    skipped = 0
    for case in corpus(seed, count, max_rank, max_depth):
        for p in _path(case.b0, case.walk, with_f=True, budget=budget):
            tag = f"case {case.ident} walk {p.walk.directions}"
            try:
                p.eps
                ok = True
            except InvariantViolation:
                ok = False
            rep.check("C columns sign-coherent", ok, tag)
            rep.check("G rows sign-coherent", row_sign_coherent(p.g), tag)
            if p.f is None:
                skipped += 1
                continue
            for i, f in enumerate(p.f, 1):
                rep.check("F constant term 1", f.coefficient((0,) * p.n) == 1, f"{tag} F_{i}")
                rep.check("F nonnegative coefficients", f.has_nonnegative_coefficients(), f"{tag} F_{i}")
                rep.check("F is a polynomial", f.is_polynomial(), f"{tag} F_{i}")
    rep.notes.append(f"F checks skipped at {skipped} vertices past the step budget {budget}")
    return rep


def laurent(seed: int = 0, count: int = 100, max_rank: int = 3, max_depth: int = 8,
            budget: int = F_STEP_BUDGET) -> SuiteReport:
    """Exchange-relation cluster variables against the separation formula at every vertex of each walk."""
    rep = SuiteReport("laurent")
    skipped = 0
    full = 0
    for case in corpus(seed, count, max_rank, max_depth):
        xs = initial_cluster(case.b0.n)
        b = case.b0.b
        pts = _path(case.b0, case.walk, with_f=True, budget=budget)
        for step, p in enumerate(pts):
            if step:
                k = case.walk.directions[step - 1]
                xs = mutate_x_direct(xs, b, k)
                b = mutate_matrix(b, k)
            if p.f is None:
                skipped += len(pts) - step
                break
            sep = cluster(p)
            for i in range(case.b0.n):
                tag = f"case {case.ident} walk {p.walk.directions} x_{i + 1}"
                rep.check("exchange relation = separation formula", xs[i] == sep[i], tag)
                rep.check("Laurent positivity", xs[i].has_nonnegative_coefficients(), tag)
        else:
            full += 1
    rep.notes.append(f"{full} of {count} walks checked to the end; {skipped} vertices past the step budget {budget}")
    return rep


def tropical(seed: int = 0, count: int = 500, max_rank: int = 4, max_depth: int = 10,
             budget: int = F_STEP_BUDGET) -> SuiteReport:
    """Tropicalization of the worked example, of F-polynomials and of y-variables."""
    rep = SuiteReport("tropical")
    u = lambda *e: LaurentPoly.monomial(e, 1, "u")  # noqa: E731
    num = u(1, 2, 2) * 3 + u(2, 1, 1) * 2
    den = u(0, 2, 0) * 3 + u(2, 2, 0) + u(1, 3, 1)
    rep.check("worked example", tropicalize(SubtractionFreeRational(num, den)) == (1, -1, 1))
    skipped = skipped_y = 0
    for case in corpus(seed, count, max_rank, max_depth):
        for p in _path(case.b0, case.walk, with_f=True, budget=budget):
            if p.f is None:
                skipped += 1
                continue
            tag = f"case {case.ident} walk {p.walk.directions}"
            for i in range(1, p.n + 1):
                rep.check("trop(F) = 1", tropicalize(p.f[i - 1]) == (0,) * p.n, f"{tag} F_{i}")
                # y_i multiplies F_j^{b_ji}: the same products as an F-step at i
                if f_step_cost(p, i) > budget:
                    skipped_y += 1
                    continue
                rep.check("trop(y) = y^c", tropicalize(y_variable(p, i)) == p.c_vector(i), f"{tag} y_{i}")
    rep.notes.append(f"skipped {skipped} vertices and {skipped_y} y-variables past the step budget {budget}")
    return rep


# -- fans and piecewise-linear maps ------------------------------------------------


def fans(seed: int = 0, random_count: int = 5, depth: int = 12) -> SuiteReport:
    rep = SuiteReport("fan")
    expected = {"A2": 5, "B2": 6, "G2": 8, "A3": 14}
    for name, cones in expected.items():
        fan = build_g_fan(catalog.named(name), depth)
        rep.check("finite type cone count", len(fan.cones) == cones, f"{name}: {len(fan.cones)}")
        rep.check("finite type complete", fan.complete, name)
        v = verify_fan(fan)
        rep.check("pairwise intersections are common faces", v.ok, f"{name}: {v.failures[:2]}")
    for name in catalog.AFFINE_TYPES:
        fan = build_g_fan(catalog.named(name), depth)
        rep.check("affine type incomplete", not fan.complete, name)
    for b, c in ((1, 5), (2, 3)):
        fan = build_g_fan(catalog.rank2(b, c), depth)
        rep.check("non-affine type incomplete", not fan.complete, f"({b},{c})")
        probs = check_nonaffine_limits(b, c, 2 * depth)
        rep.check("non-affine limit rays", not probs, str(probs[:2]))
    rng = random.Random(seed)
    done = 0
    while done < random_count:
        b0 = random_exchange(rng, 3)
        if b0.det() == 0 and all(x == 0 for r in b0.b for x in r):
            continue
        fan = build_g_fan(b0, 5)
        v = verify_fan(fan)
        rep.check("random rank-3 depth-5 fan", v.ok, f"{b0.b}: {v.failures[:2]}")
        done += 1
    # negative control: shifting one ray must break the fan property
    a2 = build_g_fan(catalog.named("A2"), depth).matrices()
    bad = list(a2)
    bad[0] = ((1, 1), (1, 2))
    rep.check("corrupted cone set rejected", not verify_fan(bad).ok)
    return rep


def _rand_vec(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))


def pl_maps(seed: int = 0, count: int = 200) -> SuiteReport:
    rep = SuiteReport("pl")
    a2 = catalog.named("A2")
    explicit = {
        (1, 1): ((-1, 0), (1, 1)),
        (1, -1): ((-1, 0), (0, 1)),
        (2, 1): ((1, 0), (0, -1)),
        (2, -1): ((1, 1), (0, -1)),
    }
    for (k, side), m in explicit.items():
        rep.check("explicit A2 matrices", pl_matrix(a2, k, "phi", side) == m, f"k={k} side={side}")
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 4)
        b0 = random_exchange(rng, n)
        k = rng.randint(1, n)
        v = _rand_vec(rng, n)
        phi = pl_map(b0, k, "phi", v)
        rep.check("phi = eta o T", phi == pl_map(b0, k, "eta", pl_map(b0, k, "T", v)), f"{b0.b} k={k} v={v}")
        rep.check("phi involution", pl_map(b0.mutate(k), k, "phi", phi) == v, f"{b0.b} k={k} v={v}")
        w = tuple(Fraction(0) if i == k - 1 else x for i, x in enumerate(v))
        rep.check("phi fixes v_k = 0", pl_map(b0, k, "phi", w) == w)
    for name in ("A2", "B2", "G2", "A3"):
        b0 = catalog.named(name)
        pts = pattern_points(b0, 8)
        for k in range(1, b0.n + 1):
            probs = transport_cones(b0, k, pts)
            rep.check("phi transports G-cones", not probs, f"{name} k={k}: {probs[:2]}")
    return rep


# -- scattering diagrams ------------------------------------------------------------


def _table_str(table: dict) -> dict:
    return {r: f.coeffs for r, f in table.items()}


def expected_walls(name: str, ell: int) -> dict:
    """Catalog per-ray functions: the coordinate lines, cluster walls and the affine extra wall."""
    b0 = catalog.named(name)
    if name in catalog.FINITE_OUTGOING:
        table = {r: WallFunction(n, (1,)) for r, n in catalog.FINITE_OUTGOING[name].items()}
        for r, e in (((1, 0), (0, 1)), ((-1, 0), (0, 1)), ((0, 1), (1, 0)), ((0, -1), (1, 0))):
            table[r] = WallFunction(e, (1,))
        return table
    ray, normal, coeffs = catalog.AFFINE_EXTRA[name]
    depth = 2 * ell + 4
    table = ray_table(cluster_walls(b0, depth, ell), ell)
    extra = WallFunction(normal, coeffs(ell)).truncate(ell)
    table[ray] = table[ray].times(extra, ell) if ray in table else extra
    return table


def consistency_rank2(ell: int = 8) -> SuiteReport:
    rep = SuiteReport("consistency-rank2")
    for name in catalog.RANK2:
        b0 = catalog.named(name)
        d = complete_rank2(b0, ell)
        rep.check("loop consistency", check_consistency_rank2(d), name)
        got = ray_table(d, ell)
        rep.check("wall set matches catalog", got == expected_walls(name, ell), f"{name}: {_table_str(got)}")
        if name in catalog.FINITE_OUTGOING:
            cw = cluster_walls(b0, 12, ell)
            rep.check("cluster walls form the consistent diagram", equivalent(cw, d), name)
            rep.check("cluster walls avoid G-cone interiors", not chamber_check_rank2(d, pattern_points(b0, 12)), name)
        else:
            cw = cluster_walls(b0, 2 * ell + 4, ell)
            rep.check("cluster walls alone are inconsistent", not check_consistency_rank2(cw), name)
    a2 = catalog.named("A2")
    table = ray_table(complete_rank2(a2, ell), ell)
    want = {
        1: TruncatedSeries((1, 0), {(0, 0): 1, (1, 0): 1, (1, 1): 1}, ell),
        2: TruncatedSeries((0, 1), {(0, 0): 1, (0, 1): 1}, ell),
    }
    for orient in ("ccw", "cw"):
        path = path_crossings(a2, table, (1, 1), (-1, -1), orient)
        for i, ref in want.items():
            m = tuple(int(j == i - 1) for j in range(2))
            rep.check("A2 path-ordered products", apply_path(a2, path, m, ell) == ref, f"{orient} x_{i}")
    return rep


def mutation(ell: int = 8) -> SuiteReport:
    rep = SuiteReport("mutation")
    for name in catalog.RANK2:
        b0 = catalog.named(name)
        for k in (1, 2):
            big = complete_rank2(b0, mutation_truncation(b0, k, ell))
            got = mutate_diagram(big, k, ell)
            ref = complete_rank2(b0.mutate(k), ell)
            rep.check("mutated diagram = completion of the mutated matrix", equivalent(got, ref, ell), f"{name} k={k}")
    a2 = catalog.named("A2")
    d = complete_rank2(a2, ell)
    for k, expected in catalog.A2_TRANSFORMED.items():
        got = sorted((tw.support, tw.yhat_direction(a2.b)) for tw in transform_walls(d, k))
        rep.check("A2 wall correspondence", got == sorted(expected), f"k={k}: {got}")
    return rep


# -- theta functions -----------------------------------------------------------------

THETA_ENDPOINT = (Fraction(1), Fraction(3, 7))


def theta_suite(ell: int = 8) -> SuiteReport:
    rep = SuiteReport("theta")
    q = THETA_ENDPOINT
    for name in ("A2", "B2", "G2", "A1^(1)"):
        b0 = catalog.named(name)
        d = complete_rank2(b0, ell)
        table = ray_table(d, ell)
        depth = 12 if name != "A1^(1)" else 6
        pts = [p for p in pattern_points(b0, depth)]
        seen = set()
        for p in pts:
            for i in (1, 2):
                g = p.g_vector(i)
                if g in seen:
                    continue
                seen.add(g)
                full = evaluate_walk(b0, p.walk)
                th = theta(d, g, q, ell)
                ref = TruncatedSeries.from_f(g, full.f[i - 1], ell)
                rep.check("theta of a g-vector = cluster variable", th.series == ref, f"{name} g={g}")
                rep.check("theta positivity", th.series.has_nonnegative_coefficients(), f"{name} g={g}")
                bad = [msg for line in th.lines for msg in check_line(b0, table, line)]
                rep.check("broken lines re-verified forwards", not bad, f"{name} g={g}: {bad[:2]}")
        # chamber monomial: m0 in the positive cone, where Q lies
        for m0 in ((1, 0), (0, 1), (2, 1), (1, 3)):
            th = theta(d, m0, q, ell)
            rep.check("chamber monomial", th.series == TruncatedSeries.monomial(m0, ell), f"{name} m0={m0}")
        # transport across the whole plane to an endpoint in the opposite chamber
        for q2 in ((Fraction(-5, 3), Fraction(-1, 2)), (Fraction(2, 7), Fraction(-3))):
            path = path_crossings(b0, table, q, q2, "ccw")
            for m0 in ((1, 0), (0, 1), (-1, 2), (1, -1)):
                th = theta(d, m0, q, ell).series
                th2 = theta(d, m0, q2, ell).series
                moved = path_ordered_product(b0, path, th)
                rep.check("transport", moved == th2, f"{name} m0={m0} Q'={q2}")
                rep.check("theta positivity", th2.has_nonnegative_coefficients(), f"{name} m0={m0}")
    return rep


# -- applications ---------------------------------------------------------------------


def applications(depth: int = 12) -> SuiteReport:
    rep = SuiteReport("applications")
    for name in catalog.FINITE_TYPES:
        b0 = catalog.named(name)
        pts = [evaluate_walk(b0, p.walk) for p in pattern_points(b0, depth)]
        by_g: dict = {}
        by_x: dict = {}
        for p in pts:
            xs = cluster(p)
            for i in range(1, p.n + 1):
                by_g.setdefault(p.g_vector(i), set()).add(xs[i - 1])
                by_x.setdefault(xs[i - 1], set()).add(p.g_vector(i))
        rep.check("g-vector determines x-variable", all(len(s) == 1 for s in by_g.values()), name)
        rep.check("x-variable determines g-vector", all(len(s) == 1 for s in by_x.values()), name)
        for a, b, nu in detropicalization_pairs(pts):
            rep.check("detropicalization", cluster(a) == permute_cluster(cluster(b), nu), f"{name} {a.walk.directions}")
    a2 = catalog.named("A2")
    pts = pattern_points(a2, 12)
    vertices = {p.g_vector(i) for p in pts for i in (1, 2)}
    simplices = {cone_key(p.g) for p in pts}
    rep.check("A2 cluster complex has 5 vertices", len(vertices) == 5, str(len(vertices)))
    rep.check("A2 cluster complex has 5 maximal simplices", len(simplices) == 5, str(len(simplices)))
    p5 = evaluate_walk(a2, [1, 2, 1, 2, 1])
    rep.check("A2 pentagon", p5.g == ((0, 1), (1, 0)) and x_variable(p5, 1) == LaurentPoly.variable(2, 2, "x"))
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "dualities": dualities,
    "signs": signs,
    "laurent": laurent,
    "tropical": tropical,
    "fan": fans,
    "pl": pl_maps,
    "consistency-rank2": consistency_rank2,
    "mutation": mutation,
    "theta": theta_suite,
    "applications": applications,
}

__all__ = ["F_STEP_BUDGET", "SUITES", "SuiteReport", "THETA_ENDPOINT"] + sorted(
    f.__name__ for f in SUITES.values()
)
