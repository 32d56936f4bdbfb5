"""Regenerate tests/data/oracle.json with sympy, independently of the package.

Cluster data is computed by brute-force rational mutation of a seed with
principal coefficients: the exchange relation is applied to sympy
expressions and every result is cancelled.  F-polynomials are the cluster
variables at x = 1, g-vectors the x-exponents at y = 0 and c-vectors the
coefficient rows of the extended exchange matrix.

    python3 tests/oracle/build_oracles.py
"""

import json
from pathlib import Path

import sympy as sp

CASES = {
    "A2": ([[0, -1], [1, 0]], [1, 2, 1, 2, 1]),
    "A2-empty": ([[0, -1], [1, 0]], []),
    "B2": ([[0, -1], [2, 0]], [1, 2, 1, 2, 1, 2]),
    "G2": ([[0, -1], [3, 0]], [1, 2, 1, 2, 1, 2, 1, 2]),
    "A11": ([[0, -2], [2, 0]], [1, 2, 1, 2, 1]),
    "A22": ([[0, -1], [4, 0]], [1, 2, 1, 2]),
    "A3": ([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], [1, 2, 3, 1, 2, 3, 2]),
    "B3": ([[0, -1, 0], [1, 0, -1], [0, 2, 0]], [2, 1, 3, 2, 3, 1]),
    "markov": ([[0, 2, -2], [-2, 0, 2], [2, -2, 0]], [1, 2, 3, 1]),
    "rank4": ([[0, 1, 0, 0], [-1, 0, 1, -1], [0, -1, 0, 1], [0, 1, -1, 0]], [1, 2, 3, 4, 2, 1]),
}

TROPICAL_EXAMPLE = (
    "(3*u1*u2**2*u3**2 + 2*u1**2*u2*u3) / (3*u2**2 + u1**2*u2**2 + u1*u2**3*u3)"
)


def mutate_matrix(m, k):
    """Matrix mutation of an extended (2n x n) or square matrix in direction k (0-based)."""
    rows, cols = m.shape
    out = sp.zeros(rows, cols)
    for i in range(rows):
        for j in range(cols):
            if i == k or j == k:
                out[i, j] = -m[i, j]
            else:
                out[i, j] = m[i, j] + (abs(m[i, k]) * m[k, j] + m[i, k] * abs(m[k, j])) / 2
    return out


def laurent_dict(expr, gens):
    """Exponent -> coefficient for a Laurent polynomial; fails if the denominator is not a monomial."""
    num, den = sp.fraction(sp.cancel(sp.together(expr)))
    dpoly = sp.Poly(den, *gens)
    if len(dpoly.terms()) != 1:
        raise ValueError(f"not a Laurent polynomial: {expr}")
    (dexp, dcoef), = dpoly.terms()
    out = {}
    for e, c in sp.Poly(sp.expand(num), *gens).terms():
        q = sp.Rational(c, dcoef)
        assert q.q == 1
        out[",".join(str(a - b) for a, b in zip(e, dexp))] = int(q)
    return out


def poly_dict(expr, gens):
    return {",".join(map(str, e)): int(c) for e, c in sp.Poly(sp.expand(expr), *gens).terms()}


def principal_run(b, walk):
    n = len(b)
    x = sp.symbols(f"x1:{n + 1}")
    y = sp.symbols(f"y1:{n + 1}")
    ext = sp.Matrix(b).col_join(sp.eye(n))
    xs = list(x)
    free = list(x)
    ys = list(y)
    bsq = sp.Matrix(b)
    for k in (d - 1 for d in walk):
        p1 = sp.Mul(*[xs[j] ** max(ext[j, k], 0) for j in range(n)]) * sp.Mul(
            *[y[j] ** max(ext[n + j, k], 0) for j in range(n)]
        )
        p2 = sp.Mul(*[xs[j] ** max(-ext[j, k], 0) for j in range(n)]) * sp.Mul(
            *[y[j] ** max(-ext[n + j, k], 0) for j in range(n)]
        )
        xs[k] = sp.cancel((p1 + p2) / xs[k])
        q1 = sp.Mul(*[free[j] ** max(bsq[j, k], 0) for j in range(n)])
        q2 = sp.Mul(*[free[j] ** max(-bsq[j, k], 0) for j in range(n)])
        free[k] = sp.cancel((q1 + q2) / free[k])
        yk = ys[k]
        new = []
        for i in range(n):
            if i == k:
                new.append(1 / yk)
            else:
                bki = bsq[k, i]
                new.append(sp.cancel(ys[i] * yk ** max(bki, 0) * (1 + yk) ** (-bki)))
        ys = new
        ext = mutate_matrix(ext, k)
        bsq = mutate_matrix(bsq, k)
    at_x1 = {xi: 1 for xi in x}
    at_y0 = {yi: 0 for yi in y}
    f = [poly_dict(sp.cancel(e.subs(at_x1)), y) for e in xs]
    g = []
    for e in xs:
        mono = laurent_dict(sp.cancel(e.subs(at_y0)), x)
        (exp, coef), = mono.items()
        assert coef == 1
        g.append([int(a) for a in exp.split(",")])
    c_rows = ext[n:, :]
    yvars = []
    for e in ys:
        num, den = sp.fraction(sp.factor(sp.cancel(e)))
        yvars.append({"num": poly_dict(num, y), "den": poly_dict(den, y)})
    return {
        "b0": b,
        "walk": walk,
        "b": [[int(v) for v in row] for row in bsq.tolist()],
        "c": [[int(v) for v in row] for row in c_rows.tolist()],
        "g": [[g[j][i] for j in range(n)] for i in range(n)],
        "f": f,
        "x": [laurent_dict(e, x) for e in free],
        "y": yvars,
    }


def tropical_example():
    u = sp.symbols("u1:4")
    num, den = sp.fraction(sp.sympify(TROPICAL_EXAMPLE))
    def low(e):
        terms = sp.Poly(sp.expand(e), *u).monoms()
        return [min(t[i] for t in terms) for i in range(3)]
    ln, ld = low(num), low(den)
    return {
        "num": poly_dict(num, u),
        "den": poly_dict(den, u),
        "value": [a - b for a, b in zip(ln, ld)],
    }


def main():
    data = {"cases": {name: principal_run(b, w) for name, (b, w) in CASES.items()}, "tropical": tropical_example()}
    out = Path(__file__).resolve().parents[1] / "data" / "oracle.json"
    out.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
