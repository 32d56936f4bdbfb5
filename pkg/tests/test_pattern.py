import random
from fractions import Fraction

import pytest

from clusterscatter import catalog
from clusterscatter.corpus import corpus, random_exchange, random_walk
from clusterscatter.matrix import ExchangeMatrix, determinant, identity, mat_mul, transpose
from clusterscatter.pattern import (
    Walk,
    dual_mutate_initial,
    evaluate_walk,
    evaluate_walk_fast,
    hat_c_matrix,
    initial_point,
    mutate_point,
    mutate_vectors,
    principal_extension,
    reverse_walk,
    row_signs_of,
    tropical_signs_of,
)

A2 = catalog.named("A2")

# G-matrices of A2 along mu_1, mu_2, mu_1, mu_2, mu_1 as listed in the source.
A2_G = [
    ((1, 0), (0, 1)),
    ((-1, 0), (0, 1)),
    ((-1, 0), (0, -1)),
    ((1, 0), (-1, -1)),
    ((1, 1), (-1, 0)),
    ((0, 1), (1, 0)),
]


def test_walk_reduction():
    assert Walk([1, 1]).directions == ()
    assert Walk([1, 2, 2, 1, 3]).directions == (3,)
    assert Walk([1, 2]).was_reduced([1, 2, 2, 2])
    assert not Walk([1, 2]).was_reduced([1, 2])
    assert reverse_walk(Walk([1, 2, 3])).directions == (3, 2, 1)
    with pytest.raises(ValueError):
        Walk([0])


def test_a2_g_sequence():
    for t, g in enumerate(A2_G):
        assert evaluate_walk(A2, [1, 2, 1, 2, 1][:t]).g == g


def test_initial_point():
    p = initial_point(A2)
    assert p.c == p.g == identity(2)
    assert all(f == 1 for f in p.f)


def test_out_of_range_walk():
    with pytest.raises(ValueError):
        evaluate_walk(A2, [1, 3])


def test_fast_rule_and_vector_form_agree():
    for case in corpus(3, 60, max_rank=4, max_depth=8):
        p = initial_point(case.b0, with_f=False)
        for k in case.walk:
            new_c, new_g = mutate_vectors(p, k)
            p = mutate_point(p, k)
            assert tuple(p.c_vector(i) for i in range(1, p.n + 1)) == tuple(new_c)
            assert tuple(p.g_vector(i) for i in range(1, p.n + 1)) == tuple(new_g)
        assert evaluate_walk_fast(case.b0, case.walk).g == p.g


def test_sign_choice_is_irrelevant():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(2, 4)
        b0 = random_exchange(rng, n)
        p = initial_point(b0, with_f=False)
        for k in random_walk(rng, n, 6):
            plus, minus = mutate_point(p, k, 1), mutate_point(p, k, -1)
            assert (plus.b, plus.c, plus.g) == (minus.b, minus.c, minus.g)
            p = plus


def test_dualities_on_corpus():
    for case in corpus(5, 80):
        p = evaluate_walk(case.b0, case.walk, with_f=False)
        d = case.b0.d
        assert mat_mul(p.g, p.b) == mat_mul(case.b0.b, p.c) == hat_c_matrix(p)
        # sum_j d_i g_ji c_jm / d_j = delta_im
        lhs = [[sum(Fraction(d[i] * p.g[j][i] * p.c[j][m], d[j]) for j in range(p.n)) for m in range(p.n)] for i in range(p.n)]
        assert lhs == [list(r) for r in identity(p.n)]
        assert abs(determinant(p.c)) == abs(determinant(p.g)) == 1
        assert all(s in (1, -1) for s in tropical_signs_of(p.c))
        assert all(s in (1, -1) for s in row_signs_of(p.g))


def test_f_polynomials_have_unit_constant_term():
    for name in ("B2", "G2", "A3", "B3", "C3"):
        b0 = catalog.named(name)
        p = evaluate_walk(b0, [1, 2, 1, 2, 1, 2][: 2 * b0.n])
        for f in p.f:
            assert f.constant_term() == 1
            assert f.has_nonnegative_coefficients()
            assert f.is_polynomial()


def test_dual_mutation_of_initial_vertex():
    for case in corpus(9, 40, max_rank=3, max_depth=6):
        p = evaluate_walk(case.b0, case.walk)
        for k in range(1, p.n + 1):
            q = dual_mutate_initial(p, k)
            ref = evaluate_walk(case.b0.mutate(k), Walk((k,) + case.walk.directions))
            assert (q.c, q.g, q.b) == (ref.c, ref.g, ref.b)


def test_principal_extension_block():
    bm = ExchangeMatrix.from_rows([[0, -1], [2, 0]])
    ext = principal_extension(bm)
    assert ext.b == (
        (0, -1, -1, 0),
        (2, 0, 0, -1),
        (1, 0, 0, 0),
        (0, 1, 0, 0),
    )
    p = evaluate_walk(ext, [1, 2, 1])
    small = evaluate_walk(bm, [1, 2, 1])
    # the lower-left block of the extended exchange matrix tracks the C-matrix
    assert tuple(row[:2] for row in p.b[2:]) == small.c


def test_transposed_pattern():
    b0 = catalog.named("B2")
    p = evaluate_walk(b0, [1, 2, 1])
    back = evaluate_walk(ExchangeMatrix.from_rows(transpose(p.b)), reverse_walk(p.walk), with_f=False)
    # third duality: G at t0 seen from t with transposed data is C_t transposed
    assert back.g == transpose(p.c)
