import random
from fractions import Fraction

import pytest

from clusterscatter.corpus import random_exchange
from clusterscatter.errors import NotSkewSymmetrizable
from clusterscatter.matrix import (
    ExchangeMatrix,
    determinant,
    find_skew_symmetrizer,
    identity,
    inverse,
    mat_mul,
    masked,
    mutate_matrix,
    mutate_matrix_product,
    primitive,
    primitive_rational,
    rank,
    transpose,
)


def test_skew_symmetrizer_rank2():
    assert find_skew_symmetrizer(((0, -1), (2, 0))).d == (1, 2)
    assert find_skew_symmetrizer(((0, -1), (3, 0))).d == (1, 3)
    assert find_skew_symmetrizer(((0, -2), (2, 0))).d == (1, 1)


def test_skew_symmetrizer_rejects():
    assert find_skew_symmetrizer(((0, 1), (1, 0))) is None
    assert find_skew_symmetrizer(((1, 0), (0, 0))) is None
    assert find_skew_symmetrizer(((0, 1), (0, 0))) is None
    # a 3-cycle whose ratios do not close up
    assert find_skew_symmetrizer(((0, 1, -1), (-2, 0, 1), (1, -1, 0))) is None
    with pytest.raises(NotSkewSymmetrizable):
        ExchangeMatrix.from_rows([[0, 1], [1, 0]])


def test_skew_symmetrizer_components_are_coprime():
    # two disconnected blocks each scaled independently
    b = ((0, -1, 0, 0), (2, 0, 0, 0), (0, 0, 0, -3), (0, 0, 1, 0))
    assert find_skew_symmetrizer(b).d == (1, 2, 3, 1)


def test_inner_product():
    bm = ExchangeMatrix.from_rows([[0, -1], [4, 0]])
    assert bm.skew.inner((1, 2), (1, -2)) == 0
    assert bm.skew.inner((1, 0), (1, 0)) == 1
    assert bm.skew.inner((0, 1), (0, 1)) == Fraction(1, 4)


def test_mutation_a2():
    assert mutate_matrix(((0, -1), (1, 0)), 1) == ((0, 1), (-1, 0))
    b3 = ((0, -1, 0), (1, 0, -1), (0, 2, 0))
    assert mutate_matrix(b3, 2) == ((0, 1, -1), (-1, 0, 1), (2, -2, 0))


def test_mutation_involution_and_product_form():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 5)
        bm = random_exchange(rng, n)
        k = rng.randint(1, n)
        once = mutate_matrix(bm.b, k)
        assert mutate_matrix(once, k) == bm.b
        assert mutate_matrix_product(bm.b, k) == once
        assert mutate_matrix(bm.b, k, eps=-1) == once
        # the skew-symmetrizer survives mutation
        assert bm.mutate(k).d == bm.d


def test_direction_range():
    with pytest.raises(ValueError):
        mutate_matrix(((0, 1), (-1, 0)), 3)
    with pytest.raises(ValueError):
        mutate_matrix(((0, 1), (-1, 0)), 0)


def test_masked_operators():
    a = ((1, -2), (3, 4))
    assert masked(a, "plus") == ((1, 0), (3, 4))
    assert masked(a, "colk", 2) == ((0, -2), (0, 4))
    assert masked(a, "rowk", 1) == ((1, -2), (0, 0))
    assert masked(a, "jk", 2) == ((1, 0), (0, -1))
    with pytest.raises(ValueError):
        masked(a, "colk", 5)


def test_exact_linear_algebra():
    assert determinant(((1, 2), (3, 4))) == -2
    a = ((2, 1), (1, 1))
    assert mat_mul(a, inverse(a)) == identity(2)
    assert inverse(((2, 0), (0, 4))) == ((Fraction(1, 2), 0), (0, Fraction(1, 4)))
    assert rank([(1, 2), (2, 4)]) == 1
    assert rank([(1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 2
    assert primitive((4, -6)) == (2, -3)
    assert primitive_rational((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    assert transpose(((1, 2), (3, 4))) == ((1, 3), (2, 4))


def test_transpose_exchange_matrix():
    bm = ExchangeMatrix.from_rows([[0, -1], [3, 0]])
    t = bm.transpose()
    assert t.b == ((0, 3), (-1, 0))
    assert all(t.b[i][j] * t.d[j] == -t.b[j][i] * t.d[i] for i in range(2) for j in range(2))
