import pytest

from clusterscatter import catalog
from clusterscatter.errors import SingularMatrix
from clusterscatter.matrix import ExchangeMatrix
from clusterscatter.scattering import (
    TruncatedSeries,
    WallFunction,
    apply_path,
    check_consistency_rank2,
    cluster_walls,
    complete_rank2,
    diagram_from_table,
    equivalent,
    factor_exponents,
    factorization_exponents,
    incoming_table,
    mutate_diagram,
    mutation_truncation,
    normalize,
    path_crossings,
    ray_table,
    series_mul,
    series_power,
    split_cone,
    wall_cross,
)

ELL = 8
AXES = {(1, 0): (0, 1), (-1, 0): (0, 1), (0, 1): (1, 0), (0, -1): (1, 0)}


def _table(name, ell=ELL):
    return {r: (f.direction, f.coeffs) for r, f in ray_table(complete_rank2(catalog.named(name), ell), ell).items()}


def test_series_helpers():
    assert series_power((1,), -1, 4) == (1, -1, 1, -1, 1)
    assert series_power((2, 1), 3, 6) == (1, 6, 15, 20, 15, 6, 1)
    assert series_mul((1,), (1,), 3) == (2, 1)
    # 1/(1-z) = prod_j (1 + z^(2^j))
    assert factor_exponents((1,) * 8, 8) == (1, 1, 0, 1, 0, 0, 0, 1)


def test_wall_function():
    f = WallFunction.binomial((1, 1))
    assert f.coeffs == (1,)
    assert str(f) == "1 + yhat^(1,1)"
    with pytest.raises(ValueError):
        WallFunction((2, 2), (1,))
    g = WallFunction((1, 1), (2, 3, 4, 5, 6))
    assert g.truncate(4).coeffs == (2, 3)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_finite_wall_sets(name):
    want = {r: (n, (1,)) for r, n in catalog.FINITE_OUTGOING[name].items()}
    want.update({r: (n, (1,)) for r, n in AXES.items()})
    assert _table(name) == want


def test_a2_walls_listed():
    got = _table("A2")
    assert got[(1, -1)] == ((1, 1), (1,))
    assert len(complete_rank2(catalog.named("A2"), ELL).walls) == 3


def test_affine_a11_extra_wall():
    got = _table("A11")
    # (sum_k z^k)^2 with z = yhat1 yhat2, kept to total degree 8
    assert got[(1, -1)] == ((1, 1), (2, 3, 4, 5))
    # cluster walls of degree 2j+1 <= 8 survive the truncation
    assert (4, -5) not in got
    for j in range(1, 4):
        assert got[(j, -(j + 1))] == ((j + 1, j), (1,))
        assert got[(j + 1, -j)] == ((j, j + 1), (1,))
    f = ray_table(complete_rank2(catalog.named("A11"), ELL), ELL)[(1, -1)]
    assert f.factor_exponents(ELL) == (2, 2, 0, 2)


def test_affine_a22_extra_wall():
    got = _table("A22", 9)
    # (1 + z)(sum_k z^k)^2 with z = yhat^(1,2) of degree 3
    assert got[(1, -2)] == ((1, 2), (3, 5, 7))


def test_consistency_and_its_failure():
    for name in catalog.RANK2:
        assert check_consistency_rank2(complete_rank2(catalog.named(name), ELL))
    a2 = catalog.named("A2")
    bare = diagram_from_table(a2, incoming_table(a2), ELL)
    assert not check_consistency_rank2(bare)


def test_affine_cluster_walls_are_not_enough():
    b0 = catalog.named("A11")
    assert not check_consistency_rank2(cluster_walls(b0, 20, ELL))


def test_finite_cluster_walls_are_enough():
    for name in ("A2", "B2", "G2"):
        b0 = catalog.named(name)
        assert equivalent(cluster_walls(b0, 12, ELL), complete_rank2(b0, ELL))


def test_singular_matrix_rejected():
    with pytest.raises(SingularMatrix):
        complete_rank2(ExchangeMatrix.from_rows([[0, 0], [0, 0]]), ELL)


def test_a2_path_ordered_products():
    a2 = catalog.named("A2")
    table = ray_table(complete_rank2(a2, ELL), ELL)
    for orient in ("ccw", "cw"):
        path = path_crossings(a2, table, (1, 1), (-1, -1), orient)
        assert apply_path(a2, path, (1, 0), ELL) == TruncatedSeries((1, 0), {(0, 0): 1, (1, 0): 1, (1, 1): 1}, ELL)
        assert apply_path(a2, path, (0, 1), ELL) == TruncatedSeries((0, 1), {(0, 0): 1, (0, 1): 1}, ELL)
    with pytest.raises(ValueError):
        path_crossings(a2, table, (1, 0), (-1, -1))


def test_wall_crossing_is_inverted_by_the_opposite_sign():
    a2 = catalog.named("A2")
    f = WallFunction((1, 1), (1,))
    s = TruncatedSeries.monomial((1, 0), ELL)
    there = wall_cross(a2, f, 1, s)
    assert wall_cross(a2, f, -1, there) == s
    assert there != s


@pytest.mark.parametrize("name", sorted(catalog.RANK2))
@pytest.mark.parametrize("k", [1, 2])
def test_mutation_matches_completion(name, k):
    b0 = catalog.named(name)
    big = complete_rank2(b0, mutation_truncation(b0, k, ELL))
    got = mutate_diagram(big, k, ELL)
    assert got.initial.b == b0.mutate(k).b
    assert equivalent(got, complete_rank2(b0.mutate(k), ELL), ELL)


def test_normalize_is_idempotent():
    d = complete_rank2(catalog.named("B2"), ELL)
    once = normalize(d)
    assert ray_table(normalize(once)) == ray_table(once) == ray_table(d)
    assert factorization_exponents(d)[(1, -1)] == (1, 0)  # degree-3 normal, j <= 8 // 3


def test_split_cone():
    gens = [(1, 1), (-1, 1)]
    assert sorted(split_cone(gens, 1, 1)) == [(0, 1), (1, 1)]
    assert sorted(split_cone(gens, 1, -1)) == [(-1, 1), (0, 1)]
