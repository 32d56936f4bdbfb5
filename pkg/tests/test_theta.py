from fractions import Fraction

import pytest

from clusterscatter import catalog
from clusterscatter.errors import UnsupportedRank
from clusterscatter.matrix import ExchangeMatrix
from clusterscatter.pattern import evaluate_walk
from clusterscatter.scattering import (
    TruncatedSeries,
    complete_rank2,
    path_crossings,
    path_ordered_product,
    ray_table,
)
from clusterscatter.theta import (
    NonGenericEndpoint,
    check_line,
    enumerate_broken_lines,
    theta,
)

ELL = 8
Q = (Fraction(1), Fraction(3, 7))


@pytest.fixture(scope="module")
def diagrams():
    return {name: complete_rank2(catalog.named(name), ELL) for name in ("A2", "B2", "G2", "A11")}


def test_chamber_monomial(diagrams):
    for d in diagrams.values():
        for m0 in ((1, 0), (0, 1), (3, 2)):
            res = theta(d, m0, Q)
            assert res.series == TruncatedSeries.monomial(m0, ELL)
            assert len(res.lines) == 1


def test_a2_theta_of_cluster_variables(diagrams):
    d = diagrams["A2"]
    # g = (-1, 0) gives x1^-1 (1 + yhat1): two broken lines
    res = theta(d, (-1, 0), Q)
    assert res.series == TruncatedSeries((-1, 0), {(0, 0): 1, (1, 0): 1}, ELL)
    assert len(res.lines) == 2
    p = evaluate_walk(catalog.named("A2"), [1, 2])
    assert p.g_vector(2) == (0, -1)
    assert str(p.f[1]) == "1 + y^(0,1) + y^(1,1)"
    res = theta(d, (0, -1), Q)
    assert res.series == TruncatedSeries((0, -1), {(0, 0): 1, (0, 1): 1, (1, 1): 1}, ELL)


@pytest.mark.parametrize("name", ["B2", "G2", "A11"])
def test_theta_equals_cluster_variable(diagrams, name):
    b0 = catalog.named(name)
    d = diagrams[name]
    for walk in ([1], [2], [1, 2], [2, 1], [1, 2, 1], [2, 1, 2]):
        p = evaluate_walk(b0, walk)
        for i in (1, 2):
            res = theta(d, p.g_vector(i), Q)
            assert res.series == TruncatedSeries.from_f(p.g_vector(i), p.f[i - 1], ELL)


def test_broken_lines_recheck(diagrams):
    d = diagrams["G2"]
    table = ray_table(d, ELL)
    lines, _ = enumerate_broken_lines(d, (-1, 1), Q)
    assert lines
    for line in lines:
        assert check_line(d.initial, table, line) == []
        assert line.coefficient > 0


def test_transport(diagrams):
    d = diagrams["B2"]
    q2 = (Fraction(-5, 3), Fraction(-1, 2))
    path = path_crossings(d.initial, ray_table(d, ELL), Q, q2, "ccw")
    for m0 in ((1, -1), (-1, 2)):
        moved = path_ordered_product(d.initial, path, theta(d, m0, Q).series)
        assert moved == theta(d, m0, q2).series


def test_positivity_on_affine_badlands(diagrams):
    d = diagrams["A11"]
    res = theta(d, (1, -1), (Fraction(2), Fraction(-3)))
    assert res.series.has_nonnegative_coefficients()


def test_zero_exponent():
    d = complete_rank2(catalog.named("A2"), ELL)
    assert theta(d, (0, 0), Q).series == TruncatedSeries.monomial((0, 0), ELL)
    with pytest.raises(ValueError):
        enumerate_broken_lines(d, (0, 0), Q)


def test_endpoint_on_a_wall_is_perturbed():
    d = complete_rank2(catalog.named("A2"), ELL)
    res = theta(d, (-1, 0), (1, 0))
    assert res.endpoint != (1, 0)
    assert res.series == theta(d, (-1, 0), res.endpoint).series


def test_nongeneric_error_class():
    assert issubclass(NonGenericEndpoint, ValueError)


def test_rank_restriction():
    b0 = catalog.named("A3")
    from clusterscatter.scattering import ScatteringDiagram

    with pytest.raises(UnsupportedRank):
        enumerate_broken_lines(ScatteringDiagram([], b0, ELL), (1, 0, 0), (1, 1, 1))
    assert ExchangeMatrix.from_rows([[0, -1], [1, 0]]).n == 2
