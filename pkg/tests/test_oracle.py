"""Package results against the frozen sympy oracle in tests/data/oracle.json."""

import pytest

from clusterscatter.matrix import ExchangeMatrix, as_matrix
from clusterscatter.pattern import evaluate_walk
from clusterscatter.separation import (
    SubtractionFreeRational,
    cluster,
    tropicalize,
    walk_x_direct,
    walk_y_direct,
    y_cluster,
)

from conftest import parse_terms

NAMES = ["A2", "A2-empty", "B2", "G2", "A11", "A22", "A3", "B3", "markov", "rank4"]


def _point(case):
    return evaluate_walk(ExchangeMatrix.from_rows(case["b0"]), case["walk"])


@pytest.mark.parametrize("name", NAMES)
def test_tropical_data(oracle, name):
    case = oracle["cases"][name]
    p = _point(case)
    assert p.b == as_matrix(case["b"])
    assert p.c == as_matrix(case["c"])
    assert p.g == as_matrix(case["g"])


@pytest.mark.parametrize("name", NAMES)
def test_f_polynomials(oracle, name):
    case = oracle["cases"][name]
    p = _point(case)
    assert list(p.f) == [parse_terms(f) for f in case["f"]]


@pytest.mark.parametrize("name", NAMES)
def test_cluster_variables(oracle, name):
    case = oracle["cases"][name]
    want = [parse_terms(x, "x") for x in case["x"]]
    assert list(cluster(_point(case))) == want
    assert list(walk_x_direct(ExchangeMatrix.from_rows(case["b0"]), case["walk"])) == want


@pytest.mark.parametrize("name", NAMES)
def test_y_variables(oracle, name):
    case = oracle["cases"][name]
    p = _point(case)
    want = [SubtractionFreeRational(parse_terms(y["num"]), parse_terms(y["den"])) for y in case["y"]]
    assert y_cluster(p) == want
    assert walk_y_direct(p.initial, case["walk"]) == want
    assert [tropicalize(y) for y in want] == [p.c_vector(i) for i in range(1, p.n + 1)]


def test_worked_tropical_example(oracle):
    ex = oracle["tropical"]
    r = SubtractionFreeRational(parse_terms(ex["num"]), parse_terms(ex["den"]))
    assert tropicalize(r) == (1, -1, 1) == tuple(ex["value"])
