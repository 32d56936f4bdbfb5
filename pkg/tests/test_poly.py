import pytest

from clusterscatter.errors import InexactDivision
from clusterscatter.poly import LaurentPoly, format_monomial

x = LaurentPoly.variable(2, 1, "x")
y = LaurentPoly.variable(2, 2, "x")


def test_arithmetic():
    p = (1 + x * y) ** 2
    assert p.sorted_terms() == [((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]
    assert p - 1 == 2 * x * y + (x * y) ** 2
    assert (x - x).is_zero()
    assert -(x + 1) + x == -1


def test_negative_powers():
    inv = x ** -1
    assert inv * x == 1
    assert (x ** -2).terms == {(-2, 0): 1}
    with pytest.raises(ValueError):
        (1 + x) ** -1


def test_printing_is_graded():
    p = y + x * y + 1 + LaurentPoly.monomial((-1, 2), 3, "x")
    # total degree first, then lexicographic
    assert str(p) == "1 + 3*x^(-1,2) + x^(0,1) + x^(1,1)"
    assert str(LaurentPoly(2, {}, "x")) == "0"
    assert format_monomial((1, -2), "y") == "y^(1,-2)"


def test_exact_division():
    f = 1 + x + y
    g = 2 + x * y ** -1
    assert (f * g).divide_exact(g) == f
    assert (f * x ** -3).divide_exact(x ** -3) == f
    with pytest.raises(InexactDivision):
        (1 + x).divide_exact(1 + y)
    with pytest.raises(InexactDivision):
        (2 * x).divide_exact(LaurentPoly.monomial((0, 0), 3, "x"))


def test_substitution():
    f = LaurentPoly(2, {(0, 0): 1, (1, 0): 1, (1, 1): 1})
    # y1 -> x2^-1, y2 -> x1 is the A2 y-hat substitution
    g = f.substitute_monomials([(0, -1), (1, 0)], "x")
    assert g == 1 + y ** -1 + x * y ** -1
    assert f.substitute([x, y]) == 1 + x + x * y


def test_queries():
    p = 3 + x ** 2 * y - y ** -1
    assert p.constant_term() == 3
    assert p.min_exponent() == (0, -1)
    assert not p.is_polynomial()
    assert not p.has_nonnegative_coefficients()
    assert (x * y).is_monomial()
    assert p.coefficient((2, 1)) == 1
    assert hash(x + y) == hash(y + x)
