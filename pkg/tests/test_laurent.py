from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from toricdegen.errors import SubstitutionError
from toricdegen.laurent import LaurentPolynomial, RationalFunction

X = ["x", "y"]
sx, sy = sympy.symbols("x y")


def to_sympy(p: LaurentPolynomial):
    syms = sympy.symbols(list(p.vars))
    syms = syms if isinstance(syms, (list, tuple)) else [syms]
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** e for s, e in zip(syms, ex)])
                for ex, c in p.items()), sympy.Integer(0))


laurents = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=5,
).map(lambda d: LaurentPolynomial(X, d))


def test_difference_of_squares():
    x = LaurentPolynomial.variable(["x"], 0)
    assert (x + 1) * (x - 1) == x ** 2 - 1


def test_substitute_polynomial():
    x = LaurentPolynomial.variable(["x", "y"], 0)
    y = LaurentPolynomial.variable(["x", "y"], 1)
    assert (x ** 2).substitute(0, 1 + y) == 1 + 2 * y + y ** 2


def test_substitute_negative_power_rejected():
    x = LaurentPolynomial.variable(["x", "y"], 0)
    y = LaurentPolynomial.variable(["x", "y"], 1)
    with pytest.raises(SubstitutionError):
        (x ** -1).substitute(0, 1 + y)


def test_monomial_negative_power():
    x = LaurentPolynomial.variable(["x"], 0)
    assert (2 * x) ** -2 == LaurentPolynomial.monomial(["x"], (-2,), Fraction(1, 4))
    with pytest.raises(SubstitutionError):
        (1 + x) ** -1


def test_string_order():
    x = LaurentPolynomial.variable(["x2"], 0)
    assert str(x ** -1 + 2 + x) == "x2^-1 + 2 + x2"


def test_json_roundtrip():
    p = LaurentPolynomial(X, {(1, -1): Fraction(3, 2), (0, 0): 1})
    assert LaurentPolynomial.from_dict(p.to_dict()) == p
    assert p.to_dict()["terms"][0]["coef"] == "1/1"


def test_newton_polytope():
    x, y = LaurentPolynomial.gens(X)
    p = x + y + x ** -1 * y ** -1
    assert p.newton_polytope().vertex_set() == {(1, 0), (0, 1), (-1, -1)}


@settings(max_examples=60, deadline=None)
@given(laurents, laurents)
def test_arithmetic_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p + q) - (to_sympy(p) + to_sympy(q))) == 0
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0


@settings(max_examples=40, deadline=None)
@given(laurents, st.integers(0, 3))
def test_power_matches_sympy(p, k):
    assert sympy.expand(to_sympy(p ** k) - to_sympy(p) ** k) == 0


@settings(max_examples=40, deadline=None)
@given(laurents)
def test_derivative_matches_sympy(p):
    assert sympy.expand(to_sympy(p.derivative(0)) - sympy.diff(to_sympy(p), sx)) == 0


@settings(max_examples=40, deadline=None)
@given(laurents, laurents)
def test_divide_exact(p, q):
    if q.is_zero():
        return
    assert (p * q).divide_exact(q) == p


@settings(max_examples=40, deadline=None)
@given(laurents)
def test_compose_with_monomials(p):
    x, y = LaurentPolynomial.gens(X)
    # x -> x*y, y -> y^-1 is invertible; composing twice with the inverse gives p back
    f = p.compose([x * y, y ** -1], X)
    g = f.compose([x * y, y ** -1], X)
    assert g == p


def test_rational_function_reduces():
    x, y = LaurentPolynomial.gens(X)
    r = RationalFunction((1 + x) ** 3, (1 + x) * y)
    assert r.as_laurent() == (1 + x) ** 2 * y ** -1
    assert RationalFunction(1 + x, 1 + y).as_laurent() is None


def test_evaluate():
    x, y = LaurentPolynomial.gens(X)
    p = x ** -1 + 3 * y
    assert p.evaluate([Fraction(1, 2), 2]) == 8
    with pytest.raises(ZeroDivisionError):
        p.evaluate([0, 1])
