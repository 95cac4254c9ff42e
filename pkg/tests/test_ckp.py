from fractions import Fraction

import pytest
import sympy

from toricdegen.ckp import (CkpInput, check_ckp_equivalence, ckp_amenable, ckp_from_partition,
                            ckp_substitute, hori_vafa_potential, relation_matrix)
from toricdegen.errors import BasisError, ParameterError
from toricdegen.lg import check_newton_equals_deltaV
from toricdegen.amenable import degeneration
from toricdegen.laurent import LaurentPolynomial

P2 = ((1, 0), (0, 1), (-1, -1))
P3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1))
P1P1 = ((1, 0), (0, 1), (-1, 0), (0, -1))


def from_sympy(expr, names):
    syms = sympy.symbols(names)
    poly = sympy.Poly(sympy.expand(expr * sympy.Mul(*[s ** 10 for s in syms])), *syms)
    terms = {tuple(e - 10 for e in mon): Fraction(int(c.p), int(c.q)) for mon, c in poly.terms()}
    return LaurentPolynomial(names, terms)


def cubic(q=1):
    return CkpInput(P3, (3,), ((0, 1, 2),), (0,), {3: q})


def conic(q=1):
    return CkpInput(P2, (2,), ((0, 1),), (0,), {2: q})


def test_relation_matrices():
    assert relation_matrix(P2, [2]) == [[1, 1, 1]]
    assert relation_matrix(P3, [3]) == [[1, 1, 1, 1]]
    R = relation_matrix(P1P1, [2, 3])
    assert [[row[2], row[3]] for row in R] == [[1, 0], [0, 1]]
    assert R == [[1, 0, 1, 0], [0, 1, 0, 1]]


def test_relation_matrix_bad_E():
    with pytest.raises(BasisError):
        relation_matrix(P1P1, [0, 2])
    with pytest.raises(BasisError):
        relation_matrix(P2, [0, 1])


def test_hori_vafa():
    w = hori_vafa_potential(CkpInput(P2, (2,), (), (), {2: 5}))
    x1, x2 = sympy.symbols("x1 x2")
    assert w == from_sympy(x1 + x2 + 5 / (x1 * x2), ["x1", "x2"])
    w3 = hori_vafa_potential(cubic())
    a, b, c = sympy.symbols("x1 x2 x3")
    assert w3 == from_sympy(a + b + c + 1 / (a * b * c), ["x1", "x2", "x3"])


def test_k0_unchanged():
    inp = CkpInput(P1P1, (2, 3), (), (), {})
    assert ckp_substitute(inp) == hori_vafa_potential(inp)


@pytest.mark.parametrize("q", [1, 2, Fraction(3, 7)])
def test_cubic_substitution(q):
    y2, y3 = sympy.symbols("y2 y3")
    qq = sympy.Rational(Fraction(q).numerator, Fraction(q).denominator)
    expect = from_sympy(1 + qq * (1 + y2 + y3) ** 3 / (y2 * y3), ["y2", "y3"])
    assert ckp_substitute(cubic(q)) == expect
    assert check_ckp_equivalence(cubic(q))


def test_conic_substitution():
    y = sympy.symbols("y2")
    assert ckp_substitute(conic()) == from_sympy(1 + (1 + y) ** 2 / y, ["y2"])
    assert check_ckp_equivalence(conic())


def test_amenable_side_cubic():
    am = ckp_amenable(cubic())
    assert am.collection.vectors == ((-1, -1, -1),)
    assert am.elimination.potential + 1 == ckp_substitute(cubic())
    d = degeneration(am.collection)
    assert check_newton_equals_deltaV(ckp_substitute(cubic()), d)


def test_positive_coefficients():
    for inp in (cubic(2), conic(Fraction(1, 2))):
        assert all(c > 0 for _, c in ckp_substitute(inp).items())


def test_input_validation():
    with pytest.raises(ParameterError):
        CkpInput(P3, (3,), ((0, 1, 3),), (0,), {})
    with pytest.raises(ParameterError):
        CkpInput(P3, (3,), ((0, 1),), (2,), {})
    with pytest.raises(ParameterError):
        CkpInput(P3, (3,), ((0, 1),), (0,), {3: 0})
    with pytest.raises(ParameterError):
        CkpInput(P3, (7,), (), (), {})


def test_from_partition_quadric():
    inp = ckp_from_partition(P3, [[0, 1], [2, 3]])
    assert inp is not None and set(inp.E) <= {2, 3}
    assert check_ckp_equivalence(inp)


def test_from_partition_none():
    # P^2 split as {e1} | {e2, -e1-e2}: the relation is positive on S, first valid E is taken
    inp = ckp_from_partition(P2, [[0], [1, 2]])
    assert inp.E == (1,) and check_ckp_equivalence(inp)
    # P^1 x P^1 with E forced inside {e2, -e2}: no basis of the relation lattice there
    assert ckp_from_partition(P1P1, [[0, 2], [1, 3]]) is None
