from fractions import Fraction

import pytest

from toricdegen.amenable import degeneration, make_collection, search_amenable
from toricdegen.errors import ChartError, CoefficientError
from toricdegen.laurent import LaurentPolynomial
from toricdegen.lattice import Basis
from toricdegen.lg import (brute_force_support, build_givental, check_newton_equals_deltaV,
                           coefficients_from_pl, eliminate)


def lp(names, terms):
    return LaurentPolynomial(names, terms)


def test_p2_toric_potential(p2_toric):
    m = build_givental(p2_toric)
    assert m.constraints == ()
    assert m.potential == lp(["x1", "x2"], {(1, 0): 1, (0, 1): 1, (-1, -1): 1})


def test_conic_model(conic):
    m = build_givental(conic)
    (c,) = m.constraints
    assert c == lp(["x1", "x2"], {(1, 0): 1, (0, 1): 1})
    assert m.potential == lp(["x1", "x2"], {(-1, -1): 1})


def test_bad_coefficient(conic):
    with pytest.raises(CoefficientError):
        build_givental(conic, {0: 0})


def test_eliminate_k0(p2_toric):
    m = build_givental(p2_toric)
    el = eliminate(m, make_collection(p2_toric, []))
    assert el.potential == m.potential
    assert el.f == ()


def test_eliminate_conic(conic):
    col = make_collection(conic, [(-1, -1)], [(0, 1)])
    el = eliminate(build_givental(conic), col)
    x2 = LaurentPolynomial.variable(["x2"], 0)
    assert el.f == (1 + x2,)
    assert el.potential == x2 ** -1 + 2 + x2
    assert el.check_parametrization()
    d = degeneration(col)
    assert check_newton_equals_deltaV(el.potential, d, chart=col.completion)


def test_eliminate_with_weights(conic):
    idx = {r: i for i, r in enumerate(conic.fan.rays)}
    coeffs = {idx[(1, 0)]: 2, idx[(0, 1)]: 3, idx[(-1, -1)]: Fraction(1, 5)}
    col = make_collection(conic, [(-1, -1)], [(0, 1)])
    el = eliminate(build_givental(conic, coeffs), col)
    assert el.check_parametrization()
    assert all(c > 0 for _, c in el.potential.items())


def test_coefficients_from_pl(conic):
    phi = conic.supports[1]
    cs = coefficients_from_pl(conic, phi, 3)
    idx = {r: i for i, r in enumerate(conic.fan.rays)}
    assert cs[idx[(-1, -1)]] == 3 and cs[idx[(1, 0)]] == 1
    with pytest.raises(CoefficientError):
        coefficients_from_pl(conic, phi, -1)


def test_chart_mismatch(conic):
    col = make_collection(conic, [(-1, -1)])
    el = eliminate(build_givental(conic), col)
    d = degeneration(col)
    with pytest.raises(ChartError):
        check_newton_equals_deltaV(el.potential, d, chart=Basis([(-1, -1), (1, 0)]))


def test_brute_force_conic(conic):
    col = make_collection(conic, [(-1, -1)], [(0, 1)])
    amb = brute_force_support(conic, col, chart=False)
    assert amb == {(1, -1), (0, 0), (-1, 1)}
    assert brute_force_support(conic, col) == {(-1,), (0,), (1,)}


def test_brute_force_k0(p2_toric):
    col = make_collection(p2_toric, [])
    assert brute_force_support(p2_toric, col, chart=False) == set(p2_toric.fan.rays)


def test_quadric_support_and_newton(quadric):
    for col in search_amenable(quadric, 3):
        el = eliminate(build_givental(quadric), col)
        assert set(el.potential.support()) == brute_force_support(quadric, col)
        d = degeneration(col)
        assert check_newton_equals_deltaV(el.potential, d)
        # sub-additivity: every monomial is in Delta_V
        assert all(d.phi(e) <= 1 for e in el.potential.support())
        assert el.check_parametrization()


def test_quadric_c0_closed_form(quadric):
    (col,) = [c for c in search_amenable(quadric, 3) if c.vectors[0] == (-1, -1, 0)]
    el = eliminate(build_givental(quadric), col)
    # w = x3 + f^2 / (stuff): positive integer coefficients summing to w(1,1)
    assert all(c.denominator == 1 and c > 0 for _, c in el.potential.items())
    ones = [1] * el.potential.nvars
    assert el.potential.evaluate(ones) == 1 + 2 ** 2
