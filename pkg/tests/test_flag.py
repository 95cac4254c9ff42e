from itertools import combinations

import pytest

from toricdegen.errors import FanoConditionError, ParameterError, SelectionError
from toricdegen.flag import (U, build_gamma, ell_alpha, flag_dimension, flag_lg, flag_nef_partition,
                             flag_polytope, roofs, select_roof_arrows)
from toricdegen.laurent import LaurentPolynomial
from toricdegen.lattice import pair
from toricdegen.nef import verify_partition
from toricdegen.polytope import is_reflexive


def all_params(max_n):
    for n in range(2, max_n + 1):
        for l in range(1, n):
            for dims in combinations(range(1, n), l):
                yield dims, n


def test_gamma_125():
    d = build_gamma((1, 2), 5)
    assert d.names() == ["x_{0,1}", "x_{0,0}", "x_{1,1}", "x_{1,0}", "x_{2,1}", "x_{2,0}", "x_{3,0}"]
    assert len(d.white) == 3
    assert len(d.arrows) == 12


def test_gamma_258():
    d = build_gamma((2, 5), 8)
    # the grid drawn for this case has 5x3 + 2x3 black nodes
    assert d.rank == 21 == flag_dimension((2, 5), 8)
    assert set(d.white) == {(0, 5), (3, 2), (6, 0)}


def test_gamma_p1():
    d = build_gamma((1,), 2)
    assert d.rank == 1 and len(d.white) == 2
    P = flag_polytope(d)
    assert P.vertex_set() == {(1,), (-1,)}


@pytest.mark.parametrize("dims,n", [((), 3), ((2, 1), 4), ((1, 4), 4), ((0,), 3)])
def test_gamma_bad_params(dims, n):
    with pytest.raises(ParameterError):
        build_gamma(dims, n)


@pytest.mark.parametrize("dims,n", list(all_params(8)))
def test_black_count(dims, n):
    d = build_gamma(dims, n)
    assert d.rank == flag_dimension(dims, n)
    assert len(d.white) == len(dims) + 1


def test_polytope_125_reflexive():
    P = flag_polytope(build_gamma((1, 2), 5))
    assert len(P.vertices) == 12
    assert is_reflexive(P)


def test_roofs_258():
    rs = roofs(build_gamma((2, 5), 8))
    paths = [[a[0] for a in r.arrows] + [r.arrows[-1][1]] for r in rs]
    assert paths[0] == [(0, 5), (0, 4), (1, 4), (2, 4), (2, 3), (2, 2), (3, 2)]
    assert paths[1] == [(3, 2), (3, 1), (4, 1), (5, 1), (5, 0), (6, 0)]


def test_roofs_125():
    rs = roofs(build_gamma((1, 2), 5))
    assert [len(r) for r in rs] == [4, 2]


def test_ell_alpha_horizontal_258():
    d = build_gamma((2, 5), 8)
    ell = ell_alpha(d, ((1, 4), (2, 4)))
    neg = {p for p, c in zip(d.black, ell) if c}
    assert neg == {(2, j) for j in range(5)}
    assert set(ell) <= {0, -1}


def test_ell_alpha_vertical_258():
    d = build_gamma((2, 5), 8)
    ell = ell_alpha(d, ((2, 3), (2, 2)))
    neg = {p for p, c in zip(d.black, ell) if c}
    assert neg == {(i, j) for i in range(3) for j in range(3)}


def test_ell_alpha_arrow_values_258():
    d = build_gamma((2, 5), 8)
    alpha = ((1, 4), (2, 4))
    ell = ell_alpha(d, alpha)
    vals = {a: pair(ell, d.point(a)) for a in d.arrows}
    assert {a for a, v in vals.items() if v == -1} == set(U(d, alpha))
    assert {a for a, v in vals.items() if v == 1} == {((2, j), (3, j)) for j in range(3)}


def test_ell_alpha_white_head():
    d = build_gamma((2, 5), 8)
    with pytest.raises(SelectionError):
        ell_alpha(d, ((2, 2), (3, 2)))
    with pytest.raises(SelectionError):
        ell_alpha(d, ((0, 0), (1, 0)))


@pytest.mark.parametrize("dims,n", list(all_params(7)))
def test_ell_alpha_property(dims, n):
    d = build_gamma(dims, n)
    rs = roofs(d)
    used = set()
    for r in rs:
        for alpha in r.arrows:
            Ua = U(d, alpha)
            assert alpha in Ua
            assert not (used & Ua)
            used |= Ua
            if d.is_white(alpha[1]):
                continue
            ell = ell_alpha(d, alpha)
            for a in d.arrows:
                v = pair(ell, d.point(a))
                assert v == -1 if a in Ua else v >= 0
                if v > 0:
                    assert a[0][0] + 1 == a[1][0]  # only horizontal arrows pick up positive values


def test_selection_and_partition_125():
    d = build_gamma((1, 2), 5)
    fp = flag_nef_partition(d, [(3, 1)])
    assert [len(p) for p in fp.partition.parts] == [9, 3]
    assert fp.verified and verify_partition(fp.partition)
    E1 = {fp.ray_arrow[r] for r in fp.partition.parts[0]}
    union = set()
    for alpha in fp.selection[0]:
        union |= U(d, alpha)
    assert E1 == union


def test_fano_condition():
    d = build_gamma((1, 2), 5)
    with pytest.raises(FanoConditionError):
        select_roof_arrows(d, [(4, 1)])
    with pytest.raises(FanoConditionError):
        select_roof_arrows(d, [(2, 1), (1, 1)])
    with pytest.raises(ParameterError):
        select_roof_arrows(d, [(1,)])


def test_p1_k0():
    r = flag_lg((1,), 2)
    assert [len(p) for p in r.flag_partition.partition.parts] == [2]
    x = LaurentPolynomial.variable(r.potential.vars, 0)
    assert r.potential == x + x ** -1


def test_flag_lg_small_cases():
    # every Fano hypersurface of degree (1,...) in small flag manifolds; Newton = Delta_V
    for dims, n in [((1,), 3), ((1, 2), 3), ((2,), 4), ((1, 3), 4)]:
        d = build_gamma(dims, n)
        degs = tuple(1 for _ in roofs(d))
        r = flag_lg(dims, n, [degs])
        from toricdegen.lg import check_newton_equals_deltaV
        assert check_newton_equals_deltaV(r.potential, r.degeneration)
        assert r.elimination.check_parametrization()


def test_flag_258_vertex_level():
    # rank 21: partition built without the fan, the amenable vector still checks out
    from toricdegen.flag import flag_vectors
    d = build_gamma((2, 5), 8)
    fp = flag_nef_partition(d, [(2, 1)])
    assert not fp.verified
    (v,) = flag_vectors(d, fp.selection)
    parts = fp.partition.parts
    rays = fp.partition.fan.rays
    assert all(pair(v, rays[r]) == -1 for r in parts[0])
    assert all(pair(v, rays[r]) >= 0 for r in parts[1])
