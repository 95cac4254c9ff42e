from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P2, partition
from toricdegen.amenable import (check_degeneration_theorems, degeneration, is_mixed_dominating,
                                 make_collection, search_amenable, verify_amenable)
from toricdegen.errors import ParameterError, PartitionError
from toricdegen.nef import nef_partition
from toricdegen.polytope import convex_hull


def mixed_oracle(M) -> bool:
    """No square submatrix whose every row has a positive and a negative entry."""
    rows, cols = len(M), len(M[0]) if M else 0
    for s in range(1, min(rows, cols) + 1):
        for R in combinations(range(rows), s):
            for C in combinations(range(cols), s):
                if all(any(M[r][c] > 0 for c in C) and any(M[r][c] < 0 for c in C) for r in R):
                    return False
    return True


def test_verify_conic(conic):
    assert verify_amenable(conic, [(-1, -1)])
    assert not verify_amenable(conic, [(-1, 0)])


def test_search_conic(conic):
    cols = search_amenable(conic, 2)
    assert [c.vectors for c in cols] == [((-1, -1),)]


def test_search_quadric(quadric):
    cols = search_amenable(quadric, 3)
    assert sorted(c.vectors[0] for c in cols) == [(-1, -1, c) for c in (0, 1, 2)]
    for c in cols:
        assert c.completion.det() == 1
        assert c.completion[0] == c.vectors[0]


def test_search_bound(conic):
    with pytest.raises(ParameterError):
        search_amenable(conic, 0)


def test_empty_part_rejected():
    from conftest import fan_of
    with pytest.raises(PartitionError):
        nef_partition(fan_of(P2), [[], [0, 1, 2]])


def test_mixed_examples(quadric):
    assert is_mixed_dominating([[-1, 1]])
    assert not is_mixed_dominating([[-1, 1], [1, -1]])
    col = make_collection(quadric, [(-1, -1, 1)])
    assert is_mixed_dominating(col.pairing_matrix())
    assert is_mixed_dominating(col.pairing_matrix(), exhaustive=True)


@settings(max_examples=150)
@given(st.integers(1, 3).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-2, 2), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_mixed_against_oracle(M):
    assert is_mixed_dominating(M) == mixed_oracle(M)
    assert is_mixed_dominating(M, exhaustive=True) == mixed_oracle(M)


def test_degeneration_conic(conic):
    col = make_collection(conic, [(-1, -1)])
    d = degeneration(col)
    (b,) = d.binomials
    idx = {r: i for i, r in enumerate(conic.fan.rays)}
    assert b.pos == {idx[(1, 0)]: 1, idx[(0, 1)]: 1}
    assert b.neg == {idx[(-1, -1)]: 2}
    assert set(d.sigma_V.rays) == {(1,), (-1,)}
    assert d.delta_V.vertex_set() == {(1,), (-1,)}
    assert set(check_degeneration_theorems(d).values()) == {"pass"}


def test_degeneration_k0(p2_toric):
    col = make_collection(p2_toric, [])
    d = degeneration(col)
    assert d.binomials == ()
    assert set(d.sigma_V.rays) == set(P2)
    assert d.delta_V.vertex_set() == convex_hull(P2).vertex_set()


def test_quadric_reports(quadric):
    for col in search_amenable(quadric, 3):
        rep = check_degeneration_theorems(degeneration(col))
        assert set(rep.values()) == {"pass"}, rep


def test_hypothesis_gating():
    # neither E_1 nor E_2 Cartier
    p = partition([(-1, -1), (0, 1), (1, -1)], [[(-1, -1)], [(0, 1), (1, -1)]])
    assert p.cartier == (False, False)
    col = make_collection(p, [(1, 0)])
    rep = check_degeneration_theorems(degeneration(col))
    assert rep["vertices_primitive"] == "n/a"
    assert rep["reflexive"] == "n/a"
    assert rep["mixed_dominating"] == "pass"


def test_delta_v_not_from_primitive_rays():
    # Q-Cartier case: Delta_V = [-2, 1] although the rays of Sigma_V are +-1
    p = partition([(-1, -1), (0, 1), (1, -1)], [[(-1, -1)], [(0, 1), (1, -1)]])
    d = degeneration(make_collection(p, [(1, 0)]), check=False)
    assert set(d.sigma_V.rays) == {(1,), (-1,)}
    assert sorted(v[0] for v in d.delta_V.vertices) in ([-2, 1], [-1, 2])
    assert convex_hull(d.ray_points()).vertex_set() == d.delta_V.vertex_set()


def test_triangular_structure():
    p = partition(P2, [[(1, 0)], [(0, 1)], [(-1, -1)]])
    cols = search_amenable(p, 3)
    assert sorted(c.vectors for c in cols) == [((-1, 0), (0, -1)), ((-1, 1), (0, -1))]
    for col in cols:
        M = col.pairing_matrix()
        for i in range(col.k):
            for j in range(col.k):
                r = p.parts[j][0]
                if i == j:
                    assert M[i][r] == -1
                elif j < i:
                    assert M[i][r] == 0
