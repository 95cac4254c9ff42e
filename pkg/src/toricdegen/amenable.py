"""Amenable collections, their binomial degenerations, Sigma_V and Delta_V."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Sequence

import numpy as np

from .errors import GeometryError, InvariantViolation, ParameterError, SaturationError
from .lattice import Basis, _row_echelon, extend_to_basis, pair
from .nef import NefPartition
from .polytope import (Fan, Polytope, chart_to_ambient, convex_hull, intersect_fan_with_subspace,
                       is_reflexive, polytope_from_inequalities)

DEFAULT_BOUND = 6


@dataclass(frozen=True)
class AmenableCollection:
    partition: NefPartition
    vectors: tuple[tuple[int, ...], ...]
    completion: Basis

    def __post_init__(self):
        k = len(self.vectors)
        if [tuple(v) for v in self.completion[:k]] != [tuple(v) for v in self.vectors]:
            raise SaturationError("completion does not start with the collection")

    @property
    def k(self) -> int:
        return len(self.vectors)

    def pairing_matrix(self) -> list[list[int]]:
        return pairing_matrix(self.partition, self.vectors)

    def to_dict(self) -> dict:
        return {"vectors": [list(v) for v in self.vectors],
                "completion": [list(b) for b in self.completion]}


def pairing_matrix(partition: NefPartition, vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Rows v_i, columns the rays of the fan: entries <v_i, rho>."""
    return [[pair(v, rho) for rho in partition.fan.rays] for v in vectors]


def _conditions(partition: NefPartition, i: int):
    """(equalities, inequalities) on v_i as (ray, target) and ray lists; i is 0-based."""
    eqs = [(rho, -1) for rho in partition.part_rays(i)]
    for j in range(i):
        eqs += [(rho, 0) for rho in partition.part_rays(j)]
    ineqs = []
    for j in range(i + 1, len(partition.parts)):
        ineqs += partition.part_rays(j)
    return eqs, ineqs


def verify_amenable(partition: NefPartition, vectors: Sequence[Sequence[int]]) -> bool:
    if len(vectors) != partition.k:
        return False
    for i, v in enumerate(vectors):
        eqs, ineqs = _conditions(partition, i)
        if any(pair(v, rho) != t for rho, t in eqs):
            return False
        if any(pair(v, rho) < 0 for rho in ineqs):
            return False
    return True


def _search_part(partition: NefPartition, i: int, bound: int) -> list[tuple[int, ...]]:
    n = partition.fan.ambient_rank
    eqs, ineqs = _conditions(partition, i)
    aug = [[Fraction(c) for c in rho] + [Fraction(t)] for rho, t in eqs]
    rref, pivots = _row_echelon(aug)
    if n in pivots:
        return []
    free = [j for j in range(n) if j not in pivots]
    # pivot coordinate p: den * x_p = num_b - sum num_f * x_f
    rows = []
    for r, p in enumerate(pivots):
        row = rref[r]
        den = lcm(*(c.denominator for c in row)) if row else 1
        rows.append((p, den, int(row[n] * den), [int(row[f] * den) for f in free]))
    span = np.arange(-bound, bound + 1, dtype=np.int64)
    if free:
        grid = np.stack(np.meshgrid(*([span] * len(free)), indexing="ij"), -1).reshape(-1, len(free))
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    X = np.zeros((grid.shape[0], n), dtype=np.int64)
    ok = np.ones(grid.shape[0], dtype=bool)
    for c, f in enumerate(free):
        X[:, f] = grid[:, c]
    for p, den, b, coeffs in rows:
        val = np.full(grid.shape[0], b, dtype=np.int64)
        if free:
            val -= grid @ np.array(coeffs, dtype=np.int64)
        ok &= (val % den) == 0
        X[:, p] = val // den
    ok &= np.all(np.abs(X) <= bound, axis=1)
    if ineqs:
        ok &= np.all(X @ np.array(ineqs, dtype=np.int64).T >= 0, axis=1)
    found = sorted(tuple(int(c) for c in x) for x in X[ok])
    # double-check exactly
    return [v for v in found if all(pair(v, rho) == t for rho, t in eqs)]


def search_amenable(partition: NefPartition, bound: int = DEFAULT_BOUND) -> list[AmenableCollection]:
    """All amenable collections with entries in [-bound, bound], lexicographically ordered."""
    if bound < 1:
        raise ParameterError("search bound must be at least 1")
    per_part = [_search_part(partition, i, bound) for i in range(partition.k)]
    out = []
    for vs in product(*per_part):
        try:
            basis = extend_to_basis(list(vs), partition.fan.ambient_rank, oriented=True)
        except SaturationError:
            warnings.warn(f"discarding collection {vs} with non-saturated span")
            continue
        out.append(AmenableCollection(partition, tuple(vs), basis))
    return out


def make_collection(partition: NefPartition, vectors: Sequence[Sequence[int]],
                    completion: Sequence[Sequence[int]] | None = None) -> AmenableCollection:
    """Wrap given vectors, completing them to an oriented basis unless one is supplied."""
    vectors = tuple(tuple(int(c) for c in v) for v in vectors)
    if not verify_amenable(partition, vectors):
        raise ParameterError("vectors are not an amenable collection for this partition")
    if completion is None:
        basis = extend_to_basis(list(vectors), partition.fan.ambient_rank, oriented=True)
    else:
        basis = Basis(list(vectors) + [tuple(c) for c in completion])
    return AmenableCollection(partition, vectors, basis)


# ---------------------------------------------------------------------------
# mixed dominating matrices


def _is_mixed(rows) -> bool:
    return all(any(x > 0 for x in r) and any(x < 0 for x in r) for r in rows)


def _amenable_shape(matrix) -> bool:
    """Each column has at most one negative entry and only zeros below it."""
    if not matrix:
        return True
    for j in range(len(matrix[0])):
        neg = [i for i, row in enumerate(matrix) if row[j] < 0]
        if len(neg) > 1:
            return False
        if neg and any(matrix[i][j] for i in range(neg[0] + 1, len(matrix))):
            return False
    return True


def is_mixed_dominating(matrix: Sequence[Sequence[int]], exhaustive: bool = False) -> bool:
    """No square submatrix has a positive and a negative entry in every row."""
    matrix = [list(r) for r in matrix]
    if not exhaustive and _amenable_shape(matrix):
        # s mixed rows need s distinct negative columns; the lowest row then
        # has no room for a positive entry
        return True
    m = len(matrix[0]) if matrix else 0
    for s in range(2, min(len(matrix), m) + 1):
        for rows in combinations(range(len(matrix)), s):
            sub = [matrix[i] for i in rows]
            # only columns that are nonzero somewhere matter
            cols = [j for j in range(m) if any(r[j] for r in sub)]
            for cs in combinations(cols, s):
                if _is_mixed([[r[j] for j in cs] for r in sub]):
                    return False
    return True


# ---------------------------------------------------------------------------
# degenerations


@dataclass(frozen=True)
class Binomial:
    pos: dict
    neg: dict

    def to_dict(self) -> dict:
        return {"pos": {str(k): v for k, v in sorted(self.pos.items())},
                "neg": {str(k): v for k, v in sorted(self.neg.items())}}


@dataclass(frozen=True)
class DegenerationData:
    collection: AmenableCollection
    binomials: tuple[Binomial, ...]
    sigma_V: Fan
    delta_V: Polytope
    phi_slopes: tuple[tuple[Fraction, ...], ...] = field(repr=False, default=())

    @property
    def chart(self) -> Basis:
        return self.collection.completion

    def phi(self, x) -> Fraction:
        """phi_{k+1} in chart coordinates on M_V."""
        return max(sum(Fraction(a) * b for a, b in zip(u, x)) for u in self.phi_slopes)

    def ray_points(self) -> list[tuple[Fraction, ...]]:
        """Each ray of Sigma_V scaled onto the level set phi_{k+1} = 1."""
        return [tuple(Fraction(c) / self.phi(r) for c in r) for r in self.sigma_V.rays]

    def to_dict(self) -> dict:
        return {
            "binomials": [b.to_dict() for b in self.binomials],
            "sigma_V": self.sigma_V.to_dict(),
            "delta_V": self.delta_V.to_dict(),
        }


def binomials(collection: AmenableCollection) -> list[Binomial]:
    out = []
    p = collection.partition
    for i, v in enumerate(collection.vectors):
        own = set(p.parts[i])
        pos = {r: 1 for r in sorted(own)}
        neg = {}
        for r, rho in enumerate(p.fan.rays):
            if r not in own:
                e = pair(v, rho)
                if e > 0:
                    neg[r] = e
        out.append(Binomial(pos, neg))
    return out


def restricted_slopes(collection: AmenableCollection) -> tuple[tuple[Fraction, ...], ...]:
    """The linear pieces of phi_{k+1} written in chart coordinates of M_V."""
    k = collection.k
    gens = collection.completion.dual_basis()[k:]
    phi = collection.partition.supports[-1]
    return tuple(sorted({tuple(pair(u, g) for g in gens) for u in phi.slopes}))


def delta_V(collection: AmenableCollection) -> Polytope:
    slopes = restricted_slopes(collection)
    P = polytope_from_inequalities(slopes, [1] * len(slopes))
    if not P.is_full_dimensional:
        raise GeometryError("Delta_V is not full-dimensional in M_V")
    return P


def _hypotheses(partition: NefPartition) -> bool:
    cart = partition.cartier
    return cart[-1] or all(cart[:-1])


def _rays_hull(fan: Fan) -> frozenset:
    if not fan.rays:
        return frozenset({()})
    return convex_hull(fan.rays).vertex_set()


def degeneration(collection: AmenableCollection, check: bool = True) -> DegenerationData:
    p = collection.partition
    M = collection.pairing_matrix()
    if not is_mixed_dominating(M):
        raise InvariantViolation("pairing matrix is not mixed dominating")
    sigma = intersect_fan_with_subspace(p.fan, collection.vectors, collection.completion)
    delta = delta_V(collection)
    data = DegenerationData(collection, tuple(binomials(collection)), sigma, delta,
                            restricted_slopes(collection))
    if check and _hypotheses(p):
        if _rays_hull(sigma) != delta.vertex_set():
            raise InvariantViolation("hull of the rays of Sigma_V differs from Delta_V")
    return data


def check_degeneration_theorems(d: DegenerationData) -> dict:
    """Per-assertion report; each entry is "pass", "fail" or "n/a"."""
    p = d.collection.partition
    report = {}
    # (a) each ray meets phi_{k+1} = 1 at a lattice point
    ok = True
    for rho in d.sigma_V.rays:
        val = d.phi(rho)
        if val <= 0 or val.numerator != 1:
            ok = False
    report["ray_height_one"] = "pass" if ok else "fail"
    if _hypotheses(p) and d.delta_V.ambient_rank == 0:
        # M_V = 0: Delta_V is a point, primitivity is vacuous
        report["vertices_primitive"] = "n/a"
        report["hull_equals_delta"] = "pass" if _rays_hull(d.sigma_V) == d.delta_V.vertex_set() else "fail"
    elif _hypotheses(p):
        prim = all(d.phi(rho) == 1 for rho in d.sigma_V.rays)
        verts = d.delta_V.vertex_set()
        prim = prim and all(all(Fraction(c).denominator == 1 for c in v) for v in verts)
        prim = prim and verts <= set(d.sigma_V.rays)
        report["vertices_primitive"] = "pass" if prim else "fail"
        report["hull_equals_delta"] = "pass" if _rays_hull(d.sigma_V) == verts else "fail"
    else:
        report["vertices_primitive"] = "n/a"
        report["hull_equals_delta"] = "n/a"
    if p.cartier[-1]:
        try:
            report["reflexive"] = "pass" if is_reflexive(d.delta_V) else "fail"
        except GeometryError:
            report["reflexive"] = "fail"
    else:
        report["reflexive"] = "n/a"
    report["mixed_dominating"] = "pass" if is_mixed_dominating(d.collection.pairing_matrix()) else "fail"
    if d.collection.k and len(d.sigma_V.rays):
        # Sigma_V rays really lie in M_V
        amb = [chart_to_ambient(d.sigma_V, r) for r in d.sigma_V.rays]
        inside = all(pair(v, x) == 0 for v in d.collection.vectors for x in amb)
        report["rays_in_M_V"] = "pass" if inside else "fail"
    return report
