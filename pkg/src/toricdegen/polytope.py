"""Exact rational polytopes, cones, complete fans and piecewise-linear functions."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _dd
from .errors import DegenerateInputError, GeometryError, RankError
from .lattice import Basis, LatticeVector, extend_to_basis, pair, primitive_int, rank_q

#: facet lists are only guaranteed up to this ambient rank
max_facet_rank = 8


def _point(p) -> tuple:
    out = []
    for c in p:
        f = Fraction(c)
        out.append(f.numerator if f.denominator == 1 else f)
    return tuple(out)


def _is_integral(p) -> bool:
    return all(Fraction(c).denominator == 1 for c in p)


def _tight_vertices(points: list[tuple], tight: list[frozenset]) -> list[int]:
    # p is a vertex iff no other point is active on every facet active at p
    keep = []
    for i, zi in enumerate(tight):
        if not any(j != i and points[j] != points[i] and zi <= zj for j, zj in enumerate(tight)):
            keep.append(i)
    return keep


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points.

    ``facets`` holds pairs ``(normal, offset)`` meaning ``<normal, x> <= offset``;
    ``equations`` holds ``(a_1, ..., a_n, c)`` meaning ``<a, x> = c`` and is
    empty for full-dimensional polytopes.
    """

    ambient_rank: int
    vertices: tuple[tuple, ...]
    facets: tuple[tuple[tuple[int, ...], int], ...] | None = None
    equations: tuple[tuple[int, ...], ...] = ()

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def contains_origin_interior(self) -> bool:
        return self.is_full_dimensional and all(b > 0 for _, b in self.facets)

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def contains(self, x) -> bool:
        if self.facets is None:
            raise GeometryError("facets unavailable")
        x = [Fraction(c) for c in x]
        return (all(sum(a * c for a, c in zip(e, x)) == e[-1] for e in self.equations)
                and all(pair(a, x) <= b for a, b in self.facets))

    def to_dict(self) -> dict:
        return {"rank": self.ambient_rank, "vertices": [_json_point(v) for v in self.vertices]}


def _json_point(p):
    return [c if isinstance(c, int) else f"{Fraction(c).numerator}/{Fraction(c).denominator}" for c in p]


def convex_hull(points: Sequence[Sequence]) -> Polytope:
    """Irredundant vertex list (sorted) and, when full-dimensional, the facets."""
    pts = sorted({_point(p) for p in points})
    if not pts:
        raise DegenerateInputError("convex hull of an empty set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise RankError("points of different ranks")
    if len(pts) == 1:
        eqs = tuple(tuple(int(i == j) for j in range(d)) + (pts[0][i],) for i in range(d))
        return Polytope(d, tuple(pts), (), eqs)
    rows = [tuple(p) + (1,) for p in pts]
    rays, lineality, _ = _dd.extreme_rays(rows, d + 1)
    tight = [frozenset(i for i, r in enumerate(rows) if _dd._dot(_dd._integral(r), ray) == 0)
             for ray in rays]
    # tight sets per point, indexed by facet
    point_tight = [frozenset(f for f, z in enumerate(tight) if i in z) for i in range(len(pts))]
    verts = tuple(pts[i] for i in _tight_vertices(pts, point_tight))
    # affine equations <a, x> = c of the affine hull
    equations = tuple(sorted(tuple(l[:d]) + (-l[d],) for l in lineality))
    facets = tuple(sorted((tuple(-c for c in r[:d]), r[d]) for r in rays))
    return Polytope(d, verts, facets, equations)


def polytope_from_inequalities(normals: Sequence[Sequence], offsets: Sequence) -> Polytope:
    """The polytope {x : <a_i, x> <= b_i}; errors if unbounded or empty."""
    if not normals:
        raise GeometryError("no inequalities: region is unbounded")
    d = len(normals[0])
    rows = []
    for a, b in zip(normals, offsets):
        rows.append(tuple(-Fraction(c) for c in a) + (Fraction(b),))
    rows.append(tuple([0] * d) + (1,))
    rays, lineality, _ = _dd.extreme_rays(rows, d + 1)
    if lineality:
        raise GeometryError("region contains a line: unbounded")
    verts = []
    for r in rays:
        if r[d] == 0:
            raise GeometryError("region is unbounded")
        verts.append(tuple(Fraction(c, r[d]) for c in r[:d]))
    if not verts:
        raise GeometryError("region is empty")
    return convex_hull(verts)


def is_reflexive(P: Polytope) -> bool:
    """Integral, origin in the interior, and every facet at lattice height 1."""
    if not P.contains_origin_interior:
        raise GeometryError("origin is not an interior point")
    if not all(_is_integral(v) for v in P.vertices):
        return False
    return all(b == 1 for _, b in P.facets)


# ---------------------------------------------------------------------------
# cones and fans


@dataclass(frozen=True)
class Cone:
    ray_generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.ray_generators:
            raise DegenerateInputError("cone needs at least one generator")

    @property
    def ambient_rank(self) -> int:
        return len(self.ray_generators[0])

    @property
    def dim(self) -> int:
        return rank_q(self.ray_generators)

    def inequalities(self):
        """(facet normals a with a.x >= 0, equations) describing the cone."""
        return _dd.cone_facets(self.ray_generators, self.ambient_rank)

    def contains(self, x) -> bool:
        normals, eqs = self.inequalities()
        return (all(pair(e, x) == 0 for e in eqs)
                and all(pair(a, x) >= 0 for a in normals))


@dataclass(frozen=True)
class Fan:
    """A fan given by primitive rays and maximal cones (index sets into rays).

    ``chart`` optionally records the lattice basis used when this fan lives in
    a sublattice M_V (see :func:`intersect_fan_with_subspace`).
    """

    ambient_rank: int
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]
    chart: Basis | None = None
    chart_offset: int = 0
    _hrep: dict = field(default_factory=dict, compare=False, repr=False)

    def cone(self, i: int) -> Cone:
        return Cone(tuple(self.rays[j] for j in self.maximal_cones[i]))

    def cone_inequalities(self, i: int):
        if i not in self._hrep:
            self._hrep[i] = self.cone(i).inequalities()
        return self._hrep[i]

    def locate(self, x) -> int | None:
        """Index of a maximal cone containing x, or None."""
        for i in range(len(self.maximal_cones)):
            normals, eqs = self.cone_inequalities(i)
            if all(pair(e, x) == 0 for e in eqs) and all(pair(a, x) >= 0 for a in normals):
                return i
        return None

    def cones_containing(self, x) -> list[int]:
        out = []
        for i in range(len(self.maximal_cones)):
            normals, eqs = self.cone_inequalities(i)
            if all(pair(e, x) == 0 for e in eqs) and all(pair(a, x) >= 0 for a in normals):
                out.append(i)
        return out

    def is_complete(self, samples: int = 200, seed: int = 0, bound: int = 50) -> bool:
        """Sampled check: every random direction lies in some maximal cone, and
        generic directions lie in exactly one."""
        rng = random.Random(seed)
        for _ in range(samples):
            x = [rng.randint(-bound, bound) for _ in range(self.ambient_rank)]
            if not any(x):
                continue
            hits = self.cones_containing(x)
            if not hits:
                return False
            if len(hits) > 1:
                # a generic direction may only lie on a common face
                interior = [i for i in hits
                            if all(pair(a, x) > 0 for a in self.cone_inequalities(i)[0])]
                if len(interior) > 1:
                    return False
        return True

    def to_dict(self) -> dict:
        out = {
            "rank": self.ambient_rank,
            "rays": [list(r) for r in self.rays],
            "maximal_cones": [list(c) for c in self.maximal_cones],
        }
        if self.chart is not None:
            out["chart"] = [list(v) for v in self.chart]
            out["chart_offset"] = self.chart_offset
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Fan":
        return cls(int(d["rank"]), tuple(tuple(int(c) for c in r) for r in d["rays"]),
                   tuple(tuple(int(c) for c in cone) for cone in d["maximal_cones"]))


def face_fan(P: Polytope) -> Fan:
    """Fan over the faces of P; rays are the primitive generators through the vertices."""
    if not P.contains_origin_interior:
        raise GeometryError("origin is not an interior point of the polytope")
    verts = list(P.vertices)
    rays = tuple(primitive_int(v) for v in verts)
    cones = []
    for a, b in P.facets:
        idx = tuple(i for i, v in enumerate(verts) if pair(a, v) == b)
        cones.append(idx)
    return Fan(P.ambient_rank, rays, tuple(cones))


def subspace_chart(V: Sequence[Sequence[int]], rank: int, basis: Basis | None = None):
    """The lattice chart on M_V = V^perp: (basis, lattice generators of M_V ∩ M).

    Chart coordinates of u in M_V are <b_j, u> for the completion vectors b_j.
    """
    k = len(V)
    if basis is None:
        basis = extend_to_basis(V, rank) if k else extend_to_basis([], rank)
    else:
        if [tuple(v) for v in basis[:k]] != [tuple(v) for v in V]:
            raise RankError("basis does not start with the given vectors")
    dual = basis.dual_basis()
    return basis, dual[k:]


def intersect_fan_with_subspace(fan: Fan, V: Sequence[Sequence[int]], basis: Basis | None = None) -> Fan:
    """The fan {C ∩ M_V} expressed in lattice coordinates on M_V."""
    n = fan.ambient_rank
    V = [tuple(v) for v in V]
    if V and rank_q(V) != len(V):
        raise RankError("subspace equations are linearly dependent")
    k = len(V)
    if k == 0 and basis is None:
        return Fan(n, fan.rays, fan.maximal_cones, extend_to_basis([], n), 0)
    basis, gens = subspace_chart(V, n, basis)
    d = n - k
    # gens[j] in M; x = sum c_j gens[j]
    cone_rays: list[frozenset] = []
    seen = set()
    for i in range(len(fan.maximal_cones)):
        normals, eqs = fan.cone_inequalities(i)
        rows = [tuple(pair(a, g) for g in gens) for a in normals]
        eq_rows = [tuple(pair(e, g) for g in gens) for e in eqs]
        rows += eq_rows + [tuple(-c for c in r) for r in eq_rows]
        rays, lin, _ = _dd.extreme_rays(rows, d) if d else ([], [], [])
        if lin:
            raise GeometryError("cone is not strictly convex")
        if not rays or rank_q(rays) != d:
            continue
        key = frozenset(primitive_int(r) for r in rays)
        if key in seen:
            continue
        seen.add(key)
        cone_rays.append(key)
    all_rays = sorted(set().union(*cone_rays)) if cone_rays else []
    index = {r: i for i, r in enumerate(all_rays)}
    cones = tuple(tuple(sorted(index[r] for r in c)) for c in cone_rays)
    return Fan(d, tuple(all_rays), cones, basis, k)


def chart_to_ambient(fan: Fan, x: Sequence) -> tuple:
    """Map chart coordinates on M_V back to M."""
    if fan.chart is None:
        return tuple(x)
    gens = fan.chart.dual_basis()[fan.chart_offset:]
    n = fan.chart.rank
    return tuple(sum(Fraction(c) * g[i] for c, g in zip(x, gens)) for i in range(n))


# ---------------------------------------------------------------------------
# piecewise-linear functions


@dataclass(frozen=True)
class PLFunction:
    """Function linear on each maximal cone: cone i carries the dual vector u_C."""

    fan: Fan
    slopes: tuple[tuple[Fraction, ...], ...]
    convex: bool = False

    @property
    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for u in self.slopes for c in u)

    def __call__(self, x) -> Fraction:
        return pl_eval(self, x)

    def distinct_slopes(self) -> list[tuple[Fraction, ...]]:
        return sorted(set(self.slopes))

    def to_dict(self) -> dict:
        return {str(i): [_frac_str(c) for c in u] for i, u in enumerate(self.slopes)}


def _frac_str(c) -> str:
    f = Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def pl_eval(phi: PLFunction, x) -> Fraction:
    if phi.convex:
        return max(Fraction(pair(u, x)) for u in phi.slopes)
    i = phi.fan.locate(x)
    if i is None:
        raise GeometryError("point not covered by the fan")
    return Fraction(pair(phi.slopes[i], x))


def linear_pl(fan: Fan, v: Sequence) -> PLFunction:
    u = tuple(Fraction(c) for c in v)
    return PLFunction(fan, tuple(u for _ in fan.maximal_cones), True)
