"""Ladder diagrams Gamma(n_1, ..., n_l, n) and the Laurent models of flag complete intersections.

Grid points are (m, n) = (column, row). Black vertices are listed column by
column, rows descending, which fixes the coordinate order of M = Z^black.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .amenable import AmenableCollection, DegenerationData, degeneration, verify_amenable
from .errors import FanoConditionError, InvariantViolation, ParameterError, SelectionError
from .lattice import Basis, det_z
from .lg import Elimination, GiventalModel, build_givental, eliminate
from .nef import NefPartition, nef_partition
from .polytope import Fan, Polytope, convex_hull, face_fan, max_facet_rank

Point = tuple[int, int]
Arrow = tuple[Point, Point]


@dataclass(frozen=True)
class FlagDiagram:
    dims: tuple[int, ...]
    n: int
    black: tuple[Point, ...]
    white: tuple[Point, ...]
    arrows: tuple[Arrow, ...]

    @property
    def blocks(self) -> tuple[int, ...]:
        ds = (0,) + self.dims + (self.n,)
        return tuple(b - a for a, b in zip(ds, ds[1:]))

    @property
    def rank(self) -> int:
        return len(self.black)

    def is_white(self, p: Point) -> bool:
        return p in self.white

    def index(self, p: Point) -> int:
        return self.black.index(p)

    def point(self, a: Arrow) -> tuple[int, ...]:
        """p_alpha = e_head - e_tail; white vertices sit at the origin."""
        t, h = a
        v = [0] * self.rank
        if not self.is_white(h):
            v[self.index(h)] += 1
        if not self.is_white(t):
            v[self.index(t)] -= 1
        return tuple(v)

    def names(self, prefix: str = "x") -> list[str]:
        return [f"{prefix}_{{{m},{r}}}" for m, r in self.black]


def flag_dimension(dims: Sequence[int], n: int) -> int:
    ds = list(dims) + [n]
    return sum(a * (b - a) for a, b in zip(ds, ds[1:]))


def _check_params(dims: Sequence[int], n: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    seq = (0,) + dims + (int(n),)
    if not dims or any(a >= b for a, b in zip(seq, seq[1:])):
        raise ParameterError(f"need 0 < n_1 < ... < n_l < n, got {dims} and {n}")
    return dims


def build_gamma(dims: Sequence[int], n: int) -> FlagDiagram:
    dims = _check_params(dims, n)
    ds = (0,) + dims + (n,)
    ks = [b - a for a, b in zip(ds, ds[1:])]
    # boxes from the bottom right corner up to the top left
    whites, black = [], set()
    x, y = n, 0
    for k in ks:
        x -= k
        whites.append((x, y))
        for col in range(x, x + k):
            for row in range(y):
                black.add((col, row))
        y += k
    black_order = tuple(sorted(black, key=lambda p: (p[0], -p[1])))
    placed = black | set(whites)
    arrows = []
    for p in sorted(placed):
        for q in ((p[0] + 1, p[1]), (p[0], p[1] - 1)):
            if q in placed:
                arrows.append((p, q))
    return FlagDiagram(dims, n, black_order, tuple(whites), tuple(sorted(arrows)))


@dataclass(frozen=True)
class Roof:
    index: int
    start: Point
    end: Point
    arrows: tuple[Arrow, ...]

    def __len__(self):
        return len(self.arrows)


def roofs(d: FlagDiagram) -> list[Roof]:
    """Extremal paths between consecutive white vertices, top-left roof first."""
    out = []
    ws = list(reversed(d.white))
    for i, ((m0, n0), (m1, n1)) in enumerate(zip(ws, ws[1:])):
        path = [(m0, n0), (m0, n0 - 1)]
        for m in range(m0 + 1, m1):
            path.append((m, n0 - 1))
        for r in range(n0 - 2, n1 - 1, -1):
            path.append((m1 - 1, r))
        path.append((m1, n1))
        arrows = tuple(zip(path, path[1:]))
        arrow_set = set(d.arrows)
        if any(a not in arrow_set for a in arrows):
            raise InvariantViolation(f"roof {i + 1} leaves the diagram")
        out.append(Roof(i, (m0, n0), (m1, n1), arrows))
    return out


def _horizontal(a: Arrow) -> bool:
    return a[0][1] == a[1][1]


def U(d: FlagDiagram, alpha: Arrow) -> frozenset:
    """Arrows directly below a horizontal alpha, or directly left of a vertical one (alpha included)."""
    (m, r), _ = alpha
    if _horizontal(alpha):
        return frozenset(a for a in d.arrows if _horizontal(a) and a[0][0] == m and a[0][1] <= r)
    return frozenset(a for a in d.arrows if not _horizontal(a) and a[0][1] == r and a[0][0] <= m)


def _roof_of(d: FlagDiagram, alpha: Arrow) -> Roof:
    for roof in roofs(d):
        if alpha in roof.arrows:
            return roof
    raise SelectionError(f"{alpha} is not a roof arrow")


def ell_alpha(d: FlagDiagram, alpha: Arrow) -> tuple[int, ...]:
    """The dual vector that is -1 exactly on U(alpha)."""
    roof = _roof_of(d, alpha)
    if d.is_white(alpha[1]):
        raise SelectionError(f"{alpha} has a white head")
    (m0, n0), (m1, _) = roof.start, roof.end
    (m, r), _ = alpha
    if _horizontal(alpha):
        inside = lambda i, j: m + 1 <= i <= m1 - 1 and j <= n0 - 1  # noqa: E731
    else:
        inside = lambda i, j: i <= m1 - 1 and j <= r - 1  # noqa: E731
    return tuple(-1 if inside(i, j) else 0 for i, j in d.black)


def select_roof_arrows(d: FlagDiagram, multidegrees: Sequence[Sequence[int]]) -> list[list[Arrow]]:
    """Disjoint sets U_i of roof arrows realising the multidegrees, greedily from each roof's start."""
    rs = roofs(d)
    mds = [tuple(int(x) for x in md) for md in multidegrees]
    for md in mds:
        if len(md) != len(rs):
            raise ParameterError(f"multidegree {md} needs {len(rs)} entries")
        if any(x < 0 for x in md):
            raise ParameterError("multidegrees must be nonnegative")
    for j, roof in enumerate(rs):
        total = sum(md[j] for md in mds)
        if total >= len(roof):
            raise FanoConditionError(f"roof {j + 1}: degrees sum to {total}, need < {len(roof)}")
    queues = [[a for a in roof.arrows if not d.is_white(a[1])] for roof in rs]
    out = []
    for md in mds:
        chosen = []
        for j, c in enumerate(md):
            chosen += queues[j][:c]
            queues[j] = queues[j][c:]
        out.append(chosen)
    return out


def flag_polytope(d: FlagDiagram) -> Polytope:
    return convex_hull([d.point(a) for a in d.arrows])


@dataclass(frozen=True)
class FlagPartition:
    partition: NefPartition
    selection: tuple[tuple[Arrow, ...], ...]
    ray_arrow: tuple[Arrow, ...]
    verified: bool


def flag_nef_partition(d: FlagDiagram, multidegrees: Sequence[Sequence[int]],
                       verify: bool | None = None) -> FlagPartition:
    """Parts E_i = union of U(alpha) over alpha in U_i; the rest is E_{k+1}.

    The fan and support functions are computed when the rank is at most
    ``max_facet_rank`` (or when ``verify`` is forced).
    """
    sel = select_roof_arrows(d, multidegrees)
    if verify is None:
        verify = d.rank <= max_facet_rank
    points = {a: d.point(a) for a in d.arrows}
    if verify:
        fan = face_fan(flag_polytope(d))
    else:
        fan = Fan(d.rank, tuple(sorted(set(points.values()))), ())
    ray_index = {r: i for i, r in enumerate(fan.rays)}
    if len(ray_index) != len(d.arrows) or any(p not in ray_index for p in points.values()):
        raise InvariantViolation("arrow points are not the vertices of the flag polytope")
    ray_arrow = [None] * len(fan.rays)
    for a, p in points.items():
        ray_arrow[ray_index[p]] = a
    used: set = set()
    parts = []
    for chosen in sel:
        part = set()
        for alpha in chosen:
            part |= U(d, alpha)
        used |= part
        parts.append(sorted(ray_index[points[a]] for a in part))
    parts.append(sorted(ray_index[points[a]] for a in d.arrows if a not in used))
    if verify:
        partition = nef_partition(fan, parts)
    else:
        partition = NefPartition(fan, tuple(tuple(p) for p in parts), ())
    return FlagPartition(partition, tuple(tuple(s) for s in sel), tuple(ray_arrow), verify)


def flag_vectors(d: FlagDiagram, selection: Sequence[Sequence[Arrow]]) -> list[tuple[int, ...]]:
    out = []
    for chosen in selection:
        v = [0] * d.rank
        for alpha in chosen:
            for i, c in enumerate(ell_alpha(d, alpha)):
                v[i] += c
        out.append(tuple(v))
    return out


def flag_completion(vectors: Sequence[Sequence[int]], rank: int) -> tuple[list[int], Basis]:
    """Pivot coordinates with a unimodular minor, completed by the other unit vectors."""
    k = len(vectors)
    for piv in combinations(range(rank), k):
        if abs(det_z([[v[p] for p in piv] for v in vectors])) == 1 if k else True:
            rest = [j for j in range(rank) if j not in piv]
            units = [tuple(int(i == j) for i in range(rank)) for j in rest]
            return list(piv), Basis([tuple(v) for v in vectors] + units)
    raise InvariantViolation("no unimodular pivot minor for the flag vectors")


def flag_amenable(d: FlagDiagram, fp: FlagPartition) -> AmenableCollection:
    vs = flag_vectors(d, fp.selection)
    if not verify_amenable(fp.partition, vs):
        raise InvariantViolation("flag vectors are not amenable")
    _, basis = flag_completion(vs, d.rank)
    return AmenableCollection(fp.partition, tuple(vs), basis)


def output_names(d: FlagDiagram, collection: AmenableCollection, prefix: str = "y") -> list[str]:
    """y1..yk for the collection, y_{m,n} for the unit vector e*_{m,n} of the completion."""
    names = [f"{prefix}{i + 1}" for i in range(collection.k)]
    for b in collection.completion[collection.k:]:
        j = next(i for i, c in enumerate(b) if c)
        m, r = d.black[j]
        names.append(f"{prefix}_{{{m},{r}}}")
    return names


@dataclass(frozen=True)
class FlagResult:
    diagram: FlagDiagram
    flag_partition: FlagPartition
    collection: AmenableCollection
    model: GiventalModel
    elimination: Elimination
    degeneration: DegenerationData | None

    @property
    def potential(self):
        return self.elimination.potential


def flag_lg(dims: Sequence[int], n: int, multidegrees: Sequence[Sequence[int]] = ()) -> FlagResult:
    d = build_gamma(dims, n)
    fp = flag_nef_partition(d, multidegrees)
    col = flag_amenable(d, fp)
    model = build_givental(fp.partition, names=d.names())
    el = eliminate(model, col, output_names(d, col))
    deg = degeneration(col) if fp.verified else None
    return FlagResult(d, fp, col, model, el, deg)
