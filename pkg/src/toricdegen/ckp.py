"""The Przyjalkowski substitution for Hori-Vafa models and its amenable counterpart."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from fractions import Fraction
from typing import Mapping, Sequence

from .amenable import AmenableCollection, make_collection
from .errors import BasisError, InvariantViolation, ParameterError, PartitionError
from .laurent import LaurentPolynomial, RationalFunction
from .lattice import det_z, integer_kernel, inverse_q
from .lg import Elimination, build_givental, eliminate
from .nef import NefPartition, nef_partition
from .polytope import convex_hull, face_fan


@dataclass(frozen=True)
class CkpInput:
    """Vertices of a smooth Fano polytope with the choices E, S_1..S_k, pivots s_i and q_l.

    All indices refer to positions in ``vertices``.
    """

    vertices: tuple[tuple[int, ...], ...]
    E: tuple[int, ...]
    S: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    q: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        N = len(self.vertices)
        idx = list(self.E) + [j for s in self.S for j in s]
        if any(not 0 <= j < N for j in idx):
            raise ParameterError("vertex index out of range")
        if len(set(idx)) != len(idx):
            raise ParameterError("E and the S_i must be pairwise disjoint")
        if len(self.pivots) != len(self.S) or any(p not in s for p, s in zip(self.pivots, self.S)):
            raise ParameterError("need one pivot s_i in each S_i")
        if any(not s for s in self.S):
            raise ParameterError("empty S_i")
        for ell in self.E:
            if Fraction(self.q.get(ell, 1)) <= 0:
                raise ParameterError("q must be positive")

    @property
    def rank(self) -> int:
        return len(self.vertices[0])

    @property
    def k(self) -> int:
        return len(self.S)

    @property
    def rest(self) -> list[int]:
        """Vertices outside E, in index order."""
        return [j for j in range(len(self.vertices)) if j not in self.E]

    def q_of(self, ell: int) -> Fraction:
        return Fraction(self.q.get(ell, 1))

    def names(self) -> list[str]:
        """x_{j+1} for the non-E vertices."""
        return [f"x{j + 1}" for j in self.rest]

    def out_names(self) -> list[str]:
        """Variables after substitution: y_{j+1} on S-vertices, x_{j+1} elsewhere."""
        in_s = {j for s in self.S for j in s}
        return [f"y{j + 1}" if j in in_s else f"x{j + 1}" for j in self.rest if j not in self.pivots]


def relation_matrix(vertices: Sequence[Sequence[int]], E: Sequence[int]) -> list[list[int]]:
    """Basis of {lambda : sum lambda_j rho_j = 0}, normalised to the identity on the E-columns."""
    vertices = [tuple(v) for v in vertices]
    N, n = len(vertices), len(vertices[0])
    E = list(E)
    if len(E) != N - n:
        raise BasisError(f"|E| must be N - rank = {N - n}, got {len(E)}")
    cols = [[vertices[j][i] for j in range(N)] for i in range(n)]
    K = integer_kernel(cols, N)
    if len(K) != len(E):
        raise BasisError("vertices do not span M")
    RE = [[row[e] for e in E] for row in K]
    if abs(det_z(RE)) != 1:
        raise BasisError("E does not give a basis of the relation lattice")
    inv = inverse_q(RE)
    R = [[int(sum(inv[a][b] * K[b][j] for b in range(len(K)))) for j in range(N)] for a in range(len(K))]
    return R


def _check_rest_basis(inp: CkpInput) -> None:
    rest = [inp.vertices[j] for j in inp.rest]
    if abs(det_z(rest)) != 1:
        raise BasisError("vertices outside E do not form a basis of M")


def hori_vafa_potential(inp: CkpInput) -> LaurentPolynomial:
    """w = sum_E q_l / prod_j x_j^m_lj + sum_{i not in E} x_i, in the variables x_{i not in E}."""
    _check_rest_basis(inp)
    R = relation_matrix(inp.vertices, inp.E)
    names = inp.names()
    rest = inp.rest
    in_s = {j for s in inp.S for j in s}
    terms: dict = {}
    for row, ell in zip(R, inp.E):
        for j in in_s:
            if row[j] < 0:
                raise ParameterError(f"relation for vertex {ell} has a negative entry on S-vertex {j}")
        e = tuple(-row[j] for j in rest)
        terms[e] = terms.get(e, 0) + inp.q_of(ell)
    for pos in range(len(rest)):
        e = tuple(int(i == pos) for i in range(len(rest)))
        terms[e] = terms.get(e, 0) + 1
    return LaurentPolynomial(names, terms)


def ckp_substitute(inp: CkpInput) -> LaurentPolynomial:
    """Substitute x_l = y_l / (1 + sum y) and x_{s_i} = 1 / (1 + sum y) into the Hori-Vafa potential."""
    w = hori_vafa_potential(inp)
    out = inp.out_names()
    rest = inp.rest
    keep = [j for j in rest if j not in inp.pivots]
    gens = {j: LaurentPolynomial.variable(out, keep.index(j)) for j in keep}
    images: dict[int, RationalFunction] = {j: RationalFunction(g) for j, g in gens.items()}
    for s, piv in zip(inp.S, inp.pivots):
        D = LaurentPolynomial.constant(out, 1)
        for j in s:
            if j != piv:
                D = D + gens[j]
        for j in s:
            num = gens[j] if j != piv else LaurentPolynomial.constant(out, 1)
            images[j] = RationalFunction(num, D)
    total = RationalFunction(LaurentPolynomial.zero(out))
    for e, c in w.items():
        t = RationalFunction(LaurentPolynomial.constant(out, c))
        for j, k in zip(rest, e):
            if k:
                t = t * images[j] ** k
        total = total + t
    lp = total.as_laurent()
    if lp is None:
        raise InvariantViolation("substitution did not produce a Laurent polynomial")
    return lp


def recoordinatize(inp: CkpInput) -> list[tuple[int, ...]]:
    """Vertices written in the basis of M formed by the vertices outside E."""
    _check_rest_basis(inp)
    rest = [inp.vertices[j] for j in inp.rest]
    # rows of inv solve x = sum c_j rest_j
    inv = inverse_q([[r[i] for r in rest] for i in range(inp.rank)])
    out = []
    for v in inp.vertices:
        c = [sum(inv[a][b] * v[b] for b in range(inp.rank)) for a in range(inp.rank)]
        if any(x.denominator != 1 for x in c):
            raise BasisError("vertex not integral in the new basis")
        out.append(tuple(int(x) for x in c))
    return out


@dataclass(frozen=True)
class CkpAmenable:
    partition: NefPartition
    collection: AmenableCollection
    elimination: Elimination


def ckp_partition(inp: CkpInput) -> NefPartition:
    verts = recoordinatize(inp)
    P = convex_hull(verts)
    if P.vertex_set() != set(verts):
        raise ParameterError("input points are not the vertices of their hull")
    fan = face_fan(P)
    index = {r: i for i, r in enumerate(fan.rays)}
    parts = [[index[verts[j]] for j in s] for s in inp.S]
    used = {j for s in inp.S for j in s}
    parts.append([index[verts[j]] for j in range(len(verts)) if j not in used])
    return nef_partition(fan, parts)


def ckp_amenable(inp: CkpInput) -> CkpAmenable:
    """v_i = -sum_{j in S_i} e*_j completed by e*_j for the non-pivot vertices outside E."""
    partition = ckp_partition(inp)
    rest = inp.rest
    n = inp.rank
    pos = {j: rest.index(j) for j in rest}
    vs = []
    for s in inp.S:
        v = [0] * n
        for j in s:
            v[pos[j]] = -1
        vs.append(tuple(v))
    completion = [tuple(int(i == pos[j]) for i in range(n)) for j in rest if j not in inp.pivots]
    collection = make_collection(partition, vs, completion)
    verts = recoordinatize(inp)
    index = {r: i for i, r in enumerate(partition.fan.rays)}
    coeffs = {index[verts[ell]]: inp.q_of(ell) for ell in inp.E}
    model = build_givental(partition, coeffs)
    names = [f"v{i + 1}" for i in range(inp.k)] + inp.out_names()
    el = eliminate(model, collection, names)
    return CkpAmenable(partition, collection, el)


def check_ckp_equivalence(inp: CkpInput) -> bool:
    """eliminate output plus the constant k equals the Przyjalkowski Laurent polynomial."""
    rhs = ckp_substitute(inp)
    am = ckp_amenable(inp)
    lhs = am.elimination.potential + inp.k
    if lhs != rhs:
        raise InvariantViolation("amenable elimination and Przyjalkowski substitution disagree")
    return True


def ckp_from_partition(vertices: Sequence[Sequence[int]], parts: Sequence[Sequence[int]],
                       q: Mapping[int, object] | None = None) -> CkpInput | None:
    """Search E inside the last part so that the method applies with S_i = parts[i]; None if impossible."""
    vertices = [tuple(v) for v in vertices]
    N, n = len(vertices), len(vertices[0])
    S = [tuple(sorted(p)) for p in parts[:-1]]
    last = sorted(parts[-1])
    for E in combinations(last, N - n):
        try:
            inp = CkpInput(tuple(vertices), tuple(E), tuple(S), tuple(s[0] for s in S),
                           {e: Fraction((q or {}).get(e, 1)) for e in E})
            _check_rest_basis(inp)
            R = relation_matrix(vertices, E)
        except (BasisError, ParameterError):
            continue
        in_s = {j for s in S for j in s}
        if any(row[j] < 0 for row in R for j in in_s):
            continue
        return inp
    return None


def parse_ckp_input(vertices, E, S, pivots, q=None) -> CkpInput:
    try:
        return CkpInput(tuple(tuple(int(c) for c in v) for v in vertices), tuple(int(e) for e in E),
                        tuple(tuple(int(j) for j in s) for s in S), tuple(int(p) for p in pivots),
                        {int(e): Fraction(q if not isinstance(q, Mapping) else q.get(e, 1))
                         for e in E} if q is not None else {})
    except (TypeError, ValueError) as exc:
        raise PartitionError(f"malformed CKP input: {exc}") from None

