"""Exact integer linear algebra on the lattices M and N = Hom(M, Z).

Vectors are immutable tuples of Python ints. Matrices are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DegenerateInputError, DimensionError, RankError, SaturationError


def _as_int(c) -> int:
    if isinstance(c, bool):
        raise TypeError("booleans are not lattice coordinates")
    if isinstance(c, int):
        return c
    f = Fraction(c)
    if f.denominator != 1:
        raise ValueError(f"non-integral lattice coordinate {c!r}")
    return f.numerator


class _IntVector(tuple):
    __slots__ = ()

    def __new__(cls, coords: Iterable, rank: int | None = None):
        obj = super().__new__(cls, (_as_int(c) for c in coords))
        if rank is not None and len(obj) != rank:
            raise DimensionError(f"expected rank {rank}, got {len(obj)} coordinates")
        return obj

    @property
    def rank(self) -> int:
        return len(self)

    def __add__(self, other):
        _check_rank(self, other)
        return type(self)(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _check_rank(self, other)
        return type(self)(a - b for a, b in zip(self, other))

    def __neg__(self):
        return type(self)(-a for a in self)

    def scale(self, c: int):
        return type(self)(c * a for a in self)

    def __repr__(self):
        return f"{type(self).__name__}({list(self)})"


class LatticeVector(_IntVector):
    """An element of M."""

    __slots__ = ()


class DualVector(_IntVector):
    """An element of N."""

    __slots__ = ()


def _check_rank(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionError(f"rank mismatch: {len(a)} vs {len(b)}")


def pair(v: Sequence, m: Sequence):
    """The natural pairing <v, m>. Works for rational entries too."""
    _check_rank(v, m)
    return sum(a * b for a, b in zip(v, m))


def primitive(m: Sequence) -> LatticeVector:
    g = 0
    for c in m:
        g = gcd(g, _as_int(c))
    if g == 0:
        raise DegenerateInputError("zero vector has no primitive generator")
    return LatticeVector(_as_int(c) // g for c in m)


def primitive_int(vec: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integral vector on its ray."""
    fr = [Fraction(c) for c in vec]
    den = 1
    for f in fr:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        raise DegenerateInputError("zero vector has no primitive generator")
    return tuple(c // g for c in ints)


# ---------------------------------------------------------------------------
# rational helpers


def rank_q(rows: Sequence[Sequence]) -> int:
    return len(_row_echelon([[Fraction(c) for c in r] for r in rows])[1])


def _row_echelon(mat: list[list[Fraction]]):
    """Reduced row echelon form in place; returns (matrix, pivot columns)."""
    pivots: list[int] = []
    if not mat:
        return mat, pivots
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def solve_q(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A solution x of A x = b over Q (free variables set to 0), or None."""
    if not A:
        return None
    n = len(A[0])
    aug = [[Fraction(c) for c in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    red, piv = _row_echelon(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def inverse_q(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    aug = [[Fraction(c) for c in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    red, piv = _row_echelon(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise RankError("matrix is singular")
    return [row[n:] for row in red]


def det_q(A: Sequence[Sequence]) -> Fraction:
    mat = [[Fraction(c) for c in row] for row in A]
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            mat[c], mat[p] = mat[p], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] * inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return det


def det_z(A: Sequence[Sequence[int]]) -> int:
    d = det_q(A)
    return d.numerator


def kernel_q(A: Sequence[Sequence], n: int) -> list[list[Fraction]]:
    """A basis of the rational kernel {x : A x = 0} of a matrix with n columns."""
    if not A:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, piv = _row_echelon([[Fraction(c) for c in row] for row in A])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        basis.append(x)
    return basis


# ---------------------------------------------------------------------------
# integral normal forms


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors of an integer matrix, in divisibility order."""
    A = [[_as_int(c) for c in r] for r in rows]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            changed = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    changed = True
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    changed = True
            if changed:
                entries = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                entries += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, pi, pj = min(entries)
                A[t], A[pi] = A[pi], A[t]
                for row in A:
                    row[t], row[pj] = row[pj], row[t]
                continue
            # divisibility: every remaining entry must be a multiple of the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def column_hermite(rows: Sequence[Sequence[int]], n: int | None = None):
    """Column-style Hermite reduction.

    Returns ``(H, U, Uinv, pivots)`` with ``A U = H`` where ``H`` is lower
    echelon: row ``r`` has its pivot in column ``pivots.index`` order and zeros
    to the right of it. ``U`` is unimodular and ``Uinv`` its inverse.
    Pivot rule: smallest absolute value, ties broken by smallest column index.
    """
    A = [[_as_int(c) for c in r] for r in rows]
    if n is None:
        n = len(A[0]) if A else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Uinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_sub(j: int, p: int, q: int) -> None:
        # column j -= q * column p, for A and U; row p += q * row j for Uinv
        for row in A:
            row[j] -= q * row[p]
        for row in U:
            row[j] -= q * row[p]
        Uinv[p] = [a + q * b for a, b in zip(Uinv[p], Uinv[j])]

    def col_swap(i: int, j: int) -> None:
        for mat in (A, U):
            for row in mat:
                row[i], row[j] = row[j], row[i]
        Uinv[i], Uinv[j] = Uinv[j], Uinv[i]

    def col_neg(j: int) -> None:
        for mat in (A, U):
            for row in mat:
                row[j] = -row[j]
        Uinv[j] = [-a for a in Uinv[j]]

    c = 0
    pivots: list[int] = []
    for r in range(len(A)):
        if c >= n:
            break
        while True:
            nz = [(abs(A[r][j]), j) for j in range(c, n) if A[r][j]]
            if len(nz) <= 1:
                break
            _, p = min(nz)
            for _, j in nz:
                if j != p:
                    col_sub(j, p, A[r][j] // A[r][p])
        nz = [j for j in range(c, n) if A[r][j]]
        if not nz:
            continue
        if nz[0] != c:
            col_swap(c, nz[0])
        if A[r][c] < 0:
            col_neg(c)
        pivots.append(r)
        c += 1
    return A, U, Uinv, pivots


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """A Z-basis of {x in Z^n : A x = 0}; always saturated."""
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    _, U, _, pivots = column_hermite(rows, n)
    r = len(pivots)
    return [tuple(U[i][j] for i in range(n)) for j in range(r, n)]


# ---------------------------------------------------------------------------
# saturation and basis completion


class Basis(tuple):
    """n dual vectors forming a Z-basis of N (|det| = 1)."""

    __slots__ = ()

    def __new__(cls, vectors: Iterable[Sequence[int]]):
        vecs = tuple(DualVector(v) for v in vectors)
        if not vecs:
            raise DegenerateInputError("empty basis")
        n = len(vecs[0])
        if len(vecs) != n or any(len(v) != n for v in vecs):
            raise DimensionError("a basis needs n vectors of rank n")
        if abs(det_z(vecs)) != 1:
            raise SaturationError("vectors do not form a Z-basis (|det| != 1)")
        return super().__new__(cls, vecs)

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def vectors(self) -> tuple[DualVector, ...]:
        return tuple(self)

    def det(self) -> int:
        return det_z(self)

    def coordinates(self, m: Sequence) -> tuple:
        """Coordinates <b_i, m> of a point of M in the dual basis."""
        return tuple(pair(b, m) for b in self)

    def dual_basis(self) -> tuple[LatticeVector, ...]:
        """The basis of M dual to this one (columns of the inverse matrix)."""
        inv = inverse_q(self)
        n = self.rank
        return tuple(LatticeVector(inv[i][j] for i in range(n)) for j in range(n))

    def __repr__(self):
        return f"Basis({[list(v) for v in self]})"


def _check_independent(vs: Sequence[Sequence[int]]) -> None:
    if rank_q(vs) != len(vs):
        raise RankError("vectors are linearly dependent over Q")


def is_saturated_span(vs: Sequence[Sequence[int]]) -> bool:
    """True iff span_Z(vs) is a saturated sublattice (all elementary divisors 1)."""
    if not vs:
        raise DegenerateInputError("empty collection")
    _check_independent(vs)
    return all(d == 1 for d in smith_diagonal(vs))


def extend_to_basis(vs: Sequence[Sequence[int]], rank: int | None = None,
                    oriented: bool = False) -> Basis:
    """Complete vs to a Z-basis of N, keeping vs verbatim as the prefix.

    Deterministic (column Hermite reduction). With ``oriented=True`` the last
    completion vector is negated if needed so the determinant is +1.
    """
    vs = [tuple(_as_int(c) for c in v) for v in vs]
    if rank is None:
        if not vs:
            raise DegenerateInputError("rank is required for an empty collection")
        rank = len(vs[0])
    if any(len(v) != rank for v in vs):
        raise DimensionError("rank mismatch in collection")
    k = len(vs)
    if k == 0:
        return Basis([tuple(int(i == j) for j in range(rank)) for i in range(rank)])
    _check_independent(vs)
    H, _, Uinv, pivots = column_hermite(vs, rank)
    if len(pivots) != k or any(H[i][i] != 1 for i in range(k)):
        raise SaturationError("collection does not span a saturated sublattice")
    vectors = list(vs) + [tuple(Uinv[i]) for i in range(k, rank)]
    if oriented and k < rank and det_z(vectors) < 0:
        vectors[-1] = tuple(-c for c in vectors[-1])
    return Basis(vectors)


def change_of_basis(source: Sequence[Sequence[int]], target: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer matrix Q with source_i = sum_j Q[i][j] * target_j."""
    inv = inverse_q(target)
    Q = []
    for row in source:
        qrow = [sum(Fraction(row[l]) * inv[l][j] for l in range(len(row)))
                for j in range(len(target))]
        if any(q.denominator != 1 for q in qrow):
            raise SaturationError("change of basis is not integral")
        Q.append([int(q) for q in qrow])
    return Q
