"""Birational maps between the tori of two amenable collections, checked as mutations."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .amenable import AmenableCollection
from .errors import IncompatibleError, SamplingError
from .laurent import LaurentPolynomial, RationalFunction
from .lattice import change_of_basis, det_q
from .lg import Elimination, build_givental, eliminate

#: above this exponent mass the pullback is compared pointwise instead of symbolically
MAX_SYMBOLIC_DEGREE = 40


@dataclass(frozen=True)
class MutationMap:
    """h: target torus -> source torus with y_i = h_i(z_{k+1}, ..., z_n).

    ``Q`` is the change of basis v_i = sum_j Q[i][j] u_j between the source
    completion (v) and the target completion (u). Since sum_i v_i (x) y_i and
    sum_j u_j (x) z_j name the same torus point, y_i = prod_j z_j^E[i][j] with
    E the transpose of Q^{-1}; on X^vee the first k target coordinates are f_j.
    """

    source: AmenableCollection
    target: AmenableCollection
    Q: tuple[tuple[int, ...], ...]
    E: tuple[tuple[int, ...], ...]
    f_target: tuple[LaurentPolynomial, ...]
    target_elimination: Elimination
    coefficients: Mapping[int, object] | None = None

    @property
    def k(self) -> int:
        return self.source.k

    @property
    def vars(self):
        return self.target_elimination.potential.vars

    def h(self) -> list[RationalFunction]:
        k, out = self.k, self.vars
        res = []
        for i in range(k, len(self.E)):
            num = LaurentPolynomial.constant(out, 1)
            den = LaurentPolynomial.constant(out, 1)
            for j, q in enumerate(self.E[i]):
                if not q:
                    continue
                base = self.f_target[j] if j < k else LaurentPolynomial.variable(out, j - k)
                if q > 0:
                    num = num * base ** q
                else:
                    den = den * base ** -q
            res.append(RationalFunction(num, den).reduce())
        return res

    def evaluate_f(self, z: Sequence[Fraction]) -> list[Fraction]:
        return [f.evaluate(z) for f in self.f_target]

    def evaluate(self, z: Sequence[Fraction]) -> list[Fraction]:
        fz = self.evaluate_f(z)
        vals = list(fz) + list(z)
        out = []
        for i in range(self.k, len(self.E)):
            t = Fraction(1)
            for j, q in enumerate(self.E[i]):
                if q:
                    if not vals[j]:
                        raise ZeroDivisionError("pole of the map")
                    t *= vals[j] ** q
            out.append(t)
        return out

    def log_jacobian(self, z: Sequence[Fraction]) -> list[list[Fraction]]:
        """J_ij = z_j / h_i * dh_i/dz_j at the point z."""
        k = self.k
        m = len(self.E) - k
        fz = self.evaluate_f(z)
        if any(v == 0 for v in fz) or any(c == 0 for c in z):
            raise ZeroDivisionError("pole of the map")
        # z_j * d(log f_l)/dz_j
        dlog = [[z[j] * f.derivative(j).evaluate(z) / fz[l] for j in range(m)]
                for l, f in enumerate(self.f_target)]
        J = []
        for i in range(k, k + m):
            row = []
            for j in range(m):
                val = Fraction(self.E[i][k + j])
                for l in range(k):
                    if self.E[i][l]:
                        val += self.E[i][l] * dlog[l][j]
                row.append(val)
            J.append(row)
        return J

    def perturbed(self, i: int | None = None, j: int | None = None, delta: int = 1) -> "MutationMap":
        """A deliberately corrupted copy with one exponent changed (negative control)."""
        k = self.k
        i = k if i is None else i
        j = k if j is None else j
        E = [list(r) for r in self.E]
        E[i][j] += delta
        return MutationMap(self.source, self.target, self.Q, tuple(tuple(r) for r in E),
                           self.f_target, self.target_elimination, self.coefficients)

    def to_dict(self) -> dict:
        return {
            "Q": [list(r) for r in self.Q],
            "E": [list(r) for r in self.E],
            "vars": list(self.vars),
            "h": [str(h) for h in self.h()],
        }


def _same_partition(a: AmenableCollection, b: AmenableCollection) -> bool:
    pa, pb = a.partition, b.partition
    return pa.parts == pb.parts and pa.fan.rays == pb.fan.rays


def build_mutation(source: AmenableCollection, target: AmenableCollection,
                   coefficients: Mapping[int, object] | None = None,
                   names: Sequence[str] | None = None) -> MutationMap:
    if not _same_partition(source, target):
        raise IncompatibleError("collections are subordinate to different nef partitions")
    model = build_givental(target.partition, coefficients)
    tel = eliminate(model, target, names)
    Q = change_of_basis(source.completion, target.completion)
    R = change_of_basis(target.completion, source.completion)
    E = tuple(tuple(R[j][i] for j in range(len(R))) for i in range(len(R)))
    return MutationMap(source, target, tuple(tuple(r) for r in Q), E, tel.f, tel, coefficients)


def _pullback_symbolic(m: MutationMap, f: LaurentPolynomial):
    """Return (F_V o h) * D and F_{V'} * D with D = prod f_j^c_j clearing denominators."""
    k, Q = m.k, m.E
    out = m.vars
    terms = f.items()
    s = [[sum(e[i - k] * Q[i][j] for i in range(k, len(Q))) for j in range(len(Q))] for e, _ in terms]
    clear = [max(0, -min((row[j] for row in s), default=0)) for j in range(k)]
    mass = sum(clear) + sum(max((row[j] for row in s), default=0) for j in range(k))
    if mass > MAX_SYMBOLIC_DEGREE:
        return None
    cache: dict = {}

    def fpow(j, p):
        if (j, p) not in cache:
            cache[(j, p)] = m.f_target[j] ** p
        return cache[(j, p)]

    lhs = LaurentPolynomial.zero(out)
    for (e, c), row in zip(terms, s):
        t = LaurentPolynomial.monomial(out, row[k:], c)
        for j in range(k):
            p = row[j] + clear[j]
            if p:
                t = t * fpow(j, p)
        lhs = lhs + t
    rhs = m.target_elimination.potential
    for j in range(k):
        if clear[j]:
            rhs = rhs * fpow(j, clear[j])
    return lhs, rhs


def _random_point(rng: random.Random, m: int) -> list[Fraction]:
    pt = []
    for _ in range(m):
        num = rng.randint(1, 30) * rng.choice((1, -1))
        pt.append(Fraction(num, rng.randint(1, 30)))
    return pt


def verify_mutation(m: MutationMap, f: LaurentPolynomial | None = None, points: int = 20,
                    seed: int = 0, max_retries: int = 200) -> dict:
    """Pullback and log-volume checks; returns a JSON-ready report."""
    if f is None:
        src = build_givental(m.source.partition, m.coefficients)
        f = eliminate(src, m.source, m.target_elimination.names).potential
    rng = random.Random(seed)
    nv = len(m.vars)
    sample = []
    tries = 0
    while len(sample) < points:
        if tries > max_retries + points:
            raise SamplingError("could not find enough points off the pole set")
        tries += 1
        z = _random_point(rng, nv)
        try:
            J = m.log_jacobian(z)
            hz = m.evaluate(z)
            fv = f.evaluate(hz)
        except ZeroDivisionError:
            continue
        sample.append((z, det_q(J) if J else Fraction(1), fv))

    dets = [d for _, d, _ in sample]
    volume_ok = all(d == 1 for d in dets)
    signs = sorted({(d > 0) - (d < 0) for d in dets})

    sym = _pullback_symbolic(m, f)
    if sym is not None:
        lhs, rhs = sym
        pull_ok = lhs == rhs
        method = "symbolic"
    else:
        target = m.target_elimination.potential
        pull_ok = all(fv == target.evaluate(z) for z, _, fv in sample)
        method = "pointwise"
    return {
        "pullback": "pass" if pull_ok else "fail",
        "pullback_method": method,
        "volume_form": "pass" if volume_ok else "fail",
        "det_sign": signs,
        "points": [[_fs(c) for c in z] for z, _, _ in sample],
        "determinants": [_fs(d) for d in dets],
        "seed": seed,
        "passed": pull_ok and volume_ok,
    }


def _fs(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"
