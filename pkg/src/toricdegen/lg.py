"""Givental Landau-Ginzburg models and their Laurent polynomial forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .amenable import AmenableCollection, DegenerationData
from .errors import ChartError, CoefficientError, InvariantViolation
from .laurent import LaurentPolynomial
from .lattice import Basis, pair
from .nef import NefPartition
from .polytope import PLFunction, convex_hull, pl_eval


def default_names(n: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


@dataclass(frozen=True)
class GiventalModel:
    """Constraints sum_{E_i} a_rho x^rho = 1 (i <= k) and potential over E_{k+1}."""

    partition: NefPartition
    constraints: tuple[LaurentPolynomial, ...]
    potential: LaurentPolynomial
    coefficients: Mapping[int, Fraction]

    @property
    def vars(self):
        return self.potential.vars

    def in_basis(self, basis: Sequence[Sequence[int]], names: Sequence[str]):
        """Constraints and potential with x^rho = prod_j y_j^<b_j, rho>."""
        fan = self.partition.fan

        def poly(part):
            terms: dict = {}
            for r in part:
                e = tuple(pair(b, fan.rays[r]) for b in basis)
                terms[e] = terms.get(e, 0) + self.coefficients[r]
            return LaurentPolynomial(names, terms)

        parts = self.partition.parts
        return [poly(p) for p in parts[:-1]], poly(parts[-1])


def coefficients_from_pl(partition: NefPartition, phi: PLFunction, t) -> dict[int, Fraction]:
    """The rule a_rho = t^phi(rho) for a positive rational t."""
    t = Fraction(t)
    if t <= 0:
        raise CoefficientError("t must be a positive rational")
    out = {}
    for r, rho in enumerate(partition.fan.rays):
        e = pl_eval(phi, rho)
        if e.denominator != 1:
            raise CoefficientError(f"phi({list(rho)}) = {e} is not an integer")
        out[r] = t ** int(e)
    return out


def build_givental(partition: NefPartition, coefficients: Mapping[int, object] | None = None,
                   names: Sequence[str] | None = None) -> GiventalModel:
    fan = partition.fan
    n = fan.ambient_rank
    names = list(names) if names is not None else default_names(n)
    coeffs = {}
    for r in range(len(fan.rays)):
        c = Fraction(1) if coefficients is None else Fraction(coefficients.get(r, 1))
        if c <= 0:
            raise CoefficientError(f"coefficient of ray {r} must be positive, got {c}")
        coeffs[r] = c
    std = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    model = GiventalModel(partition, (), LaurentPolynomial.zero(names), coeffs)
    cons, pot = model.in_basis(std, names)
    return GiventalModel(partition, tuple(cons), pot, coeffs)


@dataclass(frozen=True)
class Elimination:
    """phi_V^* w together with the parametrization y_i = f_i (i <= k)."""

    potential: LaurentPolynomial
    f: tuple[LaurentPolynomial, ...]
    basis: Basis
    names: tuple[str, ...]
    constraints: tuple[LaurentPolynomial, ...]
    full_potential: LaurentPolynomial

    @property
    def k(self) -> int:
        return len(self.f)

    def images(self) -> list[LaurentPolynomial]:
        out_vars = self.potential.vars
        return list(self.f) + LaurentPolynomial.gens(out_vars)

    def check_parametrization(self) -> bool:
        """Each constraint pulls back to the constant 1."""
        out_vars = self.potential.vars
        imgs = self.images()
        n = len(self.names)
        for i, c in enumerate(self.constraints):
            # y_i * c is polynomial in y_i; compare its pullback with f_i
            yi = LaurentPolynomial.monomial(self.names, [int(j == i) for j in range(n)])
            if (c * yi).compose(imgs, out_vars) != imgs[i]:
                return False
        return True


def eliminate(model: GiventalModel, collection: AmenableCollection,
              names: Sequence[str] | None = None) -> Elimination:
    """Solve the constraints for y_1, ..., y_k and pull the potential back."""
    basis = collection.completion
    n, k = basis.rank, collection.k
    names = tuple(names) if names is not None else tuple(default_names(n))
    cons, pot = model.in_basis(basis, names)
    out_vars = names[k:]
    f: list[LaurentPolynomial] = []
    for i, c in enumerate(cons):
        terms = {}
        for e, a in c.items():
            if e[i] != -1:
                raise InvariantViolation(f"constraint {i + 1}: exponent {e[i]} of {names[i]} is not -1")
            if any(e[j] < 0 for j in range(i)):
                raise InvariantViolation(f"constraint {i + 1}: negative exponent on an earlier variable")
            if any(e[j] for j in range(i + 1, k)):
                raise InvariantViolation(f"constraint {i + 1}: a later variable occurs")
            terms[e[:i] + e[k:]] = a
        # y_i = g_i(y_1..y_{i-1}, y_{k+1}..y_n); earlier y_j are already known
        g = LaurentPolynomial(names[:i] + out_vars, terms)
        f.append(g.compose(f[:i] + LaurentPolynomial.gens(out_vars), out_vars))
    if any(e[j] < 0 for e in pot.support() for j in range(k)):
        raise InvariantViolation("potential has a negative exponent on an eliminated variable")
    w = pot.compose(f + LaurentPolynomial.gens(out_vars), out_vars)
    return Elimination(w, tuple(f), basis, names, tuple(cons), pot)


# ---------------------------------------------------------------------------
# oracles


def _minkowski_power(base: set, vectors: Sequence[tuple], b: int) -> set:
    cur = set(base)
    for _ in range(b):
        cur = {tuple(x + y for x, y in zip(p, u)) for p in cur for u in vectors}
    return cur


def staged_bound(partition: NefPartition, collection: AmenableCollection) -> int:
    """Summand bound from the staged substitution: the sum over stages of b_max.

    Adding a ray of E_i only raises pairings with v_j for j < i, so the stages
    run from the last part down to the first.
    """
    F = {tuple(r) for r in partition.part_rays(partition.k)}
    total = 0
    for i in reversed(range(collection.k)):
        v = collection.vectors[i]
        Ei = [tuple(r) for r in partition.part_rays(i)]
        bmax = max(pair(v, q) for q in F)
        total += bmax
        nxt = set()
        for b in range(bmax + 1):
            layer = {q for q in F if pair(v, q) == b}
            nxt |= _minkowski_power(layer, Ei, b)
        F = nxt
    return total


def brute_force_support(partition: NefPartition, collection: AmenableCollection,
                        length_bound: int | None = None, chart: bool = True) -> set:
    """Points p + u_1 + ... + u_l (p in E_{k+1}, u_j in E_1..E_k, l <= L) orthogonal to V."""
    L = staged_bound(partition, collection) if length_bound is None else length_bound
    k = partition.k
    us = sorted({tuple(r) for i in range(k) for r in partition.part_rays(i)})
    level = {tuple(r) for r in partition.part_rays(k)}
    seen = set(level)
    for _ in range(L):
        level = {tuple(a + b for a, b in zip(p, u)) for p in level for u in us} - seen
        seen |= level
    pts = {q for q in seen if all(pair(v, q) == 0 for v in collection.vectors)}
    if not chart:
        return pts
    basis = collection.completion
    return {tuple(pair(b, q) for b in basis[k:]) for q in pts}


def check_newton_equals_deltaV(lp: LaurentPolynomial, d: DegenerationData,
                               chart: Basis | None = None) -> bool:
    if chart is not None and tuple(chart) != tuple(d.chart):
        raise ChartError("Laurent polynomial and Delta_V use different charts on M_V")
    if lp.nvars != d.delta_V.ambient_rank:
        raise ChartError(f"{lp.nvars} variables but Delta_V has rank {d.delta_V.ambient_rank}")
    return convex_hull(list(lp.support())).vertex_set() == d.delta_V.vertex_set()
