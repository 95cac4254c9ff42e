"""Nef partitions of the rays of a complete fan."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotNefError, PartitionError
from .lattice import pair, solve_q
from .polytope import Fan, PLFunction


def _check_parts(fan: Fan, parts: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    parts = tuple(tuple(sorted(int(i) for i in p)) for p in parts)
    if not parts:
        raise PartitionError("a partition needs at least one part")
    seen: dict[int, int] = {}
    for j, p in enumerate(parts):
        if not p:
            raise PartitionError(f"part {j + 1} is empty")
        for i in p:
            if not 0 <= i < len(fan.rays):
                raise PartitionError(f"ray index {i} out of range")
            if i in seen:
                raise PartitionError(f"ray {i} lies in parts {seen[i] + 1} and {j + 1}")
            seen[i] = j
    missing = sorted(set(range(len(fan.rays))) - set(seen))
    if missing:
        raise PartitionError(f"rays {missing} are not covered")
    return parts


def _indicator(part: Sequence[int], n_rays: int) -> list[int]:
    s = set(part)
    return [int(i in s) for i in range(n_rays)]


def _solve_one(fan: Fan, values: Sequence[int]) -> tuple[tuple[Fraction, ...], ...]:
    slopes = []
    for c, cone in enumerate(fan.maximal_cones):
        A = [fan.rays[i] for i in cone]
        u = solve_q(A, [values[i] for i in cone])
        if u is None:
            raise NotNefError(f"no linear function on cone {c} takes the prescribed ray values")
        slopes.append(tuple(u))
    return tuple(slopes)


def _is_convex(fan: Fan, slopes, values) -> bool:
    # u_C <= phi on every ray; enough because phi is linear on each cone
    return all(pair(u, rho) <= values[i] for u in slopes for i, rho in enumerate(fan.rays))


def solve_supports(fan: Fan, parts: Sequence[Sequence[int]]) -> list[PLFunction]:
    """Solve the per-cone linear systems for phi_1, ..., phi_{k+1}."""
    parts = _check_parts(fan, parts)
    out = []
    for j, p in enumerate(parts):
        values = _indicator(p, len(fan.rays))
        slopes = _solve_one(fan, values)
        if not _is_convex(fan, slopes, values):
            raise NotNefError(f"support function of part {j + 1} is not convex")
        out.append(PLFunction(fan, slopes, True))
    return out


@dataclass(frozen=True)
class NefPartition:
    """Rays of ``fan`` split into E_1, ..., E_{k+1} (ray indices); the last part is E_{k+1}."""

    fan: Fan
    parts: tuple[tuple[int, ...], ...]
    supports: tuple[PLFunction, ...]

    @property
    def k(self) -> int:
        return len(self.parts) - 1

    @property
    def cartier(self) -> tuple[bool, ...]:
        return tuple(phi.is_integral for phi in self.supports)

    def part_of(self, ray: int) -> int:
        for j, p in enumerate(self.parts):
            if ray in p:
                return j
        raise PartitionError(f"ray {ray} not in any part")

    def part_rays(self, j: int) -> list[tuple[int, ...]]:
        return [self.fan.rays[i] for i in self.parts[j]]

    def to_dict(self) -> dict:
        return {
            "parts": [list(p) for p in self.parts],
            "supports": [phi.to_dict() for phi in self.supports],
            "cartier": list(self.cartier),
        }


def nef_partition(fan: Fan, parts: Sequence[Sequence[int]]) -> NefPartition:
    parts = _check_parts(fan, parts)
    return NefPartition(fan, parts, tuple(solve_supports(fan, parts)))


def partition_from_rays(fan: Fan, parts: Sequence[Sequence[Sequence[int]]]) -> NefPartition:
    """Like :func:`nef_partition` but with parts given as lists of ray vectors."""
    index = {tuple(r): i for i, r in enumerate(fan.rays)}
    try:
        idx = [[index[tuple(int(c) for c in r)] for r in p] for p in parts]
    except KeyError as exc:
        raise PartitionError(f"{list(exc.args[0])} is not a ray of the fan") from None
    return nef_partition(fan, idx)


def verify_partition(p: NefPartition, slack: bool = False) -> bool:
    """Check the partition, the ray values of each phi_i and convexity.

    With ``slack=True`` the ray condition is phi_i(E_j) >= delta_ij instead of
    equality.
    """
    parts = _check_parts(p.fan, p.parts)
    if len(p.supports) != len(parts):
        return False
    n_rays = len(p.fan.rays)
    for part, phi in zip(parts, p.supports):
        if len(phi.slopes) != len(p.fan.maximal_cones):
            return False
        values = _indicator(part, n_rays)
        # linear on each cone with the right ray values
        for u, cone in zip(phi.slopes, p.fan.maximal_cones):
            for i in cone:
                val = pair(u, p.fan.rays[i])
                if (val < values[i]) if slack else (val != values[i]):
                    return False
        actual = [max(pair(u, rho) for u in phi.slopes) for rho in p.fan.rays]
        for i, cone_vals in enumerate(actual):
            if slack:
                if cone_vals < values[i]:
                    return False
        if not slack and not _is_convex(p.fan, phi.slopes, values):
            return False
        if slack:
            # each cone's u_C must be the max on that cone's rays
            for u, cone in zip(phi.slopes, p.fan.maximal_cones):
                if any(pair(u, p.fan.rays[i]) != actual[i] for i in cone):
                    return False
    return True
