"""Double description method over the integers.

Converts an H-representation of a polyhedral cone {x : a.x >= 0 for all a}
into extreme rays plus a lineality basis. Rays are kept as primitive integer
tuples so the arithmetic stays exact and small.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def _integral(row: Sequence) -> tuple[int, ...]:
    fr = [Fraction(c) for c in row]
    den = 1
    for f in fr:
        den = den * f.denominator // gcd(den, f.denominator)
    return tuple(int(f * den) for f in fr)


def _normalize(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for c in v:
        g = gcd(g, c)
    if g <= 1:
        return tuple(v)
    return tuple(c // g for c in v)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def extreme_rays(inequalities: Sequence[Sequence], dim: int):
    """Extreme rays and lineality of {x in Q^dim : a.x >= 0 for each a}.

    Returns ``(rays, lineality, tight)`` where ``tight[i]`` is the frozenset of
    inequality indices active on ``rays[i]``. Rays are only determined modulo
    the lineality space.
    """
    ineqs = [_integral(a) for a in inequalities]
    lineality = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[int, ...]] = []
    tight: list[frozenset] = []

    for idx, a in enumerate(ineqs):
        if not any(a):
            continue
        vals = [_dot(a, l) for l in lineality]
        piv = next((i for i, v in enumerate(vals) if v), None)
        if piv is not None:
            l0, s = lineality[piv], vals[piv]
            sgn = 1 if s > 0 else -1
            new_lin = []
            for i, (l, t) in enumerate(zip(lineality, vals)):
                if i == piv:
                    continue
                if t:
                    l = _normalize(tuple(s * x - t * y for x, y in zip(l, l0)))
                new_lin.append(l)
            new_rays = []
            for r in rays:
                t = _dot(a, r)
                if t:
                    r = _normalize(tuple(abs(s) * x - sgn * t * y for x, y in zip(r, l0)))
                new_rays.append(r)
            tight = [z | {idx} for z in tight]
            new_rays.append(tuple(sgn * y for y in l0))
            tight.append(frozenset(range(idx)))
            rays, lineality = new_rays, new_lin
            continue

        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        new_tight = [tight[i] for i in pos] + [tight[i] | {idx} for i in zero]
        min_common = dim - len(lineality) - 2
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if len(common) < min_common:
                    continue
                adjacent = True
                for r in range(len(rays)):
                    if r != p and r != q and common <= tight[r]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                tp, tq = vals[p], -vals[q]
                nr = _normalize(tuple(tp * x + tq * y for x, y in zip(rays[q], rays[p])))
                new_rays.append(nr)
                new_tight.append(common | {idx})
        rays, tight = new_rays, new_tight
    return rays, lineality, tight


def cone_facets(generators: Sequence[Sequence], dim: int):
    """Facet normals a (a.x >= 0 on the cone) and equations of a finitely generated cone."""
    normals, equations, _ = extreme_rays(generators, dim)
    return normals, equations
