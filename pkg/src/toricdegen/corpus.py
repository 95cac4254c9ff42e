"""Seeded random instances: reflexive polytopes with nef partitions and amenable collections."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product

from .amenable import AmenableCollection, check_degeneration_theorems, degeneration, search_amenable
from .ckp import check_ckp_equivalence, ckp_from_partition
from .errors import GeometryError, InvariantViolation, NotNefError
from .lg import brute_force_support, build_givental, check_newton_equals_deltaV, eliminate
from .mutation import build_mutation, verify_mutation
from .nef import NefPartition, nef_partition
from .polytope import Polytope, convex_hull, face_fan, is_reflexive

MAX_VERTICES = 12


@dataclass(frozen=True)
class Instance:
    seed: int
    polytope: Polytope
    partition: NefPartition
    collections: tuple[AmenableCollection, ...]

    @property
    def rank(self) -> int:
        return self.polytope.ambient_rank

    @property
    def k(self) -> int:
        return self.partition.k


def random_reflexive(rng: random.Random, rank: int, tries: int = 200) -> Polytope | None:
    cube = [p for p in product((-1, 0, 1), repeat=rank) if any(p)]
    for _ in range(tries):
        pts = rng.sample(cube, rng.randint(rank + 1, min(len(cube), rank + 6)))
        P = convex_hull(pts)
        if not P.is_full_dimensional or len(P.vertices) > MAX_VERTICES:
            continue
        if not P.contains_origin_interior:
            continue
        try:
            if is_reflexive(P):
                return P
        except GeometryError:
            continue
    return None


def random_partition(rng: random.Random, n_rays: int, k: int) -> list[list[int]]:
    rays = list(range(n_rays))
    rng.shuffle(rays)
    cuts = sorted(rng.sample(range(1, n_rays), k)) if k else []
    bounds = [0] + cuts + [n_rays]
    return [sorted(rays[a:b]) for a, b in zip(bounds, bounds[1:])]


def generate(count: int = 200, seed: int = 0, bound: int = 4, max_rank: int = 4,
             max_attempts: int = 100_000) -> list[Instance]:
    """``count`` instances, each a nef partition admitting at least one amenable collection."""
    rng = random.Random(seed)
    out: list[Instance] = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        rank = rng.choice(range(2, max_rank + 1))
        P = random_reflexive(rng, rank)
        if P is None:
            continue
        fan = face_fan(P)
        k = rng.choice((0, 1, 1, 2, 2)) if len(fan.rays) > 2 else 0
        k = min(k, rank, len(fan.rays) - 1)
        parts = random_partition(rng, len(fan.rays), k)
        key = (fan.rays, tuple(map(tuple, parts)))
        if key in seen:
            continue
        seen.add(key)
        try:
            partition = nef_partition(fan, parts)
        except NotNefError:
            continue
        cols = search_amenable(partition, bound)
        if not cols:
            continue
        out.append(Instance(len(out), P, partition, tuple(cols)))
    return out


# ---------------------------------------------------------------------------
# property checks over an instance

MUTATION_PAIR_CAP = 6


def check_collection(col: AmenableCollection) -> dict:
    d = degeneration(col, check=False)
    el = eliminate(build_givental(col.partition), col)
    report = check_degeneration_theorems(d)
    report["newton_equals_delta"] = "pass" if check_newton_equals_deltaV(el.potential, d) else "fail"
    pts = d.ray_points()
    hull = convex_hull(pts).vertex_set() if pts else frozenset({()})
    report["rays_hull_equals_delta"] = "pass" if hull == d.delta_V.vertex_set() else "fail"
    bf = brute_force_support(col.partition, col)
    report["support_equals_brute_force"] = "pass" if set(el.potential.support()) == bf else "fail"
    report["parametrization"] = "pass" if el.check_parametrization() else "fail"
    return report


def check_mutations(inst: Instance, cap: int = MUTATION_PAIR_CAP, seed: int = 0) -> list[dict]:
    out: list[dict] = []
    if inst.k >= inst.rank:
        return out  # nothing left after elimination
    for a, b in list(permutations(range(len(inst.collections)), 2))[:cap]:
        m = build_mutation(inst.collections[a], inst.collections[b])
        rep = verify_mutation(m, seed=seed)
        bad = verify_mutation(m.perturbed(), seed=seed)
        out.append({"pair": [a, b], "passed": rep["passed"], "pullback": rep["pullback"],
                    "volume_form": rep["volume_form"], "perturbed_passed": bad["passed"]})
    return out


def ckp_check(inst: Instance) -> dict | None:
    """None when the instance admits no CkpInput; otherwise the equivalence verdict."""
    p = inst.partition
    inp = ckp_from_partition(p.fan.rays, p.parts)
    if inp is None:
        return None
    try:
        ok = check_ckp_equivalence(inp)
    except InvariantViolation:
        ok = False
    return {"E": list(inp.E), "S": [list(s) for s in inp.S], "equivalent": ok}


def instance_report(inst: Instance, mutations: bool = True, ckp: bool = True) -> dict:
    rep = {
        "seed": inst.seed,
        "rank": inst.rank,
        "k": inst.k,
        "rays": [list(r) for r in inst.partition.fan.rays],
        "parts": [list(s) for s in inst.partition.parts],
        "collections": [[list(v) for v in c.vectors] for c in inst.collections],
        "checks": [check_collection(c) for c in inst.collections],
    }
    if mutations and len(inst.collections) > 1:
        rep["mutations"] = check_mutations(inst)
    if ckp:
        rep["ckp"] = ckp_check(inst)
    return rep
