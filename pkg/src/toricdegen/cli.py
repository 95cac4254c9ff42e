"""toricdegen command line.

Input files are JSON. A partition file looks like::

    {"vertices": [[1, 0], [0, 1], [-1, -1]],
     "parts": [[[1, 0], [0, 1]], [[-1, -1]]],
     "vectors": [[-1, -1]]}

``parts`` entries may be vertex vectors or 0-based vertex indices; the last
part is E_{k+1}. ``vectors`` (an amenable collection) and ``completion`` are
optional; when absent the collection is searched for. ``coefficients`` may map
vertex indices to "p/q" strings.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .amenable import (DEFAULT_BOUND, check_degeneration_theorems, degeneration, make_collection,
                       search_amenable)
from .ckp import (check_ckp_equivalence, ckp_amenable, ckp_substitute, hori_vafa_potential,
                  parse_ckp_input)
from .corpus import generate, instance_report
from .errors import InputError, InvariantViolation, ParameterError, SamplingError
from .flag import flag_lg
from .lg import build_givental, check_newton_equals_deltaV, eliminate
from .mutation import build_mutation, verify_mutation
from .nef import nef_partition, verify_partition
from .polytope import convex_hull, face_fan

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 2, 3


def _fs(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# input


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ParameterError(f"{path}: expected a JSON object")
    return data


def _vertices(data: dict) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(c) for c in v) for v in data["vertices"]]
    except (KeyError, TypeError, ValueError):
        raise ParameterError("input needs integer 'vertices'") from None


class Problem:
    """A vertex polytope with a partition of its vertices, fan indices resolved."""

    def __init__(self, data: dict, bound: int):
        self.data = data
        self.vertices = _vertices(data)
        P = convex_hull(self.vertices)
        if P.vertex_set() != set(self.vertices) or len(set(self.vertices)) != len(self.vertices):
            raise ParameterError("'vertices' must be the distinct vertices of their hull")
        self.fan = face_fan(P)
        self.ray_index = {r: i for i, r in enumerate(self.fan.rays)}
        if set(self.ray_index) != set(self.vertices):
            raise ParameterError("vertices must be primitive lattice points")
        # input order -> fan order
        self.to_fan = [self.ray_index[v] for v in self.vertices]
        self.to_input = {f: i for i, f in enumerate(self.to_fan)}
        self.bound = bound
        self._partition = None

    def names(self) -> list[str]:
        return [f"x{i + 1}" for i in range(len(self.vertices))]

    def _resolve(self, item) -> int:
        if isinstance(item, int):
            if not 0 <= item < len(self.vertices):
                raise ParameterError(f"vertex index {item} out of range")
            return self.to_fan[item]
        v = tuple(int(c) for c in item)
        if v not in self.ray_index:
            raise ParameterError(f"{list(v)} is not a vertex")
        return self.ray_index[v]

    @property
    def partition(self):
        if self._partition is None:
            parts = self.data.get("parts")
            if parts is None:
                parts = [list(range(len(self.vertices)))]
            resolved = [sorted(self._resolve(x) for x in part) for part in parts]
            self._partition = nef_partition(self.fan, resolved)
        return self._partition

    def coefficients(self) -> dict[int, Fraction] | None:
        raw = self.data.get("coefficients")
        if raw is None:
            return None
        return {self.to_fan[int(k)]: Fraction(v) for k, v in raw.items()}

    def collections(self):
        if "vectors" in self.data:
            return [make_collection(self.partition, self.data["vectors"], self.data.get("completion"))]
        return search_amenable(self.partition, self.bound)

    def collection(self, index: int = 0):
        cols = self.collections()
        if not cols:
            raise InvariantViolation(f"no amenable collection with bound {self.bound}")
        if not 0 <= index < len(cols):
            raise ParameterError(f"collection index {index} out of range (found {len(cols)})")
        return cols[index]

    def binomial_str(self, b) -> str:
        def mono(d):
            items = sorted((self.to_input[r], e) for r, e in d.items())
            return "*".join(f"x{i + 1}" + (f"^{e}" if e != 1 else "") for i, e in items) or "1"
        return f"{mono(b.pos)} - {mono(b.neg)}"


# ---------------------------------------------------------------------------
# commands


def cmd_verify_nef(args) -> dict:
    pr = Problem(_load(args.input), args.bound)
    p = pr.partition
    out = p.to_dict()
    out["parts"] = [sorted(pr.to_input[r] for r in part) for part in p.parts]
    out["rays"] = [list(r) for r in p.fan.rays]
    out["verified"] = verify_partition(p)
    return out


def cmd_find_amenable(args) -> dict:
    pr = Problem(_load(args.input), args.bound)
    cols = search_amenable(pr.partition, args.bound)
    return {"bound": args.bound, "count": len(cols), "collections": [c.to_dict() for c in cols]}


def cmd_degenerate(args) -> dict:
    pr = Problem(_load(args.input), args.bound)
    col = pr.collection(args.index)
    d = degeneration(col)
    report = check_degeneration_theorems(d)
    out = d.to_dict()
    out["binomials"] = [pr.binomial_str(b) for b in d.binomials]
    out["collection"] = col.to_dict()
    out["checks"] = report
    if "fail" in report.values():
        raise _Failure(out, "degeneration checks failed")
    return out


def cmd_lg(args) -> dict:
    pr = Problem(_load(args.input), args.bound)
    names = args.names.split(",") if args.names else None
    model = build_givental(pr.partition, pr.coefficients(), names)
    col = pr.collection(args.index)
    out_names = names if names and len(names) == col.completion.rank else None
    el = eliminate(model, col, out_names)
    d = degeneration(col)
    ok = check_newton_equals_deltaV(el.potential, d)
    out = {
        "constraints": [str(c) for c in model.constraints],
        "potential_in": str(model.potential),
        "collection": col.to_dict(),
        "f": [str(f) for f in el.f],
        "potential": str(el.potential),
        "laurent": el.potential.to_dict(),
        "newton_equals_delta": ok,
    }
    if not ok or not el.check_parametrization():
        raise _Failure(out, "Newton polytope or parametrization check failed")
    return out


def cmd_mutate(args) -> dict:
    pr = Problem(_load(args.input), args.bound)
    cols = pr.collections()
    if args.source is not None or args.target is not None:
        pairs = [(args.source or 0, args.target or 0)]
    elif len(cols) == 1:
        pairs = [(0, 0)]
    else:
        pairs = [(a, b) for a in range(len(cols)) for b in range(len(cols)) if a != b]
    results = []
    failed = False
    for a, b in pairs:
        if not (0 <= a < len(cols) and 0 <= b < len(cols)):
            raise ParameterError(f"collection pair {(a, b)} out of range (found {len(cols)})")
        m = build_mutation(cols[a], cols[b], pr.coefficients())
        rep = verify_mutation(m, points=args.points, seed=args.seed)
        rep.pop("points")
        rep.update({"source": a, "target": b, "map": m.to_dict()})
        failed |= not rep["passed"]
        results.append(rep)
    out = {"collections": [c.to_dict() for c in cols], "mutations": results}
    if failed:
        raise _Failure(out, "mutation check failed")
    return out


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"expected comma separated integers, got {s!r}") from None


def cmd_flag_lg(args) -> dict:
    dims = _int_list(args.dims)
    if len(dims) < 2:
        raise ParameterError("--dims needs n_1,...,n_l,n")
    mds = [_int_list(s) for s in args.multidegree.split(";")] if args.multidegree else []
    r = flag_lg(dims[:-1], dims[-1], mds)
    d = r.diagram
    out = {
        "dims": dims,
        "multidegrees": mds,
        "black": [list(p) for p in d.black],
        "white": [list(p) for p in d.white],
        "constraints": [str(c) for c in r.model.constraints],
        "potential_in": str(r.model.potential),
        "vectors": [dict(zip((f"{m},{n}" for m, n in d.black), v)) for v in r.collection.vectors],
        "f": [str(f) for f in r.elimination.f],
        "potential": str(r.potential),
        "terms": len(r.potential.terms),
        "verified": r.flag_partition.verified,
    }
    if r.degeneration is not None:
        checks = check_degeneration_theorems(r.degeneration)
        checks["newton_equals_delta"] = ("pass" if check_newton_equals_deltaV(r.potential, r.degeneration)
                                         else "fail")
        out["checks"] = checks
        if "fail" in checks.values():
            raise _Failure(out, "flag degeneration checks failed")
    return out


def _labels(s: str, n: int) -> list[int]:
    """'e1,e3' or '1,3' (1-based vertex labels) -> 0-based indices."""
    out = []
    for tok in s.split(","):
        tok = tok.strip().lstrip("eEsS")
        if not tok:
            continue
        try:
            j = int(tok) - 1
        except ValueError:
            raise ParameterError(f"bad vertex label in {s!r}") from None
        if not 0 <= j < n:
            raise ParameterError(f"vertex label {j + 1} out of range")
        out.append(j)
    return out


def cmd_ckp(args) -> dict:
    data = _load(args.polytope)
    verts = _vertices(data)
    N = len(verts)
    E = _labels(args.E, N)
    S = [_labels(s, N) for s in args.S.split(";")] if args.S else []
    pivots = _labels(args.pivot, N) if args.pivot else [s[0] for s in S if s]
    qs = [Fraction(q) for q in args.q.split(",")] if args.q else [Fraction(1)]
    if len(qs) == 1:
        qs = qs * len(E)
    if len(qs) != len(E):
        raise ParameterError("--q needs one value or one per element of E")
    inp = parse_ckp_input(verts, E, S, pivots, dict(zip(E, qs)))
    w = hori_vafa_potential(inp)
    sub = ckp_substitute(inp)
    out = {
        "hori_vafa": str(w),
        "laurent": str(sub),
        "terms": sub.to_dict(),
        "E": [e + 1 for e in E],
        "S": [[j + 1 for j in s] for s in S],
        "pivots": [p + 1 for p in pivots],
        "q": [_fs(q) for q in qs],
    }
    if args.check:
        am = ckp_amenable(inp)
        out["amenable"] = am.collection.to_dict()
        out["eliminate"] = str(am.elimination.potential)
        out["equivalent"] = check_ckp_equivalence(inp)
    return out


def cmd_corpus(args) -> dict:
    insts = generate(args.count, seed=args.seed, bound=args.bound)
    reports = [instance_report(i, mutations=not args.no_mutations) for i in insts]
    fails = 0
    for r in reports:
        for ch in r["checks"]:
            fails += sum(v == "fail" for v in ch.values())
        for m in r.get("mutations", []):
            fails += (not m["passed"]) + m["perturbed_passed"]
        if r.get("ckp") and not r["ckp"]["equivalent"]:
            fails += 1
    out = {"count": len(reports), "failures": fails, "bound": args.bound}
    if args.full:
        out["instances"] = reports
    if len(reports) < args.count:
        raise _Failure(out, f"only {len(reports)} instances generated")
    if fails:
        raise _Failure(out, f"{fails} property failures")
    return out


class _Failure(Exception):
    """A theorem check failed; carries the partial output."""

    def __init__(self, payload: dict, message: str):
        super().__init__(message)
        self.payload = payload


# ---------------------------------------------------------------------------


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str)) for x in v):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _emit(out: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(out, sort_keys=True, indent=2, default=_json_default) + "\n")
    else:
        stream.write("\n".join(_text(json.loads(json.dumps(out, default=_json_default)))) + "\n")


def _json_default(o):
    if isinstance(o, Fraction):
        return _fs(o)
    if isinstance(o, (set, frozenset, tuple)):
        return sorted(o) if isinstance(o, (set, frozenset)) else list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed recorded in the output (default 0)")
    common.add_argument("--out", choices=("json", "text"), default="json", help="output format")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="amenable search bound B")

    ap = argparse.ArgumentParser(prog="toricdegen", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("input", help="partition JSON file")
        p.set_defaults(func=fn)
        return p

    with_input("verify-nef", cmd_verify_nef, "solve and check the nef partition")
    with_input("find-amenable", cmd_find_amenable, "search amenable collections")
    p = with_input("degenerate", cmd_degenerate, "binomials, Sigma_V and Delta_V")
    p.add_argument("--index", type=int, default=0, help="which found collection to use")
    p = with_input("lg", cmd_lg, "Givental model and its Laurent polynomial")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--names", help="comma separated variable names")
    p = with_input("mutate", cmd_mutate, "maps between amenable collections")
    p.add_argument("--source", type=int)
    p.add_argument("--target", type=int)
    p.add_argument("--points", type=int, default=20)

    p = sub.add_parser("flag-lg", parents=[common], help="Laurent model of a flag complete intersection")
    p.add_argument("--dims", required=True, help="n_1,...,n_l,n")
    p.add_argument("--multidegree", default="", help="per-hypersurface roof degrees, ';' between hypersurfaces")
    p.set_defaults(func=cmd_flag_lg)

    p = sub.add_parser("ckp", parents=[common], help="Przyjalkowski substitution")
    p.add_argument("--polytope", required=True, help="JSON file with 'vertices'")
    p.add_argument("--E", required=True, help="1-based vertex labels, e.g. e4")
    p.add_argument("--S", default="", help="labels of S_i, ';' between the S_i")
    p.add_argument("--pivot", default="", help="one label per S_i (default: first of each)")
    p.add_argument("--q", default="1", help="q for each element of E (one value applies to all)")
    p.add_argument("--no-check", dest="check", action="store_false",
                   help="skip the amenable equivalence check")
    p.set_defaults(func=cmd_ckp)

    p = sub.add_parser("corpus", parents=[common], help="randomised property suite")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--full", action="store_true", help="include per-instance reports")
    p.add_argument("--no-mutations", action="store_true")
    p.set_defaults(func=cmd_corpus, bound=4)
    return ap


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    code = EXIT_OK
    try:
        out = args.func(args)
    except _Failure as exc:
        out = dict(exc.payload, error=str(exc))
        code = EXIT_INVARIANT
    except (InvariantViolation, SamplingError) as exc:
        out = {"error": str(exc), "kind": type(exc).__name__}
        code = EXIT_INVARIANT
    except InputError as exc:
        out = {"error": str(exc), "kind": type(exc).__name__}
        code = EXIT_INPUT
    out["command"] = args.command
    out["seed"] = args.seed
    _emit(out, args.out, stdout)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
