"""JSON command-line interface.

Each invocation reads one JSON document from stdin (or ``--input``) and
writes one to stdout; with ``--batch`` the input is an array of documents
and the output an array of results. Complex numbers are ``[re, im]`` pairs,
points are arrays of complex numbers, matrices are arrays of rows.

Exit codes: 0 computed (feasible), 1 computed but infeasible (gate verbs),
2 invalid input, 3 numerical disagreement between independent routes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Callable

import numpy as np

from . import areas, assembly, moduli, realhyp, rkhs, triangles
from .core_linalg import InvalidInputError, NumericalDisagreementError, Tolerance
from .selftest import run_selftest

__all__ = ["main", "run", "dumps"]

SCHEMA = "1"
DEFAULT_SEED = 0

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_DISAGREE = 0, 1, 2, 3
_SEVERITY = {EXIT_OK: 0, EXIT_INFEASIBLE: 1, EXIT_INVALID: 2, EXIT_DISAGREE: 3}


# ---------------------------------------------------------------- encoding


def _plain(obj: Any) -> Any:
    """Convert numpy and complex values into JSON-ready Python objects."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _dump(obj: Any) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, list):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    return json.dumps(obj)


def dumps(obj: Any) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _dump(_plain(obj))


# ---------------------------------------------------------------- decoding


def _need(doc: dict, key: str) -> Any:
    if not isinstance(doc, dict):
        raise InvalidInputError("input document must be a JSON object")
    if key not in doc:
        raise InvalidInputError(f"missing field {key!r}")
    return doc[key]


def _real(v, name: str = "value") -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InvalidInputError(f"{name} must be a number")
    return float(v)


def _complex(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, list) and len(v) == 2:
        return complex(_real(v[0]), _real(v[1]))
    raise InvalidInputError(f"complex numbers are [re, im] pairs, got {v!r}")


def _points(v) -> np.ndarray:
    if not isinstance(v, list) or not v or not all(isinstance(p, list) and p for p in v):
        raise InvalidInputError("points must be a nonempty array of nonempty coordinate arrays")
    rows = [[_complex(c) for c in p] for p in v]
    if len({len(r) for r in rows}) != 1:
        raise InvalidInputError("points must share one dimension")
    return np.array(rows, dtype=complex)


def _matrix(v) -> np.ndarray:
    if not isinstance(v, list) or not v or not all(isinstance(r, list) for r in v):
        raise InvalidInputError("matrices are arrays of rows")
    rows = [[_complex(c) for c in r] for r in v]
    if any(len(r) != len(rows) for r in rows):
        raise InvalidInputError("matrix must be square")
    return np.array(rows, dtype=complex)


def _angles(v) -> np.ndarray:
    if not isinstance(v, list):
        raise InvalidInputError("angles must be an array of three numbers")
    return realhyp.as_angles([_real(a, "angle") for a in v])


def _gram(doc: dict, tol: Tolerance) -> rkhs.GramSpec:
    if "gram" in doc:
        return rkhs.GramSpec(_matrix(doc["gram"]), tol)
    return rkhs.gram_of_config(_points(_need(doc, "points")), tol)


def _label(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InvalidInputError(f"labels must be integers or strings, got {v!r}")
    return v


def _pieces(doc: dict, tol: Tolerance) -> list[assembly.Piece]:
    raw = _need(doc, "pieces")
    if not isinstance(raw, list) or not raw:
        raise InvalidInputError("pieces must be a nonempty array")
    out = []
    for item in raw:
        labels = [_label(x) for x in _need(item, "labels")]
        out.append(assembly.Piece(_gram(item, tol), tuple(labels)))
    return out


def _sprime(v) -> triangles.TriangleSPrime:
    return triangles.TriangleSPrime(*(_real(_need(v, k), k) for k in ("d12", "d13", "d23", "alpha123")))


def _sdp(v) -> triangles.TriangleSDoublePrime:
    return triangles.TriangleSDoublePrime(
        _real(_need(v, "d12"), "d12"), _real(_need(v, "d13"), "d13"), _complex(_need(v, "kos123"))
    )


# ---------------------------------------------------------------- documents


def _sprime_doc(t: triangles.TriangleSPrime) -> dict:
    return {"d12": t.d12, "d13": t.d13, "d23": t.d23, "alpha123": t.alpha123}


def _sdp_doc(t: triangles.TriangleSDoublePrime) -> dict:
    return {"d12": t.d12, "d13": t.d13, "kos123": t.kos123}


def _s_doc(t: triangles.TriangleS) -> dict:
    return {"m12": t.m12, "m23": t.m23, "m13": t.m13, "alpha123": t.alpha123}


def _verdict_doc(v: assembly.AssemblyVerdict) -> dict:
    out = {
        "feasible": v.feasible,
        "boundary": v.boundary,
        "labels": list(v.labels),
        "matrix": v.matrix,
        "failing_minor": None if v.failing_minor is None else list(v.failing_minor),
        "points": v.witness,
    }
    if v.gram is not None:
        out["gram"] = v.gram.matrix
    details = dict(v.details)
    if "minors" in details:
        details["minors"] = [{"labels": list(s), "value": m} for s, m in details["minors"]]
    if "disks" in details:
        details["disks"] = [{"center": c, "radius": r} for c, r in details["disks"]]
    out["details"] = details
    return out


# ---------------------------------------------------------------- verbs

Result = tuple[dict, bool]  # (payload, feasible); infeasible gates exit with 1


def _invariants(doc, ctx) -> Result:
    G = _gram(doc, ctx.tol)
    base = int(doc.get("base", 0))
    triples = [(i, j, k) for i in range(G.n) for j in range(i + 1, G.n) for k in range(j + 1, G.n)]
    out = {
        "delta": rkhs.delta_matrix(G),
        "kos_base": base,
        "kos": rkhs.kos_matrix(G, base, ctx.tol) if G.n >= 2 else [],
        "alpha": [{"triple": list(t), "alpha": rkhs.alpha(G, *t)} for t in triples],
    }
    if G.n >= 4:
        out["cross_ratio_0123"] = rkhs.cross_ratio(G, 0, 1, 2, 3)
    return out, True


def _moduli_encode(doc, ctx) -> Result:
    m = moduli.encode(_points(_need(doc, "points")), ctx.tol)
    return {"rho": m.rho, "M": m.M}, True


def _moduli_decode(doc, ctx) -> Result:
    rho = [_real(r, "rho") for r in _need(doc, "rho")]
    m = moduli.ModuliPoint(np.array(rho), _matrix(_need(doc, "M")), ctx.tol)
    dim = doc.get("dimension")
    return {"points": moduli.decode(m, None if dim is None else int(dim))}, True


def _congruent(doc, ctx) -> Result:
    same = moduli.congruent(_points(_need(doc, "a")), _points(_need(doc, "b")), ctx.tol)
    return {"congruent": same}, True


def _triangle_source(doc, ctx):
    if "sprime" in doc:
        t = _sprime(doc["sprime"])
        return t, triangles.sprime_to_sdp(t, ctx.tol)
    if "sdp" in doc:
        t = _sdp(doc["sdp"])
        return triangles.sdp_to_sprime(t, ctx.tol), t
    G = _gram(doc, ctx.tol)
    if G.n != 3:
        raise InvalidInputError("a triangle has three points")
    return triangles.sprime_of_gram(G), triangles.sdp_of_gram(G)


def _triangle_convert(doc, ctx) -> Result:
    sp, sdp = _triangle_source(doc, ctx)
    out = {"sprime": _sprime_doc(sp), "sdp": _sdp_doc(sdp)}
    if "sprime" not in doc and "sdp" not in doc:
        out["s"] = _s_doc(triangles.s_of_gram(_gram(doc, ctx.tol)))
    return out, True


def _triangle_realize(doc, ctx) -> Result:
    if "sprime" in doc:
        t = _sprime(doc["sprime"])
        ok = triangles.realizable_sprime(t, ctx.tol)
        flat = ok and triangles.in_complex_geodesic(triangles.sprime_to_sdp(t, ctx.tol), ctx.tol)
    else:
        t = _sdp(_need(doc, "sdp"))
        ok = triangles.realizable_sdp(t, ctx.tol)
        flat = triangles.in_complex_geodesic(t, ctx.tol)
    return {"realizable": ok, "in_complex_geodesic": flat}, ok


def _triangle_model(doc, ctx) -> Result:
    _, sdp = _triangle_source(doc, ctx)
    return {"points": triangles.build_model_triangle(sdp, ctx.tol)}, True


def _tetra_gate(doc, ctx) -> Result:
    K = [_complex(_need(doc, k)) for k in ("K23", "K24", "K34")]
    rho = doc.get("rho")
    rho = None if rho is None else [_real(r, "rho") for r in rho]
    v = assembly.tetra_gate(*K, rho=rho, tol=ctx.tol)
    return _verdict_doc(v), v.feasible


def _assemble(kind: str) -> Callable:
    fn = {"v1": assembly.assemble_v1, "v2": assembly.assemble_v2}.get(kind)

    def handler(doc, ctx) -> Result:
        pieces = _pieces(doc, ctx.tol)
        base = doc.get("base")
        if kind == "v3":
            if len(pieces) != 2:
                raise InvalidInputError("assemble v3 takes exactly two pieces")
            v = assembly.assemble_v3(*pieces, base=base, tol=ctx.tol)
        else:
            v = fn(pieces, base=base, tol=ctx.tol)
        return _verdict_doc(v), v.feasible

    return handler


def _q2_gate(doc, ctx) -> Result:
    v = assembly.q2_gate(_pieces(doc, ctx.tol), base=doc.get("base"), tol=ctx.tol)
    return _verdict_doc(v), v.feasible


def _cpp_certify(doc, ctx) -> Result:
    c = rkhs.cpp_certify(_gram(doc, ctx.tol), ctx.tol)
    out = {
        "cpp": c.is_cpp,
        "min_eigenvalue_by_base": [v.min_eigenvalue for v in c.by_base],
        "most_negative_minor": {"subset": c.witness.minor_subset, "value": c.witness.minor_value},
    }
    return out, c.is_cpp


def _quiggin(doc, ctx) -> Result:
    x = ctx.x if ctx.x is not None else _real(_need(doc, "x"), "x")
    r = rkhs.quiggin_report(x, ctx.tol)
    out = {
        "x": r.x,
        "leading_minors": r.leading_minors,
        "leading_minor_formulas": r.leading_minor_formulas,
        "j_dets": r.j_dets,
        "j_formulas": r.j_formulas,
        "det_mq": r.det_mq,
        "det_mq_formula": r.det_mq_formula,
        "subspace_cpp": r.subspace_cpp,
        "cpp": r.full_cpp,
    }
    return out, True


def _real_vertex(doc, ctx) -> Result:
    if "da" in doc:
        return {"cos_va": realhyp.vertex_from_dihedral(_angles(doc["da"]))}, True
    M = realhyp.vertex_angles(_points(_need(doc, "points")), ctx.tol)
    return {"cos_matrix": M, "va": realhyp.angles_of_matrix(M, tol=ctx.tol)}, True


def _real_dihedral(doc, ctx) -> Result:
    c = realhyp.dihedral_from_vertex(_angles(_need(doc, "va")))
    ok = bool(np.all(np.abs(c) <= 1.0 + ctx.tol.eq_tol))
    return {"cos_da": c, "realizable": ok}, ok


def _real_gva(doc, ctx) -> Result:
    g = _angles(_need(doc, "angles"))
    ok = realhyp.gva_check(g, ctx.tol)
    return {"gva": ok, "angle_triangle_inequality": realhyp.tia_holds(g, ctx.tol)}, ok


def _real_gda(doc, ctx) -> Result:
    g = _angles(_need(doc, "angles"))
    ok = realhyp.gda_check(g, ctx.tol)
    return {"gda": ok, "angle_sum_at_least_pi": realhyp.tid_holds(g, ctx.tol)}, ok


def _real_dual(doc, ctx) -> Result:
    return {"angles": realhyp.dual(_angles(_need(doc, "angles")))}, True


def _real_gate(doc, ctx) -> Result:
    if "va" in doc:
        v = realhyp.vertex_gate(_angles(doc["va"]), ctx.tol)
        out = {
            "feasible": v.feasible,
            "det_nonnegative": v.det_nonnegative,
            "trig": v.trig,
            "normalized_trig": v.normalized_trig,
            "determinant": v.determinant,
            "boundary": v.boundary,
        }
        return out, v.feasible
    L = _matrix(doc["L"]) if "L" in doc else realhyp.neg_cda_matrix(_angles(_need(doc, "da")))
    v = realhyp.dihedral_gate(L, ctx.tol)
    out = {
        "feasible": v.feasible,
        "trig": v.trig,
        "min_eigenvalue": v.psd.min_eigenvalue,
        "determinant": v.determinant,
        "boundary": v.boundary,
    }
    return out, v.feasible


def _cayley(doc, ctx) -> Result:
    p = [_real(c, "coordinate") for c in _need(doc, "point")]
    if len(p) != 3:
        raise InvalidInputError("a Cayley point has three coordinates")
    return {"p": realhyp.cayley_p(p), "class": realhyp.cayley_classify(p, ctx.tol)}, True


def _area(kind: str) -> Callable:
    def handler(doc, ctx) -> Result:
        P = _points(_need(doc, "points"))
        if kind == "bk2":
            value = areas.area_bk2(P, ctx.tol)
        elif kind == "ch1":
            value = areas.area_ch1(P, signed=ctx.signed_area, tol=ctx.tol)
        else:
            value = areas.polygon_area_ch1(P, signed=ctx.signed_area, tol=ctx.tol)
        return {"area": value, "signed": ctx.signed_area and kind != "bk2"}, True

    return handler


def _selftest(doc, ctx) -> Result:
    checks = run_selftest(ctx.seed, ctx.tol)
    return {"seed": ctx.seed, "checks": checks, "passed": all(c["passed"] for c in checks)}, True


HANDLERS: dict[str, Callable] = {
    "invariants": _invariants,
    "moduli-encode": _moduli_encode,
    "moduli-decode": _moduli_decode,
    "congruent": _congruent,
    "triangle convert": _triangle_convert,
    "triangle realize": _triangle_realize,
    "triangle model": _triangle_model,
    "tetra-gate": _tetra_gate,
    "assemble v1": _assemble("v1"),
    "assemble v2": _assemble("v2"),
    "assemble v3": _assemble("v3"),
    "q2-gate": _q2_gate,
    "cpp-certify": _cpp_certify,
    "quiggin": _quiggin,
    "real-angles vertex": _real_vertex,
    "real-angles dihedral": _real_dihedral,
    "real-angles gva": _real_gva,
    "real-angles gda": _real_gda,
    "real-angles dual": _real_dual,
    "real-angles gate": _real_gate,
    "cayley": _cayley,
    "area ch1": _area("ch1"),
    "area polygon": _area("polygon"),
    "area bk2": _area("bk2"),
    "selftest": _selftest,
}

# Verbs that run without an input document.
_NO_INPUT = {"selftest"}


# ---------------------------------------------------------------- driver


class _Context(argparse.Namespace):
    tol: Tolerance
    seed: int
    signed_area: bool
    x: float | None


def run(command: str, doc: Any, ctx: _Context) -> tuple[dict, int]:
    """Execute one job; returns the output document and its exit code."""
    head = {"schema": SCHEMA, "command": command,
            "tolerances": {"eq_tol": ctx.tol.eq_tol, "psd_tol": ctx.tol.psd_tol}}
    try:
        if isinstance(doc, dict) and doc.get("schema", SCHEMA) != SCHEMA:
            raise InvalidInputError(f"unsupported schema {doc.get('schema')!r}")
        payload, ok = HANDLERS[command](doc if doc is not None else {}, ctx)
        if command == "selftest" and not payload["passed"]:
            return {**head, **payload}, EXIT_DISAGREE
        return {**head, **payload}, EXIT_OK if ok else EXIT_INFEASIBLE
    except NumericalDisagreementError as exc:
        return {**head, "error": {"type": "NumericalDisagreementError", "message": str(exc)}}, EXIT_DISAGREE
    except (InvalidInputError, KeyError, TypeError, ValueError) as exc:
        return {**head, "error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_INVALID


def _add_globals(p: argparse.ArgumentParser, top: bool) -> None:
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--tol-eq", type=float, default=d(1e-9), help="scalar equality tolerance")
    p.add_argument("--tol-psd", type=float, default=d(1e-9), help="eigenvalue floor")
    p.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="seed for randomized verbs")
    p.add_argument("--batch", action="store_true", default=d(False), help="input is an array of documents")
    p.add_argument("--signed-area", action="store_true", default=d(False), help="keep orientation sign")
    p.add_argument("--input", default=d("-"), help="input file (default stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperkos", description="Complex hyperbolic configuration tools.")
    _add_globals(parser, top=True)
    verbs = parser.add_subparsers(dest="verb", required=True)
    groups: dict[str, argparse._SubParsersAction] = {}
    for name in HANDLERS:
        head, _, tail = name.partition(" ")
        if tail:
            if head not in groups:
                groups[head] = verbs.add_parser(head).add_subparsers(dest="sub", required=True)
            sub = groups[head].add_parser(tail)
        else:
            sub = verbs.add_parser(head)
        _add_globals(sub, top=False)
        if name == "quiggin":
            sub.add_argument("--x", type=float, default=None, help="family parameter in (0, 1)")
    return parser


def _read(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return json.loads(text) if text.strip() else None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = args.verb if getattr(args, "sub", None) is None else f"{args.verb} {args.sub}"
    try:
        tol = Tolerance(args.tol_eq, args.tol_psd)
    except InvalidInputError as exc:
        print(dumps({"schema": SCHEMA, "command": command, "error": {"type": "InvalidInputError",
                                                                     "message": str(exc)}}))
        return EXIT_INVALID
    ctx = _Context(tol=tol, seed=args.seed, signed_area=args.signed_area, x=getattr(args, "x", None))
    needs_input = command not in _NO_INPUT and not (command == "quiggin" and ctx.x is not None)
    try:
        doc = _read(args.input) if needs_input or args.batch else None
    except (OSError, json.JSONDecodeError) as exc:
        print(dumps({"schema": SCHEMA, "command": command, "error": {"type": type(exc).__name__,
                                                                     "message": str(exc)}}))
        return EXIT_INVALID
    if args.batch:
        if not isinstance(doc, list):
            print(dumps({"schema": SCHEMA, "command": command,
                         "error": {"type": "InvalidInputError", "message": "--batch needs a JSON array"}}))
            return EXIT_INVALID
        results = [run(command, item, ctx) for item in doc]
        print(dumps([r for r, _ in results]))
        return max((code for _, code in results), key=_SEVERITY.__getitem__, default=EXIT_OK)
    if needs_input and doc is None:
        doc = {}
    out, code = run(command, doc, ctx)
    print(dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
