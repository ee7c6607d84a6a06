"""Command-line front end.

Subcommands: check, classify, construct, extend, cohomology, curvature,
invariant-forms.  Exit codes: 0 success, 2 input/parse, 3 precondition,
4 internal contradiction.  `--json` wraps results in a stable report
envelope (see schema/report.schema.json); without it a human-readable
summary is printed.  Files compose the pipeline; `-` reads a document from
stdin so constructions can be piped into `classify`.

The d eta sign convention is d eta(X, Y) = -eta([X, Y]) everywhere.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

from . import io as aqio
from .acm import (
    CLASS_ANTI_QUASI_SASAKIAN,
    CLASS_DOUBLE_AQS_SASAKIAN,
    CLASS_QUASI_SASAKIAN,
    classify_structure,
    curvature,
    double_aqs_check,
    sectional_curvature,
    structure_rank,
    validate_acm,
    xi_killing_check,
)
from .classifier import classify_nilpotent_aqs, classify_nilpotent_qs
from .constructors import (
    central_extension,
    su2,
    su3,
    weighted_heisenberg_2n1,
    weighted_heisenberg_4n1,
)
from .errors import AqslieError, InputError, NotAqs, PreconditionError
from .exterior import ce_betti
from .invariant_forms import (
    centralizer_of_torus,
    center_of_k,
    invariant_closed_2forms,
    moment_element,
    reductive_split,
    synthesize_j_dim2,
    type_11_check,
)
from .lie_core import lower_central_series
from .linalg import Subspace
from .scalars import s_str, set_tolerance

REPORT_SCHEMA = "aqslie.report.v1"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text("utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_document(path: str) -> tuple[dict, str]:
    text = _read_text(path)
    return aqio.loads(text), text


def _builtin_algebra(name: str):
    if name == "su2":
        return su2(), aqio.dumps(aqio.algebra_to_json(su2()))
    if name == "su3":
        return su3(), aqio.dumps(aqio.algebra_to_json(su3()))
    return None


# ---------------------------------------------------------------------------
# subcommand handlers: each returns a payload dict
# ---------------------------------------------------------------------------

def cmd_check(args) -> dict:
    doc, _ = _load_document(args.file)
    kind = aqio.document_kind(doc)
    payload: dict = {"kind": kind}
    if kind == "lie_algebra":
        L = aqio.algebra_from_json(doc)  # raises JacobiError on violators
        payload["dim"] = L.dim
        payload["jacobi"] = "pass"
        payload["nilpotent"] = lower_central_series(L).is_nilpotent
    elif kind == "acm_structure":
        S, companions = aqio.structure_from_json(doc)
        payload["dim"] = S.L.dim
        payload["jacobi"] = "pass"
        reports = [validate_acm(S)] + [validate_acm(c) for c in companions]
        payload["structures"] = [
            {
                "valid": r.passed,
                "worst_check": r.worst_check,
                "max_residual": s_str(r.max_residual),
            }
            for r in reports
        ]
        if not all(r.passed for r in reports):
            raise InputError(
                "structure identities fail: "
                + ", ".join(r.worst_check for r in reports if not r.passed)
            )
    elif kind == "kahler_lie_algebra":
        aqio.kahler_from_json(doc)
        payload["valid"] = True
    else:
        raise InputError(f"cannot check files of kind {kind!r}")
    return payload


def cmd_classify(args) -> dict:
    doc, _ = _load_document(args.file)
    if aqio.document_kind(doc) != "acm_structure":
        raise InputError("classify expects an acm_structure file")
    S, companions = aqio.structure_from_json(doc)
    all_structures = [S] + companions
    payload: dict = {"structures": []}
    for T in all_structures:
        cls = classify_structure(T)
        payload["structures"].append({"tags": sorted(cls.tags)})
    if len(all_structures) == 3:
        dbl = double_aqs_check(*all_structures)
        payload["double_aqs_sasakian"] = dbl.ok
        if dbl.ok:
            payload["structures"][0]["tags"].append(CLASS_DOUBLE_AQS_SASAKIAN)
    rr = structure_rank(S)
    payload["rank"] = {"rank": rr.rank, "maximal": rr.is_maximal, "parity": rr.parity}
    payload["xi_killing"] = xi_killing_check(S)
    tags = set(payload["structures"][0]["tags"])
    if CLASS_ANTI_QUASI_SASAKIAN in tags:
        iso = classify_nilpotent_aqs(S)
    elif CLASS_QUASI_SASAKIAN in tags:
        iso = classify_nilpotent_qs(S)
    else:
        raise NotAqs("structure is neither anti-quasi-Sasakian nor quasi-Sasakian")
    payload["normal_form"] = {
        "family": iso.family,
        "n": iso.n,
        "weights": [s_str(w) for w in iso.weights],
        "phi_signs": list(iso.phi_signs),
        "target_phi_index": iso.target_phi_index,
        "F": [[s_str(x) for x in row] for row in iso.F_mat()],
    }
    return payload


def cmd_construct(args) -> dict:
    if args.model != "heisenberg":
        raise InputError(f"unknown construction {args.model!r}")
    try:
        weights = [w for w in (args.weights or "").split(",") if w != ""]
    except AttributeError as exc:
        raise InputError("bad --weights list") from exc
    if not weights:
        raise InputError("--weights must be a nonempty comma list")
    from .scalars import parse_scalar

    parsed = [parse_scalar(w) for w in weights]
    n = len(parsed)
    if args.dim_family == "4n1":
        _, (s1, s2, s3) = weighted_heisenberg_4n1(n, parsed)
        doc = aqio.structure_to_json(s1, companions=[s2.phi_mat(), s3.phi_mat()])
    elif args.dim_family == "2n1":
        _, s = weighted_heisenberg_2n1(n, parsed)
        doc = aqio.structure_to_json(s)
    else:
        raise InputError("--dim-family must be 4n1 or 2n1")
    return {"document": doc}


def cmd_extend(args) -> dict:
    kdoc, _ = _load_document(args.kahler)
    if aqio.document_kind(kdoc) != "kahler_lie_algebra":
        raise InputError("--kahler expects a kahler_lie_algebra file")
    H = aqio.kahler_from_json(kdoc)
    cdoc, _ = _load_document(args.cocycle)
    if aqio.document_kind(cdoc) != "k_form":
        raise InputError("--cocycle expects a k_form file")
    w = aqio.form_from_json(cdoc)
    _, S = central_extension(H, w)
    return {"document": aqio.structure_to_json(S)}


def cmd_cohomology(args) -> dict:
    doc, _ = _load_document(args.file)
    kind = aqio.document_kind(doc)
    if kind == "acm_structure":
        L = aqio.structure_from_json(doc)[0].L
    elif kind == "lie_algebra":
        L = aqio.algebra_from_json(doc)
    else:
        raise InputError("cohomology expects an algebra or structure file")
    if args.degrees:
        try:
            degrees = sorted({int(d) for d in args.degrees.split(",")})
        except ValueError as exc:
            raise InputError("bad --degrees list") from exc
    else:
        degrees = list(range(L.dim + 1))
    betti = {str(k): ce_betti(L, k) for k in degrees}
    return {"dim": L.dim, "betti": betti}


def cmd_curvature(args) -> dict:
    doc, _ = _load_document(args.file)
    if aqio.document_kind(doc) != "acm_structure":
        raise InputError("curvature expects an acm_structure file")
    S, _ = aqio.structure_from_json(doc)
    data = curvature(S)
    payload = {
        "scalar": s_str(data.scalar),
        "ricci": [[s_str(x) for x in row] for row in data.ricci],
    }
    xi_sec = {}
    for i in range(S.L.dim):
        b = S.L.basis_vector(i)
        try:
            xi_sec[S.L.basis_names[i]] = s_str(sectional_curvature(S, data, S.xi_vec(), b))
        except PreconditionError:
            continue  # basis vector parallel to xi
    payload["xi_sectional"] = xi_sec
    return payload


def cmd_invariant_forms(args) -> dict:
    builtin = _builtin_algebra(args.algebra)
    if builtin is not None:
        g = builtin[0]
    else:
        doc, _ = _load_document(args.algebra)
        g = aqio.algebra_from_json(doc)
    try:
        torus_idx = [int(t) - 1 for t in args.torus.split(",")]
    except ValueError as exc:
        raise InputError("bad --torus index list") from exc
    if any(not 0 <= t < g.dim for t in torus_idx):
        raise InputError("--torus index out of range")
    S = Subspace.from_vectors(g.dim, [g.basis_vector(t) for t in torus_idx])
    k = centralizer_of_torus(g, S)
    R = reductive_split(g, k)
    warnings = []
    recomputed = centralizer_of_torus(
        g, Subspace.from_vectors(g.dim, center_of_k(R))
    )
    if not recomputed.equals(k):
        msg = "k is not the centralizer of its own center"
        if args.strict:
            raise PreconditionError(msg)
        warnings.append(msg)
    sols = invariant_closed_2forms(R)
    moments = [moment_element(R, w) for w in sols]
    payload = {
        "k_dimension": k.dim,
        "m_dimension": R.m.dim,
        "solution_dimension": len(sols),
        "forms": [aqio.form_to_json(w, g.mode) for w in sols],
        "moment_elements": [[s_str(x) for x in Z] for Z in moments],
        "warnings": warnings,
    }
    J = None
    if args.J:
        jdoc, _ = _load_document(args.J)
        if aqio.document_kind(jdoc) != "matrix":
            raise InputError("--J expects a matrix file")
        J = aqio.matrix_from_json(jdoc)
        if len(J) != R.m.dim:
            raise InputError("J size must match dim m")
    elif R.m.dim == 2:
        cands = synthesize_j_dim2(R)
        J = cands[0] if cands else None
    if J is not None:
        rep = type_11_check(R, sols, J)
        payload["type_11"] = {
            "j_ok": rep.j_ok,
            "j_failures": rep.j_failures,
            "invariant": rep.invariant,
            "anti_projection_zero": rep.anti_projection_zero,
        }
    else:
        payload["type_11"] = None
    return payload


# ---------------------------------------------------------------------------
# dispatch and reporting
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="emit a machine-readable report"
    )
    common.add_argument(
        "--seed", type=int, default=None, help="seed for randomized helpers"
    )
    common.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="float-mode comparison tolerance (default 1e-9, env AQSLIE_TOLERANCE)",
    )
    p = argparse.ArgumentParser(
        prog="aqslie",
        parents=[common],
        description="Exact classification of almost contact metric structures "
        "on Lie algebras (d eta(X,Y) = -eta([X,Y]) convention).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    c = add("check", help="validate a file (Jacobi, structure identities)")
    c.add_argument("file")
    c.set_defaults(handler=cmd_check)

    c = add("classify", help="class tags, weights and normal form")
    c.add_argument("file", nargs="?", default="-")
    c.add_argument("--batch", default=None, help="process every .json file in a directory")
    c.set_defaults(handler=cmd_classify)

    c = add("construct", help="emit a built-in model as a structure file")
    c.add_argument("model", choices=["heisenberg"])
    c.add_argument("--dim-family", required=True, choices=["4n1", "2n1"])
    c.add_argument("--weights", required=True, help="comma list, e.g. 1,2")
    c.add_argument("-o", "--output", default=None)
    c.set_defaults(handler=cmd_construct, emits_document=True)

    c = add("extend", help="central extension of a Kahler algebra by a cocycle")
    c.add_argument("--kahler", required=True)
    c.add_argument("--cocycle", required=True)
    c.add_argument("-o", "--output", default=None)
    c.set_defaults(handler=cmd_extend, emits_document=True)

    c = add("cohomology", help="Chevalley-Eilenberg Betti numbers")
    c.add_argument("file")
    c.add_argument("--degrees", default=None, help="comma list of degrees")
    c.set_defaults(handler=cmd_cohomology)

    c = add("curvature", help="scalar curvature and xi-sectional table")
    c.add_argument("file")
    c.set_defaults(handler=cmd_curvature)

    c = add("invariant-forms", help="closed invariant 2-forms on g/k")
    c.add_argument("--algebra", required=True, help="file, or builtin su2 / su3")
    c.add_argument("--torus", required=True, help="1-based basis indices, e.g. 1,2")
    c.add_argument("--J", default=None, help="matrix file with J on m")
    c.add_argument("--strict", action="store_true")
    c.set_defaults(handler=cmd_invariant_forms)
    return p


def _summary(command: str, payload: dict) -> str:
    lines = [f"aqslie {command}: ok"]
    if command == "classify":
        for t, entry in enumerate(payload["structures"]):
            lines.append(f"  structure {t + 1}: {', '.join(entry['tags'])}")
        nf = payload.get("normal_form")
        if nf:
            lines.append(
                f"  normal form: h^{{{nf['family']}}} with weights ({', '.join(nf['weights'])})"
            )
        rr = payload["rank"]
        lines.append(f"  rank {rr['rank']} ({'maximal' if rr['maximal'] else 'not maximal'})")
    elif command == "cohomology":
        betti = ", ".join(f"b{k}={v}" for k, v in payload["betti"].items())
        lines.append(f"  {betti}")
    elif command == "curvature":
        lines.append(f"  scalar curvature: {payload['scalar']}")
        if payload["xi_sectional"]:
            sec = ", ".join(f"K(xi,{k})={v}" for k, v in payload["xi_sectional"].items())
            lines.append(f"  {sec}")
    elif command == "invariant-forms":
        lines.append(
            f"  dim k = {payload['k_dimension']}, dim m = {payload['m_dimension']}, "
            f"solution space dimension = {payload['solution_dimension']}"
        )
        if payload.get("type_11"):
            t11 = payload["type_11"]
            lines.append(
                f"  type (1,1): J ok = {t11['j_ok']}, invariant = {t11['invariant']}, "
                f"anti-invariant projection zero = {t11['anti_projection_zero']}"
            )
    else:
        lines.append("  " + json.dumps(payload, sort_keys=True, default=str))
    return "\n".join(lines)


def _run_single(args, input_path: str | None = None) -> tuple[int, dict]:
    started = time.monotonic()
    digest = None
    error = None
    payload = None
    try:
        if input_path is not None:
            args.file = input_path
        in_file = getattr(args, "file", None)
        if in_file and in_file != "-":
            digest = aqio.digest(_read_text(in_file))
        payload = args.handler(args)
        code = 0
    except AqslieError as exc:
        error = {"code": exc.code, "family": exc.family, "message": str(exc)}
        code = exc.exit_code
    except AssertionError as exc:
        error = {"code": "InternalContradiction", "family": "internal", "message": str(exc)}
        code = 4
    report = {
        "schema": REPORT_SCHEMA,
        "command": args.command,
        "input_digest": digest,
        "payload": payload,
        "error": error,
        "wall_time_s": round(time.monotonic() - started, 6),
    }
    return code, report


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    tol = args.tolerance
    if tol is None and os.environ.get("AQSLIE_TOLERANCE"):
        try:
            tol = float(os.environ["AQSLIE_TOLERANCE"])
        except ValueError:
            print("bad AQSLIE_TOLERANCE, ignoring", file=sys.stderr)
    if tol is not None:
        set_tolerance(tol)

    batch_dir = getattr(args, "batch", None)
    if batch_dir:
        worst = 0
        directory = Path(batch_dir)
        if not directory.is_dir():
            print(f"not a directory: {batch_dir}", file=sys.stderr)
            return 2
        for path in sorted(directory.glob("*.json")):
            if path.name.endswith(".report.json"):
                continue
            code, report = _run_single(args, str(path))
            out_path = path.parent / (path.stem + ".report.json")
            out_path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", "utf-8")
            worst = max(worst, code)
        return worst

    code, report = _run_single(args)
    if report["error"] is not None:
        if args.json:
            print(json.dumps(report, indent=2, sort_keys=True))
        else:
            err = report["error"]
            print(
                f"aqslie {args.command}: {err['code']} ({err['family']}): {err['message']}",
                file=sys.stderr,
            )
        return code
    if getattr(args, "emits_document", False):
        text = aqio.dumps(report["payload"]["document"])
        output = getattr(args, "output", None)
        if output:
            Path(output).write_text(text, "utf-8")
            if args.json:
                report["payload"] = {"written": output, "digest": aqio.digest(text)}
                print(json.dumps(report, indent=2, sort_keys=True))
        else:
            if args.json:
                print(json.dumps(report, indent=2, sort_keys=True))
            else:
                sys.stdout.write(text)
        return 0
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_summary(args.command, report["payload"]))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
