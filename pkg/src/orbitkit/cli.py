"""Command-line front end emitting canonical JSON reports.

Exit codes: 0 when every mathematical check in the report passes, 1 when a
check fails (the report says which), 2 for invalid input or usage.  Output
is deterministic: keys are sorted, rationals are canonical "p/q" strings,
and batch results are merged in input order, so identical invocations
produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from . import catalog as cat
from .conditions import check_conditions
from .induction import InducedRecord, frobenius_check, induced_dim, point_fiber, stages_flatten
from .liealg import Covector, LieAlgebra, NotClosedError, orbit_record, structure_probe, validate
from .linalg import Subspace, basis_vector, frac
from .mackey import abelian_step, classify_little_algebra, mackey_report, semidirect_witness
from .polarization import (
    StrategyExhausted,
    exponential_precheck,
    pukanszky_polarization,
)
from .reductive import UnsupportedSpectrumError, matrix_lie_algebra, parabolic_report

SCHEMA = 1


class InputError(ValueError):
    pass


def _load_entry(spec: str) -> cat.CatalogEntry:
    if spec.startswith("catalog:"):
        name = spec.split(":", 1)[1]
        entries = cat.load_catalog()
        if name not in entries:
            raise InputError(f"unknown catalog entry {name!r}; try the `catalog` subcommand")
        return entries[name]
    try:
        return cat.load_entry_file(spec)
    except cat.CatalogError as exc:
        raise InputError(str(exc)) from None


def _parse_point(alg: LieAlgebra, text: str) -> Covector:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != alg.dim:
        raise InputError(f"point needs {alg.dim} coordinates, got {len(parts)}")
    try:
        return Covector(alg, [frac(p) for p in parts])
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational in point: {exc}") from None


def _parse_subspace(entry: cat.CatalogEntry, text: str) -> Subspace:
    alg = entry.algebra
    if text in entry.ideals:
        return entry.ideals[text]
    if text in entry.complements:
        return entry.complements[text]
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            return Subspace(alg.dim, [[frac(x) for x in row] for row in doc["rows"]])
        except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
            raise InputError(f"bad subspace file {text[1:]}: {exc}") from None
    tokens = [t.strip() for t in text.split(",")]
    rows = []
    for tok in tokens:
        if tok.isdigit():
            idx = int(tok)
            if idx >= alg.dim:
                raise InputError(f"basis index {idx} out of range")
        else:
            try:
                idx = alg.label_index(tok)
            except KeyError:
                raise InputError(
                    f"{tok!r} is neither a declared subspace, basis label, nor index"
                ) from None
        rows.append(basis_vector(alg.dim, idx))
    return Subspace(alg.dim, rows)


def _map_points(points, fn, jobs: int):
    if jobs > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, points))
    return [fn(p) for p in points]


def _point_json(cov: Covector):
    return [str(x) for x in cov.coords]


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (payload, ok)


def _cmd_catalog(args) -> tuple[dict, bool]:
    entries = cat.load_catalog()
    listing = {}
    for name in sorted(entries):
        e = entries[name]
        listing[name] = {
            "dim": e.algebra.dim,
            "description": e.description,
            "covectors": {k: [str(x) for x in v] for k, v in sorted(e.covectors.items())},
            "ideals": sorted(e.ideals),
            "complements": sorted(e.complements),
        }
    return {"entries": listing}, True


def _cmd_validate(args) -> tuple[dict, bool]:
    if args.algebra.startswith("catalog:"):
        alg = _load_entry(args.algebra).algebra
    else:
        try:
            with open(args.algebra, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{args.algebra}: {exc}") from None
        try:
            alg = cat.parse_algebra(doc, source=args.algebra)
        except cat.CatalogError as exc:
            raise InputError(str(exc)) from None
    report = validate(alg)
    payload = {"validation": report.to_json_dict()}
    if not report.ok:
        raise InputError(json.dumps(payload["validation"], sort_keys=True))
    return payload, True


def _cmd_orbit(args) -> tuple[dict, bool]:
    entry = _load_entry(args.algebra)
    points = [_parse_point(entry.algebra, p) for p in args.point]

    def run(cov):
        rec = orbit_record(entry.algebra, cov)
        return {"point": _point_json(cov), "orbit": rec.to_json_dict()}

    return {"results": _map_points(points, run, args.jobs)}, True


def _cmd_conditions(args) -> tuple[dict, bool]:
    entry = _load_entry(args.algebra)
    sub = _parse_subspace(entry, args.sub)
    points = [_parse_point(entry.algebra, p) for p in args.point]

    def run(cov):
        try:
            rep = check_conditions(entry.algebra, sub, cov)
        except NotClosedError as exc:
            raise InputError(str(exc)) from None
        return {"point": _point_json(cov), "conditions": rep.to_json_dict(),
                "ok": rep.all_flags()}

    results = _map_points(points, run, args.jobs)
    return {"results": results}, all(r["ok"] for r in results)


def _cmd_mackey(args) -> tuple[dict, bool]:
    entry = _load_entry(args.algebra)
    ideal = _parse_subspace(entry, args.ideal)
    points = [_parse_point(entry.algebra, p) for p in args.point]

    def run(cov):
        try:
            rep = mackey_report(entry.algebra, ideal, cov)
        except NotClosedError as exc:
            raise InputError(str(exc)) from None
        out = {"point": _point_json(cov), "mackey": rep.to_json_dict(),
               "ok": rep.all_checks()}
        if args.complement:
            comp = _parse_subspace(entry, args.complement)
            witness = semidirect_witness(entry.algebra, ideal, cov, [(args.complement, comp)])
            out["semidirect"] = witness.to_json_dict()
        return out

    results = _map_points(points, run, args.jobs)
    return {"results": results}, all(r["ok"] for r in results)


def _cmd_polarize(args) -> tuple[dict, bool]:
    entry = _load_entry(args.algebra)
    alg = entry.algebra
    points = [_parse_point(alg, p) for p in args.point]
    strategy, chain = "auto", None
    if args.strategy != "auto":
        if not args.strategy.startswith("chain:"):
            raise InputError("strategy must be `auto` or `chain:<file>`")
        strategy = "chain"
        path = args.strategy.split(":", 1)[1]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            chain = []
            for spec in doc["ideals"]:
                if isinstance(spec, list) and all(isinstance(i, int) for i in spec):
                    chain.append(Subspace(alg.dim, [basis_vector(alg.dim, i) for i in spec]))
                else:
                    chain.append(Subspace(alg.dim, [[frac(x) for x in row] for row in spec]))
        except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
            raise InputError(f"bad chain file {path}: {exc}") from None

    pre = exponential_precheck(alg, seed=args.seed)
    if not pre.passed and not args.override_precheck:
        raise InputError(
            "exponential precheck failed; rerun with --override-precheck to force: "
            + json.dumps(pre.to_json_dict(), sort_keys=True)
        )

    def run(cov):
        try:
            trace = pukanszky_polarization(
                alg, cov, strategy=strategy, chain=chain,
                override_precheck=True, precheck_seed=args.seed,
            )
        except StrategyExhausted as exc:
            return {
                "point": _point_json(cov),
                "error": "strategy exhausted",
                "rejected_candidates": [
                    {"step": i, "candidate": d, "reason": r} for i, d, r in exc.rejections
                ],
                "ok": False,
            }
        certs = all(s.certificates_hold() for s in trace.steps)
        ok = certs and trace.conditions.all_flags()
        return {"point": _point_json(cov), "trace": trace.to_json_dict(), "ok": ok}

    results = _map_points(points, run, args.jobs)
    payload = {"precheck": pre.to_json_dict(), "results": results}
    return payload, all(r["ok"] for r in results)


def _cmd_parabolic(args) -> tuple[dict, bool]:
    entry = _load_entry(args.algebra)
    try:
        malg = matrix_lie_algebra(entry.algebra)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    inputs = []
    for text in args.element or ():
        parts = [frac(p.strip()) for p in text.split(",")]
        if len(parts) != malg.dim:
            raise InputError(f"element needs {malg.dim} coordinates")
        inputs.append(tuple(parts))
    for text in args.point or ():
        inputs.append(_parse_point(entry.algebra, text))
    if not inputs:
        raise InputError("parabolic needs --element or --point")

    def run(x):
        try:
            rep = parabolic_report(malg, x)
        except UnsupportedSpectrumError as exc:
            raise InputError(str(exc)) from None
        return {"input": _point_json(x) if isinstance(x, Covector) else [str(c) for c in x],
                "parabolic": rep.to_json_dict(), "ok": rep.all_relations()}

    results = _map_points(inputs, run, args.jobs)
    return {"results": results}, all(r["ok"] for r in results)


def _cmd_classify(args) -> tuple[dict, bool]:
    entry = _load_entry(args.algebra)
    ideal = _parse_subspace(entry, args.ideal)
    points = [_parse_point(entry.algebra, p) for p in args.point]

    def run(cov):
        try:
            kind = classify_little_algebra(entry.algebra, ideal, cov)
            step = abelian_step(entry.algebra, ideal, cov)
        except (NotClosedError, ValueError) as exc:
            raise InputError(str(exc)) from None
        return {
            "point": _point_json(cov),
            "little_algebra": kind.to_json_dict(),
            "abelian_step": step.to_json_dict(),
            "ok": step.dims_match,
        }

    results = _map_points(points, run, args.jobs)
    return {"results": results}, all(r["ok"] for r in results)


def _cmd_record(args) -> tuple[dict, bool]:
    entry = _load_entry(args.algebra)
    alg = entry.algebra
    subs = [_parse_subspace(entry, s) for s in args.sub]
    if not subs:
        raise InputError("record needs at least one --sub")
    points = [_parse_point(alg, p) for p in args.point]

    def run(cov):
        try:
            fiber = point_fiber(alg, subs[-1], cov)
            rec: InducedRecord = None
            spaces = [Subspace.full(alg.dim)] + subs
            rec = InducedRecord(alg, spaces[-2], spaces[-1], fiber)
            for outer_space, outer_sub in zip(reversed(spaces[:-2]), reversed(subs[:-1])):
                rec = InducedRecord(alg, outer_space, outer_sub, rec)
        except (NotClosedError, ValueError) as exc:
            raise InputError(str(exc)) from None
        flattened = stages_flatten(rec)
        verdict = frobenius_check(rec, orbit_record(alg, cov))
        return {
            "point": _point_json(cov),
            "record": rec.to_json_dict(),
            "flattened": flattened.to_json_dict(),
            "induced_dim": induced_dim(rec),
            "frobenius_vs_full_orbit": verdict,
            "ok": induced_dim(rec) == induced_dim(flattened),
        }

    results = _map_points(points, run, args.jobs)
    return {"results": results}, all(r["ok"] for r in results)


_HANDLERS = {
    "catalog": _cmd_catalog,
    "validate": _cmd_validate,
    "orbit": _cmd_orbit,
    "conditions": _cmd_conditions,
    "mackey": _cmd_mackey,
    "polarize": _cmd_polarize,
    "parabolic": _cmd_parabolic,
    "classify": _cmd_classify,
    "record": _cmd_record,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitkit",
        description="Exact coadjoint-orbit analysis for rational Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, points=True):
        p.add_argument("algebra", help="catalog:NAME or a JSON definition file")
        if points:
            p.add_argument("--point", "-p", action="append", default=[],
                           help="covector coordinates, comma-separated rationals (repeatable)")
        p.add_argument("--jobs", type=int, default=1,
                       help="process independent covectors in parallel")
        p.add_argument("--output", "-o", help="write the report to a file instead of stdout")

    p = sub.add_parser("catalog", help="list built-in algebras")
    p.add_argument("--output", "-o")

    p = sub.add_parser("validate", help="check antisymmetry and Jacobi on a definition")
    common(p, points=False)

    p = sub.add_parser("orbit", help="orbit dimension, stabilizer, affine hull")
    common(p)

    p = sub.add_parser("conditions", help="coisotropy/polarization/Pukanszky flags")
    common(p)
    p.add_argument("--sub", required=True, help="subalgebra: declared name, labels, indices, or @file")

    p = sub.add_parser("mackey", help="little group, induction relations, obstruction")
    common(p)
    p.add_argument("--ideal", required=True, help="ideal: declared name, labels, indices, or @file")
    p.add_argument("--complement", help="declared complement to test the semidirect witness")

    p = sub.add_parser("polarize", help="construct a Pukanszky polarization")
    common(p)
    p.add_argument("--strategy", default="auto", help="auto or chain:<file>")
    p.add_argument("--override-precheck", action="store_true",
                   help="run even when the exponential precheck fails")
    p.add_argument("--seed", type=int, default=0, help="seed for the sampled precheck")

    p = sub.add_parser("parabolic", help="Jordan split, grading, parabolic relations")
    common(p)
    p.add_argument("--element", action="append", default=[],
                   help="algebra element coordinates (repeatable)")

    p = sub.add_parser("classify", help="little-algebra descriptor for an abelian ideal")
    common(p)
    p.add_argument("--ideal", required=True)

    p = sub.add_parser("record", help="induced-dimension bookkeeping along a chain")
    common(p)
    p.add_argument("--sub", action="append", default=[],
                   help="subalgebra chain, outermost first (repeatable)")

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    envelope = {"schema": SCHEMA, "command": args.command}
    if getattr(args, "algebra", None):
        envelope["algebra"] = args.algebra
    try:
        if getattr(args, "point", None) == [] and args.command in (
            "orbit", "conditions", "mackey", "polarize", "classify", "record",
        ):
            raise InputError("at least one --point is required")
        payload, ok = handler(args)
        envelope.update(payload)
        envelope["ok"] = ok
        code = 0 if ok else 1
    except InputError as exc:
        envelope["error"] = str(exc)
        envelope["ok"] = False
        code = 2
    text = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    out_path = getattr(args, "output", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
