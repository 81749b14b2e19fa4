"""Command-line front end: ``matroid-lrc {analyze,construct,lattice,bounds}``.

All commands print deterministic, key-sorted JSON unless ``--format`` asks
for DOT or a text rendering of the same data. Exit codes: 0 success,
2 validation error, 3 search or representation failure, 4 parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import lrc
from .codes import EXHAUSTIVE_LIMIT, LinearCode
from .construct import (
    RepairSetSystem,
    construct_matroid,
    gammoid_graph,
    random_lrc,
    represent,
    tamo_barg,
)
from .errors import GroundTooLarge, LRCError, ParseError, SearchFailure, ValidationError
from .gf import FieldSpec, field_new
from .linalg import Matrix
from .zlattice import CyclicFlatLattice, cyclic_flats

log = logging.getLogger("matroid_lrc")

EXIT_OK, EXIT_VALIDATION, EXIT_SEARCH, EXIT_PARSE = 0, 2, 3, 4
LATTICE_LIMIT = 24


def _threads() -> int:
    # accepted for interface compatibility; every command runs single-threaded
    raw = os.environ.get("MATROID_LRC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ParseError(f"MATROID_LRC_THREADS must be an integer, got {raw!r}")


def parse_field(text: str) -> FieldSpec:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"--field expects p or p,m, got {text!r}")
    if len(parts) not in (1, 2):
        raise ParseError(f"--field expects p or p,m, got {text!r}")
    return field_new(*parts)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def load_matrix(path: str, field: FieldSpec | None = None) -> Matrix:
    """Matrix JSON; a file without a "field" entry takes the one from --field."""
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected a JSON object")
    if "field" not in obj:
        if field is None:
            raise ParseError(f"{path} has no field; pass --field")
        obj = dict(obj, field=field.to_json())
    return Matrix.from_json(obj)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _text_table(obj, indent: int = 0) -> str:
    """Plain rendering of a JSON report: one key per line, nested by indent."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value and not _flat_list(value):
                lines.append(f"{pad}{key}:")
                lines.append(_text_table(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value, ensure_ascii=False)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and not _flat_list(item):
                lines.append(f"{pad}-")
                lines.append(_text_table(item, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(item, ensure_ascii=False)}")
    return "\n".join(line for line in lines if line)


def _flat_list(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _render(report: dict, fmt: str, out: str | None):
    if fmt == "text":
        _emit(_text_table(report) + "\n", out)
    else:
        _emit(dumps(report), out)


# --- analyze ------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    G = load_matrix(args.matrix, args.field)
    code = LinearCode(G)
    order = {e: i for i, e in enumerate(G.labels)}
    report: dict = {"input": args.matrix, "field": G.spec.to_json(), "warnings": []}
    n, k = code.n, code.k
    if k == 0:
        report["params"] = {"n": n, "k": 0, "d": None}
        report["diagnostic"] = "the code is zero; nothing to analyze"
        _render(report, args.format, args.out)
        return EXIT_OK
    n, k, d = code.params()
    report["params"] = {"n": n, "k": k, "d": d}
    report["non_degenerate"] = code.non_degenerate()
    if n <= EXHAUSTIVE_LIMIT:
        report["information_sets"] = [sorted(X, key=order.__getitem__) for X in code.information_sets()]
    else:
        report["warnings"].append(f"information sets skipped for n > {EXHAUSTIVE_LIMIT}")
    if not report["non_degenerate"]:
        report["diagnostic"] = "degenerate code (d = 1 or a zero coordinate); locality analysis stopped"
        _render(report, args.format, args.out)
        return EXIT_VALIDATION if args.strict else EXIT_OK
    try:
        Z = cyclic_flats(code.matroid)
        report["lattice"] = Z.to_json()
    except GroundTooLarge as exc:
        report["warnings"].append(f"lattice skipped: {exc}")
        log.warning("lattice skipped: %s", exc)
        if args.strict:
            _render(report, args.format, args.out)
            return EXIT_VALIDATION
    if args.r is not None and args.delta is not None:
        loc = lrc.analyze_locality(code, args.r, args.delta, args.t)
        report["locality"] = loc.to_json(order)
        verdict = lrc.classify_optimality(n, k, d, args.r, args.delta, args.t)
        report["bounds"] = verdict.to_json()
    _render(report, args.format, args.out)
    return EXIT_OK


# --- construct ------------------------------------------------------------------------------


def _write_outputs(out: str | None, files: dict[str, str]) -> list[str]:
    if not out:
        return []
    folder = Path(out)
    folder.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in sorted(files.items()):
        (folder / name).write_text(text, encoding="utf-8")
        written.append(str(folder / name))
    return written


def _locality_from_sets(code: LinearCode, sets, r: int, delta: int) -> dict:
    # plain locality: the first listed set containing x serves as its repair set
    assignment = {x: next(frozenset(S) for S in sets if x in S) for x in code.labels}
    verdict = lrc.verify_locality(code, assignment, r, delta)
    order = {e: i for i, e in enumerate(code.labels)}
    return verdict.to_json(order)


def cmd_construct_cyclic_flats(args) -> int:
    system = RepairSetSystem.from_json(_load_json(args.system))
    built = construct_matroid(system)
    graph = gammoid_graph(system)
    if args.field is None:
        raise ParseError("construct cyclic-flats needs --field")
    rep = represent(system, args.field, seed=args.seed, attempts=args.attempts, target=built.matroid)
    log.debug("representation verified on attempt %d", rep.attempt)
    code = rep.code
    p = built.params
    locality = _locality_from_sets(code, system.sets, p["r"], p["delta"])
    summary = {
        "command": "construct cyclic-flats", "seed": args.seed, "attempt": rep.attempt,
        "params": p, "verified": True, "locality_ok": locality["ok"],
        "gammoid": {"E": len(graph.E), "H": len(graph.H), "T": len(graph.T)},
    }
    files = {
        "matrix.json": dumps(code.to_json()),
        "locality.json": dumps(locality),
        "gammoid.dot": graph.to_dot(),
        "lattice.dot": built.lattice.to_dot(),
    }
    summary["files"] = _write_outputs(args.out, files)
    if not args.out:
        summary["matrix"] = code.to_json()
        summary["locality"] = locality
    sys.stdout.write(dumps(summary))
    return EXIT_OK if locality["ok"] else EXIT_VALIDATION


def cmd_construct_tamo_barg(args) -> int:
    built = tamo_barg(args.q, args.r, args.delta, args.k)
    code = built.code
    n, k, d = code.params()
    locality = _locality_from_sets(code, built.cosets, args.r, args.delta)
    design = built.params["d_design"]
    verified = k == args.k and d == design and locality["ok"]
    summary = {"command": "construct tamo-barg", "params": {"n": n, "k": k, "d": d, "r": args.r,
               "delta": args.delta}, "d_design": design, "g": built.g, "subgroup": built.subgroup,
               "cosets": built.cosets, "verified": verified}
    files = {"matrix.json": dumps(code.to_json()), "locality.json": dumps(locality)}
    summary["files"] = _write_outputs(args.out, files)
    if not args.out:
        summary["matrix"] = code.to_json()
        summary["locality"] = locality
    sys.stdout.write(dumps(summary))
    return EXIT_OK if verified else EXIT_SEARCH


def cmd_construct_random(args) -> int:
    if args.field is None:
        raise ParseError("construct random needs --field")
    built = random_lrc(args.n, args.k, args.r, args.delta, args.field, seed=args.seed)
    code = built.code
    locality = _locality_from_sets(code, built.locality_sets, args.r, args.delta)
    report = built.report()
    verified = built.event_B and built.meets_target and locality["ok"]
    summary = {"command": "construct random", "field": args.field.to_json(), "report": report,
               "verified": verified}
    files = {"matrix.json": dumps(code.to_json()), "locality.json": dumps(locality),
             "events.json": dumps(report)}
    summary["files"] = _write_outputs(args.out, files)
    if not args.out:
        summary["matrix"] = code.to_json()
        summary["locality"] = locality
    sys.stdout.write(dumps(summary))
    return EXIT_OK if verified else EXIT_SEARCH


# --- lattice ------------------------------------------------------------------------------


def cmd_lattice(args) -> int:
    obj = _load_json(args.input)
    if isinstance(obj, dict) and "flats" in obj:
        Z = CyclicFlatLattice.from_json(obj)
    else:
        G = load_matrix(args.input, args.field)
        if G.cols > LATTICE_LIMIT:
            raise GroundTooLarge(f"lattice enumeration is limited to {LATTICE_LIMIT} elements, got {G.cols}")
        Z = cyclic_flats(LinearCode(G).matroid)
    if args.format == "json":
        _emit(dumps(Z.to_json()), args.out)
    elif args.format == "text":
        _emit(Z.to_text(), args.out)
    else:
        _emit(Z.to_dot(), args.out)
    return EXIT_OK


# --- bounds ---------------------------------------------------------------------------------


def cmd_bounds(args) -> int:
    n, k, r, delta, t = args.n, args.k, args.r, args.delta, args.t
    rows = [
        {"name": "singleton", "formula": "n - k + 1", "value": lrc.bound_singleton(n, k)},
        {"name": "gopalan", "formula": "n - k + 1 - (ceil(k/r) - 1)", "value": lrc.bound_gopalan(n, k, r)},
        {"name": "prakash", "formula": "n - k + 1 - (ceil(k/r) - 1)(delta - 1)",
         "value": lrc.bound_prakash(n, k, r, delta)},
    ]
    if args.t_given:
        rows.append({"name": "wang", "formula": "n - k + 1 - (ceil((t(k-1)+1) / (t(r-1)+1)) - 1)",
                     "value": lrc.bound_wang(n, k, r, t)})
        if r >= 2:
            rows.append({"name": "tamo16", "formula": "n - k + 1 - sum_{i=1..t} floor((k-1)/r^i)",
                         "value": lrc.bound_tamo(n, k, r, t)})
    rows.append({"name": "polymatroid", "formula": "n - k + 1 - (ceil((t(k-1)+1) / (t(r-1)+1)) - 1)(delta - 1)",
                 "value": lrc.bound_polymatroid(n, k, r, delta, t)})
    report = {"params": {"n": n, "k": k, "r": r, "delta": delta, "t": t},
              "in_P": lrc.in_region_p(n, k, r, delta), "bounds": rows}
    if args.d is not None:
        report["verdict"] = lrc.classify_optimality(n, k, args.d, r, delta, t).to_json()
        report["cadambe"] = lrc.bound_cadambe(n, k, args.d, r).to_json()
    _render(report, args.format, args.out)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=parse_field, default=None, help="field order as p or p,m")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--attempts", type=int, default=10)
    common.add_argument("--out", default=None, help="output file (analyze, lattice, bounds) or directory (construct)")
    common.add_argument("--format", choices=["json", "dot", "text"], default="json")
    common.add_argument("--strict", action="store_true", help="treat skipped steps as errors")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="matroid-lrc", description="Matroid tools for locally repairable codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="parameters, lattice, locality and bounds of a code")
    p.add_argument("matrix")
    p.add_argument("--r", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="build an LRC")
    csub = p.add_subparsers(dest="method", required=True)
    c = csub.add_parser("cyclic-flats", parents=[common], help="from a repair-set system JSON")
    c.add_argument("system")
    c.set_defaults(func=cmd_construct_cyclic_flats)
    c = csub.add_parser("tamo-barg", parents=[common], help="evaluation code on additive cosets")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--delta", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_construct_tamo_barg)
    c = csub.add_parser("random", parents=[common], help="random code with locality blocks")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--delta", type=int, required=True)
    c.set_defaults(func=cmd_construct_random)

    p = sub.add_parser("lattice", parents=[common], help="cyclic-flat lattice of a matrix or lattice JSON")
    p.add_argument("input")
    p.set_defaults(func=cmd_lattice, format="dot")

    p = sub.add_parser("bounds", parents=[common], help="tabulate Singleton-type bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--d", type=int, default=None, help="also classify a code with this distance")
    p.set_defaults(func=cmd_bounds)
    return parser


def _error(exc: Exception):
    sys.stderr.write(f"error: {exc}\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.command == "bounds":
        args.t_given = args.t is not None
        if args.t is None:
            args.t = 1
    try:
        _threads()
        return args.func(args)
    except ParseError as exc:
        _error(exc)
        return EXIT_PARSE
    except ValidationError as exc:
        _error(exc)
        return EXIT_VALIDATION
    except SearchFailure as exc:
        _error(exc)
        return EXIT_SEARCH
    except LRCError as exc:
        _error(exc)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
