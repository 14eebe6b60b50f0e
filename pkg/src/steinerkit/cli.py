"""Command-line interface.

Search subcommands write their outputs into a run directory together with
an append-only `manifest.jsonl` recording parameters, input digests,
matrix/instance shape, solver statistics and wall time. Exit status: 0 on
success, 1 on a domain failure (invalid design, parse error, budget), 2 on
usage errors. The environment variable STEINER_NODE_LIMIT provides a
default node budget for all searches.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .designs import Params, admissible_table, derived, design_from_orbits, verify
from .errors import SteinerError
from .exact_cover import count_solutions, solve
from .extension import ExtensionProblem, extend_steiner, extension_instance
from .fileio import (
    format_instance,
    load_design,
    load_group,
    load_instance,
    save_design,
)
from .fixtures import FIXTURE_NAMES, materialize
from .iso import automorphism_group, filter_nonisomorphic
from .kramer_mesner import build_km, km_search, steiner_reduce
from .orbits import orbit_transversal
from .perms import format_permutation


def _digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _env_node_limit() -> int | None:
    raw = os.environ.get("STEINER_NODE_LIMIT")
    return int(raw) if raw else None


def _write_manifest(out_dir: Path, record: dict) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    record = {"version": __version__, **record}
    with (out_dir / "manifest.jsonl").open("a") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")


def cmd_verify(args: argparse.Namespace) -> int:
    design = load_design(args.file, one_based=args.one_based)
    params = Params(args.t, args.k, design.v)
    result = verify(design, params)
    if result.valid:
        print(f"valid, b={design.b}")
        return 0
    print(
        f"invalid: {params.t}-subset {result.witness} covered "
        f"{result.coverage} times",
        file=sys.stderr,
    )
    return 1


def cmd_derive(args: argparse.Namespace) -> int:
    design = load_design(args.file, one_based=args.one_based)
    out = derived(design, args.point)
    save_design(out, args.out)
    print(f"derived design: v={out.v} b={out.b} -> {args.out}")
    return 0


def cmd_orbit_design(args: argparse.Namespace) -> int:
    group = load_group(args.group, one_based=args.one_based)
    base = load_design(args.base, one_based=args.one_based)
    design = design_from_orbits(group, base.blocks, base.v)
    save_design(design, args.out)
    print(f"expanded design: v={design.v} b={design.b} -> {args.out}")
    return 0


def cmd_orbits(args: argparse.Namespace) -> int:
    group = load_group(args.group, one_based=args.one_based)
    trans = orbit_transversal(group, args.n, args.s)
    for orb in trans.orbits:
        print(" ".join(str(x) for x in orb.representative), orb.size)
    print(f"# {len(trans.orbits)} orbits, sizes sum {sum(trans.sizes)}")
    return 0


def cmd_admissible(args: argparse.Namespace) -> int:
    k_range = None
    if args.kmin is not None or args.kmax is not None:
        k_range = range(args.kmin or args.t + 1, (args.kmax or args.vmax) + 1)
    for report in admissible_table(args.t, args.vmax, k_range):
        p = report.params
        print(p.v, p.k, report.block_count)
    return 0


def cmd_km(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    group = load_group(args.group, one_based=args.one_based)
    node_limit = args.node_limit if args.node_limit is not None else _env_node_limit()
    matrix = build_km(group, args.v, args.t, args.k)
    inst, _ = steiner_reduce(matrix)
    designs, stats = km_search(
        group, args.v, args.t, args.k,
        max_solutions=args.max_solutions, node_limit=node_limit,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, d in enumerate(designs):
        save_design(d, out / f"solution-{i:04d}.blocks")
    _write_manifest(out, {
        "subcommand": "km",
        "parameters": {
            "group": str(args.group), "v": args.v, "t": args.t, "k": args.k,
            "max_solutions": args.max_solutions, "node_limit": node_limit,
        },
        "inputs": {str(args.group): _digest(args.group)},
        "matrix_shape": list(matrix.shape),
        "options_discarded": matrix.shape[1] - len(inst.options),
        "instance": {"items": inst.item_count, "options": len(inst.options)},
        "stats": {"nodes": stats.nodes, "solutions": stats.solutions,
                  "completed": stats.completed},
        "wall_time": time.perf_counter() - t0,
    })
    print(f"{len(designs)} design(s) -> {out} "
          f"(nodes={stats.nodes}, completed={stats.completed})")
    return 0


def _extend_one(design_path: str, args_dict: dict) -> dict:
    t0 = time.perf_counter()
    design = load_design(design_path, one_based=args_dict["one_based"])
    group = load_group(args_dict["group"], one_based=args_dict["one_based"])
    problem = ExtensionProblem.create(design, group, args_dict["t"], args_dict["k"])
    inst, reduction = extension_instance(problem)
    out = Path(args_dict["out"])
    if args_dict["multi"]:
        out = out / Path(design_path).stem
    out.mkdir(parents=True, exist_ok=True)
    if args_dict["emit_instance"]:
        target = Path(args_dict["emit_instance"])
        if args_dict["multi"]:
            target = out / target.name
        target.write_text(format_instance(inst))
    solved = not args_dict["instance_only"]
    if solved:
        designs, stats = extend_steiner(
            problem,
            max_solutions=args_dict["max"],
            node_limit=args_dict["nodes"],
        )
        for i, d in enumerate(designs):
            save_design(d, out / f"extension-{i:04d}.blocks")
        stats_d = {"nodes": stats.nodes, "solutions": stats.solutions,
                   "completed": stats.completed}
    else:
        stats_d = None
    record = {
        "subcommand": "extend",
        "parameters": {
            "design": design_path, "group": args_dict["group"],
            "t": args_dict["t"], "k": args_dict["k"],
            "max_solutions": args_dict["max"], "node_limit": args_dict["nodes"],
        },
        "inputs": {
            design_path: _digest(design_path),
            args_dict["group"]: _digest(args_dict["group"]),
        },
        "instance": {
            "items": inst.item_count,
            "options": len(inst.options),
            "option_orbits_pre_reduction": len(reduction.options.orbits),
        },
        "stats": stats_d,
        "wall_time": time.perf_counter() - t0,
    }
    _write_manifest(out, record)
    return record


def cmd_extend(args: argparse.Namespace) -> int:
    node_limit = args.nodes if args.nodes is not None else _env_node_limit()
    args_dict = {
        "group": args.group, "t": args.t, "k": args.k, "max": args.max,
        "nodes": node_limit, "emit_instance": args.emit_instance,
        "one_based": args.one_based, "out": args.out,
        "multi": len(args.design) > 1, "instance_only": args.instance_only,
    }
    if len(args.design) > 1 and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(
                pool.map(_extend_one, args.design, [args_dict] * len(args.design))
            )
    else:
        records = [_extend_one(d, args_dict) for d in args.design]
    for rec in records:
        inst = rec["instance"]
        line = f"{rec['parameters']['design']}: {inst['items']} items, {inst['options']} options"
        if rec["stats"]:
            line += (f", {rec['stats']['solutions']} solution(s), "
                     f"completed={rec['stats']['completed']}")
        print(line)
    return 0


def cmd_xc(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    inst = load_instance(args.file)
    node_limit = args.nodes if args.nodes is not None else _env_node_limit()
    if args.count_only:
        stats = count_solutions(inst, node_limit=node_limit)
        solutions = None
    else:
        sols, stats = solve(inst, max_solutions=args.max, node_limit=node_limit)
        solutions = [list(s.option_indices) for s in sols]
    record = {
        "subcommand": "xc",
        "parameters": {"file": str(args.file), "max": args.max,
                       "node_limit": node_limit, "count_only": args.count_only},
        "inputs": {str(args.file): _digest(args.file)},
        "instance": {"items": inst.item_count, "options": len(inst.options)},
        "stats": {"nodes": stats.nodes, "solutions": stats.solutions,
                  "completed": stats.completed},
        "wall_time": time.perf_counter() - t0,
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if solutions is not None:
            (out / "solutions.json").write_text(json.dumps(solutions))
        _write_manifest(out, record)
    else:
        print(json.dumps({"version": __version__, **record}, sort_keys=True))
    if solutions is not None and not args.out:
        for s in solutions:
            print("solution:", " ".join(map(str, s)))
    return 0


def cmd_iso_filter(args: argparse.Namespace) -> int:
    designs = [load_design(f, one_based=args.one_based) for f in args.files]
    reps = filter_nonisomorphic(designs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, d in enumerate(reps):
        save_design(d, out / f"rep-{i:04d}.blocks")
    _write_manifest(out, {
        "subcommand": "iso-filter",
        "parameters": {"files": [str(f) for f in args.files]},
        "inputs": {str(f): _digest(f) for f in args.files},
        "stats": {"designs": len(designs), "classes": len(reps)},
        "wall_time": None,
    })
    print(f"{len(designs)} design(s), {len(reps)} isomorphism class(es) -> {out}")
    return 0


def cmd_aut(args: argparse.Namespace) -> int:
    design = load_design(args.file, one_based=args.one_based)
    group, order = automorphism_group(design, cap=args.cap)
    for gen in group.generators:
        print(format_permutation(gen))
    print(f"order {order}")
    return 0


def cmd_fixtures(args: argparse.Namespace) -> int:
    try:
        written = materialize(args.name, args.out)
    except KeyError as e:
        print(e.args[0], file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


def cmd_export_gap(args: argparse.Namespace) -> int:
    # minimal GAP-readable export: a record with point count and 1-based
    # blocks, loadable without the DESIGN package
    design = load_design(args.file, one_based=args.one_based)
    blocks = ", ".join(
        "[" + ",".join(str(x + 1) for x in blk) + "]" for blk in design.blocks
    )
    Path(args.out).write_text(
        f"# exported block design\nrec( v := {design.v}, blocks := [ {blocks} ] );\n"
    )
    print(f"GAP record -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="steinerkit",
        description="Steiner designs from prescribed automorphism groups",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_one_based(p: argparse.ArgumentParser) -> None:
        p.add_argument("--one-based", action="store_true",
                       help="treat input files as 1-based")

    p = sub.add_parser("verify", help="check a design is an S(t,k,v)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("file")
    add_one_based(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derive", help="derived design at a point")
    p.add_argument("--point", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("file")
    add_one_based(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("orbit-design", help="expand base blocks by a group")
    p.add_argument("--group", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--out", required=True)
    add_one_based(p)
    p.set_defaults(func=cmd_orbit_design)

    p = sub.add_parser("orbits", help="orbit transversal of s-subsets")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    add_one_based(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("admissible", help="admissible parameter table")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--vmax", type=int, required=True)
    p.add_argument("--kmin", type=int)
    p.add_argument("--kmax", type=int)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("km", help="Kramer-Mesner search")
    p.add_argument("--group", required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-solutions", type=int)
    p.add_argument("--node-limit", type=int)
    p.add_argument("--out", required=True)
    add_one_based(p)
    p.set_defaults(func=cmd_km)

    p = sub.add_parser("extend", help="extend S(t,k,v) to S(t+1,k+1,v+1)")
    p.add_argument("--design", action="append", required=True,
                   help="base design file (repeatable)")
    p.add_argument("--group", required=True)
    p.add_argument("--t", type=int, required=True, help="strength of the base design")
    p.add_argument("--k", type=int, required=True, help="block size of the base design")
    p.add_argument("--max", type=int)
    p.add_argument("--nodes", type=int)
    p.add_argument("--emit-instance", help="also write the exact cover instance")
    p.add_argument("--instance-only", action="store_true",
                   help="build and export the instance without solving")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    add_one_based(p)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("xc", help="solve an exact cover instance")
    p.add_argument("file")
    p.add_argument("--max", type=int)
    p.add_argument("--nodes", type=int)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_xc)

    p = sub.add_parser("iso-filter", help="non-isomorphic representatives")
    p.add_argument("files", nargs="+")
    p.add_argument("--out", required=True)
    add_one_based(p)
    p.set_defaults(func=cmd_iso_filter)

    p = sub.add_parser("aut", help="automorphism group of a design")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=5_000_000)
    add_one_based(p)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("fixtures", help="materialize bundled constructions")
    p.add_argument("name", choices=FIXTURE_NAMES)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("export-gap", help="export a design as a GAP record")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    add_one_based(p)
    p.set_defaults(func=cmd_export_gap)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SteinerError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
