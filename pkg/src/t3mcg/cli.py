"""Command line front end.

Subcommands: eval, decompose, mesh {build,validate,curves,export}, verify,
table {derive,show}.  Structured output under --json is deterministic for
fixed flags and seed.  Exit codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import words as W
from . import rep3
from .mesh import build_surface, export_off, load_off_counts, validate_surface
from .mesh.curves import plane_section
from .mesh.homology import build_homology
from .rep6 import GeneratorTable6, derive_table, word_image6
from .verifier import run_suite


def even_resolution(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"resolution must be an integer, got {text!r}")
    if n % 2 != 0 or n < 8:
        raise argparse.ArgumentTypeError(f"resolution must be even and >= 8, got {n}")
    return n


def default_table_path(resolution: int) -> str:
    return f"t3mcg-table-n{resolution}.json"


def print_matrix(m):
    width = max(len(str(x)) for row in m for x in row)
    for row in m:
        print(" ".join(f"{x:>{width}}" for x in row))


def load_or_derive_table(args, derive_if_missing: bool):
    path = args.table or default_table_path(args.resolution)
    if os.path.exists(path):
        table = GeneratorTable6.load(path)
        if table.resolution != args.resolution:
            print(
                f"error: table {path} was derived at resolution {table.resolution}, "
                f"not {args.resolution}",
                file=sys.stderr,
            )
            raise SystemExit(2)
        return table, None
    if not derive_if_missing:
        print(
            f"error: no generator table at {path}; run `t3mcg table derive` first",
            file=sys.stderr,
        )
        raise SystemExit(2)
    mesh = build_surface(args.resolution)
    h = build_homology(mesh)
    table = derive_table(h)
    table.save(path)
    return table, h


def cmd_eval(args) -> int:
    try:
        word = W.parse_word(args.word)
    except W.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.level == 3:
        m = rep3.word_image3(word)
    else:
        table, _ = load_or_derive_table(args, derive_if_missing=False)
        m = word_image6(word, table)
    if args.json:
        print(json.dumps([list(r) for r in m]))
    else:
        print_matrix(m)
    return 0


def cmd_decompose(args) -> int:
    text = sys.stdin.read() if args.matrix == "-" else args.matrix
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: matrix is not valid JSON: {exc}", file=sys.stderr)
        return 2
    if isinstance(data, list) and len(data) == 9 and all(isinstance(x, int) for x in data):
        data = [data[0:3], data[3:6], data[6:9]]
    try:
        m = rep3.mat3(data)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        word = rep3.decompose_sl3(m)
    except rep3.DeterminantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if rep3.word_image3(word) != m:
        print("error: decomposition failed its own round-trip", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps({"word": W.render(word), "letters": len(word)}))
    else:
        print(W.render(word))
    return 0


def _mesh_report(args):
    mesh = build_surface(args.resolution)
    return mesh, validate_surface(mesh)


def cmd_mesh_build(args) -> int:
    _, report = _mesh_report(args)
    print(json.dumps(report, sort_keys=True) if args.json else report)
    return 0


def cmd_mesh_validate(args) -> int:
    _, report = _mesh_report(args)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for k, v in sorted(report.items()):
            print(f"{k}: {v}")
    ok = (
        report["closed"]
        and report["orientable"]
        and report["connected"]
        and report["euler_characteristic"] == -4
    )
    return 0 if ok else 1


def cmd_mesh_curves(args) -> int:
    mesh = build_surface(args.resolution)
    refs = []
    names = []
    for axis in (1, 2, 3):
        refs.append(plane_section(mesh, axis, Fraction(1, 2)))
        names.append(f"A{axis}")
    for axis in (1, 2, 3):
        refs.append(plane_section(mesh, axis, Fraction(0)))
        names.append(f"B{axis}")
    from .mesh.curves import walk_pairing, walk_steps, step_positions

    out = {"resolution": args.resolution, "curves": {}, "pairwise": {}}
    for name, sec in zip(names, refs):
        loops = []
        for loop in sec.loops:
            points = []
            for step in loop.steps:
                p_in, _ = step_positions(mesh, step)
                points.append([float(c % 1) for c in p_in])
            loops.append({"displacement": list(loop.displacement), "points": points})
        out["curves"][name] = loops
    for i in range(6):
        for j in range(i + 1, 6):
            l1 = refs[i].loops[0]
            res = walk_pairing(walk_steps(l1), l1.orientation_sign, refs[j])
            alg, geo = res.get(0, (0, 0))
            out["pairwise"][f"{names[i]},{names[j]}"] = {"algebraic": alg, "geometric": geo}
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        for name in names:
            loops = out["curves"][name]
            print(f"{name}: {len(loops)} loop(s), displacement {loops[0]['displacement']}")
        for key, val in sorted(out["pairwise"].items()):
            print(f"{key}: algebraic {val['algebraic']}, geometric {val['geometric']}")
    return 0


def cmd_mesh_export(args) -> int:
    mesh = build_surface(args.resolution)
    export_off(mesh, args.out)
    report = load_off_counts(args.out)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"wrote {args.out}: {report}")
    return 0


def cmd_verify(args) -> int:
    table, h = load_or_derive_table(args, derive_if_missing=True)
    if h is None:
        mesh = build_surface(args.resolution)
        h = build_homology(mesh)
    report = run_suite(table, h, seed=args.seed)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        for line in report.summary_lines():
            print(line)
        print(f"result: {'all checks passed' if report.passed else 'FAILURES PRESENT'}")
    return 0 if report.passed else 1


def cmd_table_derive(args) -> int:
    mesh = build_surface(args.resolution)
    h = build_homology(mesh)
    table = derive_table(h)
    path = args.table or default_table_path(args.resolution)
    table.save(path)
    if args.json:
        print(json.dumps({"path": path, "handedness": table.handedness}, sort_keys=True))
    else:
        print(f"wrote {path} (handedness: {table.handedness})")
    return 0


def cmd_table_show(args) -> int:
    path = args.table or default_table_path(args.resolution)
    if not os.path.exists(path):
        print(f"error: no table at {path}", file=sys.stderr)
        return 2
    table = GeneratorTable6.load(path)
    if args.json:
        print(json.dumps(table.to_json(), sort_keys=True))
    else:
        print(f"resolution {table.resolution}, handedness {table.handedness}")
        for tok in sorted(table.matrices):
            print(f"\n{tok}:")
            print_matrix(table.matrices[tok])
            note = table.provenance.get(tok)
            if note:
                print(f"  ({note})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="t3mcg",
        description="Words, integer representations and the PL surface oracle "
        "for the mapping class group of the genus-3 splitting of the 3-torus.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument(
        "--resolution", type=even_resolution, default=32, help="grid resolution (even, >= 8)"
    )
    parser.add_argument("--json", action="store_true", help="structured JSON output")
    parser.add_argument("--table", default=None, help="path to a persisted generator table")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a word in a representation")
    p.add_argument("--level", type=int, choices=(3, 6), default=3)
    p.add_argument("word")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", help="write an integer matrix as a shear word")
    p.add_argument("matrix", help="JSON 3x3 matrix (row-major), or - for stdin")
    p.set_defaults(func=cmd_decompose)

    mesh = sub.add_parser("mesh", help="surface reconstruction commands")
    msub = mesh.add_subparsers(dest="mesh_command", required=True)
    p = msub.add_parser("build", help="build the surface and print counts")
    p.set_defaults(func=cmd_mesh_build)
    p = msub.add_parser("validate", help="build and validate the surface")
    p.set_defaults(func=cmd_mesh_validate)
    p = msub.add_parser("curves", help="extract the six distinguished curves")
    p.set_defaults(func=cmd_mesh_curves)
    p = msub.add_parser("export", help="write the surface as an OFF file")
    p.add_argument("out")
    p.set_defaults(func=cmd_mesh_export)

    p = sub.add_parser("verify", help="run the full verification suite")
    p.set_defaults(func=cmd_verify)

    table = sub.add_parser("table", help="generator table derivation and display")
    tsub = table.add_subparsers(dest="table_command", required=True)
    p = tsub.add_parser("derive", help="derive and persist the generator table")
    p.set_defaults(func=cmd_table_derive)
    p = tsub.add_parser("show", help="display a persisted generator table")
    p.set_defaults(func=cmd_table_show)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        raise
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
