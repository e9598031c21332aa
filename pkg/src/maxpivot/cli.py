"""Command-line interface.

Exit status: 0 on success, 1 when an operation is not applicable (or a
verification property fails), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import geneassembly as ga
from .errors import InputError, MathError
from .f2linalg import kernel
from .graphio import (
    emit_dot,
    family_to_json,
    format_family,
    format_set,
    graph_to_json,
    orbit_to_json,
    parse_graph,
    parse_set,
    parse_setsystem,
    serialize_graph,
    subspace_to_json,
)
from .orbit import contraction_dag, dual_orbit, pivot_orbit
from .pivot import contraction, dual_pivot, pivot
from .setsystem import delta_matroid, maximal_family, minimal_family, reconstruct_graph
from .suites import run_all

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from None


def _graph(args):
    return parse_graph(_read(args.graph), name=args.graph).graph


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit_graph(g, fmt: str) -> str:
    if fmt == "json":
        return _dump(graph_to_json(g))
    return serialize_graph(g)


def _emit_family(m, fmt: str) -> str:
    if fmt == "json":
        return _dump(family_to_json(m))
    return format_family(m) + "\n"


def _emit_orbit(orbit, fmt: str, name: str) -> str:
    if fmt == "json":
        return _dump(orbit_to_json(orbit))
    if fmt == "dot":
        return emit_dot(orbit, name)
    lines = []
    for i, g in enumerate(orbit.nodes):
        lines.append(f"node {i}")
        lines += ["  " + line for line in serialize_graph(g).splitlines()]
    for e in orbit.edges:
        lines.append(f"move {e.src} -> {e.dst} {e.kind} {format_set(e.move)}")
    return "\n".join(lines) + "\n"


def cmd_pivot(args):
    g = _graph(args)
    return _emit_graph(pivot(g, parse_set(args.set)), args.format)


def cmd_dual_pivot(args):
    g = _graph(args)
    return _emit_graph(dual_pivot(g, parse_set(args.set)), args.format)


def cmd_contract(args):
    g = _graph(args)
    return _emit_graph(contraction(g, parse_set(args.set)), args.format)


def cmd_orbit(args):
    return _emit_orbit(pivot_orbit(_graph(args)), args.format, "pivot orbit")


def cmd_dual_orbit(args):
    return _emit_orbit(dual_orbit(_graph(args)), args.format, "dual orbit")


def cmd_contraction_dag(args):
    return _emit_orbit(contraction_dag(_graph(args)), args.format, "contractions")


def cmd_delta_matroid(args):
    return _emit_family(delta_matroid(_graph(args)), args.format)


def cmd_maximal(args):
    return _emit_family(maximal_family(_graph(args)), args.format)


def cmd_minimal(args):
    return _emit_family(minimal_family(_graph(args)), args.format)


def cmd_kernel(args):
    sub = kernel(_graph(args))
    if args.format == "json":
        return _dump(subspace_to_json(sub))
    basis = " | ".join(format_set(s) for s in sub.basis)
    return f"dimension {sub.dimension}\nbasis {basis}\n"


def cmd_complete_contractions(args):
    strategies = ga.complete_contractions(_graph(args), limit=args.limit)
    if args.format == "json":
        return _dump([
            {"steps": [str(r) for r in s.steps], "gnrdom": sorted(s.gnrdom)} for s in strategies
        ])
    return "".join(f"{s}  gnrdom={format_set(sorted(s.gnrdom))}\n" for s in strategies)


def cmd_overlap(args):
    return _emit_graph(ga.overlap_graph(ga.parse_legal_string(args.string)), args.format)


def cmd_reduce(args):
    u = ga.parse_legal_string(args.string)
    for text in args.rule:
        try:
            rule = ga.parse_string_rule(text)
        except ValueError as err:
            raise InputError(str(err)) from None
        u = ga.apply_string_rule(u, rule)
    if args.format == "json":
        return _dump({"string": str(u)})
    return (str(u) or "λ") + "\n"


def cmd_reconstruct(args):
    return _emit_graph(reconstruct_graph(parse_setsystem(_read(args.system))), args.format)


def cmd_verify(args):
    results = run_all(max_n=args.max_n, seed=args.seed, strings=args.strings)
    ok = all(r.passed for r in results)
    text = "".join(r.line() + "\n" for r in results)
    text += ("all properties passed" if ok else "some properties FAILED") + "\n"
    return text, (EXIT_OK if ok else EXIT_MATH)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxpivot", description="Pivots, dual pivots and maximal contractions on graphs over F2.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help, graph=True, formats=("text", "json")):
        p = sub.add_parser(name, help=help)
        if graph:
            p.add_argument("--graph", required=True, help="graph file, or - for stdin")
        p.add_argument("--format", choices=formats, default="text")
        p.set_defaults(func=func)
        return p

    add("pivot", cmd_pivot, "pivot on a vertex set").add_argument("--set", required=True, help="comma-separated labels")
    add("dual-pivot", cmd_dual_pivot, "dual pivot on a vertex set").add_argument("--set", required=True)
    add("contract", cmd_contract, "pivot on a set and delete it").add_argument("--set", required=True)
    add("orbit", cmd_orbit, "orbit under elementary pivots", formats=("text", "json", "dot"))
    add("dual-orbit", cmd_dual_orbit, "orbit under elementary dual pivots", formats=("text", "json", "dot"))
    add("contraction-dag", cmd_contraction_dag, "graphs reachable by elementary contractions", formats=("text", "json", "dot"))
    add("delta-matroid", cmd_delta_matroid, "all sets with det 1")
    add("maximal-pivots", cmd_maximal, "inclusion-maximal sets with det 1")
    add("minimal-pivots", cmd_minimal, "elementary pivot sets")
    add("kernel", cmd_kernel, "kernel over F2")
    add("complete-contractions", cmd_complete_contractions, "complete contraction strategies").add_argument(
        "--limit", type=int, default=1000)
    add("overlap", cmd_overlap, "overlap graph of a legal string", graph=False).add_argument("--string", required=True)
    p = add("reduce", cmd_reduce, "apply string rules (snr:x, spr:x', sdr:x,y)", graph=False)
    p.add_argument("--string", required=True)
    p.add_argument("--rule", action="append", default=[])
    add("reconstruct", cmd_reconstruct, "graph from its delta matroid", graph=False).add_argument(
        "--system", required=True, help="set-system file (text or JSON), or - for stdin")
    p = add("verify", cmd_verify, "run the exhaustive property suites", graph=False)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strings", type=int, default=1000)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except MathError as err:
        print(f"error: {err}", file=stderr)
        return EXIT_MATH
    except (InputError, ValueError) as err:
        print(f"error: {err}", file=stderr)
        return EXIT_INPUT
    status = EXIT_OK
    if isinstance(result, tuple):
        result, status = result
    stdout.write(result)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
