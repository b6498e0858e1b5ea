"""Command-line interface.

Exit codes: 0 success or predicate true, 1 predicate false, 2 input error,
3 budget exceeded, 4 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from .errors import BudgetExceeded, InternalValidationFailure, KGraphError
from .extended import build_extended, quotient_graph, receiving_pattern_check
from .families import (
    Kind,
    family_kind_check,
    invariant_to_t,
    t_to_invariant,
)
from .formats import (
    export_dot,
    family_entries,
    parse_family,
    parse_graph,
    serialize_family,
    serialize_graph,
)
from .kgraph import KGraph, face_colors, validate
from .lattice import (
    SearchLimits,
    brute_force_families,
    default_threads,
    enumerate_families,
    hasse,
)
from .vertex_calculus import (
    is_f_saturated,
    is_hereditary,
    is_invariant_set,
    u_set,
    w_set,
)

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = range(5)


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def load_graph(path: str, lenient: bool = False) -> KGraph:
    return validate(parse_graph(_read(path), strict=not lenient))


def _load_family(g: KGraph, path: str, lenient: bool):
    return parse_family(_read(path), g, strict=not lenient).family


# -- commands -----------------------------------------------------------------
# Each returns (exit code, report dict).


def cmd_validate(args):
    g = load_graph(args.graph, args.lenient)
    return EXIT_OK, {
        "command": "validate",
        "valid": True,
        "rank": g.rank,
        "vertices": g.num_vertices,
        "edges": len(g.edges),
        "squares": len(g.spec.squares),
    }


def cmd_tracing(args):
    g = load_graph(args.graph, args.lenient)
    rows = [
        {
            "face": face_colors(F),
            "receiving": sorted(g.ids(w_set(g, F))),
            "tracing": sorted(g.ids(u_set(g, F))),
        }
        for F in g.faces()
    ]
    return EXIT_OK, {"command": "tracing", "faces": rows}


def cmd_check_set(args):
    g = load_graph(args.graph, args.lenient)
    ids = [v for v in args.set.split(",") if v] if args.set else []
    try:
        V = g.mask(ids)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    report = {
        "command": "check-set",
        "set": sorted(g.ids(V)),
        "hereditary": is_hereditary(g, V),
        "f_saturated": is_f_saturated(g, V),
        "invariant": is_invariant_set(g, V),
    }
    return (EXIT_OK if report["invariant"] else EXIT_FALSE), report


def cmd_check_family(args):
    g = load_graph(args.graph, args.lenient)
    family = _load_family(g, args.family, args.lenient)
    holds = family_kind_check(g, family, Kind(args.kind))
    return (EXIT_OK if holds else EXIT_FALSE), {
        "command": "check-family",
        "kind": args.kind,
        "holds": holds,
    }


def cmd_convert_family(args):
    g = load_graph(args.graph, args.lenient)
    family = _load_family(g, args.family, args.lenient)
    if args.to == "invariant":
        out = t_to_invariant(g, family)
    else:
        out = invariant_to_t(g, family)
    if args.output:
        _write(args.output, serialize_family(g, out))
    return EXIT_OK, {
        "command": "convert-family",
        "to": args.to,
        "entries": family_entries(g, out),
    }


def cmd_enumerate(args):
    g = load_graph(args.graph, args.lenient)
    limits = SearchLimits(max_candidates=args.budget)
    if args.oracle:
        lattice = brute_force_families(g, args.kind, limits)
    else:
        lattice = enumerate_families(g, args.kind, limits, threads=args.threads)
    return EXIT_OK, {
        "command": "enumerate",
        "kind": args.kind,
        "method": "oracle" if args.oracle else "search",
        "count": len(lattice),
        "families": [family_entries(g, f) for f in lattice],
    }


def cmd_lattice(args):
    g = load_graph(args.graph, args.lenient)
    lattice = enumerate_families(
        g, args.kind, SearchLimits(max_candidates=args.budget), threads=args.threads
    )
    covers = hasse(lattice)
    if args.dot:
        _write(args.dot, export_dot(lattice, g))
    return EXIT_OK, {
        "command": "lattice",
        "kind": args.kind,
        "count": len(lattice),
        "covers": [[lattice.index(a), lattice.index(b)] for a, b in covers],
    }


def _graph_report(command: str, g: KGraph, ext: KGraph, W) -> dict:
    return {
        "command": command,
        "vertices": sorted(ext.vertices),
        "edges": len(ext.edges),
        "squares": len(ext.spec.squares),
        "receiving_pattern": receiving_pattern_check(g, W, ext),
    }


def cmd_extend(args):
    g = load_graph(args.graph, args.lenient)
    W = _load_family(g, args.family, args.lenient)
    ext = build_extended(g, W)
    _emit_graph(args.output, ext)
    return EXIT_OK, _graph_report("extend", g, ext, W)


def cmd_quotient(args):
    g = load_graph(args.graph, args.lenient)
    V = _load_family(g, args.family, args.lenient)
    ext = quotient_graph(g, V)
    _emit_graph(args.output, ext)
    return EXIT_OK, _graph_report("quotient", g, ext, t_to_invariant(g, V))


def _emit_graph(path: Optional[str], g: KGraph) -> None:
    if path:
        _write(path, serialize_graph(g))


# -- plumbing -------------------------------------------------------------------


def _render(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if key == "command":
            continue
        if key == "families":
            lines.append(f"{key}:")
            for k, entries in enumerate(value):
                lines.append(f"  [{k}] " + _render_entries(entries))
        elif key == "entries":
            lines.append(f"{key}: " + _render_entries(value))
        elif key == "faces":
            lines.append(f"{key}:")
            for row in value:
                lines.append(
                    f"  {_face(row['face'])} receiving: [{', '.join(row['receiving'])}]"
                    f" tracing: [{', '.join(row['tracing'])}]"
                )
        elif isinstance(value, bool):
            lines.append(f"{key}: {'true' if value else 'false'}")
        elif isinstance(value, list):
            lines.append(f"{key}: {json.dumps(value)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _face(colors: list[int]) -> str:
    return "{" + ",".join(map(str, colors)) + "}"


def _render_entries(entries: list[dict]) -> str:
    return " ".join(f"{_face(e['face'])}:[{','.join(e['vertices'])}]" for e in entries)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--lenient", action="store_true", help="warn on unknown fields")
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--budget", type=int, default=SearchLimits().max_candidates)
    search.add_argument("--threads", type=int, default=default_threads())

    parser = argparse.ArgumentParser(
        prog="kgideals", description="Ideal lattices of higher-rank graph algebras."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, helptext: str, parents=(common,)):
        p = sub.add_parser(name, parents=list(parents), help=helptext)
        p.set_defaults(func=func)
        p.add_argument("graph")
        return p

    add("validate", cmd_validate, "check the k-graph axioms")
    add("tracing", cmd_tracing, "print receiving and F-tracing sets")
    p = add("check-set", cmd_check_set, "verdicts on a single vertex set")
    p.add_argument("--set", default="", help="comma-separated vertex ids")
    p = add("check-family", cmd_check_family, "test a family against a kind")
    p.add_argument("family")
    p.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    p = add("convert-family", cmd_convert_family, "T-family <-> invariant family")
    p.add_argument("family")
    p.add_argument("--to", choices=("invariant", "t"), required=True)
    p.add_argument("-o", "--output")
    p = add("enumerate", cmd_enumerate, "list all families of a kind", (common, search))
    p.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    p.add_argument("--oracle", action="store_true", help="exhaustive brute force")
    p = add("lattice", cmd_lattice, "Hasse diagram of the T- or O-lattice", (common, search))
    p.add_argument("--kind", choices=("t", "o"), required=True)
    p.add_argument("--dot")
    p = add("extend", cmd_extend, "extended graph of an invariant family")
    p.add_argument("family")
    p.add_argument("-o", "--output")
    p = add("quotient", cmd_quotient, "graph realizing the quotient by a T-family")
    p.add_argument("family")
    p.add_argument("-o", "--output")
    return parser


def run_cli(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    as_json = args.format == "json"

    def fail(code: int, exc: Exception) -> int:
        if as_json:
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=stdout)
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return code

    try:
        code, report = args.func(args)
    except BudgetExceeded as exc:
        return fail(EXIT_BUDGET, exc)
    except InternalValidationFailure as exc:
        return fail(EXIT_INTERNAL, exc)
    except (KGraphError, InputError) as exc:
        return fail(EXIT_INPUT, exc)
    if as_json:
        print(json.dumps(report, sort_keys=False), file=stdout)
    else:
        print(_render(report), file=stdout)
    return code


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
