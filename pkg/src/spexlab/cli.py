"""``spexlab`` command-line entry point.

Exit codes: 0 success or pass, 1 a computed negative (not free, check
failed, procedure could not complete), 2 usage error, 3 internal or numeric
failure.  JSON is the default output; every JSON document is wrapped in an
envelope recording the schema version, command, seed and tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .constructions import FamilyParams
from .formulas import FORMULAS
from .graph import Graph, Graph6Error, GraphError, graph6_decode, graph6_encode, parse_edge_list
from .procedures import (
    GrowthStuck,
    NoClosingVertex,
    PreconditionError,
    grow_odd_cycle,
    peel_to_dense_core,
    replace_triangles_with_odd_cycles,
    verify_per_vertex_packing,
)
from .search import (
    exhaustive_ex,
    exhaustive_max_edges_bounded,
    exhaustive_spex,
    hill_climb_spex,
    local_max_details,
    trajectories_csv,
)
from .spectral import DEFAULT_TOL, SpectralError, implicit_family_perron, perron
from .subgraphs import find_disjoint_cycles
from .suites import DEFAULT_GRID, SUITES

SCHEMA_VERSION = 1
THREADS_ENV = "SPEXLAB_THREADS"

ENVELOPE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": f"spexlab output, version {SCHEMA_VERSION}",
    "type": "object",
    "required": ["schema_version", "command", "seed", "tol", "result"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "seed": {"type": "integer"},
        "tol": {"type": "number", "description": "tolerance used by every numeric field"},
        "threads": {"type": "integer"},
        "result": {"type": "object"},
    },
}


class UsageError(Exception):
    pass


class Negative(Exception):
    """Raised after output is written when the computed answer is negative."""


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"{THREADS_ENV}={env!r} is not an integer") from exc
    return os.cpu_count() or 1


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def load_graph(args) -> Graph:
    sources = [s for s in ("family", "graph6", "edges") if getattr(args, s, None)]
    if len(sources) != 1:
        raise UsageError("give exactly one of --family, --graph6, --edges")
    if args.family:
        return FamilyParams.parse(args.family).build()
    if args.graph6:
        return graph6_decode(args.graph6)
    text = sys.stdin.read() if args.edges == "-" else Path(args.edges).read_text()
    return parse_edge_list(text, args.n_vertices)


def emit(args, result: dict, csv_text: str | None = None) -> None:
    if args.format == "csv":
        if csv_text is None:
            raise UsageError(f"{args.command} has no CSV output")
        sys.stdout.write(csv_text)
        return
    if args.format == "graph6":
        g6 = result.get("graph6")
        if g6 is None:
            raise UsageError(f"{args.command} has no graph6 output")
        print(g6)
        return
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "seed": args.seed,
        "tol": args.tol,
        "threads": args.threads,
        "result": result,
    }
    print(json.dumps(doc, indent=2))


def _csv_rows(header: list[str], rows: list[list]) -> str:
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands --------------------------------------------------------------------


def cmd_construct(args) -> None:
    if not args.family:
        raise UsageError("construct needs --family")
    p = FamilyParams.parse(args.family)
    g = p.build()
    g6 = graph6_encode(g).decode()
    result = {"family": str(p), "n": g.n, "edges": g.edge_count(), "graph6": g6}
    emit(args, result, _csv_rows(["u", "v"], [list(e) for e in g.edges()]))


def cmd_rho(args) -> None:
    if args.implicit:
        if not args.family:
            raise UsageError("--implicit needs --family")
        res = implicit_family_perron(FamilyParams.parse(args.family))
    else:
        res = perron(load_graph(args), tol=args.tol)
    d = res.to_dict()
    emit(args, d, _csv_rows(list(d), [list(d.values())]))


def cmd_free_check(args) -> None:
    g = load_graph(args)
    p = find_disjoint_cycles(g, args.t, args.l)
    result = {"t": args.t, "length": args.l, "free": not p.found, "packing": p.to_dict()}
    emit(args, result, _csv_rows(["t", "length", "free"], [[args.t, args.l, not p.found]]))
    if p.found:
        raise Negative()


def cmd_pack(args) -> None:
    g = load_graph(args)
    p = find_disjoint_cycles(g, args.t, args.l)
    emit(args, p.to_dict(), _csv_rows(["cycle", "vertices"], [[i, " ".join(map(str, c))] for i, c in enumerate(p.cycles)]))
    if not p.found:
        raise Negative()


def cmd_grow(args) -> None:
    g = load_graph(args)
    tri = _int_list(args.triangle)
    if len(tri) != 3:
        raise UsageError("--triangle needs three vertices")
    trace = grow_odd_cycle(g, _int_list(args.forbidden or ""), tuple(tri), args.l, args.cycles)
    emit(args, trace.to_dict())


def cmd_peel(args) -> None:
    g = load_graph(args)
    out = peel_to_dense_core(g, args.t, args.k, strict=not args.lenient)
    if out is None:
        emit(args, {"core": None})
        raise Negative()
    core, trace = out
    emit(args, {"core": graph6_encode(core).decode(), "graph6": graph6_encode(core).decode(), **trace.to_dict()})


def cmd_replace(args) -> None:
    g = load_graph(args)
    tris = [tuple(_int_list(part)) for part in args.triangles.split(";") if part.strip()]
    p = replace_triangles_with_odd_cycles(g, args.t, args.l, tris)
    emit(args, p.to_dict())


def cmd_lemma53(args) -> None:
    g = load_graph(args)
    ok, wit = verify_per_vertex_packing(g, args.t, args.l)
    result = {
        "t": args.t,
        "l": args.l,
        "all_hold": ok,
        "witnesses": {str(u): [list(c) for c in p.cycles] for u, p in wit.items()},
    }
    emit(args, result, _csv_rows(["vertex", "found"], [[u, p.found] for u, p in wit.items()]))
    if not ok:
        raise Negative()


def cmd_formula(args) -> None:
    fn, names = FORMULAS[args.name]
    values = []
    for name in names:
        v = getattr(args, name)
        if v is None:
            raise UsageError(f"formula {args.name} needs --{name}")
        values.append(v)
    d = fn(*values).to_dict()
    emit(args, d, _csv_rows(list(d), [[json.dumps(v) if isinstance(v, dict) else v for v in d.values()]]))


def cmd_search(args) -> None:
    if args.mode == "exhaustive":
        if args.objective == "edges":
            rep = exhaustive_ex(args.n, args.t, args.l, threads=args.threads)
        elif args.objective == "rho":
            rep = exhaustive_spex(args.n, args.t, args.l, args.parity, threads=args.threads)
        else:
            if args.nu is None or args.delta is None:
                raise UsageError("--objective bounded needs --nu and --delta")
            rep = exhaustive_max_edges_bounded(args.n, args.nu, args.delta, threads=args.threads)
        emit(args, rep.to_dict(args.timing), _csv_rows(["graph6"], [[g] for g in rep.best_graphs]))
        return
    if args.mode == "climb":
        rep = hill_climb_spex(args.n, args.t, args.l, args.parity, args.seeds, args.budget, args.seed)
        emit(args, rep.to_dict(args.timing), trajectories_csv(rep.trajectories))
        return
    g = load_graph(args)
    det = local_max_details(g, args.t, args.l, args.parity)
    emit(args, det)
    if not det["is_local_max"]:
        raise Negative()


def cmd_verify(args) -> None:
    if args.suite == "lemmas":
        grid = {k: tuple(_int_list(getattr(args, f"grid_{k}"))) if getattr(args, f"grid_{k}") else v for k, v in DEFAULT_GRID.items()}
        rep = SUITES["lemmas"](grid, seed=args.seed)
    else:
        for name in ("n", "t", "l"):
            if getattr(args, name) is None:
                raise UsageError(f"verify {args.suite} needs --{name}")
        rep = SUITES[args.suite](args.n, args.t, args.l, seed=args.seed)
    emit(args, rep.to_dict(args.timing), rep.to_csv())
    if not rep.all_pass:
        raise Negative()


# -- parser ------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv", help="CSV output")
    fmt.add_argument("--graph6-out", dest="format", action="store_const", const="graph6", help="bare graph6 output")
    p.set_defaults(format="json")
    p.add_argument("--schema", action="store_true", help="print the output JSON schema and exit")
    p.add_argument("--threads", type=int, default=None, help=f"thread cap (default ${THREADS_ENV} or logical cores)")
    p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed, recorded in the output")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numeric tolerance")
    p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identical reruns)")
    return p


def _graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help='construction such as "s++:n=12,l=3" or "erdos-moon:n=10,t=2"')
    p.add_argument("--graph6", help="graph in graph6")
    p.add_argument("--edges", help="edge-list file, one 'u v' pair per line ('-' for stdin)")
    p.add_argument("--n-vertices", type=int, default=None, help="vertex count for --edges")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line diagnosis, exit 2
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="spexlab", description="Extremal graphs for disjoint cycles: constructions, checks and searches.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", parents=[common], help="build a named construction")
    _graph_input(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("rho", parents=[common], help="spectral radius by power iteration")
    _graph_input(p)
    p.add_argument("--implicit", action="store_true", help="use the family's equitable quotient (any n)")
    p.set_defaults(func=cmd_rho)

    for name, func, doc in (
        ("free-check", cmd_free_check, "exit 0 iff no t disjoint cycles of length --l"),
        ("pack", cmd_pack, "find t disjoint cycles of length --l"),
    ):
        p = sub.add_parser(name, parents=[common], help=doc)
        _graph_input(p)
        p.add_argument("--t", type=int, required=True)
        p.add_argument("--l", type=int, required=True, help="cycle length")
        p.set_defaults(func=func)

    p = sub.add_parser("grow", parents=[common], help="grow a (2l+1)-cycle from a triangle")
    _graph_input(p)
    p.add_argument("--triangle", required=True, help="a,b,c")
    p.add_argument("--forbidden", default="", help="comma-separated vertices to avoid")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--cycles", type=int, default=None, help="t, only used for threshold warnings")
    p.set_defaults(func=cmd_grow)

    p = sub.add_parser("peel", parents=[common], help="delete low-degree vertices down to a dense core")
    _graph_input(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lenient", action="store_true", help="record failed preconditions instead of refusing")
    p.set_defaults(func=cmd_peel)

    p = sub.add_parser("replace", parents=[common], help="turn t disjoint triangles into t disjoint (2l+1)-cycles")
    _graph_input(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--triangles", required=True, help='"a,b,c;d,e,f;..."')
    p.set_defaults(func=cmd_replace)

    p = sub.add_parser("lemma53", parents=[common], help="every g - u has t-1 disjoint 2l-cycles")
    _graph_input(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_lemma53)

    p = sub.add_parser("formula", parents=[common], help="evaluate a closed-form extremal number")
    p.add_argument("name", choices=sorted(FORMULAS))
    for opt in ("n", "t", "l", "nu", "delta"):
        p.add_argument(f"--{opt}", type=int)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("search", parents=[common], help="exhaustive or hill-climbing extremal search")
    p.add_argument("mode", choices=["exhaustive", "climb", "certify"])
    _graph_input(p)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--parity", choices=["odd", "even"], default="odd")
    p.add_argument("--objective", choices=["edges", "rho", "bounded"], default="edges")
    p.add_argument("--nu", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--budget", type=int, default=100_000, help="radius evaluations per climb")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    for opt in ("n", "t", "l"):
        p.add_argument(f"--{opt}", type=int)
    for opt in ("t", "l", "n"):
        p.add_argument(f"--grid-{opt}", help=f"comma-separated {opt} values for the lemmas grid")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.schema:
            print(json.dumps(ENVELOPE_SCHEMA, indent=2))
            return 0
        if args.threads is None:
            args.threads = _default_threads()
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        if getattr(args, "mode", None) in ("exhaustive", "climb") and args.n is None:
            raise UsageError(f"search {args.mode} needs --n")
        args.func(args)
        return 0
    except Negative:
        return 1
    except (PreconditionError, GrowthStuck, NoClosingVertex) as exc:
        print(f"spexlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (UsageError, GraphError, Graph6Error, ValueError, OSError) as exc:
        print(f"spexlab: error: {exc}", file=sys.stderr)
        return 2
    except SpectralError as exc:
        print(f"spexlab: numeric failure: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001
        print(f"spexlab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
