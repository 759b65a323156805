"""``chromix`` command-line entry point.

Exit codes: 0 success / property holds / map found, 1 property fails / no map,
2 usage or input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .core import GraphError, NmGraph, Signature, UndirectedGraph, parse, parse_any, serialize, underlying
from .generators import GenSpec, kclique_gadget, random_low_mad, random_partial_2tree
from .solver import BudgetExhausted, PreconditionError, SearchConfig, circular_hom, exact_chromatic, find_hom, two_tree_hom
from .sparsity import acyclic_coloring_construct, arboricity, mad, palette_bound
from .targets import t03, t11, walecki_target
from .verify import expansion_ok, forbidden_config_free, has_p21, is_acyclic_coloring, regularity_check

SCHEMA = "chromix.run/1"

EXIT_OK, EXIT_FALSE, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Inputs:
    """Reads input files once and remembers their digests for the run report."""

    def __init__(self):
        self.digests: dict[str, str] = {}

    def read(self, path: str) -> str:
        if path == "-":
            data = sys.stdin.read()
        else:
            try:
                with open(path, encoding="utf-8") as fh:
                    data = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        self.digests[path] = hashlib.sha256(data.encode()).hexdigest()
        return data

    def nmgraph(self, path: str) -> NmGraph:
        return _with_path(path, parse, self.read(path))

    def simple(self, path: str) -> UndirectedGraph:
        g = _with_path(path, parse_any, self.read(path))
        return underlying(g) if isinstance(g, NmGraph) else g


def _with_path(path, fn, text):
    try:
        return fn(text)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _config(args) -> SearchConfig:
    return SearchConfig(
        order=args.order,
        propagation=args.propagation,
        budget=args.budget,
        seed=args.seed if args.seed is not None else 0,
        workers=args.workers,
    )


def _signature(args) -> Signature:
    try:
        return Signature(args.n, args.m)
    except GraphError as exc:
        raise UsageError(str(exc)) from None


# -- commands: each returns (exit code, payload, text lines) ------------------------


def cmd_target(args, inputs):
    if args.which == "walecki":
        g = walecki_target(_signature(args))
    else:
        g = t03() if args.which == "t03" else t11()
    text = serialize(g)
    return EXIT_OK, {"graph": text}, [text.rstrip("\n")]


_CHECKS = {
    "p21": lambda g, args: has_p21(g),
    "expansion": lambda g, args: expansion_ok(g),
    "regular": lambda g, args: regularity_check(g, args.d),
    "forbidden": lambda g, args: forbidden_config_free(g),
}


def cmd_check(args, inputs):
    if args.property == "acyclic":
        if len(args.files) != 2:
            raise UsageError("check acyclic takes a graph file and a colouring file")
        g = inputs.simple(args.files[0])
        colors = _parse_coloring(inputs.read(args.files[1]), args.files[1])
        verdict = is_acyclic_coloring(g, colors)
        results = [{"file": args.files[0], "holds": verdict.holds, "witness": verdict.witness}]
    else:
        if args.property == "regular" and args.d is None:
            raise UsageError("check regular requires --d")
        if not args.files:
            raise UsageError("no input files")
        results = []
        for path in args.files:
            verdict = _CHECKS[args.property](inputs.nmgraph(path), args)
            results.append({"file": path, "holds": verdict.holds, "witness": verdict.witness})
    code = EXIT_OK if all(r["holds"] for r in results) else EXIT_FALSE
    lines = []
    for r in results:
        line = f"{r['file']}: {args.property} {'holds' if r['holds'] else 'fails'}"
        if not r["holds"]:
            line += f" witness={json.dumps(r['witness'])}"
        lines.append(line)
    return code, {"property": args.property, "results": results}, lines


def _parse_coloring(text: str, path: str) -> list[int]:
    values = []
    for line in text.splitlines():
        values += line.split("#", 1)[0].split()
    try:
        return [int(x) for x in values]
    except ValueError:
        raise UsageError(f"{path}: colours must be integers") from None


def _map_lines(mapping):
    return ["map: " + " ".join(f"{u}->{x}" for u, x in enumerate(mapping))]


def cmd_hom(args, inputs):
    if args.mode == "find":
        g, h = inputs.nmgraph(args.source), inputs.nmgraph(args.target)
        if g.signature != h.signature:
            raise UsageError(f"signature mismatch {g.signature} vs {h.signature}")
        hom = find_hom(g, h, _config(args))
        mapping = None if hom is None else list(hom.mapping)
    elif args.mode == "two-tree":
        g, t = inputs.nmgraph(args.source), inputs.nmgraph(args.target)
        try:
            mapping = list(two_tree_hom(g, t).mapping)
        except (PreconditionError, GraphError) as exc:
            raise UsageError(str(exc)) from None
    else:
        g = inputs.simple(args.source)
        found = circular_hom(g, args.g, _config(args))
        mapping = None if found is None else list(found)
    if mapping is None:
        return EXIT_FALSE, {"status": "none"}, ["status: none"]
    return EXIT_OK, {"status": "found", "map": mapping}, ["status: found"] + _map_lines(mapping)


def cmd_chrom(args, inputs):
    g = inputs.nmgraph(args.graph)
    res = exact_chromatic(g, args.max_k, _config(args))
    if res is None:
        return EXIT_FALSE, {"status": "exceeds-max-k", "max_k": args.max_k}, [f"status: exceeds max-k {args.max_k}"]
    k, cert = res
    payload = {"status": "found", "k": k, "partition": list(cert.partition), "quotient": serialize(cert.quotient)}
    lines = [f"k: {k}", "partition: " + " ".join(map(str, cert.partition))]
    return EXIT_OK, payload, lines


def cmd_mad(args, inputs):
    g = inputs.simple(args.graph)
    try:
        value = mad(g)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    text = f"{value.numerator}/{value.denominator}"
    return EXIT_OK, {"mad": text}, [f"mad: {text}"]


def cmd_arboricity(args, inputs):
    g = inputs.simple(args.graph)
    r, dec = arboricity(g)
    payload = {"r": r}
    lines = [f"arboricity: {r}"]
    if args.emit_forests:
        forests = dec.forests()
        payload["forests"] = [[list(e) for e in f] for f in forests]
        for i, f in enumerate(forests, start=1):
            lines.append(f"forest {i}: " + " ".join(f"{u}-{v}" for u, v in f))
    return EXIT_OK, payload, lines


def cmd_acyclic(args, inputs):
    g = inputs.simple(args.graph)
    coloring, layers = acyclic_coloring_construct(g, _signature(args), _config(args), workers=args.workers)
    ks = [h.target.num_vertices for _, h in layers]
    payload = {
        "colors": list(coloring.colors),
        "palette": coloring.palette,
        "layer_k": ks,
        "bound": palette_bound(layers),
    }
    lines = [
        f"palette: {coloring.palette}",
        f"layer chromatic numbers: {' '.join(map(str, ks))}",
        f"bound: {payload['bound']}",
        "colors: " + " ".join(map(str, coloring.colors)),
    ]
    return EXIT_OK, payload, lines


def cmd_gen(args, inputs):
    sig = _signature(args)
    try:
        if args.kind == "gadget":
            g = kclique_gadget(args.k, sig)
        elif args.kind == "p2t":
            g = random_partial_2tree(args.nv, GenSpec(args.seed, sig, delete_prob=args.delete_prob))
        else:
            g = random_low_mad(args.nv, GenSpec(args.seed, sig))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = serialize(g)
    return EXIT_OK, {"graph": text}, [text.rstrip("\n")]


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a top-level --json from being reset by the subcommand parser
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON run report")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--budget", type=int, default=SearchConfig.budget)
    search.add_argument("--order", choices=("mrv", "static"), default="mrv")
    search.add_argument("--propagation", choices=("ac", "none"), default="ac")
    search.add_argument("--workers", type=int, default=1)
    search.add_argument("--seed", type=int, default=None)

    def sig_args(p, required=True):
        p.add_argument("--n", type=int, required=required)
        p.add_argument("--m", type=int, required=required)

    parser = argparse.ArgumentParser(prog="chromix", description="(n,m)-coloured mixed graph toolkit")
    parser.add_argument("--version", action="version", version=f"chromix {__version__}")
    parser.add_argument("--json", action="store_true", help="emit a JSON run report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("target", help="emit a target graph")
    tsub = p.add_subparsers(dest="which", required=True)
    sig_args(tsub.add_parser("walecki", parents=[common]))
    tsub.add_parser("t03", parents=[common])
    tsub.add_parser("t11", parents=[common])
    p.set_defaults(func=cmd_target)

    p = sub.add_parser("check", parents=[common], help="check a graph property")
    p.add_argument("property", choices=("p21", "expansion", "regular", "forbidden", "acyclic"))
    p.add_argument("files", nargs="*")
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hom", help="homomorphism search")
    hsub = p.add_subparsers(dest="mode", required=True)
    q = hsub.add_parser("find", parents=[common, search])
    q.add_argument("source")
    q.add_argument("target")
    q = hsub.add_parser("two-tree", parents=[common])
    q.add_argument("source")
    q.add_argument("target")
    q = hsub.add_parser("circular", parents=[common, search])
    q.add_argument("source")
    q.add_argument("--g", type=int, required=True)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("chrom", parents=[common, search], help="exact (n,m)-chromatic number")
    p.add_argument("graph")
    p.add_argument("--max-k", type=int, required=True)
    p.set_defaults(func=cmd_chrom)

    p = sub.add_parser("mad", parents=[common], help="exact maximum average degree")
    p.add_argument("graph")
    p.set_defaults(func=cmd_mad)

    p = sub.add_parser("arboricity", parents=[common], help="arboricity and forest decomposition")
    p.add_argument("graph")
    p.add_argument("--emit-forests", action="store_true")
    p.set_defaults(func=cmd_arboricity)

    p = sub.add_parser("acyclic-color", parents=[common, search], help="digit-layer acyclic colouring")
    p.add_argument("graph")
    sig_args(p)
    p.set_defaults(func=cmd_acyclic)

    p = sub.add_parser("gen", help="instance generators")
    gsub = p.add_subparsers(dest="kind", required=True)
    q = gsub.add_parser("gadget", parents=[common])
    q.add_argument("--k", type=int, required=True)
    sig_args(q)
    q = gsub.add_parser("p2t", parents=[common])
    q.add_argument("--nv", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--delete-prob", type=float, default=0.2)
    sig_args(q)
    q = gsub.add_parser("lowmad", parents=[common])
    q.add_argument("--nv", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    sig_args(q)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    inputs = _Inputs()
    start = time.perf_counter()
    try:
        code, payload, lines = args.func(args, inputs)
    except UsageError as exc:
        print(f"chromix: error: {exc}", file=sys.stderr)
        code, payload, lines = EXIT_ERROR, {"error": str(exc)}, None
    except BudgetExhausted as exc:
        print(f"chromix: {exc}", file=sys.stderr)
        code, payload, lines = EXIT_BUDGET, {"status": "budget-exhausted", "nodes": exc.nodes}, ["status: budget-exhausted"]
    except (GraphError, ValueError) as exc:
        print(f"chromix: error: {exc}", file=sys.stderr)
        code, payload, lines = EXIT_ERROR, {"error": str(exc)}, None
    elapsed = time.perf_counter() - start
    if getattr(args, "json", False):
        report = {
            "schema": SCHEMA,
            "command": argv,
            "inputs": inputs.digests,
            "result": payload,
            "elapsed_seconds": round(elapsed, 6),
            "exit_code": code,
        }
        print(json.dumps(report))
    elif lines:
        print("\n".join(lines))
    return code


def entry() -> None:
    sys.exit(main())
