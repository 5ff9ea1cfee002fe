"""``rainbow-forge`` command line.

Exit codes: 0 pass, 1 violation found, 2 budget exceeded, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import induced, rainbow
from .errors import (
    BudgetExceeded,
    EmbeddingFailed,
    GirthViolation,
    LiftFailed,
    RainbowForgeError,
)
from .formats import load_graph, read_coloring, read_forest, write_edgelist, write_graph6
from .generators import c4_free_process, gen_named, gnp, kr_free_process, named_families
from .graph import (
    DiscrepancyCert,
    ForestEmbeddingCert,
    Graph,
    InducedCycleCert,
    InducedPathCert,
    ProperColoring,
    RainbowSetCert,
    girth,
)
from .harness import experiment, regression, scan
from .oracles import (
    DEFAULT_MAX_NODES,
    SearchBudget,
    chromatic_coloring,
    greedy_coloring,
    independence_number,
    longest_induced_cycle,
    longest_induced_path,
)
from .rng import resolve_seed

EXIT_PASS, EXIT_VIOLATION, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3

RANDOM_FAMILIES = ("gnp", "kr_free", "c4_free", "girth5")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def cert_to_json(cert) -> dict | None:
    if cert is None:
        return None
    if isinstance(cert, InducedPathCert):
        return {"type": "induced_path", "vertices": list(cert.vertices), "order": cert.order, "length": cert.length}
    if isinstance(cert, InducedCycleCert):
        return {"type": "induced_cycle", "vertices": list(cert.vertices), "length": cert.length}
    if isinstance(cert, DiscrepancyCert):
        return {
            "type": "discrepancy",
            "members": sorted(cert.members),
            "size": cert.size,
            "chromatic_number": cert.chromatic_bound,
            "rounds": cert.rounds,
            "coloring": list(cert.coloring.colors),
        }
    if isinstance(cert, RainbowSetCert):
        return {"type": "rainbow_set", "members": sorted(cert.members), "size": cert.size, "coloring": list(cert.coloring.colors)}
    if isinstance(cert, ForestEmbeddingCert):
        return {
            "type": "forest_embedding",
            "forest": {"n": cert.spec.n, "edges": [list(e) for e in cert.spec.edges], "roots": list(cert.spec.roots)},
            "mapping": list(cert.mapping),
            "anchors": list(cert.anchors),
        }
    raise TypeError(type(cert).__name__)


# --------------------------------------------------------------------------
# output


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _emit_table(args, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _emit(args, buf.getvalue())


def _emit_record(args, obj: dict) -> None:
    """One flat record as JSON or as a two-line CSV."""
    if args.format == "csv":
        flat = {k: v for k, v in obj.items() if not isinstance(v, (dict, list))}
        _emit_table(args, list(flat), [list(flat.values())])
    else:
        _emit_json(args, obj)


def _budget(args) -> SearchBudget:
    return SearchBudget(max_nodes=args.budget_nodes, max_n=args.budget_n)


def _load(path: str) -> Graph:
    try:
        return load_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise UsageError(f"{path} is not an ASCII graph file") from None


def _coloring(args, g: Graph, budget: SearchBudget) -> tuple[ProperColoring, int | None, str]:
    """Colouring from --coloring, else an optimal one, else greedy.  Returns (c, exact chi or None, source)."""
    if args.coloring:
        return read_coloring(Path(args.coloring).read_text(), g), None, "file"
    try:
        chi, colors = chromatic_coloring(g, budget)
        return ProperColoring(g, colors), chi, "optimal"
    except BudgetExceeded:
        return greedy_coloring(g), None, "greedy"


def _chi(args, g: Graph, exact: int | None, budget: SearchBudget) -> tuple[int, str]:
    if args.chi is not None:
        return args.chi, "flag"
    if exact is not None:
        return exact, "exact"
    try:
        return chromatic_coloring(g, budget)[0], "exact"
    except BudgetExceeded:
        return greedy_coloring(g).num_colors, "greedy_upper_bound"


# --------------------------------------------------------------------------
# verbs


def cmd_gen(args) -> int:
    family = args.family.replace("-", "_").lower()
    seed = resolve_seed(args.seed)
    if family in RANDOM_FAMILIES:
        if args.n is None:
            raise UsageError(f"{family} needs --n")
        if family == "gnp":
            if args.p is None:
                raise UsageError("gnp needs --p")
            g = gnp(args.n, args.p, seed)
        elif family == "kr_free":
            g = kr_free_process(args.n, args.r, seed)
        else:
            g = c4_free_process(args.n, seed, girth5=family == "girth5")
    else:
        g = gen_named(family, *args.params)
    if args.format == "json":
        _emit_json(args, {"family": family, "seed": seed, "n": g.n, "m": g.m, "graph6": write_graph6(g).decode()})
    elif args.graph_format == "graph6":
        _emit(args, write_graph6(g).decode() + "\n")
    else:
        _emit(args, write_edgelist(g))
    return EXIT_PASS


def cmd_invariants(args) -> int:
    g = _load(args.graph)
    budget = _budget(args)
    out: dict = {
        "n": g.n,
        "m": g.m,
        "girth": None if g.n == 0 or girth(g) == float("inf") else int(girth(g)),
        "min_degree": g.min_degree() if g.n else 0,
        "max_degree": g.max_degree() if g.n else 0,
    }
    exceeded = []

    def guarded(key, fn):
        try:
            out[key] = fn()
        except BudgetExceeded:
            out[key] = "budget_exceeded"
            exceeded.append(key)

    guarded("chromatic_number", lambda: chromatic_coloring(g, budget)[0])
    guarded("independence_number", lambda: independence_number(g, budget).size)
    guarded("longest_induced_path_order", lambda: longest_induced_path(g, budget).order)

    def cyc():
        c = longest_induced_cycle(g, budget)
        return c.length if c else None

    guarded("longest_induced_cycle_length", cyc)
    _emit_record(args, out)
    return EXIT_BUDGET if exceeded else EXIT_PASS


def cmd_extract_rainbow(args) -> int:
    g = _load(args.graph)
    budget = _budget(args)
    c, exact, source = _coloring(args, g, budget)
    chi, chi_source = _chi(args, g, exact, budget)
    strategy = rainbow.PickStrategy.parse(args.strategy, resolve_seed(args.seed))
    cert, trace = rainbow.extract_rainbow_independent_set(g, c, args.r, chi, strategy, budget)
    guarantee = rainbow.rainbow_guarantee(chi, args.r)
    # a greedy palette only bounds chi from above, so it cannot convict
    satisfied = None if chi_source == "greedy_upper_bound" else cert.size >= guarantee
    out = {
        "certificate": cert_to_json(cert),
        "size": cert.size,
        "chi": chi,
        "chi_source": chi_source,
        "coloring_source": source,
        "guarantee": guarantee,
        "satisfied": satisfied,
        "trace": trace.to_json(),
    }
    _emit_record(args, out)
    return EXIT_VIOLATION if satisfied is False else EXIT_PASS


def cmd_discrepancy(args) -> int:
    g = _load(args.graph)
    budget = _budget(args)
    c, exact, source = _coloring(args, g, budget)
    chi = args.chi if args.chi is not None else exact
    strategy = rainbow.PickStrategy.parse(args.strategy, resolve_seed(args.seed))
    cert = rainbow.extract_discrepancy_witness(g, c, args.r, strategy, chi, budget)
    out = {"certificate": cert_to_json(cert), "coloring_source": source, "size": cert.size, "chromatic_number": cert.chromatic_bound, "rounds": cert.rounds}
    _emit_record(args, out)
    return EXIT_PASS


def cmd_cycles_lemma(args) -> int:
    g = _load(args.graph)
    cycles = induced.cycles_from_pending(g, args.t, args.start)
    d = g.min_degree()
    need = -(-(d - 1) // (args.t - 1))
    out = {
        "min_degree": d,
        "t": args.t,
        "required_count": need,
        "lengths": [c.length for c in cycles],
        "cycles": [cert_to_json(c) for c in cycles],
    }
    _emit_json(args, out)
    return EXIT_PASS if len(cycles) >= need else EXIT_VIOLATION


def cmd_cycles_girth(args) -> int:
    g = _load(args.graph)
    res = induced.long_induced_cycle_details(g, args.k)
    out = {
        "k": args.k,
        "min_degree": res.min_degree,
        "guarantee": res.guarantee,
        "length": res.cycle.length,
        "cycle": cert_to_json(res.cycle),
        "quotient_cycle": cert_to_json(res.quotient_cycle),
        "centers": list(res.partition.centers),
        "audit": induced.audit_tree_partition(g, res.partition),
    }
    _emit_json(args, out)
    return EXIT_PASS if res.cycle.length >= res.guarantee else EXIT_VIOLATION


def cmd_paths_from(args) -> int:
    g = _load(args.graph)
    if not 0 <= args.vertex < g.n:
        raise UsageError(f"vertex {args.vertex} not in graph")
    paths = induced.induced_paths_from(g, args.vertex, args.order, _budget(args))
    if args.count_only:
        out = {"vertex": args.vertex, "order": args.order, "count": sum(1 for _ in paths)}
    else:
        listed = [list(p.vertices) for p in paths]
        out = {"vertex": args.vertex, "order": args.order, "count": len(listed), "paths": listed}
    _emit_json(args, out)
    return EXIT_PASS


def cmd_embed_forest(args) -> int:
    g = _load(args.graph)
    spec = read_forest(Path(args.forest).read_text())
    try:
        anchors = [int(a) for a in args.anchors.split(",") if a.strip()]
    except ValueError:
        raise UsageError(f"bad anchor list {args.anchors!r}") from None
    cert = induced.embed_rooted_forest(g, spec, anchors)
    _emit_json(args, cert_to_json(cert))
    return EXIT_PASS


def cmd_scan(args) -> int:
    budget = _budget(args)
    if args.exhaustive is not None:
        source = scan.exhaustive_source(args.exhaustive, allow_8=args.allow_8)
    elif args.sample:
        source = scan.sampled_source(args.sample, args.trials, resolve_seed(args.seed))
    else:
        raise UsageError("give --exhaustive N_MAX or --sample SPEC")
    results = list(scan.scan_conjecture(args.conjecture, source, budget, extra_colors=args.extra_colors))
    counts = scan.summarize(results)
    if args.format == "csv":
        header = ["graph", "conjecture", "chi", "measured", "required", "verdict", "coloring", "certificate"]
        rows = [
            [r.graph, r.conjecture, r.chi, r.measured, r.required, r.verdict,
             " ".join(map(str, r.coloring or ())), " ".join(map(str, r.certificate or ()))]
            for r in results
        ]
        _emit_table(args, header, rows)
    else:
        shown = results if args.all else [r for r in results if r.verdict != "holds"]
        _emit_json(args, {"conjecture": args.conjecture, "label": scan.PROXY_LABELS[args.conjecture], "summary": counts, "results": [r.to_json() for r in shown]})
    print(json.dumps(counts, sort_keys=True), file=sys.stderr)
    if counts["violated"]:
        return EXIT_VIOLATION
    return EXIT_BUDGET if counts["budget_exceeded"] else EXIT_PASS


def cmd_experiment(args) -> int:
    seed = resolve_seed(args.seed)
    records = experiment.experiment_random(args.regime, args.n, args.trials, seed, c=args.c, p=args.p)
    timing = not args.no_timing
    summ = experiment.summary(records) if records else {}
    if args.format in (None, "csv"):
        _emit(args, experiment.to_csv(records, timing))
        print(json.dumps(summ, sort_keys=True), file=sys.stderr)
    else:
        rows = []
        for r in records:
            row = dict(zip(experiment.CSV_HEADER, r.row(timing)))
            rows.append(row)
        _emit_json(args, {"regime": args.regime, "seed": seed, "records": rows, "summary": summ})
    return EXIT_PASS


def cmd_regression(args) -> int:
    only = None
    if args.only:
        try:
            only = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise UsageError(f"bad --only list {args.only!r}") from None
        unknown = [x for x in only if x not in regression.CHECKS]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    code, results = regression.theorem_regression_suite(
        _budget(args), only, report=lambda r: print(r.line(), file=sys.stderr, flush=True)
    )
    if args.format == "csv":
        _emit_table(args, ["criterion", "name", "status", "detail", "seconds"],
                    [[r.criterion, r.name, r.status, r.detail, f"{r.seconds:.3f}"] for r in results])
    else:
        _emit_json(args, {"exit_code": code, "checks": [r.to_json() for r in results]})
    return code


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None, help="master seed (default $RAINBOW_FORGE_SEED or 0)")
    common.add_argument("--budget-nodes", type=int, default=DEFAULT_MAX_NODES, help="search-node limit per oracle call")
    common.add_argument("--budget-n", type=int, default=None, help="override the per-oracle vertex-count ceiling")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="output format (per-verb default)")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="rainbow-forge", description="Rainbow sets and induced structures with checkable certificates.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="generate a graph")
    p.add_argument("family", help=f"one of {', '.join(named_families() + list(RANDOM_FAMILIES))}")
    p.add_argument("params", nargs="*", type=int, help="integer parameters of a named family")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--graph-format", choices=("edgelist", "graph6"), default="edgelist")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("invariants", parents=[common], help="exact invariants of a small graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_invariants)

    for verb, func in (("extract-rainbow", cmd_extract_rainbow), ("discrepancy", cmd_discrepancy)):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("graph")
        p.add_argument("--coloring", help="file with one colour per line")
        p.add_argument("--r", type=int, default=3)
        p.add_argument("--chi", type=int)
        p.add_argument("--strategy", default="min-index", choices=("min-index", "max-degree", "random"))
        p.set_defaults(func=func)

    p = sub.add_parser("cycles-lemma", parents=[common], help="induced cycles of distinct lengths")
    p.add_argument("graph")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--start", type=int, default=0)
    p.set_defaults(func=cmd_cycles_lemma)

    p = sub.add_parser("cycles-girth", parents=[common], help="long induced cycle in a high-girth graph")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_cycles_girth)

    p = sub.add_parser("paths-from", parents=[common], help="induced paths of a given order from a vertex")
    p.add_argument("graph")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_paths_from)

    p = sub.add_parser("embed-forest", parents=[common], help="induced rooted forest at given anchors")
    p.add_argument("graph")
    p.add_argument("--forest", required=True)
    p.add_argument("--anchors", required=True)
    p.set_defaults(func=cmd_embed_forest)

    p = sub.add_parser("scan-conjecture", parents=[common], help="scan small triangle-free graphs")
    p.add_argument("--conjecture", choices=scan.CONJECTURES, required=True)
    p.add_argument("--exhaustive", type=int, metavar="N_MAX")
    p.add_argument("--allow-8", action="store_true")
    p.add_argument("--sample", metavar="SPEC", help="e.g. kr_free:n=12,r=3")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--extra-colors", type=int, default=0)
    p.add_argument("--all", action="store_true", help="list 'holds' records too (JSON)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("experiment-random", parents=[common], help="extraction on G(n,p)")
    p.add_argument("--regime", choices=("sparse", "dense"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--c", type=float, default=0.7)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--no-timing", action="store_true", help="leave wall_ms blank for byte-identical output")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("regression", parents=[common], help="run the bound regression checks")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_regression)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (LiftFailed, EmbeddingFailed, GirthViolation) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (UsageError, RainbowForgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
