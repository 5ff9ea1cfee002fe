"""Bound-and-certificate regression checks, one per acceptance criterion.

Every check either returns a short detail string (pass), raises
:class:`CheckFailure` (fail) or lets :class:`BudgetExceeded` escape, which is
reported as ``budget_exceeded``.  Oracle calls inside the checks share the
budget handed to :func:`theorem_regression_suite`.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass
from typing import Callable

from .. import induced, rainbow
from ..errors import BudgetExceeded
from ..formats import write_graph6
from ..generators import (
    c4_free_process,
    cycle,
    gnp,
    grotzsch,
    heawood,
    kr_free_process,
    mycielski_tower,
    petersen,
)
from ..graph import (
    ForestSpec,
    Graph,
    InducedPathCert,
    ProperColoring,
    girth,
    is_kr_free,
    validate,
)
from ..oracles import (
    DEFAULT_BUDGET,
    SearchBudget,
    chromatic_coloring,
    chromatic_number,
    enumerate_optimal_colorings,
    greedy_coloring,
    longest_induced_cycle,
    longest_induced_path,
    max_rainbow_independent_set,
    max_rainbow_induced_path,
)
from ..rng import SplitMix64, derive_seeds
from . import constants
from .experiment import experiment_random, summary, to_csv
from .scan import exhaustive_source, revalidate, sampled_source, scan_conjecture

STRATEGIES = (
    rainbow.PickStrategy("min_index"),
    rainbow.PickStrategy("max_degree"),
    rainbow.PickStrategy("seeded_random", 7),
)

# exact chi is computed for process graphs up to this order; above it the
# covering colouring certifies chi <= 2|X| on its own
EXACT_CHI_MAX_N = 40


class CheckFailure(AssertionError):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailure(message)


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    status: str  # pass | fail | budget_exceeded
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{self.status.upper()}] criterion {self.criterion} {self.name}: {self.detail} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


# --------------------------------------------------------------------------
# 1: rainbow independent set of size >= ceil(chi/2) in triangle-free graphs


def _extract_and_certify(g: Graph, c: ProperColoring, chi: int | None, budget: SearchBudget, label: str) -> int:
    """Run every strategy; return the smallest |X|.  ``chi=None`` means unknown."""
    smallest = None
    for strategy in STRATEGIES:
        cert, trace = rainbow.extract_rainbow_independent_set(
            g, c, 3, chi if chi is not None else 1, strategy, budget
        )
        _require(bool(validate(cert, g)), f"{label}: certificate invalid")
        problems = trace.audit()
        _require(not problems, f"{label}/{strategy.kind}: trace audit {problems}")
        cover = rainbow.covering_coloring(g, trace)
        _require(
            cover.num_colors <= 2 * cert.size,
            f"{label}/{strategy.kind}: covering colouring uses {cover.num_colors} > 2|X| = {2 * cert.size}",
        )
        if chi is not None:
            _require(
                cert.size >= -(-chi // 2),
                f"{label}/{strategy.kind}: |X| = {cert.size} < ceil({chi}/2)",
            )
        smallest = cert.size if smallest is None else min(smallest, cert.size)
    return smallest


def check_rainbow_bound(budget: SearchBudget = DEFAULT_BUDGET) -> str:
    named = [("C5", cycle(5)), ("grotzsch", grotzsch())]
    named += [(f"tower{h}", mycielski_tower(h)) for h in range(4)]
    colorings = 0
    for label, g in named:
        chi, best = chromatic_coloring(g, budget)
        if g.n <= 16:
            pool = list(enumerate_optimal_colorings(g, budget))
        else:
            pool = [ProperColoring(g, best), greedy_coloring(g)]
        for c in pool:
            _extract_and_certify(g, c, chi, budget, label)
        colorings += len(pool)

    exact = 0
    seeds = derive_seeds(11, 100)
    for i, s in enumerate(seeds):
        n = 20 + (i * 180) // 99
        g = kr_free_process(n, 3, s)
        _require(is_kr_free(g, 3), f"process graph n={n} seed={s} has a triangle")
        c = greedy_coloring(g)
        chi = None
        if n <= EXACT_CHI_MAX_N:
            chi = chromatic_number(g, budget)
            exact += 1
        _extract_and_certify(g, c, chi, budget, f"process n={n} seed={s}")
    return f"{colorings} colourings on named graphs, 100 process graphs ({exact} with exact chi) x {len(STRATEGIES)} strategies"


# --------------------------------------------------------------------------
# 2: discrepancy witness


def check_discrepancy(budget: SearchBudget = DEFAULT_BUDGET) -> str:
    runs = 0
    for h in range(4):
        g = mycielski_tower(h)
        chi, best = chromatic_coloring(g, budget)
        pool = list(enumerate_optimal_colorings(g, budget)) if g.n <= 11 else [ProperColoring(g, best)]
        for c in pool:
            for strategy in STRATEGIES:
                cert = rainbow.extract_discrepancy_witness(g, c, 3, strategy, chi, budget)
                label = f"tower{h}/{strategy.kind}"
                _require(bool(validate(cert, g)), f"{label}: certificate invalid")
                _require(len(cert.members) >= chi, f"{label}: |Y| = {len(cert.members)} < chi = {chi}")
                _require(
                    cert.chromatic_bound <= math.log2(chi) + 1,
                    f"{label}: chi(G[Y]) = {cert.chromatic_bound} > log2({chi}) + 1",
                )
                _require(
                    cert.rounds <= math.floor(math.log2(chi)) + 1,
                    f"{label}: {cert.rounds} rounds",
                )
                runs += 1
    return f"{runs} witness runs over chi = 2..5"


# --------------------------------------------------------------------------
# 3: induced cycles of distinct lengths from pending vertices


def _check_pending_cycles(g: Graph, t: int, start: int, label: str) -> list[int]:
    cycles = induced.cycles_from_pending(g, t, start)
    lengths = [c.length for c in cycles]
    _require(len(set(lengths)) == len(lengths), f"{label}: repeated lengths {lengths}")
    _require(all(x >= 3 for x in lengths), f"{label}: short cycle {lengths}")
    for c in cycles:
        _require(bool(validate(c, g)), f"{label}: cycle {c.vertices} does not validate")
    d = g.min_degree()
    need = -(-(d - 1) // (t - 1))
    _require(len(cycles) >= need, f"{label}: {len(cycles)} cycles, need {need}")
    return lengths


def check_pending_cycles(budget: SearchBudget = DEFAULT_BUDGET) -> str:
    for label, g in (("petersen", petersen()), ("heawood", heawood())):
        for v in range(g.n):
            lengths = _check_pending_cycles(g, 2, v, f"{label} start {v}")
            _require(len(lengths) >= 2, f"{label} start {v}: only {lengths}")
            _require(max(lengths) >= 4, f"{label} start {v}: no cycle of length >= 4")

    admitted = skipped = 0
    seeds = iter(derive_seeds(23, 1000))
    while admitted < 100:
        n = 10 + (admitted * 290) // 99
        g = c4_free_process(n, next(seeds), girth5=True)
        if g.min_degree() < 2:
            skipped += 1
            continue
        gi = girth(g)
        _require(gi >= 5, f"girth-5 process graph n={n} has girth {gi}")
        for start in (0, n - 1):
            _check_pending_cycles(g, 2, start, f"process n={n} start {start}")
        admitted += 1
    return f"all starts on Petersen/Heawood, 100 process graphs ({skipped} skipped for min degree < 2)"


# --------------------------------------------------------------------------
# 4: long induced cycles in high-girth graphs, sharp cases


def check_long_cycle(budget: SearchBudget = DEFAULT_BUDGET) -> str:
    cases = (("C5", cycle(5), 0, 5), ("petersen", petersen(), 0, 6), ("cycle21", cycle(21), 1, 21))
    parts = []
    for label, g, k, expected in cases:
        res = induced.long_induced_cycle_details(g, k)
        _require(bool(validate(res.cycle, g)), f"{label}: cycle invalid")
        _require(res.cycle.length == expected, f"{label}: length {res.cycle.length}, expected {expected}")
        _require(res.cycle.length >= res.guarantee, f"{label}: below guarantee {res.guarantee}")
        audit = induced.audit_tree_partition(g, res.partition)
        _require(all(audit.values()), f"{label}: partition audit {audit}")
        parts.append(f"{label}={res.cycle.length}")
    return ", ".join(parts)


# --------------------------------------------------------------------------
# 5: induced paths of a given order from every vertex


def _brute_induced_paths(g: Graph, v: int, order: int) -> set[tuple[int, ...]]:
    others = [u for u in range(g.n) if u != v]
    found = set()
    for rest in itertools.permutations(others, order - 1):
        cand = (v,) + rest
        if validate(InducedPathCert(cand), g):
            found.add(cand)
    return found


def check_paths_from(budget: SearchBudget = DEFAULT_BUDGET) -> str:
    g = petersen()
    counts = []
    for v in range(g.n):
        stream = [p.vertices for p in induced.induced_paths_from(g, v, 5, budget)]
        _require(len(stream) == len(set(stream)), f"vertex {v}: duplicate paths")
        _require(all(p[0] == v for p in stream), f"vertex {v}: path not starting at v")
        brute = _brute_induced_paths(g, v, 5)
        _require(set(stream) == brute, f"vertex {v}: stream {len(stream)} vs brute force {len(brute)}")
        _require(len(stream) >= 6, f"vertex {v}: {len(stream)} < 3! paths")
        counts.append(len(stream))
    return f"paths per vertex {sorted(set(counts))}, matches brute force"


# --------------------------------------------------------------------------
# 6: rooted forest embeddings


def small_forests(max_order: int) -> list[ForestSpec]:
    """Every labelled forest on 1..max_order vertices with every choice of roots."""
    out = []
    for n in range(1, max_order + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for r in range(n):
            for edges in itertools.combinations(pairs, r):
                g = Graph(n, edges)
                comps = g.components()
                if n - len(comps) != len(edges):
                    continue
                for roots in itertools.product(*comps):
                    out.append(ForestSpec(n, tuple(edges), tuple(roots)))
    return out


def check_forest_embedding(budget: SearchBudget = DEFAULT_BUDGET) -> str:
    g = petersen()
    runs = 0
    specs = small_forests(3)
    for spec in specs:
        k = len(spec.roots)
        for anchors in itertools.permutations(range(g.n), k):
            if not g.is_independent(anchors):
                continue
            cert = induced.embed_rooted_forest(g, spec, anchors)
            _require(bool(validate(cert, g)), f"{spec} at {anchors}: invalid embedding")
            runs += 1
    return f"{len(specs)} rooted forests, {runs} anchored embeddings"


# --------------------------------------------------------------------------
# 7: oracle cross-validation against brute force


def _random_instance(seed: int) -> tuple[Graph, ProperColoring]:
    rng = SplitMix64(seed)
    n = 1 + rng.below(12)
    g = gnp(n, rng.uniform(), rng.next_u64())
    order = list(range(n))
    rng.shuffle(order)
    colors = list(greedy_coloring(g, order).colors)
    nxt = max(colors, default=0) + 1
    for v in range(n):
        if rng.uniform() < 0.3:  # a fresh colour keeps the colouring proper
            colors[v] = nxt
            nxt += 1
    return g, ProperColoring(g, colors)


def brute_rainbow_independent(g: Graph, c: ProperColoring) -> int:
    best = 0
    for mask in range(1 << g.n):
        size = mask.bit_count()
        if size <= best:
            continue
        members = [v for v in range(g.n) if mask >> v & 1]
        if g.is_independent(members) and c.is_rainbow(members):
            best = size
    return best


def check_oracles(budget: SearchBudget = DEFAULT_BUDGET) -> str:
    small = 0
    for i, s in enumerate(derive_seeds(47, 200)):
        g, c = _random_instance(s)
        label = f"instance {i} (n={g.n})"
        cert = max_rainbow_independent_set(g, c, budget)
        _require(bool(validate(cert, g)), f"{label}: rainbow set invalid")
        brute = brute_rainbow_independent(g, c)
        _require(cert.size == brute, f"{label}: rainbow IS {cert.size} vs brute force {brute}")
        if g.n > 10:
            continue
        small += 1
        a = longest_induced_path(g, budget, pruned=True)
        b = longest_induced_path(g, budget, pruned=False)
        _require(a.order == b.order, f"{label}: induced path {a.order} vs unpruned {b.order}")
        _require(bool(validate(a, g)), f"{label}: path invalid")
        a = longest_induced_cycle(g, budget, pruned=True)
        b = longest_induced_cycle(g, budget, pruned=False)
        la, lb = (a.length if a else 0), (b.length if b else 0)
        _require(la == lb, f"{label}: induced cycle {la} vs unpruned {lb}")
        _require(a is None or bool(validate(a, g)), f"{label}: cycle invalid")
        a = max_rainbow_induced_path(g, c, budget, pruned=True)
        b = max_rainbow_induced_path(g, c, budget, pruned=False)
        _require(a.order == b.order, f"{label}: rainbow path {a.order} vs unpruned {b.order}")
    return f"200 rainbow-IS instances, {small} pruned/unpruned comparisons"


# --------------------------------------------------------------------------
# 8: random-graph floors and CSV reproducibility


def check_experiment_floors(budget: SearchBudget = DEFAULT_BUDGET) -> str:
    n, trials, seed = constants.REFERENCE_N, constants.REFERENCE_TRIALS, constants.REFERENCE_SEED
    sparse = experiment_random("sparse", n, trials, seed, c=constants.SPARSE_C)
    s = summary(sparse)
    _require(
        s["min_ratio"] >= constants.SPARSE_MIN_RATIO_FLOOR,
        f"sparse min ratio {s['min_ratio']:.6f} < floor {constants.SPARSE_MIN_RATIO_FLOOR}",
    )
    dense = experiment_random("dense", n, trials, seed, p=constants.DENSE_P)
    d = summary(dense)
    _require(d["min_size"] >= constants.DENSE_MIN_SIZE_FLOOR, f"dense min |X| {d['min_size']} < floor")
    _require(d["min_size"] >= constants.DENSE_NOMINAL_SIZE, "dense min |X| below ceil(1/(3p))")
    _require(
        round(d["min_ratio"], 6) >= constants.DENSE_MIN_RATIO_FLOOR,
        f"dense min ratio {d['min_ratio']:.6f} < floor",
    )
    again = experiment_random("sparse", n, trials, seed, c=constants.SPARSE_C)
    _require(to_csv(sparse, timing=False) == to_csv(again, timing=False), "sparse CSV differs between runs")
    return (
        f"sparse min ratio {s['min_ratio']:.6f}, dense min |X| {d['min_size']} "
        f"(min ratio {d['min_ratio']:.6f}), CSV reproducible"
    )


# --------------------------------------------------------------------------
# 9: exhaustive conjecture scan


def check_scan(budget: SearchBudget = DEFAULT_BUDGET, n_max: int = 7) -> str:
    def run(conj: str) -> dict:
        counts = {"holds": 0, "violated": 0, "budget_exceeded": 0}
        for res in scan_conjecture(conj, exhaustive_source(n_max), budget):
            counts[res.verdict] += 1
            if res.verdict == "budget_exceeded":
                raise BudgetExceeded(f"scan {conj}", budget.max_nodes)
            if res.verdict == "violated":
                ok, why = revalidate(res, budget)
                _require(ok, f"{conj} violation on {res.graph} does not revalidate: {why}")
        return counts

    rb = run("rainbow_is")
    _require(rb["violated"] == 0, f"rainbow_is violations: {rb['violated']}")
    ar = run("aravind")
    return (
        f"n<={n_max}: rainbow_is holds on {rb['holds']} graphs; "
        f"aravind proxy holds {ar['holds']}, violated {ar['violated']}"
    )


# --------------------------------------------------------------------------
# 10: determinism


def _artifacts(budget: SearchBudget) -> list[bytes]:
    out = [
        write_graph6(gnp(40, 0.2, 5)),
        write_graph6(kr_free_process(30, 3, 5)),
        write_graph6(kr_free_process(16, 4, 5)),
        write_graph6(c4_free_process(30, 5)),
        write_graph6(c4_free_process(30, 5, girth5=True)),
        to_csv(experiment_random("sparse", 300, 3, 5), timing=False).encode(),
        to_csv(experiment_random("dense", 300, 3, 5), timing=False).encode(),
    ]
    g = kr_free_process(60, 3, 9)
    c = greedy_coloring(g)
    _, trace = rainbow.extract_rainbow_independent_set(
        g, c, 3, 1, rainbow.PickStrategy("seeded_random", 3), budget
    )
    out.append(json.dumps(trace.to_json(), sort_keys=True).encode())
    scans = [r.to_json() for r in scan_conjecture("rainbow_is", sampled_source("kr_free:n=8,r=3", 5, 5), budget)]
    out.append(json.dumps(scans, sort_keys=True).encode())
    return out


def check_determinism(budget: SearchBudget = DEFAULT_BUDGET) -> str:
    first, second = _artifacts(budget), _artifacts(budget)
    for i, (a, b) in enumerate(zip(first, second)):
        _require(a == b, f"artifact {i} differs between runs")
    return f"{len(first)} seeded artifacts byte-identical"


# --------------------------------------------------------------------------

CHECKS: dict[int, tuple[str, Callable[..., str]]] = {
    1: ("rainbow_independent_set_bound", check_rainbow_bound),
    2: ("discrepancy_witness", check_discrepancy),
    3: ("pending_vertex_cycles", check_pending_cycles),
    4: ("long_induced_cycle_sharp_cases", check_long_cycle),
    5: ("induced_paths_from_count", check_paths_from),
    6: ("rooted_forest_embedding", check_forest_embedding),
    7: ("oracle_cross_validation", check_oracles),
    8: ("random_graph_floors", check_experiment_floors),
    9: ("exhaustive_conjecture_scan", check_scan),
    10: ("determinism", check_determinism),
}


def run_check(criterion: int, budget: SearchBudget = DEFAULT_BUDGET, **kwargs) -> CheckResult:
    name, fn = CHECKS[criterion]
    start = time.perf_counter()
    try:
        detail = fn(budget, **kwargs)
        status = "pass"
    except CheckFailure as exc:
        status, detail = "fail", str(exc)
    except BudgetExceeded as exc:
        status, detail = "budget_exceeded", str(exc)
    return CheckResult(criterion, name, status, detail, time.perf_counter() - start)


def exit_code(results: list[CheckResult]) -> int:
    if any(r.status == "fail" for r in results):
        return 1
    if any(r.status == "budget_exceeded" for r in results):
        return 2
    return 0


def theorem_regression_suite(
    budget: SearchBudget = DEFAULT_BUDGET,
    only: list[int] | None = None,
    report: Callable[[CheckResult], None] | None = None,
) -> tuple[int, list[CheckResult]]:
    """Run the selected checks (all by default); return (exit code, results)."""
    results = []
    for criterion in only or sorted(CHECKS):
        res = run_check(criterion, budget)
        if report is not None:
            report(res)
        results.append(res)
    return exit_code(results), results
