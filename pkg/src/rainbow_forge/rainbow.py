"""Rainbow independent-set extraction and the nested discrepancy procedure.

The extraction repeatedly takes a vertex ``v`` of the surviving graph,
deletes its colour class, and then looks at the surviving neighbourhood
``N``.  If ``N`` needs more than ``chi**((r-3)/(r-2))`` colours the search
recurses into ``N`` (which is K_{r-1}-free); otherwise ``N`` is deleted and
the loop goes on.  The chosen vertices form a rainbow independent set of
size at least ``ceil(chi**(1/(r-2)) / 2)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import PreconditionFailed
from .graph import (
    DiscrepancyCert,
    Graph,
    ProperColoring,
    RainbowSetCert,
    induced_rows,
    induced_subgraph,
    is_kr_free,
    iter_bits,
    lowest_bit,
    to_mask,
    validate,
)
from .oracles import DEFAULT_BUDGET, SearchBudget, chromatic_number, dsatur_coloring
from .rng import SplitMix64

log = logging.getLogger(__name__)

# K_r-freeness for r >= 4 is only checked below this order
FREENESS_CHECK_MAX_N = 400


@dataclass(frozen=True)
class PickStrategy:
    """How the next vertex is chosen: ``min_index``, ``max_degree`` or ``seeded_random``."""

    kind: str = "min_index"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("min_index", "max_degree", "seeded_random"):
            raise ValueError(f"unknown pick strategy {self.kind!r}")

    @classmethod
    def parse(cls, name: str, seed: int = 0) -> "PickStrategy":
        key = {"min-index": "min_index", "max-degree": "max_degree", "random": "seeded_random"}.get(name, name)
        return cls(key, seed)


MIN_INDEX = PickStrategy()


class _Picker:
    def __init__(self, strategy: PickStrategy, rows):
        self.kind = strategy.kind
        self.rows = rows
        self.rng = SplitMix64(strategy.seed) if self.kind == "seeded_random" else None

    def pick(self, alive: int) -> int:
        if self.kind == "min_index":
            return lowest_bit(alive)
        if self.kind == "max_degree":
            rows = self.rows
            return max(iter_bits(alive), key=lambda v: ((rows[v] & alive).bit_count(), -v))
        k = self.rng.below(alive.bit_count())
        for i, v in enumerate(iter_bits(alive)):
            if i == k:
                return v
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class IterationRecord:
    v: int
    S: frozenset  # colour class of v within the surviving graph
    N: frozenset  # surviving neighbourhood of v after deleting S
    remaining: int  # surviving vertex count after this iteration


@dataclass
class ExtractionTrace:
    r: int
    chi: int
    vertices: frozenset  # vertex set of the graph at this recursion level
    iterations: list[IterationRecord] = field(default_factory=list)
    outcome: str = "completed"  # or "recursed"
    child: "ExtractionTrace | None" = None
    stop_chi: int | None = None  # exact chi(G'[N]) that triggered recursion
    result: frozenset = frozenset()
    warnings: list[str] = field(default_factory=list)

    @property
    def threshold(self) -> float:
        return self.chi ** ((self.r - 3) / (self.r - 2)) if self.chi > 0 else 0.0

    @property
    def X(self) -> frozenset:
        return frozenset(rec.v for rec in self.iterations)

    def audit(self) -> list[str]:
        """Failed covering/counting conditions at every level (empty list: all good)."""
        problems = []
        sizes = [len(self.vertices)] + [rec.remaining for rec in self.iterations]
        if any(b >= a for a, b in zip(sizes, sizes[1:])):
            problems.append("surviving vertex counts not strictly decreasing")
        if self.outcome == "completed":
            covered = frozenset().union(*(rec.S | rec.N for rec in self.iterations)) if self.iterations else frozenset()
            if covered != self.vertices:
                problems.append("S_i and N_i do not cover the level's vertex set")
            k = len(self.iterations)
            if k * (1 + self.threshold) < self.chi * (1 - 1e-12):
                problems.append(f"|X|(1+threshold) = {k * (1 + self.threshold):.6g} < chi = {self.chi}")
        elif self.child is not None:
            problems.extend(self.child.audit())
        return problems

    def to_json(self) -> dict:
        out = {
            "r": self.r,
            "chi": self.chi,
            "threshold": self.threshold,
            "outcome": self.outcome,
            "iterations": [
                {"v": rec.v, "S": sorted(rec.S), "N": sorted(rec.N), "remaining": rec.remaining}
                for rec in self.iterations
            ],
            "result": sorted(self.result),
            "warnings": list(self.warnings),
        }
        if self.child is not None:
            out["stop_chi"] = self.stop_chi
            out["child"] = self.child.to_json()
        return out


def rainbow_guarantee(chi: int, r: int) -> int:
    """ceil(chi**(1/(r-2)) / 2) computed in exact integer arithmetic."""
    if chi <= 0:
        return 0
    m = 1
    while (2 * m) ** (r - 2) < chi:
        m += 1
    return m


def _exceeds_threshold(chi_n: int, chi: int, r: int) -> bool:
    # chi_n > chi**((r-3)/(r-2))  <=>  chi_n**(r-2) > chi**(r-3)
    return chi_n ** (r - 2) > chi ** (r - 3)


def _extract(rows, colors, class_masks, alive: int, r: int, chi: int, picker: _Picker, budget: SearchBudget) -> ExtractionTrace:
    trace = ExtractionTrace(r=r, chi=chi, vertices=frozenset(iter_bits(alive)))
    while alive:
        v = picker.pick(alive)
        s_mask = class_masks[colors[v]] & alive
        alive &= ~s_mask
        n_mask = rows[v] & alive
        if r > 3 and n_mask:
            sub_rows, to_old = induced_rows(rows, n_mask)
            chi_n = chromatic_number(Graph.from_rows(sub_rows), budget)
            if _exceeds_threshold(chi_n, chi, r):
                trace.iterations.append(IterationRecord(v, frozenset(iter_bits(s_mask)), frozenset(iter_bits(n_mask)), alive.bit_count()))
                trace.outcome = "recursed"
                trace.stop_chi = chi_n
                trace.child = _extract(rows, colors, class_masks, n_mask, r - 1, chi_n, picker, budget)
                trace.result = trace.child.result
                return trace
        alive &= ~n_mask
        trace.iterations.append(IterationRecord(v, frozenset(iter_bits(s_mask)), frozenset(iter_bits(n_mask)), alive.bit_count()))
    trace.result = trace.X
    return trace


def _check_inputs(g: Graph, c: ProperColoring, r: int, check_free: bool = True) -> list[str]:
    if r < 3:
        raise ValueError("r must be at least 3")
    ProperColoring(g, c.colors)  # re-validate: raises NotProper
    if not check_free:
        return ["kr_freeness_not_checked"]
    if r == 3 or g.n <= FREENESS_CHECK_MAX_N:
        if not is_kr_free(g, r):
            raise PreconditionFailed(f"graph contains K_{r}")
        return []
    log.warning("K_%d-freeness not checked for n=%d; trusted", r, g.n)
    return ["kr_freeness_unchecked"]


def extract_rainbow_independent_set(
    g: Graph,
    c: ProperColoring,
    r: int,
    chi: int,
    strategy: PickStrategy = MIN_INDEX,
    budget: SearchBudget = DEFAULT_BUDGET,
    check_free: bool = True,
) -> tuple[RainbowSetCert, ExtractionTrace]:
    """Run the extraction on a K_r-free graph with proper colouring ``c``.

    ``chi`` is chi(g) or a lower bound for it; it fixes the stop threshold.
    Raises ``NotProper``, ``PreconditionFailed`` (a K_r was found) or
    ``BudgetExceeded`` (exact chi of a neighbourhood, only when r >= 4).
    With ``check_free=False`` the K_r-freeness test is skipped (random graphs
    contain triangles); the output is still a valid rainbow independent set
    but the size guarantee no longer applies.
    """
    warnings = _check_inputs(g, c, r, check_free)
    picker = _Picker(strategy, g.rows)
    trace = _extract(g.rows, c.colors, c.class_masks(), g.full_mask, r, chi, picker, budget)
    trace.warnings.extend(warnings)
    cert = RainbowSetCert(trace.result, c)
    check = validate(cert, g)
    if not check:
        raise RuntimeError(f"extraction produced an invalid certificate: {check.reason}")
    return cert, trace


def covering_coloring(g: Graph, trace: ExtractionTrace) -> ProperColoring:
    """Proper colouring of ``g`` read off a completed top-level trace.

    Each S_i gets one colour and each N_i is coloured on its own, so for
    r = 3 this certifies chi(g) <= 2|X| without computing chi(g).
    """
    if trace.outcome != "completed" or trace.vertices != frozenset(range(g.n)):
        raise ValueError("need a completed trace over the whole graph")
    colors = [0] * g.n
    nxt = 1
    for rec in trace.iterations:
        for v in rec.S:
            colors[v] = nxt
        nxt += 1
        if rec.N:
            sub = induced_subgraph(g, rec.N)
            local = dsatur_coloring(sub.graph)
            for i, v in enumerate(sub.to_old):
                colors[v] = nxt + local[i] - 1
            nxt += max(local)
    return ProperColoring(g, colors)


def extract_discrepancy_witness(
    g: Graph,
    c: ProperColoring,
    r: int = 3,
    strategy: PickStrategy = MIN_INDEX,
    chi: int | None = None,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> DiscrepancyCert:
    """Rainbow vertex set Y with |Y| >= chi(g) whose induced chromatic number is small.

    Each round extracts a rainbow independent set X from what is left,
    deletes every colour class meeting X and adds X to Y.  Each round adds one
    independent layer, so chi(g[Y]) is at most the number of rounds.
    """
    warnings = _check_inputs(g, c, r)
    if chi is None:
        chi = chromatic_number(g, budget)
    if chi > c.num_colors:
        raise ValueError(f"chi={chi} exceeds the {c.num_colors} colours in use")
    rows, colors, classes = g.rows, c.colors, c.class_masks()
    picker = _Picker(strategy, rows)
    alive = g.full_mask
    y_mask = 0
    rounds = 0
    while y_mask.bit_count() < chi:
        need = chi - y_mask.bit_count()
        trace = _extract(rows, colors, classes, alive, r, need, picker, budget)
        x_mask = to_mask(trace.result)
        for v in trace.result:
            alive &= ~classes[colors[v]]
        y_mask |= x_mask
        rounds += 1
    members = frozenset(iter_bits(y_mask))
    bound = chromatic_number(induced_subgraph(g, members).graph, budget)
    if warnings:
        log.warning("discrepancy witness computed with unchecked K_%d-freeness", r)
    return DiscrepancyCert(members, c, bound, rounds)
