"""Conjecture scans over small triangle-free graphs.

Desk proxies (constants in the asymptotic statements are unknowable at
this scale, so the scans test constant-free versions):

``aravind``        min over optimal colourings of the largest rainbow induced path ORDER, required >= chi
``rainbow_is``     min over optimal colourings of the largest rainbow independent set, required >= ceil(chi/2)
``induced_path``   largest induced path ORDER, required >= chi
``induced_cycle``  largest induced cycle length, required >= chi (only for chi > 2)

Path LENGTH counts edges and ORDER counts vertices throughout the package.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterator

from ..errors import BudgetExceeded
from ..formats import read_graph6, write_graph6
from ..generators import c4_free_process, gnp, kr_free_process
from ..graph import (
    Graph,
    InducedCycleCert,
    InducedPathCert,
    ProperColoring,
    RainbowSetCert,
    is_kr_free,
    validate,
)
from ..oracles import (
    DEFAULT_BUDGET,
    SearchBudget,
    chromatic_number,
    enumerate_optimal_colorings,
    longest_induced_cycle,
    longest_induced_path,
    max_rainbow_independent_set,
    max_rainbow_induced_path,
)
from ..rng import derive_seeds

CONJECTURES = ("aravind", "rainbow_is", "induced_path", "induced_cycle")
COLORED = ("aravind", "rainbow_is")

PROXY_LABELS = {
    "aravind": "proxy: rainbow induced path order >= chi",
    "rainbow_is": "theorem: rainbow independent set >= ceil(chi/2)",
    "induced_path": "proxy: induced path order >= chi",
    "induced_cycle": "proxy: induced cycle length >= chi",
}


@dataclass(frozen=True)
class ScanResult:
    graph: str  # graph6
    conjecture: str
    chi: int | None
    measured: int | None
    required: int | None
    verdict: str  # holds | violated | budget_exceeded
    coloring: tuple[int, ...] | None = None  # minimising colouring for coloured conjectures
    certificate: tuple[int, ...] | None = None  # vertices of the best structure found
    label: str = ""

    def to_json(self) -> dict:
        out = asdict(self)
        out["coloring"] = list(self.coloring) if self.coloring is not None else None
        out["certificate"] = list(self.certificate) if self.certificate is not None else None
        return out


def _best_structure(conj: str, g: Graph, c: ProperColoring | None, budget: SearchBudget):
    if conj == "aravind":
        cert = max_rainbow_induced_path(g, c, budget)
        return cert.order, cert
    if conj == "rainbow_is":
        cert = max_rainbow_independent_set(g, c, budget)
        return cert.size, cert
    if conj == "induced_path":
        cert = longest_induced_path(g, budget)
        return cert.order, cert
    cert = longest_induced_cycle(g, budget)
    return (cert.length if cert else 0), cert


def _cert_vertices(cert) -> tuple[int, ...] | None:
    if cert is None:
        return None
    if isinstance(cert, RainbowSetCert):
        return tuple(sorted(cert.members))
    return tuple(cert.vertices)


def required_value(conj: str, chi: int) -> int:
    return -(-chi // 2) if conj == "rainbow_is" else chi


def evaluate(
    conj: str,
    g: Graph,
    budget: SearchBudget = DEFAULT_BUDGET,
    require_triangle_free: bool = True,
    extra_colors: int = 0,
) -> ScanResult | None:
    """Scan one graph.  ``None`` when the conjecture's hypothesis does not apply."""
    if conj not in CONJECTURES:
        raise ValueError(f"unknown conjecture {conj!r}")
    g6 = write_graph6(g).decode()
    if require_triangle_free and g.n and not is_kr_free(g, 3):
        return None
    try:
        chi = chromatic_number(g, budget)
        if conj == "induced_cycle" and chi <= 2:
            return None
        required = required_value(conj, chi)
        if conj in COLORED:
            worst = None
            for c in enumerate_optimal_colorings(g, budget, extra=extra_colors):
                value, cert = _best_structure(conj, g, c, budget)
                if worst is None or value < worst[0]:
                    worst = (value, cert, c)
            if worst is None:
                return None
            value, cert, c = worst
            colors = c.colors
        else:
            value, cert = _best_structure(conj, g, None, budget)
            colors = None
    except BudgetExceeded:
        return ScanResult(g6, conj, None, None, None, "budget_exceeded", label=PROXY_LABELS[conj])
    verdict = "holds" if value >= required else "violated"
    return ScanResult(g6, conj, chi, value, required, verdict, colors, _cert_vertices(cert), PROXY_LABELS[conj])


def revalidate(result: ScanResult, budget: SearchBudget = DEFAULT_BUDGET) -> tuple[bool, str]:
    """Re-check a violated record from its graph6, colouring and certificate alone."""
    if result.verdict != "violated":
        return False, "not a violation record"
    g = read_graph6(result.graph)
    conj = result.conjecture
    try:
        c = ProperColoring(g, result.coloring) if conj in COLORED else None
    except Exception as exc:  # NotProper or malformed
        return False, f"bad coloring: {exc}"
    verts = result.certificate
    if conj == "rainbow_is":
        cert = RainbowSetCert(frozenset(verts), c)
    elif conj == "induced_cycle":
        cert = InducedCycleCert(tuple(verts)) if verts else None
    else:
        cert = InducedPathCert(tuple(verts))
    if cert is not None:
        check = validate(cert, g)
        if not check:
            return False, f"certificate invalid: {check.reason}"
        if conj == "aravind" and not c.is_rainbow(verts):
            return False, "path is not rainbow"
    chi = chromatic_number(g, budget)
    if chi != result.chi:
        return False, f"recorded chi {result.chi}, recomputed {chi}"
    value, _ = _best_structure(conj, g, c, budget)
    size = len(verts) if verts else 0
    if value != result.measured or size != value:
        return False, f"recomputed optimum {value}, record says {result.measured} (certificate size {size})"
    if value >= required_value(conj, chi):
        return False, "recomputed value meets the requirement"
    return True, "violation confirmed"


# graph sources ---------------------------------------------------------------


def triangle_free_graphs(n: int) -> Iterator[Graph]:
    """All labelled triangle-free graphs on ``n`` vertices.

    Pairs are decided in lexicographic order; an edge is only offered when it
    closes no triangle with the edges already chosen.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rows = [0] * n
    total = len(pairs)

    def rec(i: int) -> Iterator[Graph]:
        if i == total:
            yield Graph.from_rows(list(rows))
            return
        yield from rec(i + 1)
        u, v = pairs[i]
        if not rows[u] & rows[v]:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            yield from rec(i + 1)
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)

    yield from rec(0)


def count_triangle_free_bruteforce(n: int) -> int:
    """Count triangle-free labelled graphs by testing all 2^C(n,2) edge sets."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    triples = [
        (pairs.index((a, b)), pairs.index((a, c)), pairs.index((b, c)))
        for a in range(n)
        for b in range(a + 1, n)
        for c in range(b + 1, n)
    ]
    tri_masks = [(1 << i) | (1 << j) | (1 << k) for i, j, k in triples]
    return sum(1 for s in range(1 << len(pairs)) if all(s & t != t for t in tri_masks))


def exhaustive_source(n_max: int, allow_8: bool = False) -> Iterator[Graph]:
    limit = 8 if allow_8 else 7
    if n_max > limit:
        raise ValueError(f"exhaustive scans are limited to n <= {limit}")
    for n in range(1, n_max + 1):
        yield from triangle_free_graphs(n)


def parse_generator(spec: str) -> tuple[str, dict]:
    """``family:key=value,...`` e.g. ``kr_free:n=12,r=3`` or ``gnp:n=10,p=0.3``."""
    family, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, _, val = item.partition("=")
        params[key.strip()] = float(val) if key.strip() == "p" else int(val)
    if family not in ("gnp", "kr_free", "c4_free", "girth5"):
        raise ValueError(f"unknown sampling family {family!r}")
    return family, params


def sampled_source(spec: str, trials: int, seed: int) -> Iterator[Graph]:
    family, params = parse_generator(spec)
    n = params["n"]
    for s in derive_seeds(seed, trials):
        if family == "gnp":
            yield gnp(n, params["p"], s)
        elif family == "kr_free":
            yield kr_free_process(n, params.get("r", 3), s)
        else:
            yield c4_free_process(n, s, girth5=family == "girth5")


def scan_conjecture(
    conj: str,
    graphs,
    budget: SearchBudget = DEFAULT_BUDGET,
    extra_colors: int = 0,
) -> Iterator[ScanResult]:
    for g in graphs:
        res = evaluate(conj, g, budget, extra_colors=extra_colors)
        if res is not None:
            yield res


def summarize(results) -> dict:
    counts = {"holds": 0, "violated": 0, "budget_exceeded": 0}
    for r in results:
        counts[r.verdict] += 1
    return counts
