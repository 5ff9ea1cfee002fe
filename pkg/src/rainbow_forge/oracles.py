"""Exact exponential-time oracles for small graphs.

Every search counts the nodes it expands against a :class:`SearchBudget`
and raises :class:`~rainbow_forge.errors.BudgetExceeded` when the limit is
hit, so an aborted search is never mistaken for a negative answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .errors import BudgetExceeded
from .graph import (
    Graph,
    InducedCycleCert,
    InducedPathCert,
    ProperColoring,
    RainbowSetCert,
    iter_bits,
    lowest_bit,
)

DEFAULT_MAX_NODES = 2_000_000


@dataclass(frozen=True)
class SearchBudget:
    """Node limit per search and an optional vertex-count admission limit.

    ``max_n=None`` means each operation uses its own default ceiling.
    """

    max_nodes: int = DEFAULT_MAX_NODES
    max_n: int | None = None

    def admit(self, n: int, default: int, what: str) -> "_Ticker":
        limit = default if self.max_n is None else self.max_n
        if n > limit:
            raise BudgetExceeded(what, limit, kind="size")
        return _Ticker(self.max_nodes, what)


DEFAULT_BUDGET = SearchBudget()


class _Ticker:
    __slots__ = ("nodes", "limit", "what")

    def __init__(self, limit: int, what: str):
        self.nodes = 0
        self.limit = limit
        self.what = what

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(self.what, self.limit)


# --------------------------------------------------------------------------
# cliques and independent sets


def _color_classes(rows: Sequence[int], cand: int) -> list[tuple[int, int]]:
    """Greedy colouring of ``cand``; returns (vertex, colour number) sorted by colour."""
    out = []
    uncolored = cand
    k = 0
    while uncolored:
        k += 1
        q = uncolored
        while q:
            v = lowest_bit(q)
            q &= ~rows[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            out.append((v, k))
    return out


def _max_clique_bits(rows: Sequence[int], cand: int, ticker: _Ticker) -> list[int]:
    best: list[int] = []

    def expand(current: list[int], p: int) -> None:
        nonlocal best
        order = _color_classes(rows, p)
        for v, bound in reversed(order):
            if len(current) + bound <= len(best):
                return
            ticker.tick()
            current.append(v)
            q = p & rows[v]
            if q:
                expand(current, q)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            p &= ~(1 << v)

    if cand:
        expand([], cand)
    return sorted(best)


def max_clique(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> frozenset:
    ticker = budget.admit(g.n, 60, "max_clique")
    return frozenset(_max_clique_bits(g.rows, g.full_mask, ticker))


def clique_number(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> int:
    return len(max_clique(g, budget))


def _max_independent_bits(rows: Sequence[int], n: int, ticker: _Ticker) -> list[int]:
    full = (1 << n) - 1
    comp = [~r & full & ~(1 << i) for i, r in enumerate(rows)]
    return _max_clique_bits(comp, full, ticker)


class IndependentSet(NamedTuple):
    size: int
    witness: frozenset


def independence_number(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> IndependentSet:
    """Exact alpha(g) with one maximum independent set (clique search on the complement)."""
    ticker = budget.admit(g.n, 60, "independence_number")
    best = _max_independent_bits(g.rows, g.n, ticker)
    return IndependentSet(len(best), frozenset(best))


def max_rainbow_independent_set(
    g: Graph, c: ProperColoring, budget: SearchBudget = DEFAULT_BUDGET
) -> RainbowSetCert:
    """Largest independent set with pairwise distinct colours.

    Reduction: a maximum independent set of g plus a clique on every colour class.
    """
    ticker = budget.admit(g.n, 60, "max_rainbow_independent_set")
    if len(c) != g.n:
        raise ValueError("coloring does not match graph")
    classes = c.class_masks()
    rows = [row | (classes[c[v]] & ~(1 << v)) for v, row in enumerate(g.rows)]
    best = _max_independent_bits(rows, g.n, ticker)
    return RainbowSetCert(frozenset(best), c)


# --------------------------------------------------------------------------
# colouring


def _saturation_pick(rows, degrees, uncolored: int, classes: list[int], k: int):
    """Uncoloured vertex with fewest available colours (ties: max degree, min index)."""
    best = None
    best_key = None
    fresh = 1 if len(classes) < k else 0
    for v in iter_bits(uncolored):
        row = rows[v]
        avail = [i for i, cls in enumerate(classes) if not row & cls]
        key = (len(avail) + fresh, -degrees[v], v)
        if best_key is None or key < best_key:
            best_key, best = key, (v, avail)
            if key[0] == 0:
                break
    return best


def dsatur_coloring(g: Graph) -> list[int]:
    """Greedy DSATUR colouring, colours 1..k."""
    rows, degrees = g.rows, g.degrees()
    classes: list[int] = []
    colors = [0] * g.n
    uncolored = g.full_mask
    while uncolored:
        v, avail = _saturation_pick(rows, degrees, uncolored, classes, g.n)
        if avail:
            i = avail[0]
            classes[i] |= 1 << v
        else:
            classes.append(1 << v)
            i = len(classes) - 1
        colors[v] = i + 1
        uncolored &= ~(1 << v)
    return colors


def greedy_coloring(g: Graph, order: Sequence[int] | None = None) -> ProperColoring:
    """First-fit colouring in ``order`` (default: increasing vertex index)."""
    rows = g.rows
    classes: list[int] = []
    colors = [0] * g.n
    for v in order if order is not None else range(g.n):
        row = rows[v]
        for i, cls in enumerate(classes):
            if not row & cls:
                classes[i] = cls | (1 << v)
                colors[v] = i + 1
                break
        else:
            classes.append(1 << v)
            colors[v] = len(classes)
    return ProperColoring(g, colors)


def _k_colorable(g: Graph, k: int, ticker: _Ticker) -> list[int] | None:
    rows, degrees = g.rows, g.degrees()
    colors = [0] * g.n
    classes: list[int] = []

    def solve(uncolored: int) -> bool:
        if not uncolored:
            return True
        ticker.tick()
        v, avail = _saturation_pick(rows, degrees, uncolored, classes, k)
        rest = uncolored & ~(1 << v)
        bit = 1 << v
        for i in avail:
            classes[i] |= bit
            colors[v] = i + 1
            if solve(rest):
                return True
            classes[i] &= ~bit
        if len(classes) < k:
            # opening a new class: all unused colours are symmetric
            classes.append(bit)
            colors[v] = len(classes)
            if solve(rest):
                return True
            classes.pop()
        colors[v] = 0
        return False

    return list(colors) if solve(g.full_mask) else None


def chromatic_coloring(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> tuple[int, list[int]]:
    """Exact chi(g) and an optimal colouring (colours 1..chi)."""
    ticker = budget.admit(g.n, 40, "chromatic_number")
    if g.n == 0:
        return 0, []
    lower = len(_max_clique_bits(g.rows, g.full_mask, ticker))
    upper_colors = dsatur_coloring(g)
    upper = max(upper_colors)
    for k in range(lower, upper):
        found = _k_colorable(g, k, ticker)
        if found is not None:
            return k, found
    return upper, upper_colors


def chromatic_number(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> int:
    return chromatic_coloring(g, budget)[0]


def enumerate_optimal_colorings(
    g: Graph, budget: SearchBudget = DEFAULT_BUDGET, extra: int = 0
) -> Iterator[ProperColoring]:
    """Stream every proper colouring using exactly chi(g) + ``extra`` colours.

    Colourings are canonical up to renaming colours: vertex 0 gets colour 1
    and each vertex uses at most one more than the largest colour before it,
    so colour classes are numbered by their least vertex.
    """
    ticker = budget.admit(g.n, 16, "enumerate_optimal_colorings")
    chi = chromatic_number(g, budget)
    k = chi + extra
    n, rows = g.n, g.rows
    if n == 0:
        if k == 0:
            yield ProperColoring(g, [])
        return
    colors = [0] * n
    classes = [0] * (k + 1)

    def assign(v: int, used: int) -> Iterator[list[int]]:
        if v == n:
            if used == k:
                yield list(colors)
            return
        if used + (n - v) < k:
            return
        ticker.tick()
        row = rows[v]
        for col in range(1, min(used + 1, k) + 1):
            if row & classes[col]:
                continue
            colors[v] = col
            classes[col] |= 1 << v
            yield from assign(v + 1, max(used, col))
            classes[col] &= ~(1 << v)
        colors[v] = 0

    for cols in assign(0, 0):
        yield ProperColoring(g, cols)


# --------------------------------------------------------------------------
# induced paths and cycles


def _reach(rows: Sequence[int], start: int, allowed: int) -> int:
    """Vertices of ``allowed`` reachable from ``start`` through ``allowed`` (start excluded)."""
    seen = 0
    frontier = rows[start] & allowed
    while frontier:
        seen |= frontier
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & allowed & ~seen
    return seen


def longest_induced_path(
    g: Graph, budget: SearchBudget = DEFAULT_BUDGET, pruned: bool = True
) -> InducedPathCert:
    """A maximum-order induced path.

    The pruned search only records paths whose last vertex exceeds the first
    (each path is explored from its smaller endpoint) and cuts branches whose
    reachable extension set cannot beat the incumbent.  ``pruned=False``
    explores every induced path in both directions with no bound.
    """
    ticker = budget.admit(g.n, 30, "longest_induced_path")
    n, rows, full = g.n, g.rows, g.full_mask
    if n == 0:
        return InducedPathCert(())
    best: list[int] = [0]

    def dfs(path: list[int], blocked: int) -> None:
        ticker.tick()
        last = path[-1]
        if len(path) > len(best) and (not pruned or len(path) == 1 or last > path[0]):
            best[:] = path
        new_blocked = blocked | rows[last]
        for w in iter_bits(rows[last] & ~blocked):
            if pruned:
                allowed = full & ~new_blocked
                if len(path) + 1 + _reach(rows, w, allowed).bit_count() <= len(best):
                    continue
            path.append(w)
            dfs(path, new_blocked | (1 << w))
            path.pop()

    for s in range(n):
        dfs([s], 1 << s)
    return InducedPathCert(tuple(best))


def longest_induced_cycle(
    g: Graph, budget: SearchBudget = DEFAULT_BUDGET, pruned: bool = True
) -> InducedCycleCert | None:
    """A maximum-length induced cycle, or ``None`` when ``g`` is a forest.

    Cycles are grown from their least vertex ``s`` through larger vertices;
    a candidate adjacent to ``s`` closes the cycle.
    """
    ticker = budget.admit(g.n, 30, "longest_induced_cycle")
    n, rows, full = g.n, g.rows, g.full_mask
    best: list[int] = []

    for s in range(n):
        above = full & ~((1 << (s + 1)) - 1)
        srow = rows[s]

        def dfs(path: list[int], pathmask: int, interior: int) -> None:
            ticker.tick()
            last = path[-1]
            m = len(path)
            cand = rows[last] & above & ~pathmask & ~interior
            next_interior = interior | rows[last] if m >= 2 else interior
            for w in iter_bits(cand):
                if m >= 2 and srow >> w & 1:
                    if m + 1 > len(best) and (not pruned or path[1] < w):
                        best[:] = path + [w]
                    continue
                nmask = pathmask | (1 << w)
                if pruned:
                    room = (above & ~nmask & ~next_interior).bit_count()
                    if m + 1 + room <= len(best):
                        continue
                path.append(w)
                dfs(path, nmask, next_interior)
                path.pop()

        if pruned and 1 + _reach(rows, s, above).bit_count() <= len(best):
            continue
        dfs([s], 1 << s, 0)
    return InducedCycleCert(tuple(best)) if best else None


def max_rainbow_induced_path(
    g: Graph, c: ProperColoring, budget: SearchBudget = DEFAULT_BUDGET, pruned: bool = True
) -> InducedPathCert:
    """Maximum-order induced path whose vertices carry pairwise distinct colours."""
    ticker = budget.admit(g.n, 24, "max_rainbow_induced_path")
    n, rows, full = g.n, g.rows, g.full_mask
    if len(c) != n:
        raise ValueError("coloring does not match graph")
    if n == 0:
        return InducedPathCert(())
    classes = c.class_masks()
    class_list = list(classes.values())
    best: list[int] = [0]

    def dfs(path: list[int], blocked: int, used: int) -> None:
        ticker.tick()
        last = path[-1]
        if len(path) > len(best) and (not pruned or len(path) == 1 or last > path[0]):
            best[:] = path
        new_blocked = blocked | rows[last]
        for w in iter_bits(rows[last] & ~blocked & ~used):
            wused = used | classes[c[w]]
            if pruned:
                allowed = full & ~new_blocked & ~wused
                reach = _reach(rows, w, allowed)
                colors_left = sum(1 for cls in class_list if cls & reach)
                if len(path) + 1 + min(reach.bit_count(), colors_left) <= len(best):
                    continue
            path.append(w)
            dfs(path, new_blocked | (1 << w), wused)
            path.pop()

    for s in range(n):
        dfs([s], 1 << s, classes[c[s]])
    return InducedPathCert(tuple(best))
