"""Induced paths, cycles and forests in graphs of large girth or bounded codegree."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import EmbeddingFailed, GirthViolation, LiftFailed, PreconditionFailed
from .graph import (
    ForestEmbeddingCert,
    ForestSpec,
    Graph,
    InducedCycleCert,
    InducedPathCert,
    girth,
    is_k2t_free,
    iter_bits,
    lowest_bit,
    to_mask,
    validate,
)
from .oracles import DEFAULT_BUDGET, SearchBudget


def _validated(cert, g: Graph):
    check = validate(cert, g)
    if not check:
        raise RuntimeError(f"{type(cert).__name__} failed validation: {check.reason}")
    return cert


# --------------------------------------------------------------------------
# pending vertices


def maximal_induced_path(g: Graph, start: int) -> InducedPathCert:
    """Greedy induced path through ``start`` that cannot be extended at either end.

    The front end is extended first, always with the smallest admissible
    vertex; then the back end.
    """
    rows = g.rows
    path = deque([start])
    pathmask = 1 << start

    def grow(end: int) -> int | None:
        endbit = 1 << end
        for w in iter_bits(rows[end] & ~pathmask):
            if rows[w] & pathmask == endbit:
                return w
        return None

    for front in (True, False):
        while True:
            w = grow(path[0] if front else path[-1])
            if w is None:
                break
            if front:
                path.appendleft(w)
            else:
                path.append(w)
            pathmask |= 1 << w
    return InducedPathCert(tuple(path))


def pending_cycles(g: Graph, start: int) -> dict[int, InducedCycleCert]:
    """First-neighbour position -> induced cycle, from a maximal path through ``start``.

    With ``P = p_1 p_2 ...`` the path, every neighbour ``v`` of ``p_1`` off the
    path (a pending vertex) has a first neighbour ``p_j``, j >= 2, and
    ``v, p_1, ..., p_j`` is an induced cycle of length ``j + 1``.  Positions
    are 1-based ``j``; the smallest pending vertex represents each position.
    """
    rows = g.rows
    p = maximal_induced_path(g, start).vertices
    pathmask = to_mask(p)
    out: dict[int, InducedCycleCert] = {}
    for v in iter_bits(rows[p[0]] & ~pathmask):
        j = next((i for i in range(1, len(p)) if rows[v] >> p[i] & 1), None)
        if j is None:
            raise RuntimeError(f"pending vertex {v} extends the path; path was not maximal")
        if j + 1 not in out:
            out[j + 1] = InducedCycleCert((v,) + p[: j + 1])
    return out


def cycles_from_pending(g: Graph, t: int, start: int) -> list[InducedCycleCert]:
    """Induced cycles of pairwise distinct lengths in a K_{2,t}-free graph.

    At least ``ceil((d-1)/(t-1))`` cycles come back when the minimum degree
    is ``d``, sorted by length.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    if g.n == 0 or g.min_degree() < 2:
        raise PreconditionFailed("minimum degree must be at least 2")
    if not is_k2t_free(g, t):
        raise PreconditionFailed(f"graph is not K_{{2,{t}}}-free")
    cycles = pending_cycles(g, start)
    return [_validated(cycles[j], g) for j in sorted(cycles)]


# --------------------------------------------------------------------------
# ball partition and tree contraction


def _ball(rows: Sequence[int], v: int, radius: int) -> int:
    ball = frontier = 1 << v
    for _ in range(radius):
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= rows[u]
        frontier = nxt & ~ball
        if not frontier:
            break
        ball |= frontier
    return ball


def separated_set(g: Graph, k: int) -> frozenset:
    """Greedy (increasing index) maximal set of vertices pairwise at distance >= 2k+1."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    covered = 0
    chosen = []
    for v in range(g.n):
        if not covered >> v & 1:
            chosen.append(v)
            covered |= _ball(g.rows, v, 2 * k)
    return frozenset(chosen)


@dataclass(frozen=True)
class TreePartitionMinor:
    k: int
    centers: tuple[int, ...]  # sorted; quotient vertex i is centers[i]
    part_of: tuple[int, ...]  # vertex -> quotient index of its part
    part_trees: tuple[tuple[tuple[int, int], ...], ...]  # edges of each part's tree
    quotient: Graph
    cross_edge: dict  # (i, j), i < j -> (u, v) with u in part i, v in part j

    def part_mask(self, i: int) -> int:
        return to_mask(v for v, p in enumerate(self.part_of) if p == i)

    def edge_between(self, i: int, j: int) -> tuple[int, int]:
        """The g-edge joining parts i and j, oriented from i to j."""
        if i < j:
            return self.cross_edge[(i, j)]
        u, v = self.cross_edge[(j, i)]
        return v, u


def tree_partition(g: Graph, centers, k: int) -> TreePartitionMinor:
    """Grow radius-k balls around ``centers`` layer by layer into a partition of V(g).

    A vertex at distance L > k from the centres joins the lowest-indexed part
    among its neighbours at distance L - 1.  Raises ``GirthViolation`` if a
    part is not an induced tree or two parts are joined by more than one edge.
    """
    rows = g.rows
    centers = tuple(sorted(centers))
    part = [-1] * g.n
    for i, x in enumerate(centers):
        part[x] = i
    layer = to_mask(centers)
    seen = layer
    depth = 0
    while layer:
        depth += 1
        nxt = 0
        for v in iter_bits(layer):
            nxt |= rows[v]
        nxt &= ~seen
        for w in iter_bits(nxt):
            owners = {part[u] for u in iter_bits(rows[w] & layer)}
            if depth <= k and len(owners) > 1:
                raise PreconditionFailed(f"vertex {w} lies within distance {k} of two centres")
            part[w] = min(owners)
        seen |= nxt
        layer = nxt
    if -1 in part:
        raise PreconditionFailed(f"vertex {part.index(-1)} is not reachable from any centre")

    masks = [0] * len(centers)
    for v, i in enumerate(part):
        masks[i] |= 1 << v
    trees = []
    for i, mask in enumerate(masks):
        edges = [(u, w) for u in iter_bits(mask) for w in iter_bits(rows[u] & mask) if u < w]
        connected = _ball(_restricted(rows, mask), centers[i], g.n) == mask
        if not connected or len(edges) != mask.bit_count() - 1:
            raise GirthViolation(f"part of centre {centers[i]} does not induce a tree", witness=sorted(iter_bits(mask)))
        trees.append(tuple(edges))

    cross: dict = {}
    for u, v in g.edges():
        a, b = part[u], part[v]
        if a == b:
            continue
        key, edge = ((a, b), (u, v)) if a < b else ((b, a), (v, u))
        if key in cross:
            raise GirthViolation(
                f"parts of centres {centers[key[0]]} and {centers[key[1]]} share two edges",
                witness=(cross[key], edge),
            )
        cross[key] = edge
    quotient = Graph(len(centers), sorted(cross))
    return TreePartitionMinor(k, centers, tuple(part), tuple(trees), quotient, cross)


def _restricted(rows: Sequence[int], mask: int) -> list[int]:
    return [r & mask for r in rows]


def audit_tree_partition(g: Graph, tpm: TreePartitionMinor) -> dict[str, bool]:
    """Independent re-check of every structural claim about a partition."""
    rows = g.rows
    q = len(tpm.centers)
    masks = [tpm.part_mask(i) for i in range(q)]
    union = 0
    disjoint = True
    for m in masks:
        disjoint &= not (union & m)
        union |= m
    trees = True
    for i, m in enumerate(masks):
        sub = _restricted(rows, m)
        edges = sum(sub[v].bit_count() for v in iter_bits(m)) // 2
        trees &= edges == m.bit_count() - 1 and _ball(sub, tpm.centers[i], g.n) == m
    balls = all(_ball(rows, x, tpm.k) & ~masks[i] == 0 for i, x in enumerate(tpm.centers))
    counts: dict = {}
    for u, v in g.edges():
        a, b = tpm.part_of[u], tpm.part_of[v]
        if a != b:
            key = (min(a, b), max(a, b))
            counts[key] = counts.get(key, 0) + 1
    single = all(c == 1 for c in counts.values())
    quotient_ok = sorted(counts) == tpm.quotient.edges()
    dists = [g.distances_from(x) for x in tpm.centers]
    separated = all(dists[i][y] >= 2 * tpm.k + 1 for i in range(q) for y in tpm.centers if y != tpm.centers[i])
    dominating = all(min(d[v] for d in dists) <= 2 * tpm.k for v in range(g.n)) if q else g.n == 0
    return {
        "partition": disjoint and union == g.full_mask,
        "trees": trees,
        "balls": balls,
        "single_cross_edge": single,
        "quotient": quotient_ok,
        "separated": separated,
        "dominating": dominating,
    }


def _tree_path(rows: Sequence[int], mask: int, a: int, b: int) -> list[int]:
    parent = {a: a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in iter_bits(rows[u] & mask):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    out = [b]
    while out[-1] != a:
        out.append(parent[out[-1]])
    return out[::-1]


def lift_cycle(g: Graph, tpm: TreePartitionMinor, qcycle: InducedCycleCert) -> InducedCycleCert:
    """Pull an induced cycle of the quotient back to an induced cycle of ``g``.

    Consecutive parts are joined through their unique cross edge; inside a
    part the entry and exit vertices are joined by the tree path.
    """
    check = validate(qcycle, tpm.quotient)
    if not check:
        raise PreconditionFailed(f"quotient cycle invalid: {check.reason}")
    q = qcycle.vertices
    m = len(q)
    edges = [tpm.edge_between(q[i], q[(i + 1) % m]) for i in range(m)]
    lifted: list[int] = []
    for i in range(m):
        entry = edges[i - 1][1]
        exit_ = edges[i][0]
        lifted.extend(_tree_path(g.rows, tpm.part_mask(q[i]), entry, exit_))
    cert = InducedCycleCert(tuple(lifted))
    check = validate(cert, g)
    if not check:
        raise LiftFailed(f"lifted cycle is not induced: {check.reason}", chord=check.reason, cycle=lifted)
    return cert


@dataclass(frozen=True)
class GirthCycleResult:
    cycle: InducedCycleCert
    quotient_cycle: InducedCycleCert
    partition: TreePartitionMinor
    min_degree: int
    guarantee: int


def long_induced_cycle_details(g: Graph, k: int) -> GirthCycleResult:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if g.n == 0 or g.min_degree() < 2:
        raise PreconditionFailed("minimum degree must be at least 2")
    d = g.min_degree()
    gi = girth(g)
    if gi < 16 * k + 5:
        raise PreconditionFailed(f"girth {gi} below {16 * k + 5}")
    guarantee = 3 + d * (d - 1) ** k
    tpm = tree_partition(g, separated_set(g, k), k)
    quotient = tpm.quotient
    if girth(quotient) < 5:
        raise GirthViolation("quotient has girth below 5")
    if quotient.min_degree() < d * (d - 1) ** k:
        raise GirthViolation(f"quotient minimum degree {quotient.min_degree()} below {d * (d - 1) ** k}")
    best = None
    for comp in quotient.components():
        cycles = pending_cycles(quotient, comp[0])
        qcycle = _validated(cycles[max(cycles)], quotient)
        lifted = lift_cycle(g, tpm, qcycle)
        if best is None or lifted.length > best[0].length:
            best = (lifted, qcycle)
    return GirthCycleResult(best[0], best[1], tpm, d, guarantee)


def long_induced_cycle(g: Graph, k: int) -> InducedCycleCert:
    """Induced cycle of length >= 3 + d(d-1)^k in a graph of girth >= 16k+5 and min degree d >= 2."""
    return long_induced_cycle_details(g, k).cycle


# --------------------------------------------------------------------------
# induced paths and forests in girth-5 graphs


def induced_paths_from(
    g: Graph, v: int, order: int, budget: SearchBudget = DEFAULT_BUDGET
) -> Iterator[InducedPathCert]:
    """Every induced path with ``order`` vertices whose first vertex is ``v`` (DFS order)."""
    if order < 1:
        return
    rows = g.rows
    ticker = budget.admit(g.n, 10**6, "induced_paths_from")
    path = [v]

    def dfs(blocked: int) -> Iterator[InducedPathCert]:
        ticker.tick()
        if len(path) == order:
            yield InducedPathCert(tuple(path))
            return
        last = path[-1]
        new_blocked = blocked | rows[last]
        for w in iter_bits(rows[last] & ~blocked):
            path.append(w)
            yield from dfs(new_blocked | (1 << w))
            path.pop()

    yield from dfs(1 << v)


def embed_rooted_forest(g: Graph, spec: ForestSpec, anchors: Sequence[int]) -> ForestEmbeddingCert:
    """Map a rooted forest onto an induced copy in a girth-5 graph with roots on ``anchors``.

    Root ``spec.roots[i]`` goes to ``anchors[i]``.  Each step maps the tree
    children of the current root to the smallest neighbours of its image that
    avoid the neighbourhoods of all other pending images, then deletes the
    image and its unused neighbours.
    """
    anchors = tuple(anchors)
    if len(anchors) != len(spec.roots):
        raise PreconditionFailed(f"{len(spec.roots)} roots but {len(anchors)} anchors")
    if any(not 0 <= a < g.n for a in anchors) or len(set(anchors)) != len(anchors):
        raise PreconditionFailed("anchors must be distinct vertices of the graph")
    if not g.is_independent(anchors):
        raise PreconditionFailed("anchors are not independent")
    if girth(g) < 5:
        raise PreconditionFailed("graph girth below 5")
    if spec.n > g.min_degree():
        raise PreconditionFailed(f"forest has {spec.n} vertices, minimum degree is {g.min_degree()}")

    rows = g.rows
    tree = spec.graph().rows
    alive = g.full_mask
    mapping = [-1] * spec.n
    done = 0  # forest vertices already removed
    pending = list(zip(spec.roots, anchors))
    while pending:
        u1, v1 = pending.pop(0)
        mapping[u1] = v1
        done |= 1 << u1
        children = list(iter_bits(tree[u1] & ~done))
        others = to_mask(v for _, v in pending)
        blocked = others
        for a in iter_bits(others):
            blocked |= rows[a]
        cand = rows[v1] & alive & ~blocked
        chosen = []
        while len(chosen) < len(children) and cand:
            w = lowest_bit(cand)
            chosen.append(w)
            cand &= ~(1 << w)
        if len(chosen) < len(children):
            raise EmbeddingFailed(
                f"vertex {v1} has {len(chosen)} admissible neighbours, needs {len(children)}",
                state={"mapping": list(mapping), "alive": sorted(iter_bits(alive)), "pending": pending},
            )
        alive &= ~((1 << v1) | (rows[v1] & ~to_mask(chosen)))
        pending = list(zip(children, chosen)) + pending
    cert = ForestEmbeddingCert(spec, tuple(mapping), anchors)
    check = validate(cert, g)
    if not check:
        raise EmbeddingFailed(f"embedding not induced: {check.reason}", state={"mapping": mapping})
    return cert
