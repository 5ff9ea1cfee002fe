"""Immutable simple graphs on vertices 0..n-1, colorings, and certificates.

Adjacency is kept as one Python int per vertex (bit ``j`` of ``rows[i]`` is
set iff ``i`` and ``j`` are adjacent).  Every exact search in the package
works on these bit rows, so neighbourhood intersections are single ``&``
operations.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import NotProper

INFINITY = math.inf

VertexSet = frozenset  # members are vertex ids of an associated graph


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """Simple undirected graph with vertices ``0..n-1``.

    Instances are immutable and hashable.  Construct from an edge iterable;
    self-loops, duplicate edges and out-of-range endpoints raise ``ValueError``.
    """

    __slots__ = ("_n", "_rows", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        rows = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if rows[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            m += 1
        self._n = n
        self._rows = tuple(rows)
        self._m = m

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "Graph":
        """Build from bit rows; symmetry and loop-freeness are checked."""
        n = len(rows)
        full = (1 << n) - 1
        m2 = 0
        for i, row in enumerate(rows):
            if row & ~full or row >> i & 1:
                raise ValueError(f"row {i} has a loop or out-of-range bit")
            for j in iter_bits(row):
                if not rows[j] >> i & 1:
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")
            m2 += row.bit_count()
        return cls._trusted(rows, m2 // 2)

    @classmethod
    def _trusted(cls, rows: Sequence[int], m: int | None = None) -> "Graph":
        # caller guarantees symmetric, loop-free rows
        g = cls.__new__(cls)
        g._n = len(rows)
        g._rows = tuple(rows)
        g._m = sum(r.bit_count() for r in rows) // 2 if m is None else m
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self._rows):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph.from_rows([~r & full & ~(1 << i) for i, r in enumerate(self._rows)])

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = to_mask(vertices)
        return all(not (self._rows[v] & mask) for v in iter_bits(mask))

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by least vertex."""
        seen = 0
        comps = []
        for s in range(self._n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self._rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(iter_bits(comp)))
        return comps

    def distances_from(self, source: int) -> list[float]:
        dist = [INFINITY] * self._n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in iter_bits(self._rows[u]):
                if dist[w] == INFINITY:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def first_conflict(g: Graph, colors: Sequence[int]) -> tuple[int, int] | None:
    """Smallest monochromatic edge ``(u, v)``, or None if ``colors`` is proper."""
    classes: dict[int, int] = {}
    for v, c in enumerate(colors):
        classes[c] = classes.get(c, 0) | (1 << v)
    for u, row in enumerate(g.rows):
        hit = row & classes[colors[u]] & ~((1 << (u + 1)) - 1)
        if hit:
            return u, lowest_bit(hit)
    return None


class ProperColoring:
    """Assignment of positive integer colors, proper for the graph given at construction.

    Raises :class:`NotProper` on the first monochromatic edge found and
    ``ValueError`` for a wrong length or a non-positive color.
    """

    __slots__ = ("_colors",)

    def __init__(self, g: Graph, colors: Sequence[int]):
        colors = tuple(int(c) for c in colors)
        if len(colors) != g.n:
            raise ValueError(f"coloring has {len(colors)} entries, graph has {g.n} vertices")
        for c in colors:
            if c < 1:
                raise ValueError(f"colors must be positive integers, got {c}")
        self._colors = colors
        bad = first_conflict(g, colors)
        if bad is not None:
            raise NotProper(bad[0], bad[1], colors[bad[0]])

    @property
    def colors(self) -> tuple[int, ...]:
        return self._colors

    def __getitem__(self, v: int) -> int:
        return self._colors[v]

    def __len__(self) -> int:
        return len(self._colors)

    def palette(self) -> list[int]:
        return sorted(set(self._colors))

    @property
    def num_colors(self) -> int:
        return len(set(self._colors))

    def class_masks(self) -> dict[int, int]:
        """color -> bitmask of the vertices carrying it."""
        out: dict[int, int] = {}
        for v, c in enumerate(self._colors):
            out[c] = out.get(c, 0) | (1 << v)
        return out

    def is_rainbow(self, vertices: Iterable[int]) -> bool:
        seen = [self._colors[v] for v in vertices]
        return len(seen) == len(set(seen))

    def restrict(self, g_sub: Graph, to_old: Sequence[int]) -> "ProperColoring":
        return ProperColoring(g_sub, [self._colors[v] for v in to_old])

    def __eq__(self, other) -> bool:
        return isinstance(other, ProperColoring) and self._colors == other._colors

    def __hash__(self) -> int:
        return hash(self._colors)

    def __repr__(self) -> str:
        return f"ProperColoring({list(self._colors)})"


# --------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class InducedPathCert:
    vertices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        """Number of edges."""
        return max(len(self.vertices) - 1, 0)


@dataclass(frozen=True)
class InducedCycleCert:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class RainbowSetCert:
    members: frozenset
    coloring: ProperColoring

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class DiscrepancyCert:
    members: frozenset
    coloring: ProperColoring
    chromatic_bound: int
    rounds: int = 0

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ForestSpec:
    """A rooted forest: vertices ``0..n-1``, an edge list, one root per component."""

    n: int
    edges: tuple[tuple[int, int], ...]
    roots: tuple[int, ...]

    def __post_init__(self):
        g = Graph(self.n, self.edges)  # rejects loops and multi-edges
        comps = g.components()
        if self.n - len(comps) != len(self.edges):
            raise ValueError("forest spec contains a cycle")
        if len(self.roots) != len(comps):
            raise ValueError(f"{len(comps)} components but {len(self.roots)} roots")
        where = {v: i for i, comp in enumerate(comps) for v in comp}
        if sorted(where[r] for r in self.roots) != list(range(len(comps))):
            raise ValueError("need exactly one root per component")

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


@dataclass(frozen=True)
class ForestEmbeddingCert:
    spec: ForestSpec
    mapping: tuple[int, ...]  # forest vertex i -> host vertex mapping[i]
    anchors: tuple[int, ...] = ()


class Validation(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_vertices(vertices: Sequence[int], g: Graph) -> str | None:
    for v in vertices:
        if not 0 <= v < g.n:
            return f"vertex {v} not in graph"
    if len(set(vertices)) != len(vertices):
        dup = [v for v, k in Counter(vertices).items() if k > 1][0]
        return f"vertex {dup} repeated"
    return None


def _check_path(vertices: Sequence[int], g: Graph, cyclic: bool) -> Validation:
    bad = _check_vertices(vertices, g)
    if bad:
        return Validation(False, bad)
    k = len(vertices)
    if cyclic and k < 3:
        return Validation(False, "cycle needs at least 3 vertices")
    for i in range(k):
        for j in range(i + 1, k):
            u, v = vertices[i], vertices[j]
            consecutive = j == i + 1 or (cyclic and i == 0 and j == k - 1)
            if consecutive and not g.adjacent(u, v):
                return Validation(False, f"{u},{v} non-adjacent")
            if not consecutive and g.adjacent(u, v):
                return Validation(False, f"chord {u},{v}")
    return Validation(True)


def validate(cert, g: Graph) -> Validation:
    """Check every defining property of ``cert`` against ``g``.

    Returns a falsy :class:`Validation` naming the first violated condition
    instead of raising.
    """
    if isinstance(cert, InducedPathCert):
        return _check_path(cert.vertices, g, cyclic=False)
    if isinstance(cert, InducedCycleCert):
        return _check_path(cert.vertices, g, cyclic=True)
    if isinstance(cert, (RainbowSetCert, DiscrepancyCert)):
        members = sorted(cert.members)
        bad = _check_vertices(members, g)
        if bad:
            return Validation(False, bad)
        if len(cert.coloring) != g.n:
            return Validation(False, "coloring length differs from graph order")
        bad = first_conflict(g, cert.coloring.colors)
        if bad is not None:
            return Validation(False, f"coloring not proper at {bad[0]},{bad[1]}")
        seen: dict[int, int] = {}
        for v in members:
            c = cert.coloring[v]
            if c in seen:
                return Validation(False, f"{seen[c]},{v} share color {c}")
            seen[c] = v
        if isinstance(cert, RainbowSetCert):
            mask = to_mask(members)
            for v in members:
                hit = g.rows[v] & mask
                if hit:
                    return Validation(False, f"{v},{lowest_bit(hit)} adjacent")
            return Validation(True)
        from .oracles import chromatic_number  # local: oracles imports this module

        sub = induced_subgraph(g, members).graph
        chi = chromatic_number(sub)
        if chi != cert.chromatic_bound:
            return Validation(False, f"stored bound {cert.chromatic_bound} but chi={chi}")
        return Validation(True)
    if isinstance(cert, ForestEmbeddingCert):
        spec, f = cert.spec, cert.mapping
        if len(f) != spec.n:
            return Validation(False, "mapping length differs from forest order")
        bad = _check_vertices(f, g)
        if bad:
            return Validation(False, bad)
        tree = spec.graph()
        for a in range(spec.n):
            for b in range(a + 1, spec.n):
                if tree.adjacent(a, b) != g.adjacent(f[a], f[b]):
                    what = "edge" if tree.adjacent(a, b) else "non-edge"
                    return Validation(False, f"forest {what} {a},{b} not preserved")
        for root, anchor in zip(spec.roots, cert.anchors):
            if f[root] != anchor:
                return Validation(False, f"root {root} mapped to {f[root]}, anchor is {anchor}")
        return Validation(True)
    raise TypeError(f"not a certificate: {type(cert).__name__}")


# --------------------------------------------------------------------------
# structural queries


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests.

    Layered BFS from every root: an edge inside layer ``d`` closes a walk of
    length 2d+1, a vertex with two parents in layer ``d`` one of length
    2d+2.  Each is an upper bound, exact when the root lies on a shortest
    cycle.
    """
    best = INFINITY
    rows = g.rows
    for root in range(g.n):
        seen = frontier = 1 << root
        d = 0
        while frontier and 2 * d + 1 < best:
            once = twice = 0
            for v in iter_bits(frontier):
                nb = rows[v]
                if nb & frontier:
                    best = 2 * d + 1
                    break
                nb &= ~seen
                twice |= once & nb
                once |= nb
            else:
                if twice:
                    best = min(best, 2 * d + 2)
                seen |= once
                frontier = once
                d += 1
                continue
            break
    return best


def has_clique(rows: Sequence[int], candidates: int, size: int) -> bool:
    """Whether the vertices in ``candidates`` contain a clique of ``size``."""
    if size <= 0:
        return True
    if candidates.bit_count() < size:
        return False
    if size == 1:
        return True
    if size == 2:
        return any(rows[v] & candidates for v in iter_bits(candidates))
    rest = candidates
    while rest.bit_count() >= size:
        v = lowest_bit(rest)
        rest &= ~(1 << v)
        # cliques through v use only later vertices, so each is tried once
        if has_clique(rows, rows[v] & rest, size - 1):
            return True
    return False


def is_kr_free(g: Graph, r: int) -> bool:
    """True iff ``g`` has no clique on ``r`` vertices."""
    if r < 3:
        raise ValueError("r must be at least 3")
    rows = g.rows
    if r == 3:
        return not any(rows[u] & rows[v] for u, v in g.edges())
    return not any(has_clique(rows, rows[u] & rows[v], r - 2) for u, v in g.edges())


def is_k2t_free(g: Graph, t: int) -> bool:
    """True iff no two distinct vertices have ``t`` or more common neighbours."""
    if t < 2:
        raise ValueError("t must be at least 2")
    rows = g.rows
    for u in range(g.n):
        counts: Counter = Counter()
        for w in iter_bits(rows[u]):
            for v in iter_bits(rows[w] >> (u + 1)):
                counts[v] += 1
        if counts and max(counts.values()) >= t:
            return False
    return True


class InducedSubgraph(NamedTuple):
    graph: Graph
    to_old: tuple[int, ...]  # new id -> old id
    to_new: dict  # old id -> new id


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> InducedSubgraph:
    """Subgraph induced by ``vertices``, relabelled ``0..k-1`` in increasing old-id order."""
    mask = to_mask(vertices)
    if mask >> g.n:
        raise ValueError("vertex set not contained in the graph")
    to_old = tuple(iter_bits(mask))
    to_new = {v: i for i, v in enumerate(to_old)}
    rows = []
    for v in to_old:
        row = 0
        for w in iter_bits(g.rows[v] & mask):
            row |= 1 << to_new[w]
        rows.append(row)
    return InducedSubgraph(Graph.from_rows(rows), to_old, to_new)


def induced_rows(rows: Sequence[int], mask: int) -> tuple[list[int], list[int]]:
    """Bit rows of the subgraph induced by ``mask`` plus the new->old map."""
    to_old = list(iter_bits(mask))
    pos = {v: i for i, v in enumerate(to_old)}
    out = []
    for v in to_old:
        row = 0
        for w in iter_bits(rows[v] & mask):
            row |= 1 << pos[w]
        out.append(row)
    return out, to_old
