"""Named graph families and seeded random graphs.

Canonical labelings
-------------------
cycle(n)                  i ~ i+1 (mod n)
path(n)                   i ~ i+1
complete(n)               all pairs
complete_bipartite(a, b)  sides 0..a-1 and a..a+b-1
star(k)                   centre 0, leaves 1..k
empty(n)                  no edges
petersen                  outer 5-cycle 0..4, spokes i ~ i+5, inner 5+i ~ 5+(i+2 mod 5)
heawood                   14-cycle plus i ~ i+5 (mod 14) for even i  (LCF [5,-5]^7)
grotzsch                  mycielskian(cycle(5))

Random graphs draw from :class:`~rainbow_forge.rng.SplitMix64`; pairs are
always taken in lexicographic order ``(0,1), (0,2), ..., (n-2,n-1)``.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, has_clique, iter_bits
from .rng import SplitMix64


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def empty(n: int) -> Graph:
    return Graph(n)


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, edges)


def heawood() -> Graph:
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph(14, edges)


def mycielskian(g: Graph) -> Graph:
    """Originals 0..n-1, shadow n+i adjacent to N(i), apex 2n adjacent to every shadow."""
    n = g.n
    edges = list(g.edges())
    for u, v in g.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges += [(n + i, 2 * n) for i in range(n)]
    return Graph(2 * n + 1, edges)


def mycielski_tower(height: int) -> Graph:
    """``height`` Mycielskian steps over K2; chromatic number ``2 + height``."""
    g = complete(2)
    for _ in range(height):
        g = mycielskian(g)
    return g


def grotzsch() -> Graph:
    return mycielskian(cycle(5))


_NAMED = {
    "cycle": (cycle, 1),
    "path": (path, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "star": (star, 1),
    "empty": (empty, 1),
    "petersen": (petersen, 0),
    "heawood": (heawood, 0),
    "grotzsch": (grotzsch, 0),
    "mycielski_tower": (mycielski_tower, 1),
}


def gen_named(name: str, *params: int) -> Graph:
    """Look up a named family, e.g. ``gen_named("cycle", 5)``."""
    key = name.replace("-", "_").lower()
    if key not in _NAMED:
        raise ValueError(f"unknown graph family {name!r}; known: {', '.join(sorted(_NAMED))}")
    fn, arity = _NAMED[key]
    if len(params) != arity:
        raise ValueError(f"{key} takes {arity} parameter(s), got {len(params)}")
    if any(p < 0 for p in params):
        raise ValueError("parameters must be nonnegative")
    return fn(*params)


def named_families() -> list[str]:
    return sorted(_NAMED)


# random graphs -------------------------------------------------------------


def gnp(n: int, p: float, seed: int) -> Graph:
    """Binomial random graph: pair ``k`` (lexicographic) is an edge iff the ``k``-th uniform draw is ``< p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    rows = [0] * n
    for u in range(n - 1):
        draws = rng.bulk_uniform(n - u - 1)
        for off in np.flatnonzero(draws < p).tolist():
            v = u + 1 + off
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph._trusted(rows)


def _shuffled_pairs(n: int, seed: int) -> list[tuple[int, int]]:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    SplitMix64(seed).shuffle(pairs)
    return pairs


def kr_free_process(n: int, r: int, seed: int) -> Graph:
    """Final graph of the K_r-free process on the seeded pair permutation."""
    if r < 3:
        raise ValueError("r must be at least 3")
    if n < 1:
        raise ValueError("n must be positive")
    rows = [0] * n
    for u, v in _shuffled_pairs(n, seed):
        common = rows[u] & rows[v]
        # {u,v} closes a K_r iff the common neighbourhood holds a K_{r-2}
        if r == 3:
            if common:
                continue
        elif has_clique(rows, common, r - 2):
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(rows)


def closes_c4(rows: list[int], u: int, v: int) -> bool:
    """Would adding the non-edge {u,v} create a 4-cycle u-a-b-v?"""
    reach = 0
    for a in iter_bits(rows[u]):
        reach |= rows[a]
    return bool(reach & rows[v])


def c4_free_process(n: int, seed: int, girth5: bool = False) -> Graph:
    """C4-free process; with ``girth5`` triangles are rejected too."""
    if n < 1:
        raise ValueError("n must be positive")
    rows = [0] * n
    for u, v in _shuffled_pairs(n, seed):
        if girth5 and rows[u] & rows[v]:
            continue
        if closes_c4(rows, u, v):
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(rows)
