from hypothesis import strategies as st

from rainbow_forge.graph import Graph, ProperColoring


@st.composite
def small_graphs(draw, max_n: int = 8, min_n: int = 0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def colored_graphs(draw, max_n: int = 8, min_n: int = 0):
    """A graph with a proper colouring: first fit in a drawn order, then some vertices recoloured fresh."""
    g = draw(small_graphs(max_n, min_n))
    order = draw(st.permutations(range(g.n)))
    colors = [0] * g.n
    for v in order:
        used = {colors[w] for w in g.neighbors(v)}
        colors[v] = next(c for c in range(1, g.n + 2) if c not in used)
    fresh = max(colors, default=0) + 1
    for v in range(g.n):
        if draw(st.booleans()):
            colors[v] = fresh
            fresh += 1
    return g, ProperColoring(g, colors)
