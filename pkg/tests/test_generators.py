import math
import statistics

import networkx as nx
import pytest

from bruteforce import chromatic, has_triangle, to_nx

from rainbow_forge.generators import (
    c4_free_process,
    closes_c4,
    complete,
    complete_bipartite,
    cycle,
    gen_named,
    gnp,
    grotzsch,
    heawood,
    kr_free_process,
    mycielski_tower,
    mycielskian,
    named_families,
    path,
    petersen,
    star,
)
from rainbow_forge.graph import girth, is_k2t_free, is_kr_free
from rainbow_forge.oracles import chromatic_number


def test_named_sizes():
    assert (cycle(5).n, cycle(5).m, girth(cycle(5))) == (5, 5, 5)
    g = petersen()
    assert (g.n, g.m, set(g.degrees()), girth(g)) == (10, 15, {3}, 5)
    g = grotzsch()
    assert (g.n, g.m) == (11, 20) and not has_triangle(g)
    assert (complete(6).m, complete_bipartite(2, 3).m, star(4).m, path(5).m) == (15, 6, 4, 4)


def test_named_match_networkx_isomorphism_classes():
    assert nx.is_isomorphic(to_nx(petersen()), nx.petersen_graph())
    assert nx.is_isomorphic(to_nx(heawood()), nx.heawood_graph())
    assert nx.is_isomorphic(to_nx(grotzsch()), nx.mycielski_graph(4))
    assert nx.is_isomorphic(to_nx(mycielskian(complete(2))), nx.cycle_graph(5))


def test_mycielskian_counts():
    for g in (cycle(5), petersen(), path(4)):
        h = mycielskian(g)
        # m originals, 2m original-shadow edges, n apex edges
        assert (h.n, h.m) == (2 * g.n + 1, 3 * g.m + g.n)
        assert is_kr_free(h, 3) == is_kr_free(g, 3)


@pytest.mark.parametrize("h", range(4))
def test_tower_chromatic_number(h):
    g = mycielski_tower(h)
    assert chromatic_number(g) == 2 + h
    assert nx.is_isomorphic(to_nx(g), nx.mycielski_graph(h + 2))


def test_tower_chromatic_number_small_bruteforce():
    assert [chromatic(mycielski_tower(h)) for h in range(2)] == [2, 3]


def test_gen_named_lookup():
    assert gen_named("cycle", 7) == cycle(7)
    assert gen_named("complete-bipartite", 2, 2) == complete_bipartite(2, 2)
    assert "petersen" in named_families()
    with pytest.raises(ValueError):
        gen_named("dodecahedron")
    with pytest.raises(ValueError):
        gen_named("cycle")


def test_gnp_extremes():
    assert gnp(10, 0.0, 1).m == 0
    assert gnp(10, 1.0, 1) == complete(10)
    with pytest.raises(ValueError):
        gnp(5, 1.5, 0)


def test_gnp_mean_edge_count():
    counts = [gnp(100, 0.1, s).m for s in range(1000)]
    sigma = math.sqrt(4950 * 0.1 * 0.9)
    # standard error of the mean over 1000 seeds is sigma / sqrt(1000)
    assert abs(statistics.mean(counts) - 495) <= 3 * sigma / math.sqrt(1000)
    assert abs(statistics.pstdev(counts) - sigma) < 0.15 * sigma


def test_gnp_deterministic():
    assert gnp(60, 0.3, 8) == gnp(60, 0.3, 8)
    assert gnp(60, 0.3, 8) != gnp(60, 0.3, 9)


def test_kr_free_process_small():
    for s in range(20):
        assert kr_free_process(3, 3, s).m == 2


@pytest.mark.parametrize("seed", range(10))
def test_triangle_free_process(seed):
    g = kr_free_process(50, 3, seed)
    assert not has_triangle(g)


def test_triangle_free_process_maximal():
    g = kr_free_process(200, 3, 1)
    assert is_kr_free(g, 3)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.adjacent(u, v):
                assert g.rows[u] & g.rows[v], f"non-edge {u},{v} could be added"


def test_k4_free_process_maximal():
    g = kr_free_process(30, 4, 2)
    h = to_nx(g)
    assert max(len(c) for c in nx.find_cliques(h)) <= 3
    for u, v in nx.non_edges(h):
        h.add_edge(u, v)
        assert max(len(c) for c in nx.find_cliques(h)) == 4
        h.remove_edge(u, v)


def _has_c4(g) -> bool:
    return any(
        sum(g.adjacent(u, w) and g.adjacent(v, w) for w in range(g.n)) >= 2
        for u in range(g.n)
        for v in range(u + 1, g.n)
    )


@pytest.mark.parametrize("seed", range(10))
def test_c4_free_process(seed):
    assert not _has_c4(c4_free_process(4, seed))
    g = c4_free_process(40, seed)
    assert not _has_c4(g)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.adjacent(u, v):
                assert closes_c4(list(g.rows), u, v)


def test_girth5_variant():
    g = c4_free_process(100, 3, girth5=True)
    assert is_k2t_free(g, 2) and girth(g) >= 5
    assert not has_triangle(g)


def test_process_determinism():
    assert kr_free_process(80, 3, 4) == kr_free_process(80, 3, 4)
    assert c4_free_process(80, 4) == c4_free_process(80, 4)
