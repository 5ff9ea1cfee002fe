import math

import networkx as nx
import pytest
from hypothesis import given

from bruteforce import has_triangle, to_nx
from strategies import small_graphs

from rainbow_forge.errors import NotProper
from rainbow_forge.generators import complete, complete_bipartite, cycle, grotzsch, path, petersen
from rainbow_forge.graph import (
    DiscrepancyCert,
    ForestEmbeddingCert,
    ForestSpec,
    Graph,
    InducedCycleCert,
    InducedPathCert,
    ProperColoring,
    RainbowSetCert,
    first_conflict,
    girth,
    induced_subgraph,
    is_k2t_free,
    is_kr_free,
    validate,
)


class TestGraph:
    def test_rejects_loops_duplicates_and_range(self):
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])
        with pytest.raises(ValueError):
            Graph(3, [(0, 1), (1, 0)])
        with pytest.raises(ValueError):
            Graph(3, [(0, 3)])
        with pytest.raises(ValueError):
            Graph(-1)

    def test_from_rows_checks_symmetry(self):
        with pytest.raises(ValueError):
            Graph.from_rows([0b10, 0b00])
        with pytest.raises(ValueError):
            Graph.from_rows([0b1])
        assert Graph.from_rows([0b10, 0b01]) == Graph(2, [(0, 1)])

    def test_basic_queries(self):
        g = petersen()
        assert (g.n, g.m) == (10, 15)
        assert g.degrees() == [3] * 10
        assert g.edges() == sorted(g.edges())
        assert all(u < v for u, v in g.edges())
        assert g.adjacent(0, 1) and g.adjacent(1, 0)
        assert g.complement().m == 45 - 15

    def test_components_and_distances(self):
        g = Graph(5, [(0, 1), (3, 4)])
        assert g.components() == [[0, 1], [2], [3, 4]]
        assert g.distances_from(0) == [0, 1, math.inf, math.inf, math.inf]

    @given(small_graphs())
    def test_components_match_networkx(self, g):
        ours = sorted(map(tuple, g.components()))
        theirs = sorted(tuple(sorted(c)) for c in nx.connected_components(to_nx(g)))
        assert ours == theirs


class TestColoring:
    def test_not_proper(self):
        with pytest.raises(NotProper) as info:
            ProperColoring(cycle(5), [1, 1, 2, 1, 2])
        assert info.value.edge == (0, 1) and info.value.color == 1

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            ProperColoring(path(2), [0, 1])
        with pytest.raises(ValueError):
            ProperColoring(path(3), [1, 2])

    def test_queries(self):
        c = ProperColoring(cycle(5), [1, 2, 1, 2, 3])
        assert c.num_colors == 3
        assert c.palette() == [1, 2, 3]
        assert c.class_masks() == {1: 0b00101, 2: 0b01010, 3: 0b10000}
        assert c.is_rainbow([0, 1, 4]) and not c.is_rainbow([0, 2])

    @given(small_graphs())
    def test_first_conflict_agrees_with_edge_scan(self, g):
        colors = [v % 3 + 1 for v in range(g.n)]
        expected = next(((u, v) for u, v in g.edges() if colors[u] == colors[v]), None)
        assert first_conflict(g, colors) == expected


class TestStructure:
    @pytest.mark.parametrize(
        "g, expected",
        [(cycle(5), 5), (petersen(), 5), (path(4), math.inf), (complete(4), 3), (complete_bipartite(3, 3), 4)],
    )
    def test_girth_examples(self, g, expected):
        assert girth(g) == expected

    @given(small_graphs(max_n=10))
    def test_girth_matches_networkx(self, g):
        assert girth(g) == nx.girth(to_nx(g))

    def test_kr_free_examples(self):
        assert is_kr_free(cycle(5), 3)
        assert not is_kr_free(complete(4), 4)
        assert is_kr_free(grotzsch(), 3)
        assert is_kr_free(complete(4), 5)

    @given(small_graphs())
    def test_triangle_free_matches_networkx(self, g):
        assert is_kr_free(g, 3) == (not has_triangle(g))

    @given(small_graphs())
    def test_k4_free_matches_clique_number(self, g):
        omega = max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)
        assert is_kr_free(g, 4) == (omega < 4)

    def test_k2t_free_examples(self):
        assert is_k2t_free(petersen(), 2)
        assert not is_k2t_free(complete_bipartite(3, 3), 3)
        assert is_k2t_free(cycle(5), 2)

    @given(small_graphs())
    def test_k2t_free_matches_pair_scan(self, g):
        for t in (2, 3):
            worst = max(
                (sum(g.adjacent(u, w) and g.adjacent(v, w) for w in range(g.n)) for u in range(g.n) for v in range(u + 1, g.n)),
                default=0,
            )
            assert is_k2t_free(g, t) == (worst < t)

    def test_induced_subgraph_examples(self):
        sub = induced_subgraph(cycle(5), {0, 1, 2})
        assert sub.graph == path(3)
        assert sub.to_old == (0, 1, 2)
        assert induced_subgraph(cycle(5), {0, 2}).graph.m == 0
        g = petersen()
        for v in range(10):
            assert induced_subgraph(g, g.neighbors(v)).graph.m == 0

    def test_induced_subgraph_relabels(self):
        sub = induced_subgraph(cycle(5), {1, 3, 4})
        assert sub.to_old == (1, 3, 4)
        assert sub.to_new == {1: 0, 3: 1, 4: 2}
        assert sub.graph.edges() == [(1, 2)]


class TestValidate:
    def test_spec_examples(self):
        c5 = cycle(5)
        assert validate(InducedCycleCert((0, 1, 2, 3, 4)), c5)
        assert validate(InducedPathCert((0, 1, 2, 3)), c5)
        bad = validate(InducedCycleCert((0, 1, 2)), c5)
        assert not bad and bad.reason == "0,2 non-adjacent"

    def test_chord_detected(self):
        check = validate(InducedPathCert((0, 1, 2, 3, 4)), cycle(5))
        assert not check and "chord" in check.reason

    def test_rainbow_set(self):
        c = ProperColoring(cycle(5), [1, 2, 1, 2, 3])
        assert validate(RainbowSetCert(frozenset({0, 3}), c), cycle(5))
        assert not validate(RainbowSetCert(frozenset({0, 2}), c), cycle(5))
        assert not validate(RainbowSetCert(frozenset({0, 1}), c), cycle(5))

    def test_discrepancy_recomputes_chi(self):
        g = cycle(5)
        c = ProperColoring(g, [1, 2, 1, 2, 3])
        assert validate(DiscrepancyCert(frozenset({0, 3, 4}), c, 2), g)
        assert not validate(DiscrepancyCert(frozenset({0, 3, 4}), c, 1), g)

    def test_forest_embedding(self):
        g = petersen()
        spec = ForestSpec(2, ((0, 1),), (0,))
        assert validate(ForestEmbeddingCert(spec, (0, 1), (0,)), g)
        assert not validate(ForestEmbeddingCert(spec, (0, 2), (0,)), g)
        assert not validate(ForestEmbeddingCert(spec, (1, 0), (0,)), g)

    def test_forest_spec_validation(self):
        with pytest.raises(ValueError):
            ForestSpec(3, ((0, 1), (1, 2), (0, 2)), (0,))
        with pytest.raises(ValueError):
            ForestSpec(2, (), (0,))
        with pytest.raises(ValueError):
            ForestSpec(2, ((0, 1),), (0, 1))

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            validate(object(), cycle(5))
