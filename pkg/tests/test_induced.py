import itertools

import pytest
from hypothesis import given

import bruteforce as bf
from strategies import small_graphs

from rainbow_forge.errors import GirthViolation, PreconditionFailed
from rainbow_forge.generators import (
    c4_free_process,
    complete,
    complete_bipartite,
    cycle,
    heawood,
    path,
    petersen,
)
from rainbow_forge.graph import ForestSpec, Graph, InducedCycleCert, girth, validate
from rainbow_forge.induced import (
    audit_tree_partition,
    cycles_from_pending,
    embed_rooted_forest,
    induced_paths_from,
    lift_cycle,
    long_induced_cycle,
    long_induced_cycle_details,
    maximal_induced_path,
    separated_set,
    tree_partition,
)
from rainbow_forge.oracles import SearchBudget, longest_induced_cycle
from rainbow_forge.rng import derive_seeds


def _girth5_instances(count, n_max=120):
    out = []
    for i, s in enumerate(derive_seeds(5, count)):
        g = c4_free_process(12 + (i * (n_max - 12)) // max(count - 1, 1), s, girth5=True)
        if g.min_degree() >= 2:
            out.append(g)
    return out


class TestMaximalPath:
    def test_examples(self):
        whole = maximal_induced_path(path(4), 0)
        assert set(whole.vertices) == {0, 1, 2, 3} and whole.order == 4
        assert maximal_induced_path(cycle(5), 0).order == 4

    def _non_extendable(self, g, p):
        vs = set(p.vertices)
        for end in (p.vertices[0], p.vertices[-1]):
            for w in g.neighbors(end):
                if w not in vs and sum(g.adjacent(w, x) for x in vs) == 1:
                    return False
        return True

    def test_petersen(self):
        g = petersen()
        for v in range(10):
            p = maximal_induced_path(g, v)
            assert validate(p, g) and v in p.vertices
            assert self._non_extendable(g, p)

    @given(small_graphs(max_n=10, min_n=1))
    def test_random(self, g):
        p = maximal_induced_path(g, 0)
        assert validate(p, g) and 0 in p.vertices
        assert self._non_extendable(g, p)


class TestCyclesFromPending:
    def test_c5(self):
        cycles = cycles_from_pending(cycle(5), 2, 0)
        assert [c.length for c in cycles] == [5]

    @pytest.mark.parametrize("g", [petersen(), heawood()], ids=["petersen", "heawood"])
    def test_cubic_examples(self, g):
        best = longest_induced_cycle(g).length
        for v in range(g.n):
            cycles = cycles_from_pending(g, 2, v)
            lengths = [c.length for c in cycles]
            assert len(set(lengths)) == len(lengths) >= 2
            assert max(lengths) >= 4 and max(lengths) <= best
            assert all(validate(c, g) for c in cycles)

    def test_petersen_lengths_are_real_induced_cycle_lengths(self):
        # Petersen's induced cycles have lengths 5 and 6 only (brute force)
        g = petersen()
        lengths = {len(s) for s in bf.subsets(g.n) if bf.induces_cycle(g, s)}
        assert lengths == {5, 6}
        assert {c.length for c in cycles_from_pending(g, 2, 0)} <= lengths

    def test_count_bound_on_process_graphs(self):
        for g in _girth5_instances(20):
            d = g.min_degree()
            cycles = cycles_from_pending(g, 2, 0)
            assert len(cycles) >= d - 1

    def test_k23_free_count(self):
        # two vertices on one side of K_{3,3} share 3 neighbours
        with pytest.raises(PreconditionFailed):
            cycles_from_pending(complete_bipartite(3, 3), 3, 0)
        g = complete_bipartite(2, 2)
        assert [c.length for c in cycles_from_pending(g, 3, 0)] == [4]

    def test_preconditions(self):
        with pytest.raises(PreconditionFailed):
            cycles_from_pending(path(4), 2, 0)
        with pytest.raises(PreconditionFailed):
            cycles_from_pending(complete_bipartite(2, 3), 2, 0)
        with pytest.raises(ValueError):
            cycles_from_pending(cycle(5), 1, 0)


class TestPartition:
    def test_separated_examples(self):
        assert separated_set(petersen(), 0) == frozenset(range(10))
        assert separated_set(cycle(21), 1) == frozenset({0, 3, 6, 9, 12, 15, 18})
        assert separated_set(complete(5), 1) == frozenset({0})

    @given(small_graphs(max_n=10, min_n=1))
    def test_separated_properties(self, g):
        for k in (0, 1):
            s = separated_set(g, k)
            dist = {v: g.distances_from(v) for v in s}
            assert all(dist[a][b] >= 2 * k + 1 for a in s for b in s if a != b)
            # maximality: every vertex is within 2k of a chosen one
            assert all(min(dist[c][v] for c in s) <= 2 * k for v in range(g.n))

    def test_cycle21(self):
        g = cycle(21)
        tpm = tree_partition(g, separated_set(g, 1), 1)
        assert len(tpm.centers) == 7
        assert tpm.quotient.n == 7 and tpm.quotient.m == 7 and set(tpm.quotient.degrees()) == {2}
        assert all(audit_tree_partition(g, tpm).values())
        for i in range(7):
            part = [v for v in range(21) if tpm.part_of[v] == i]
            assert len(part) == 3

    def test_identity_at_k0(self):
        g = petersen()
        tpm = tree_partition(g, separated_set(g, 0), 0)
        assert tpm.quotient == g
        assert all(audit_tree_partition(g, tpm).values())

    def test_lift_identity(self):
        g = petersen()
        tpm = tree_partition(g, separated_set(g, 0), 0)
        q = InducedCycleCert((0, 1, 2, 3, 4))
        assert lift_cycle(g, tpm, q).vertices == q.vertices

    def test_lift_cycle21(self):
        g = cycle(21)
        tpm = tree_partition(g, separated_set(g, 1), 1)
        q = long_induced_cycle_details(g, 1).quotient_cycle
        assert q.length == 7
        lifted = lift_cycle(g, tpm, q)
        assert lifted.length == 21 and validate(lifted, g)

    def test_short_girth_detected(self):
        # a 4-cycle inside one radius-1 ball is not a tree
        g = complete_bipartite(2, 2)
        with pytest.raises((GirthViolation, PreconditionFailed)):
            tree_partition(g, [0], 1)


class TestLongCycle:
    @pytest.mark.parametrize("g, k, expected", [(cycle(5), 0, 5), (petersen(), 0, 6), (cycle(21), 1, 21)])
    def test_sharp_cases(self, g, k, expected):
        res = long_induced_cycle_details(g, k)
        assert res.cycle.length == expected
        assert res.cycle.length >= res.guarantee == 3 + res.min_degree * (res.min_degree - 1) ** k
        assert validate(res.cycle, g)

    def test_process_instances(self):
        for g in _girth5_instances(15, 150):
            res = long_induced_cycle_details(g, 0)
            assert res.cycle.length >= res.guarantee
            assert res.cycle.length >= res.quotient_cycle.length
            assert validate(res.cycle, g)

    def test_preconditions(self):
        with pytest.raises(PreconditionFailed):
            long_induced_cycle(petersen(), 1)
        with pytest.raises(PreconditionFailed):
            long_induced_cycle(path(5), 0)
        with pytest.raises(PreconditionFailed):
            long_induced_cycle(complete(4), 0)

    def test_disconnected_takes_best_component(self):
        edges = [(i, (i + 1) % 5) for i in range(5)] + [(5 + i, 5 + (i + 1) % 7) for i in range(7)]
        assert long_induced_cycle(Graph(12, edges), 0).length == 7


class TestPathsFrom:
    def test_c5(self):
        paths = [p.vertices for p in induced_paths_from(cycle(5), 0, 4)]
        assert sorted(paths) == [(0, 1, 2, 3), (0, 4, 3, 2)]

    def test_clique(self):
        assert list(induced_paths_from(complete(4), 0, 3)) == []

    def test_petersen_count(self):
        g = petersen()
        for v in range(10):
            assert sum(1 for _ in induced_paths_from(g, v, 5)) >= 6

    @given(small_graphs(max_n=7, min_n=1))
    def test_matches_permutation_bruteforce(self, g):
        for order in range(1, min(g.n, 5) + 1):
            stream = [p.vertices for p in induced_paths_from(g, 0, order)]
            brute = {
                (0,) + rest
                for rest in itertools.permutations(range(1, g.n), order - 1)
                if bf.induces_path(g, [0, *rest])
                and all(g.adjacent(a, b) for a, b in zip((0,) + rest, rest))
            }
            assert len(stream) == len(set(stream))
            assert set(stream) == brute

    def test_budget(self):
        from rainbow_forge.errors import BudgetExceeded

        with pytest.raises(BudgetExceeded):
            list(induced_paths_from(petersen(), 0, 5, SearchBudget(max_nodes=3)))


def _forests(max_order):
    out = []
    for n in range(1, max_order + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for r in range(n):
            for edges in itertools.combinations(pairs, r):
                g = Graph(n, edges)
                comps = g.components()
                if n - len(comps) == len(edges):
                    for roots in itertools.product(*comps):
                        out.append(ForestSpec(n, edges, roots))
    return out


class TestEmbedForest:
    def test_examples(self):
        g = petersen()
        assert embed_rooted_forest(g, ForestSpec(1, (), (0,)), [0]).mapping == (0,)
        p3 = embed_rooted_forest(g, ForestSpec(3, ((0, 1), (1, 2)), (0,)), [0])
        assert p3.mapping[0] == 0 and validate(p3, g)
        mixed = embed_rooted_forest(g, ForestSpec(3, ((0, 1),), (0, 2)), [0, 2])
        assert validate(mixed, g) and mixed.mapping[0] == 0 and mixed.mapping[2] == 2

    def test_exhaustive_petersen(self):
        g = petersen()
        count = 0
        for spec in _forests(3):
            for anchors in itertools.permutations(range(10), len(spec.roots)):
                if g.is_independent(anchors):
                    cert = embed_rooted_forest(g, spec, anchors)
                    assert validate(cert, g)
                    count += 1
        assert count > 0

    def test_heawood_forests_of_order_three(self):
        # Heawood has girth 6 and minimum degree 3
        g = heawood()
        for spec in _forests(3):
            cert = embed_rooted_forest(g, spec, [0, 2, 4][: len(spec.roots)])
            assert validate(cert, g)

    def test_on_process_graphs(self):
        for g in _girth5_instances(8):
            d = g.min_degree()
            spec = ForestSpec(min(d, 4), tuple((0, i) for i in range(1, min(d, 4))), (0,))
            assert validate(embed_rooted_forest(g, spec, [0]), g)

    def test_preconditions(self):
        g = petersen()
        spec = ForestSpec(2, (), (0, 1))
        with pytest.raises(PreconditionFailed):
            embed_rooted_forest(g, spec, [0, 1])  # adjacent anchors
        with pytest.raises(PreconditionFailed):
            embed_rooted_forest(g, spec, [0])
        with pytest.raises(PreconditionFailed):
            embed_rooted_forest(g, ForestSpec(4, (), (0, 1, 2, 3)), [0, 2, 6, 8])  # 4 > d = 3
        with pytest.raises(PreconditionFailed):
            embed_rooted_forest(complete_bipartite(3, 3), ForestSpec(1, (), (0,)), [0])
        assert girth(complete_bipartite(3, 3)) == 4
