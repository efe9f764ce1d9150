import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from samehole.errors import SpecError
from samehole.generate import random_ring
from samehole.graph import Graph, cycle_graph, petersen_graph
from samehole.rings import RingPartition, build_ring, recognize_ring, verify_ring


class TestBuild:
    def test_all_ones_is_cycle(self):
        g, p = build_ring(7, [1] * 7)
        assert g.edges() == cycle_graph(7).edges()
        assert verify_ring(g, p) == []

    def test_extra_vertex_in_first_clique(self):
        sizes = [2, 1, 1, 1, 1, 1, 1]
        stairs = [[1, 1]] + [[1]] * 5 + [[2]]
        g, p = build_ring(7, sizes, stairs)
        assert g.n == 8
        assert oracles.hole_lengths(g) == {7}
        assert oracles.ring_ok(g, p.cliques)

    def test_c4_is_a_ring(self):
        g, p = build_ring(4, [1] * 4)
        assert g.edges() == cycle_graph(4).edges() and verify_ring(g, p) == []

    def test_bad_staircase(self):
        with pytest.raises(SpecError):
            build_ring(5, [2, 1, 1, 1, 1], [[0, 1], [1], [1], [1], [2]])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(4, 10), st.integers(0, 2**32))
    def test_generated_rings(self, k, seed):
        inst = random_ring(random.Random(seed), k, max_total=k + 8)
        g, p = inst.graph, inst.data["partition"]
        assert verify_ring(g, p) == []
        assert oracles.ring_ok(g, p.cliques)
        assert oracles.hole_lengths(g) == {k}


class TestVerify:
    def test_c7_singletons(self):
        assert verify_ring(cycle_graph(7), RingPartition(7, tuple((i,) for i in range(7)))) == []

    def test_nonadjacent_pair_in_clique(self):
        g = cycle_graph(8)
        cl = ((0, 2),) + tuple((i,) for i in (1, 3, 4, 5, 6, 7))
        out = verify_ring(g, RingPartition(7, cl))
        assert any(v.startswith("condition 1") for v in out)

    def test_long_range_edge(self):
        g, p = build_ring(7, [1] * 7)
        h = Graph.from_edges(7, g.edges() + [(0, 3)])
        assert any(v.startswith("condition 2") for v in verify_ring(h, p))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32))
    def test_agrees_with_definition_after_edge_flip(self, seed):
        rng = random.Random(seed)
        g = random_ring(rng, rng.randint(5, 8), max_total=12).graph
        p = recognize_ring(g)
        a, b = rng.sample(range(g.n), 2)
        edges = set(g.edges())
        e = (min(a, b), max(a, b))
        edges ^= {e}
        h = Graph.from_edges(g.n, sorted(edges))
        assert (verify_ring(h, p) == []) == oracles.ring_ok(h, p.cliques)


class TestRecognize:
    def test_c9(self):
        p = recognize_ring(cycle_graph(9))
        assert p is not None and p.k == 9 and all(len(c) == 1 for c in p.cliques)

    def test_mixed_sizes_round_trip(self):
        g, _ = build_ring(9, [2, 1, 3, 1, 1, 2, 1, 1, 1])
        p = recognize_ring(g)
        assert p is not None and verify_ring(g, p) == []
        assert sorted(map(len, p.cliques)) == sorted([2, 1, 3, 1, 1, 2, 1, 1, 1])

    def test_petersen(self):
        assert recognize_ring(petersen_graph()) is None

    @settings(max_examples=40, deadline=None)
    @given(st.integers(4, 10), st.integers(0, 2**32))
    def test_round_trip(self, k, seed):
        g = random_ring(random.Random(seed), k, max_total=k + 10).graph
        p = recognize_ring(g)
        assert p is not None and p.k == k and verify_ring(g, p) == []
