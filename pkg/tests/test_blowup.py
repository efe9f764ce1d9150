import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from samehole.blowup import (BlowupMapping, BlowupSpec, PreblowupPieces, as_preblowup,
                             build_blowup, classify_edges, domination_score, normalize_preblowup,
                             verify_blowup, verify_preblowup)
from samehole.errors import PreconditionError, SpecError
from samehole.generate import random_even_blowup, random_odd_blowup
from samehole.graph import Graph, empty_graph, relabel
from samehole.hypergraph import Hypergraph
from samehole.templates import OddTemplateSpec, build_odd_template


def pyramid():
    return build_odd_template(OddTemplateSpec(3, empty_graph(3), Hypergraph.make(3, [{0, 1, 2}])))


def nested_template():
    """Edgeless J on three vertices with hyperedges {0,1} and {0,1,2}: both
    B-vertices see vertex 0 through optional edges."""
    g, p = build_odd_template(OddTemplateSpec(3, empty_graph(3), Hypergraph.make(3, [{0, 1}, {0, 1, 2}])))
    x = next(b for b in p.B if len(p.hmap[b]) == 3)
    y = next(b for b in p.B if len(p.hmap[b]) == 2)
    return g, p, x, y


def toggled(g, a, b):
    edges = set(g.edges())
    edges ^= {(min(a, b), max(a, b))}
    return Graph.from_edges(g.n, sorted(edges))


def pieces_of(gs, p, m, parity):
    paths = tuple(tuple(frozenset(m.cliques[u]) for u in path) for path in p.paths)
    bstar = frozenset(v for x in p.B for v in m.cliques[x])
    bpstar = frozenset(v for x in p.Bp for v in m.cliques[x])
    return PreblowupPieces(parity, p.ell, paths, bstar, bpstar, p.n_clique)


class TestClassifyEdges:
    def test_pyramid(self):
        g, p = pyramid()
        cls = classify_edges(g, p)
        w = p.w
        for a in p.A:
            assert cls[tuple(sorted((w, a)))] == "optional"
        for a, b in [(p.Ap[0], p.Ap[1]), (p.Ap[0], p.Ap[2]), (p.Ap[1], p.Ap[2])]:
            assert cls[tuple(sorted((a, b)))] == "solid"
        for (u, v), c in cls.items():
            assert (c == "flat") == (u in p.I or v in p.I)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32))
    def test_matches_definition(self, seed):
        inst = random_odd_blowup(random.Random(seed), 3, 4, max_total=14)
        g, p = inst.data["template"], inst.data["partition"]
        cls = classify_edges(g, p)
        assert set(cls) == set(g.edges())
        for (u, v), c in cls.items():
            assert c == oracles.edge_kind(g, p, u, v)


class TestBuild:
    def test_identity(self):
        g, p = pyramid()
        gs, m = build_blowup(g, p, BlowupSpec((1,) * g.n))
        assert gs.edges() == g.edges()
        assert m.cliques == tuple((u,) for u in range(g.n))
        assert verify_blowup(gs, g, p, m) == []

    def test_doubled_interior_vertex(self):
        g, p = pyramid()
        sizes = [1] * g.n
        sizes[sorted(p.I)[0]] = 2
        gs, m = build_blowup(g, p, BlowupSpec(tuple(sizes)))
        assert gs.n == 11
        assert oracles.hole_lengths(gs) == {7}
        assert verify_blowup(gs, g, p, m) == []

    def test_cascade_break(self):
        g, p, x, y = nested_template()
        u = 0
        sizes = [1] * g.n
        sizes[u] = 2
        sizes[x] = 2
        # both copies of u see y, but the lower copy misses the lower copy of x
        assert u < x and u < y
        stairs = {(u, y): (1, 1), (u, x): (1, 2)}
        with pytest.raises(SpecError, match=r"\(7\)"):
            build_blowup(g, p, BlowupSpec(tuple(sizes), stairs))

    def test_twins_refused(self):
        g, p = build_odd_template(OddTemplateSpec(3, empty_graph(3), Hypergraph.make(3, [{0, 1}, {0, 1}, {0, 1, 2}])))
        with pytest.raises(PreconditionError):
            build_blowup(g, p, BlowupSpec((1,) * g.n))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(3, 4), st.integers(3, 4), st.integers(0, 2**32))
    def test_odd_soundness(self, ell, k, seed):
        inst = random_odd_blowup(random.Random(seed), ell, k, max_total=24)
        gs, g, p, m = inst.graph, inst.data["template"], inst.data["partition"], inst.data["mapping"]
        assert verify_blowup(gs, g, p, m, require_proper=True) == []
        assert oracles.blowup_ok(gs, g, p, m.cliques)
        holes = oracles.nx_holes(gs)
        assert {len(c) for c in holes} <= {2 * ell + 1}
        for c in holes:
            owners = [m.template_of[v] for v in c]
            assert len(set(owners)) == len(owners)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 2**32))
    def test_even_soundness(self, k, s, seed):
        if k + s < 3:
            return
        inst = random_even_blowup(random.Random(seed), 4, k, s, max_total=24)
        gs, g, p, m = inst.graph, inst.data["template"], inst.data["partition"], inst.data["mapping"]
        assert verify_blowup(gs, g, p, m, require_proper=True) == []
        assert oracles.blowup_ok(gs, g, p, m.cliques)
        assert oracles.hole_lengths(gs) <= {8}

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32))
    def test_solid_neighbourhood_of_optional_end(self, seed):
        inst = random_odd_blowup(random.Random(seed), 3, 4, max_total=10)
        g, p = inst.data["template"], inst.data["partition"]
        cls = classify_edges(g, p)
        side = set(p.A) | set(p.B)
        for (a, b), c in cls.items():
            if c != "optional":
                continue
            u = a if a in p.A else b
            if u not in p.A:
                continue
            nb = [v for v in g.neighbors(u) if v in side]
            for i, v in enumerate(nb):
                for t in nb[i + 1:]:
                    assert g.has_edge(v, t) and cls[tuple(sorted((v, t)))] == "solid"


class TestVerify:
    def test_missing_solid_edge(self):
        g, p = pyramid()
        sizes = [1] * g.n
        a = p.Ap[0]
        sizes[a] = 2
        gs, m = build_blowup(g, p, BlowupSpec(tuple(sizes)))
        low = m.cliques[a][0]
        other = p.Ap[1]
        bad = toggled(gs, low, other)
        assert any(v.startswith("(4)") for v in verify_blowup(bad, g, p, m))

    def test_rank_order_swapped(self):
        # first seeded blowup with a clique whose lowest and top copies differ
        for seed in range(100):
            inst = random_odd_blowup(random.Random(seed), 3, 3, max_total=20)
            gs, g, p, m = inst.graph, inst.data["template"], inst.data["partition"], inst.data["mapping"]
            for u, c in enumerate(m.cliques):
                if len(c) >= 2 and gs.closed(c[0]) != gs.closed(c[-1]):
                    cl = list(m.cliques)
                    cl[u] = (c[-1],) + c[1:-1] + (c[0],)
                    bad = BlowupMapping.from_cliques(gs.n, cl, p)
                    assert any(v.startswith("(2)") for v in verify_blowup(gs, g, p, bad))
                    return
        pytest.fail("no clique with distinguishable ranks")

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32))
    def test_agrees_with_definition_on_mutants(self, seed):
        rng = random.Random(seed)
        inst = random_odd_blowup(rng, 3, rng.randint(3, 4), max_total=16)
        gs, g, p, m = inst.graph, inst.data["template"], inst.data["partition"], inst.data["mapping"]
        a, b = rng.sample(range(gs.n), 2)
        bad = toggled(gs, a, b)
        assert (verify_blowup(bad, g, p, m) == []) == oracles.blowup_ok(bad, g, p, m.cliques)


class TestPreblowup:
    def test_identity(self):
        g, p = pyramid()
        gs, m = build_blowup(g, p, BlowupSpec((1,) * g.n))
        assert verify_preblowup(gs, g, p, as_preblowup(p, m)) == []

    def test_blowup_is_preblowup(self):
        inst = random_odd_blowup(random.Random(11), 3, 4, max_total=20)
        gs, g, p, m = inst.graph, inst.data["template"], inst.data["partition"], inst.data["mapping"]
        assert verify_preblowup(gs, g, p, as_preblowup(p, m)) == []

    def test_interior_copy_missing_a_side(self):
        g, p = pyramid()
        sizes = [1] * g.n
        i = sorted(p.I)[0]
        sizes[i] = 2
        gs, m = build_blowup(g, p, BlowupSpec(tuple(sizes)))
        low = m.cliques[i][0]
        a, b = (v for v in g.neighbors(i))
        bad = toggled(gs, low, a)
        assert any(v.startswith("pb:II") for v in verify_preblowup(bad, g, p, as_preblowup(p, m)))


class TestDominationScore:
    def test_identity(self):
        g, p = pyramid()
        gs, m = build_blowup(g, p, BlowupSpec((1,) * g.n))
        assert domination_score(gs, g, p, m) == len(p.A) + len(p.Ap) + len(p.I)

    def test_all_copies_dominated(self):
        g, p = pyramid()
        sizes = [2 if (u in p.I or u in p.Ap) else 1 for u in range(g.n)]
        gs, m = build_blowup(g, p, BlowupSpec(tuple(sizes)))
        core = list(p.A) + list(p.Ap) + sorted(p.I)
        assert domination_score(gs, g, p, m) == sum(sizes[u] for u in core)

    def test_one_undominated_copy(self):
        g, p = pyramid()
        i = sorted(p.I)[0]
        sizes = [1] * g.n
        sizes[i] = 2
        gs, m = build_blowup(g, p, BlowupSpec(tuple(sizes)))
        low = m.cliques[i][0]
        # give the copy a private neighbour so it escapes N[i]
        extra = Graph.from_edges(gs.n + 1, gs.edges() + [(low, gs.n)])
        copies = len(p.A) + len(p.Ap) + len(p.I) + 1
        assert domination_score(extra, g, p, as_preblowup(p, m)) == copies - 1

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32))
    def test_matches_direct_count(self, seed):
        inst = random_odd_blowup(random.Random(seed), 3, 3, max_total=18)
        gs, g, p, m = inst.graph, inst.data["template"], inst.data["partition"], inst.data["mapping"]
        h = oracles.to_nx(gs)
        want = 0
        for u in list(p.A) + list(p.Ap) + sorted(p.I):
            top = set(h[m.top(u)]) | {m.top(u)}
            want += sum(1 for x in m.cliques[u] if set(h[x]) | {x} <= top)
        assert domination_score(gs, g, p, m) == want


class TestNormalize:
    def test_identity(self):
        g, p = pyramid()
        gs, m = build_blowup(g, p, BlowupSpec((1,) * g.n))
        tpl, part, mm = normalize_preblowup(gs, pieces_of(gs, p, m, "odd"))
        assert tpl.n == g.n and all(len(c) == 1 for c in mm.cliques)

    def test_off_length_hole(self):
        g, p = pyramid()
        gs, m = build_blowup(g, p, BlowupSpec((1,) * g.n))
        bad = toggled(gs, p.A[0], p.A[1])
        with pytest.raises(PreconditionError, match="spectrum"):
            normalize_preblowup(bad, pieces_of(bad, p, m, "odd"))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(3, 4), st.integers(0, 2**32))
    def test_shuffled_round_trip(self, ell, seed):
        rng = random.Random(seed)
        inst = random_odd_blowup(rng, ell, rng.randint(3, 4), max_total=22)
        gs, g, p, m = inst.graph, inst.data["template"], inst.data["partition"], inst.data["mapping"]
        order = list(range(gs.n))
        rng.shuffle(order)
        pos = {v: i for i, v in enumerate(order)}
        h = relabel(gs, order)
        cl = [tuple(pos[v] for v in c) for c in m.cliques]
        hm = BlowupMapping.from_cliques(h.n, cl, p)
        tpl, part, mm = normalize_preblowup(h, pieces_of(h, p, hm, "odd"))
        assert verify_blowup(h, tpl, part, mm, require_proper=True) == []
        assert nx.is_isomorphic(oracles.to_nx(tpl), oracles.to_nx(g))
