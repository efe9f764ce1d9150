import pytest
from conftest import graphs
from hypothesis import given, settings

import oracles
from samehole.errors import PreconditionError
from samehole.graph import Graph, complete_graph, cycle_graph
from samehole.truemper import _audit_reason, audit_configs_for_class, classify_wheel, config_holes, find_configs


def subdivided_theta(lengths):
    """Two ends 0 and 1 joined by three paths of the given lengths."""
    edges, nxt = [], 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def pyramid(lengths):
    """Apex 0, triangle 1,2,3, path i from the apex to triangle vertex i+1."""
    edges, nxt = [(1, 2), (2, 3), (1, 3)], 4
    for i, length in enumerate(lengths):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, i + 1))
    return Graph.from_edges(nxt, edges)


def prism(lengths):
    edges, nxt = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], 6
    for i, length in enumerate(lengths):
        prev = i
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, i + 3))
    return Graph.from_edges(nxt, edges)


def wheel(rim_len, nbrs):
    edges = [(i, (i + 1) % rim_len) for i in range(rim_len)]
    edges += [(rim_len, v) for v in nbrs]
    return Graph.from_edges(rim_len + 1, edges)


def keys(g, cfgs):
    out = set()
    for c in cfgs:
        if c.kind == "wheel":
            out.add(("wheel", c.center, frozenset(c.rim)))
        else:
            out.add((c.kind, c.vertices))
    return out


class TestFindConfigs:
    def test_balanced_pyramid(self):
        g = pyramid((3, 3, 3))
        assert g.n == 10
        cfgs = find_configs(g)
        assert [c.kind for c in cfgs] == ["pyramid"]
        assert cfgs[0].balanced and cfgs[0].lengths == (3, 3, 3)

    def test_k4_has_none(self):
        assert find_configs(complete_graph(4)) == []

    def test_universal_wheel(self):
        cfgs = find_configs(wheel(6, range(6)))
        assert len(cfgs) == 1 and cfgs[0].kind == "wheel" and cfgs[0].wheel_kind == "universal"

    def test_theta_and_prism(self):
        t = find_configs(subdivided_theta((4, 4, 4)))
        assert [(c.kind, c.lengths) for c in t] == [("theta", (4, 4, 4))]
        p = find_configs(prism((3, 3, 3)))
        assert [(c.kind, c.lengths) for c in p] == [("prism", (3, 3, 3))]

    def test_config_holes_have_expected_lengths(self):
        g = pyramid((3, 3, 3))
        cfg = find_configs(g)[0]
        assert sorted(len(h) for h in config_holes(g, cfg)) == [7, 7, 7]

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=9, p=0.35))
    def test_matches_subset_oracle(self, g):
        assert keys(g, find_configs(g)) == oracles.all_configs(g)


class TestClassifyWheel:
    def test_kinds(self):
        assert classify_wheel(wheel(6, range(6)), tuple(range(6)), 6) == "universal"
        assert classify_wheel(wheel(6, (0, 1, 2)), tuple(range(6)), 6) == "twin"
        assert classify_wheel(wheel(6, (0, 1, 3, 4)), tuple(range(6)), 6) == "proper"

    def test_needs_three_neighbours(self):
        with pytest.raises(PreconditionError):
            classify_wheel(wheel(6, (0, 1)), tuple(range(6)), 6)


class TestAudit:
    def test_pyramid_k7(self):
        assert audit_configs_for_class(pyramid((3, 3, 3)), 7).violations == []

    def test_theta_k8(self):
        assert audit_configs_for_class(subdivided_theta((4, 4, 4)), 8).violations == []

    def test_prism_k8(self):
        assert audit_configs_for_class(prism((3, 3, 3)), 8).violations == []

    def test_unbalanced_theta_refused(self):
        g = subdivided_theta((2, 2, 4))
        assert oracles.hole_lengths(g) == {4, 6}
        with pytest.raises(PreconditionError):
            audit_configs_for_class(g, 6)

    def test_unbalanced_pyramid_has_mixed_holes(self):
        g = pyramid((1, 2, 2))
        assert oracles.hole_lengths(g) == {4, 5}
        with pytest.raises(PreconditionError):
            audit_configs_for_class(g, 5)

    def test_reasons(self):
        pyr = find_configs(pyramid((3, 3, 3)))[0]
        assert _audit_reason(pyr, "odd", 3) is None
        assert _audit_reason(pyr, "odd", 4) is not None
        assert _audit_reason(pyr, "even", 4) is not None
        proper = find_configs(wheel(6, (0, 1, 3, 4)), kinds=("wheel",))[0]
        assert _audit_reason(proper, "odd", 3) == "proper wheel"

    def test_cycle_has_no_configs(self):
        assert audit_configs_for_class(cycle_graph(7), 7).configs == []
