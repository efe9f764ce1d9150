"""Clique cutset detection.

Two passes. A cheap sweep looks at separators of the form N(C) where C is a
component of G - N[v]. If none of those is a clique, the complete method runs:
a minimal triangulation by MCS-M, whose minimal separators include every
clique minimal separator of G.
"""

from __future__ import annotations

from .graph import Graph, bits, component_masks


def _split(g: Graph, clique: int) -> tuple[frozenset[int], tuple[frozenset[int], frozenset[int]]] | None:
    rest = g.all_mask & ~clique
    comps = component_masks(g, within=rest)
    if len(comps) < 2:
        return None
    first = comps[0]
    other = rest & ~first
    return frozenset(bits(clique)), (frozenset(bits(first)), frozenset(bits(other)))


def _sweep(g: Graph):
    seen = set()
    for v in range(g.n):
        rest = g.all_mask & ~g.closed(v)
        for comp in component_masks(g, within=rest):
            sep = g.neighborhood_of_set(comp)
            if sep in seen:
                continue
            seen.add(sep)
            if g.is_clique(sep):
                res = _split(g, sep)
                if res is not None:
                    return res
    return None


def mcs_m(g: Graph) -> tuple[list[int], list[int]]:
    """MCS-M minimal elimination ordering.

    Returns ``order`` (order[i] is the vertex eliminated i-th) and the
    triangulation's adjacency as bitsets.
    """
    n = g.n
    weight = [0] * n
    unnumbered = g.all_mask
    fill = list(g.adj)
    order = [0] * n
    for i in range(n - 1, -1, -1):
        # pick unnumbered vertex of maximum weight, smallest id on ties
        best = -1
        bw = -1
        for v in bits(unnumbered):
            if weight[v] > bw:
                best, bw = v, weight[v]
        v = best
        order[i] = v
        unnumbered &= ~(1 << v)
        # vertices u reachable from v through unnumbered vertices of weight < w(u)
        reach = set()
        # label-correcting search on the bottleneck weight of path interiors
        maxw = {}
        for u in bits(g.adj[v] & unnumbered):
            maxw[u] = -1
        frontier = dict(maxw)
        while frontier:
            nxt = {}
            for u, pw in frontier.items():
                if pw < weight[u]:
                    reach.add(u)
                through = max(pw, weight[u])
                for x in bits(g.adj[u] & unnumbered & ~(1 << v)):
                    if x not in maxw or maxw[x] > through:
                        maxw[x] = through
                        nxt[x] = through
            frontier = nxt
        for u in reach:
            weight[u] += 1
            if not fill[v] >> u & 1:
                fill[v] |= 1 << u
                fill[u] |= 1 << v
    return order, fill


def _mcs_m_separators(g: Graph):
    order, fill = mcs_m(g)
    pos = {v: i for i, v in enumerate(order)}
    seen = set()
    for v in order:
        later = 0
        for u in bits(fill[v]):
            if pos[u] > pos[v]:
                later |= 1 << u
        if later in seen:
            continue
        seen.add(later)
        if g.is_clique(later):
            res = _split(g, later)
            if res is not None:
                return res
    return None


def clique_cutset(g: Graph):
    """Return ``(clique, (side1, side2))`` or None.

    For a disconnected graph the clique is empty. Otherwise ``side1`` is one
    component of G - clique and ``side2`` the union of the others.
    """
    if g.n == 0:
        return None
    comps = component_masks(g)
    if len(comps) > 1:
        return frozenset(), (frozenset(bits(comps[0])), frozenset(bits(g.all_mask & ~comps[0])))
    res = _sweep(g)
    if res is not None:
        return res
    return _mcs_m_separators(g)
