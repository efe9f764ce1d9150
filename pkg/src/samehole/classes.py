"""Recognition of chordal, cograph, split, threshold, quasi-threshold and half
graphs, plus the domination relation u <=_G v."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits, complement, component_masks, lowest, popcount
from .hypergraph import Hypergraph

COMPLETE = "C"
ANTICOMPLETE = "A"


def leq(g: Graph, u: int, v: int) -> bool:
    """u <=_G v, i.e. N(u) - {v} is contained in N(v) - {u}."""
    if u == v:
        return True
    nu = g.adj[u] & ~(1 << v)
    nv = g.adj[v] & ~(1 << u)
    return not (nu & ~nv)


def leq_in(g: Graph, u: int, v: int, within: int) -> bool:
    """u <=_{G[within]} v."""
    if u == v:
        return True
    nu = g.adj[u] & within & ~(1 << v)
    nv = g.adj[v] & within & ~(1 << u)
    return not (nu & ~nv)


# threshold graphs -----------------------------------------------------------

@dataclass(frozen=True)
class ThresholdCertificate:
    """``elimination`` lists (vertex, flag) in construction order, flag "C" if the
    vertex was added complete to the previous ones and "A" if anticomplete.
    ``domination`` lists vertices with v_i <=_G v_j whenever i <= j."""

    elimination: tuple[tuple[int, str], ...]
    domination: tuple[int, ...]

    def word(self) -> str:
        return "".join(f for _, f in self.elimination)


def recognize_threshold(g: Graph) -> ThresholdCertificate | None:
    alive = g.all_mask
    removed: list[tuple[int, str]] = []
    while alive:
        pick = None
        for v in bits(alive):
            nb = g.adj[v] & alive
            if nb == 0:
                pick = (v, ANTICOMPLETE)
                break
            if nb == alive & ~(1 << v):
                pick = (v, COMPLETE)
                break
        if pick is None:
            return None
        removed.append(pick)
        alive &= ~(1 << pick[0])
    elimination = tuple(reversed(removed))
    # the first vertex of a construction has nothing to be complete to
    if elimination:
        elimination = ((elimination[0][0], ANTICOMPLETE),) + elimination[1:]
    dom = tuple(sorted(range(g.n), key=lambda v: (g.degree(v), v)))
    for i in range(len(dom) - 1):
        if not leq(g, dom[i], dom[i + 1]):
            return None
    return ThresholdCertificate(elimination, dom)


def threshold_from_word(word: str) -> Graph:
    """Threshold graph on vertices 0..len(word)-1; vertex i is added complete
    ("C") or anticomplete ("A") to vertices 0..i-1. The first token is ignored."""
    edges = []
    for i, ch in enumerate(word):
        if ch not in (COMPLETE, ANTICOMPLETE):
            raise ValueError(f"elimination word token {ch!r} is not C or A")
        if ch == COMPLETE:
            edges.extend((j, i) for j in range(i))
    return Graph.from_edges(len(word), edges)


def replay_elimination(n: int, elimination) -> Graph:
    edges = []
    placed: list[int] = []
    for v, flag in elimination:
        if flag == COMPLETE:
            edges.extend((u, v) for u in placed)
        placed.append(v)
    return Graph.from_edges(n, edges)


def is_threshold(g: Graph) -> bool:
    return recognize_threshold(g) is not None


# cographs -------------------------------------------------------------------

def recognize_cograph(g: Graph):
    """Cotree as nested tuples ("leaf", v) / ("union", [...]) / ("join", [...]),
    or None if g contains an induced P4."""

    def rec(mask: int):
        if popcount(mask) == 1:
            return ("leaf", lowest(mask))
        comps = component_masks(g, within=mask)
        if len(comps) > 1:
            kids = [rec(c) for c in comps]
            return None if any(k is None for k in kids) else ("union", kids)
        anti = component_masks(g, within=mask, anti=True)
        if len(anti) > 1:
            kids = [rec(c) for c in anti]
            return None if any(k is None for k in kids) else ("join", kids)
        return None

    if g.n == 0:
        return ("union", [])
    return rec(g.all_mask)


# split graphs ---------------------------------------------------------------

def recognize_split(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """(clique, stable set) partition, or None."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    deg = [g.degree(v) for v in order]
    m = 0
    for i, d in enumerate(deg, start=1):
        if d >= i - 1:
            m = i
    clique = 0
    for v in order[:m]:
        clique |= 1 << v
    stable = g.all_mask & ~clique
    if g.is_clique(clique) and g.is_stable(stable):
        return frozenset(bits(clique)), frozenset(bits(stable))
    return None


# chordal graphs -------------------------------------------------------------

def perfect_elimination_ordering(g: Graph) -> list[int] | None:
    alive = g.all_mask
    order = []
    while alive:
        for v in bits(alive):
            if g.is_clique(g.adj[v] & alive):
                order.append(v)
                alive &= ~(1 << v)
                break
        else:
            return None
    return order


def recognize_chordal(g: Graph) -> list[int] | None:
    return perfect_elimination_ordering(g)


# quasi-threshold graphs ----------------------------------------------------

def universal_peel_forest(g: Graph) -> list[int] | None:
    """Parent pointers (-1 for roots) of the forest obtained by peeling a
    universal vertex from every component, recursively; None if some component
    with at least two vertices has no universal vertex."""
    parent = [-1] * g.n

    stack = [(g.all_mask, -1)]
    while stack:
        mask, par = stack.pop()
        for comp in component_masks(g, within=mask):
            uni = None
            for v in bits(comp):
                if not (comp & ~g.adj[v] & ~(1 << v)):
                    uni = v
                    break
            if uni is None:
                return None
            parent[uni] = par
            rest = comp & ~(1 << uni)
            if rest:
                stack.append((rest, uni))
    return parent


def recognize_quasi_threshold(g: Graph) -> Hypergraph | None:
    """Laminar hypergraph whose i-th hyperedge corresponds to vertex i.

    Hyperedge i is the set of vertices at or below i in the peel forest, so the
    identity map is an isomorphism from g to the line graph."""
    parent = universal_peel_forest(g)
    if parent is None:
        return None
    below = [1 << v for v in range(g.n)]
    # accumulate descendants bottom-up by depth
    depth = [0] * g.n
    for v in range(g.n):
        d, u = 0, v
        while parent[u] != -1:
            u = parent[u]
            d += 1
        depth[v] = d
    for v in sorted(range(g.n), key=lambda x: -depth[x]):
        if parent[v] != -1:
            below[parent[v]] |= below[v]
    return Hypergraph(g.n, tuple(frozenset(bits(b)) for b in below))


def is_quasi_threshold(g: Graph) -> bool:
    return universal_peel_forest(g) is not None


# half graphs ----------------------------------------------------------------

@dataclass(frozen=True)
class HalfGraphCertificate:
    clique_k: frozenset[int]
    clique_k2: frozenset[int]
    order_k: tuple[int, ...]
    order_k2: tuple[int, ...]


def _chain(g: Graph, verts) -> tuple[int, ...] | None:
    order = sorted(verts, key=lambda v: (g.degree(v), v))
    for i in range(len(order) - 1):
        if not leq(g, order[i], order[i + 1]):
            return None
    return tuple(order)


def recognize_half_graph(g: Graph) -> HalfGraphCertificate | None:
    co = complement(g)
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for u in bits(co.adj[v]):
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    k = [v for v in range(g.n) if color[v] == 0]
    k2 = [v for v in range(g.n) if color[v] == 1]
    ok, ok2 = _chain(g, k), _chain(g, k2)
    if ok is None or ok2 is None:
        return None
    return HalfGraphCertificate(frozenset(k), frozenset(k2), ok, ok2)


def classify(g: Graph) -> dict[str, bool]:
    return {
        "chordal": recognize_chordal(g) is not None,
        "cograph": recognize_cograph(g) is not None,
        "split": recognize_split(g) is not None,
        "threshold": recognize_threshold(g) is not None,
        "quasi-threshold": recognize_quasi_threshold(g) is not None,
        "half-graph": recognize_half_graph(g) is not None,
    }
