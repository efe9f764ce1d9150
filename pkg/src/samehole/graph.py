"""Immutable simple graphs on dense integer ids with bitset adjacency.

Vertex sets are passed around either as Python ints used as bitsets or as
iterables of ids; the helpers ``to_mask`` and ``bits`` convert between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph.

    ``adj[v]`` is the open neighbourhood of ``v`` as a bitset. ``labels`` is an
    optional tuple of unique strings, one per vertex, carried for provenance only.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside the graph")
            if nb >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValueError("labels must cover all vertices")
            if len(set(self.labels)) != self.n:
                raise ValueError("labels must be unique")

    # construction -------------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    def with_labels(self, labels: Sequence[str] | None) -> "Graph":
        return Graph(self.n, self.adj, tuple(labels) if labels is not None else None)

    # queries -------------------------------------------------------------
    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def closed(self, v: int) -> int:
        """Closed neighbourhood N[v] as a bitset."""
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def edge_count(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def neighborhood_of_set(self, mask: int) -> int:
        """N(X): vertices outside X with a neighbour in X."""
        nb = 0
        for v in bits(mask):
            nb |= self.adj[v]
        return nb & ~mask

    def is_clique(self, mask: int) -> bool:
        for v in bits(mask):
            if (mask & ~(1 << v)) & ~self.adj[v]:
                return False
        return True

    def is_stable(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def is_complete_to(self, x: int, y: int) -> bool:
        """Every vertex of bitset x is adjacent to every other vertex of bitset y."""
        return all(not (y & ~self.adj[v] & ~(1 << v)) for v in bits(x))

    def is_anticomplete_to(self, x: int, y: int) -> bool:
        return all(not (self.adj[v] & y) for v in bits(x))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)


def complement(g: Graph) -> Graph:
    full = g.all_mask
    adj = tuple(full & ~g.adj[v] & ~(1 << v) for v in range(g.n))
    return Graph(g.n, adj, g.labels)


def components(g: Graph, anti: bool = False, within: int | None = None) -> list[frozenset[int]]:
    """Connected components of g (or of its complement when ``anti``).

    ``within`` restricts to the subgraph induced on a bitset. Components are
    returned sorted by their minimum vertex.
    """
    remaining = g.all_mask if within is None else within
    scope = remaining
    out = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nb = g.adj[v]
                if anti:
                    nb = ~nb & ~(1 << v)
                nxt |= nb
            nxt &= scope & ~comp
            comp |= nxt
            frontier = nxt
        remaining &= ~comp
        out.append(frozenset(bits(comp)))
    return out


def component_masks(g: Graph, within: int | None = None, anti: bool = False) -> list[int]:
    return [to_mask(c) for c in components(g, anti=anti, within=within)]


def is_connected(g: Graph, within: int | None = None) -> bool:
    scope = g.all_mask if within is None else within
    if not scope:
        return True
    return len(components(g, within=scope)) == 1


def is_module(g: Graph, x: Iterable[int] | int) -> bool:
    xm = x if isinstance(x, int) else to_mask(x)
    outside = g.all_mask & ~xm
    for v in bits(outside):
        seen = g.adj[v] & xm
        if seen and seen != xm:
            return False
    return True


def twin_classes(g: Graph) -> list[frozenset[int]]:
    """Partition of V(g) by equal closed neighbourhoods, sorted by minimum."""
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.closed(v), []).append(v)
    return sorted((frozenset(c) for c in groups.values()), key=min)


def universal_and_isolated(g: Graph) -> tuple[frozenset[int], frozenset[int]]:
    full = g.all_mask
    uni = frozenset(v for v in range(g.n) if g.closed(v) == full)
    iso = frozenset(v for v in range(g.n) if g.adj[v] == 0)
    return uni, iso


def universal_in(g: Graph, mask: int) -> int:
    """Bitset of vertices of ``mask`` adjacent to all other vertices of ``mask``."""
    out = 0
    for v in bits(mask):
        if not (mask & ~g.adj[v] & ~(1 << v)):
            out |= 1 << v
    return out


def isolated_in(g: Graph, mask: int) -> int:
    out = 0
    for v in bits(mask):
        if not (g.adj[v] & mask):
            out |= 1 << v
    return out


def induced(g: Graph, x: Iterable[int] | int) -> tuple[Graph, list[int]]:
    """Subgraph induced on x. Returns the graph and ``back`` with back[i] = old id."""
    xm = x if isinstance(x, int) else to_mask(x)
    back = list(bits(xm))
    pos = {v: i for i, v in enumerate(back)}
    adj = []
    for v in back:
        m = 0
        for u in bits(g.adj[v] & xm):
            m |= 1 << pos[u]
        adj.append(m)
    labels = tuple(g.labels[v] for v in back) if g.labels is not None else None
    return Graph(len(back), tuple(adj), labels), back


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex i is g's vertex order[i]."""
    pos = {v: i for i, v in enumerate(order)}
    edges = [(pos[u], pos[v]) for u, v in g.edges()]
    labels = [g.labels[v] for v in order] if g.labels is not None else None
    return Graph.from_edges(g.n, edges, labels)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for h in graphs:
        edges.extend((u + off, v + off) for u, v in h.edges())
        off += h.n
    return Graph.from_edges(off, edges)


def bfs_distances(g: Graph, sources: int, within: int | None = None) -> dict[int, int]:
    """Multi-source BFS distances from bitset ``sources``."""
    scope = g.all_mask if within is None else within
    dist = {v: 0 for v in bits(sources & scope)}
    seen = sources & scope
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= scope & ~seen
        for v in bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


# small named graphs ----------------------------------------------------------

def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
