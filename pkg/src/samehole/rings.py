"""Rings: circular sequences of cliques with nested neighbourhoods."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classes import leq, recognize_half_graph
from .errors import SpecError
from .graph import Graph, bits, induced, to_mask
from .holes import enumerate_holes


@dataclass(frozen=True)
class RingPartition:
    k: int
    cliques: tuple[tuple[int, ...], ...]

    def masks(self) -> list[int]:
        return [to_mask(c) for c in self.cliques]


def check_staircases(sizes: Sequence[int], staircases: Sequence[Sequence[int]]) -> None:
    """Raise SpecError unless the staircases describe a ring.

    ``staircases[i][r]`` is the number of top vertices of K_{i+1} adjacent to
    the vertex of rank r in K_i, where rank 0 is the top.
    """
    k = len(sizes)
    if k < 4:
        raise SpecError("length", f"a ring needs at least 4 cliques, got {k}")
    if len(staircases) != k:
        raise SpecError("staircase", f"expected {k} staircases, got {len(staircases)}")
    if any(s < 1 for s in sizes):
        raise SpecError("sizes", "every clique needs at least one vertex")
    for i, t in enumerate(staircases):
        nxt = sizes[(i + 1) % k]
        if len(t) != sizes[i]:
            raise SpecError("staircase", f"staircase {i} has {len(t)} entries, clique has {sizes[i]}")
        if any(t[r] < t[r + 1] for r in range(len(t) - 1)):
            raise SpecError("comparability", f"staircase {i} is not nonincreasing")
        if t[0] != nxt:
            raise SpecError("condition 3", f"top of clique {i} is not complete to clique {(i + 1) % k}")
        if min(t) < 1 or max(t) > nxt:
            raise SpecError("condition 3",
                            f"staircase {i} leaves a vertex of clique {i} off the top of clique {(i + 1) % k}")


def build_ring(k: int, sizes: Sequence[int], staircases: Sequence[Sequence[int]] | None = None,
               ) -> tuple[Graph, RingPartition]:
    if staircases is None:
        staircases = [[sizes[(i + 1) % k]] * sizes[i] for i in range(k)]
    if len(sizes) != k:
        raise SpecError("sizes", f"expected {k} sizes, got {len(sizes)}")
    check_staircases(sizes, staircases)
    ids = []
    nxt = 0
    for s in sizes:
        ids.append(list(range(nxt, nxt + s)))
        nxt += s
    edges = []
    for i in range(k):
        c = ids[i]
        edges.extend((c[a], c[b]) for a in range(len(c)) for b in range(a + 1, len(c)))
        d = ids[(i + 1) % k]
        for r, t in enumerate(staircases[i]):
            edges.extend((c[r], d[q]) for q in range(t))
    labels = [f"K{i}:{r}" for i in range(k) for r in range(sizes[i])]
    g = Graph.from_edges(nxt, edges, labels)
    return g, RingPartition(k, tuple(tuple(c) for c in ids))


def verify_ring(g: Graph, p: RingPartition) -> list[str]:
    out: list[str] = []
    k = p.k
    masks = p.masks()
    if k != len(masks):
        out.append("cover: clique count differs from k")
        return out
    if k < 4:
        out.append("length: fewer than 4 cliques")
    union = 0
    for m in masks:
        if not m:
            out.append("cover: empty clique")
        if union & m:
            out.append("cover: cliques overlap")
        union |= m
    if union != g.all_mask:
        out.append("cover: cliques do not cover the vertex set")
    if any(v >= g.n for c in p.cliques for v in c):
        out.append("cover: vertex outside the graph")
        return out
    if out:
        return out
    for i, m in enumerate(masks):
        prev, nxt = masks[(i - 1) % k], masks[(i + 1) % k]
        if not g.is_clique(m):
            out.append(f"condition 1: clique {i} has a nonedge")
        far = union & ~m & ~prev & ~nxt
        if not g.is_anticomplete_to(m, far):
            out.append(f"condition 2: clique {i} has a neighbour in a non-consecutive clique")
        around = prev | nxt
        if not any(not (around & ~g.adj[v]) for v in bits(m)):
            out.append(f"condition 3: no vertex of clique {i} is complete to both neighbouring cliques")
        vs = list(bits(m))
        bad = False
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                if not (leq(g, vs[a], vs[b]) or leq(g, vs[b], vs[a])):
                    bad = True
        if bad:
            out.append(f"condition 4: clique {i} has two incomparable vertices")
        sub, _ = induced(g, m | nxt)
        if recognize_half_graph(sub) is None:
            out.append(f"half graph: cliques {i} and {(i + 1) % k} do not induce a half graph")
    return out


def _ring_from_hole(g: Graph, cycle) -> RingPartition | None:
    h = list(cycle)
    k = len(h)
    others = g.all_mask
    # move every hole vertex to a vertex of maximum degree in its clique
    for i in range(k):
        hmask = to_mask(h)
        want = (1 << h[i - 1]) | (1 << h[(i + 1) % k])
        best, bdeg = h[i], g.degree(h[i])
        for x in bits(others & ~hmask):
            if g.adj[x] & hmask == want | (1 << h[i]):
                d = g.degree(x)
                if d > bdeg:
                    best, bdeg = x, d
        h[i] = best
    hmask = to_mask(h)
    pattern = {}
    for i in range(k):
        pattern[(1 << h[i - 1]) | (1 << h[i]) | (1 << h[(i + 1) % k])] = i
    cliques = [[h[i]] for i in range(k)]
    for x in bits(others & ~hmask):
        i = pattern.get(g.adj[x] & hmask)
        if i is None:
            return None
        cliques[i].append(x)
    part = RingPartition(k, tuple(tuple(sorted(c)) for c in cliques))
    return part if not verify_ring(g, part) else None


def recognize_ring(g: Graph, max_seeds: int = 64) -> RingPartition | None:
    holes = enumerate_holes(g, cap=max_seeds)
    if not holes:
        return None
    k = holes[0].length
    for hole in holes:
        if hole.length != k:
            return None
        part = _ring_from_hole(g, hole.cycle)
        if part is not None:
            return part
    return None
