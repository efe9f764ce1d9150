"""Hyper cycles in a side-tagged hypergraph."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BudgetExceeded
from ..hypergraph import Hypergraph


@dataclass(frozen=True)
class HyperCycle:
    """``sequence`` is (j_1, e_1, ..., j_t, e_t) with e_i edge indices."""

    sequence: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.sequence) // 2

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.sequence[0::2]

    @property
    def edges(self) -> tuple[int, ...]:
        return self.sequence[1::2]


def is_hyper_cycle(hg: Hypergraph, cyc: HyperCycle) -> bool:
    js, es = cyc.vertices, cyc.edges
    t = len(js)
    if t < 2 or len(set(js)) != t or len(set(es)) != t:
        return False
    if hg.sides is None:
        return False
    for i in range(t):
        for m in range(t):
            inside = js[i] in hg.edges[es[m]]
            if inside != (m == i or m == (i - 1) % t):
                return False
    for a in range(t):
        for b in range(a + 1, t):
            if hg.sides[es[a]] == hg.sides[es[b]] and hg.edges[es[a]] & hg.edges[es[b]]:
                return False
    return True


def find_hyper_cycle(hg: Hypergraph, min_length: int = 3, budget: int = 1_000_000) -> HyperCycle | None:
    """A hyper cycle of length at least ``min_length``, or None.

    Depth-first search over sequences j_1 e_1 j_2 e_2 ..., each extension kept
    consistent with the membership and disjointness constraints; the first
    edge is the smallest index of the cycle.
    """
    if hg.sides is None:
        raise ValueError("every hyperedge needs a side tag")
    edges, sides = hg.edges, hg.sides
    m = len(edges)
    left = [budget]

    def extend(js: list[int], es: list[int]):
        left[0] -= 1
        if left[0] < 0:
            raise BudgetExceeded("hyper cycle search")
        cur = es[-1]
        for j in sorted(edges[cur]):
            if j in js:
                continue
            # j may not lie in earlier edges other than cur
            if any(j in edges[e] for e in es[:-1]):
                continue
            for f in range(es[0] + 1, m):
                if f in es or j not in edges[f]:
                    continue
                ef = edges[f]
                if any(sides[f] == sides[e] and ef & edges[e] for e in es):
                    continue
                # f may contain j_1 only to close, and no other earlier vertex
                if any(x in ef for x in js[1:]):
                    continue
                closes = js[0] in ef
                if closes:
                    if len(es) + 1 >= min_length:
                        return HyperCycle(tuple(x for pair in zip(js + [j], es + [f]) for x in pair))
                    continue
                found = extend(js + [j], es + [f])
                if found:
                    return found
        return None

    for e1 in range(m):
        for j1 in sorted(edges[e1]):
            # j_1 lies in e_t and e_1 only; search j_2 onward from e_1
            found = extend([j1], [e1])
            if found:
                return found
    return None


def has_hyper_cycle_gt2(hg: Hypergraph, budget: int = 1_000_000) -> HyperCycle | None:
    if not hg.edges:
        return None
    return find_hyper_cycle(hg, 3, budget)
