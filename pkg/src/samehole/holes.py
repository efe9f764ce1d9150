"""Hole (induced cycle of length at least 4) enumeration and hole spectra."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import BudgetExceeded
from .graph import Graph, bits

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class Hole:
    cycle: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.cycle:
            m |= 1 << v
        return m


def canonical_cycle(cycle) -> tuple[int, ...]:
    """Rotate and reflect so the cycle starts at its minimum vertex and the
    second entry is the smaller of that vertex's two cycle neighbours."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[:0:-1]
    return tuple(c)


def is_hole(g: Graph, cycle) -> bool:
    c = list(cycle)
    m = len(c)
    if m < 4 or len(set(c)) != m:
        return False
    mask = 0
    for v in c:
        mask |= 1 << v
    for i, v in enumerate(c):
        want = (1 << c[i - 1]) | (1 << c[(i + 1) % m])
        if g.adj[v] & mask != want:
            return False
    return True


class _Counter:
    __slots__ = ("left",)

    def __init__(self, budget):
        self.left = budget


def _holes_for_pair(g: Graph, s: int, a: int, b: int, allowed: int, max_len: int | None,
                    counter: _Counter | None, out: list):
    """All chordless a..b paths whose interior lies in ``allowed`` and avoids N(b),
    except for the vertex right before b."""
    adj = g.adj
    bbit = 1 << b
    # the path a=p0,...,p_r=b; hole length = r + 2 (path vertices plus s)
    path = [a]
    # stack entries: (candidates iterator state)
    def rec(x: int, forbid: int, onpath: int):
        if counter is not None:
            counter.left -= 1
            if counter.left < 0:
                raise BudgetExceeded("hole enumeration budget exhausted")
        if adj[x] & bbit:
            out.append(tuple([s] + path + [b]))
            return
        if max_len is not None and len(path) + 2 >= max_len:
            # adding any vertex and then b would exceed max_len
            return
        cand = adj[x] & allowed & ~forbid & ~onpath
        nforbid = forbid | adj[x] | (1 << x)
        for y in bits(cand):
            path.append(y)
            rec(y, nforbid, onpath | (1 << y))
            path.pop()

    # a itself must not be adjacent to b (else triangle s,a,b)
    rec(a, 0, 1 << a)


def iter_hole_groups(g: Graph, min_len: int = 4, max_len: int | None = None,
                     budget: int | None = DEFAULT_BUDGET) -> Iterator[list[Hole]]:
    """Yield holes grouped by (minimum vertex, second vertex), each group sorted;
    concatenating the groups gives all holes in lexicographic order."""
    counter = _Counter(budget) if budget is not None else None
    adj = g.adj
    for s in range(g.n):
        higher = g.all_mask & ~((1 << (s + 1)) - 1)
        allowed = higher & ~adj[s]
        nbrs = [v for v in bits(adj[s] & higher)]
        for idx, a in enumerate(nbrs):
            found: list[tuple[int, ...]] = []
            for b in nbrs[idx + 1:]:
                if adj[a] >> b & 1:
                    continue
                # interior vertices may not touch b (except the last one, which is
                # handled by the closing test), so b's neighbours stay allowed but
                # force closure when reached.
                _holes_for_pair(g, s, a, b, allowed, max_len, counter, found)
            if found:
                found.sort()
                group = [Hole(c) for c in found if len(c) >= min_len and
                         (max_len is None or len(c) <= max_len)]
                if group:
                    yield group


def enumerate_holes(g: Graph, min_len: int = 4, max_len: int | None = None,
                    cap: int | None = None, budget: int | None = DEFAULT_BUDGET) -> list[Hole]:
    out: list[Hole] = []
    for group in iter_hole_groups(g, min_len, max_len, budget):
        out.extend(group)
        if cap is not None and len(out) >= cap:
            return out[:cap]
    return out


@dataclass(frozen=True)
class HoleSpectrum:
    kind: str  # "chordal", "uniform", "mixed"
    witness_lengths: tuple[int, ...] = ()
    witnesses: tuple[Hole, ...] = field(default=())

    @property
    def k(self) -> int | None:
        return self.witness_lengths[0] if self.kind == "uniform" else None

    def is_member(self, k: int) -> bool:
        return self.kind == "chordal" or (self.kind == "uniform" and self.k == k)

    def describe(self) -> str:
        if self.kind == "chordal":
            return "chordal"
        if self.kind == "uniform":
            return f"uniform({self.k})"
        return "mixed(" + ",".join(map(str, self.witness_lengths)) + ")"


def hole_spectrum(g: Graph, early_exit: bool = False,
                  budget: int | None = DEFAULT_BUDGET) -> HoleSpectrum:
    lengths: dict[int, Hole] = {}
    for group in iter_hole_groups(g, budget=budget):
        for h in group:
            if h.length not in lengths:
                lengths[h.length] = h
        if early_exit and len(lengths) >= 2:
            break
    if not lengths:
        return HoleSpectrum("chordal")
    ls = tuple(sorted(lengths))
    if len(ls) == 1:
        return HoleSpectrum("uniform", ls, (lengths[ls[0]],))
    return HoleSpectrum("mixed", ls, (lengths[ls[0]], lengths[ls[1]]))


def has_hole_other_than(g: Graph, k: int, budget: int | None = DEFAULT_BUDGET) -> Hole | None:
    """Return some hole whose length differs from k, or None."""
    for group in iter_hole_groups(g, budget=budget):
        for h in group:
            if h.length != k:
                return h
    return None
