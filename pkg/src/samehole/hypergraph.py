"""Hypergraphs with optional side tags, laminarity and line graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError
from .graph import Graph

SIDES = ("A", "A'")


@dataclass(frozen=True)
class Hypergraph:
    """Ground set {0..n-1} and a list of nonempty hyperedges (duplicates allowed).

    ``sides`` is either None or a tuple with one tag per hyperedge, each "A" or "A'".
    """

    n: int
    edges: tuple[frozenset[int], ...]
    sides: tuple[str, ...] | None = None

    def __post_init__(self):
        for e in self.edges:
            if not e:
                raise ValueError("empty hyperedge")
            if min(e) < 0 or max(e) >= self.n:
                raise ValueError(f"hyperedge {sorted(e)} leaves the ground set")
        if self.sides is not None:
            if len(self.sides) != len(self.edges):
                raise ValueError("one side tag per hyperedge required")
            if any(s not in SIDES for s in self.sides):
                raise ValueError("side tags must be 'A' or \"A'\"")

    @classmethod
    def make(cls, n: int, edges: Iterable[Iterable[int]], sides: Sequence[str] | None = None):
        return cls(n, tuple(frozenset(e) for e in edges), tuple(sides) if sides is not None else None)


def is_laminar(h: Hypergraph) -> bool:
    es = h.edges
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            x, y = es[i], es[j]
            if x & y and not (x <= y or y <= x):
                return False
    return True


def line_graph(h: Hypergraph) -> Graph:
    m = len(h.edges)
    edges = [(i, j) for i in range(m) for j in range(i + 1, m) if h.edges[i] & h.edges[j]]
    return Graph.from_edges(m, edges)


def to_text(h: Hypergraph) -> str:
    lines = [f"{h.n} {len(h.edges)}"]
    for i, e in enumerate(h.edges):
        toks = [str(len(e))] + [str(v) for v in sorted(e)]
        if h.sides is not None:
            toks.append(h.sides[i])
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Hypergraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    return from_lines(lines)


def from_lines(lines: list[str]) -> Hypergraph:
    try:
        n, e = map(int, lines[0].split())
        if len(lines) - 1 != e:
            raise ParseError(f"hypergraph declares {e} edges but has {len(lines) - 1}")
        edges = []
        sides = []
        for ln in lines[1:]:
            toks = ln.split()
            size = int(toks[0])
            verts = [int(t) for t in toks[1:1 + size]]
            if len(verts) != size:
                raise ParseError(f"hyperedge line {ln!r} is short")
            extra = toks[1 + size:]
            if len(extra) > 1:
                raise ParseError(f"trailing tokens in {ln!r}")
            sides.append(extra[0] if extra else None)
            edges.append(verts)
    except (ValueError, IndexError) as exc:
        raise ParseError(f"malformed hypergraph: {exc}") from None
    if any(s is not None for s in sides):
        if any(s is None for s in sides):
            raise ParseError("side tags must be given for all hyperedges or none")
        side_t = tuple(sides)
    else:
        side_t = None
    try:
        return Hypergraph.make(n, edges, side_t)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
