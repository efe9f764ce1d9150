"""Even templates: construction, the derived hypergraph on S-indices, and the
proper relabelling."""

from __future__ import annotations

from dataclasses import dataclass

from ..classes import is_threshold
from ..errors import PreconditionError, SpecError
from ..graph import Graph, bits, complement, is_connected, is_module, to_mask, universal_in
from ..hypergraph import Hypergraph, is_laminar
from .core import EVEN, Labeling, TemplatePartition, choose_witnesses, h_extended, pretemplate_to_template
from .hypercycle import HyperCycle, has_hyper_cycle_gt2


@dataclass(frozen=True)
class EvenTemplateSpec:
    """Indices 0..k-1 are the clique part A_K, k..k+s-1 the stable part A_S.

    ``cross[i][j]`` is 1 when v_i v_{k+j} is an edge on the A side (and then
    v'_i v'_{k+j} is not an edge), 0 for the opposite choice. ``h`` and ``hp``
    are hyperedges over 0..k+s-1 for the A side and the A' side.
    """

    ell: int
    k: int
    s: int
    cross: tuple[tuple[int, ...], ...]
    h: tuple[frozenset[int], ...]
    hp: tuple[frozenset[int], ...]

    @classmethod
    def make(cls, ell, k, s, cross, h, hp):
        return cls(ell, k, s, tuple(tuple(int(b) for b in row) for row in cross),
                   tuple(frozenset(e) for e in h), tuple(frozenset(e) for e in hp))

    def side_graphs(self) -> tuple[Graph, Graph]:
        """G[A] and G[A'] on indices 0..k+s-1."""
        k, s = self.k, self.s
        ea, eb = [], []
        for a in range(k):
            for b in range(a + 1, k):
                ea.append((a, b))
                eb.append((a, b))
        for i in range(k):
            for j in range(s):
                (ea if self.cross[i][j] else eb).append((i, k + j))
        return Graph.from_edges(k + s, ea), Graph.from_edges(k + s, eb)


def _anticonnected(g: Graph, mask: int) -> bool:
    return is_connected(complement(g), mask)


def check_even_spec(spec: EvenTemplateSpec) -> None:
    k, s = spec.k, spec.s
    if spec.ell < 4:
        raise SpecError("ell", f"even templates need ell >= 4, got {spec.ell}")
    if k < 0 or s < 0 or k + s < 3:
        raise SpecError("condition 1", "k + s must be at least 3")
    if len(spec.cross) != k or any(len(r) != s for r in spec.cross):
        raise SpecError("condition 5", "side-choice matrix must be k x s")
    ga, gap = spec.side_graphs()
    if not is_threshold(ga):
        raise SpecError("condition 5", "G[A] is not threshold")
    for name, cond, gg, hs in (("h", "condition 6", ga, spec.h), ("h'", "condition 7", gap, spec.hp)):
        for e in hs:
            if not e or min(e) < 0 or max(e) >= k + s:
                raise SpecError(cond, f"hyperedge {sorted(e)} of {name} leaves the ground set")
            m = to_mask(e)
            if len(e) < 2 or not is_module(gg, m) or not _anticonnected(gg, m):
                raise SpecError(cond, f"hyperedge {sorted(e)} of {name} is not an anticonnected module with >= 2 vertices")
        if not is_laminar(Hypergraph.make(k + s, hs)):
            raise SpecError(cond, f"{name} is not laminar")
        if not is_connected(gg) and not any(len(e) == k + s for e in hs):
            raise SpecError(cond, f"side graph is disconnected and {name} has no full hyperedge")


def build_even_template(spec: EvenTemplateSpec, check_strong: bool = True) -> tuple[Graph, TemplatePartition]:
    check_even_spec(spec)
    k, s, ell = spec.k, spec.s, spec.ell
    r = k + s
    ga, gap = spec.side_graphs()
    A = list(range(r))
    Ap = list(range(r, 2 * r))
    nxt = 2 * r
    paths = []
    labels = [f"A:{i}" for i in range(r)] + [f"A':{i}" for i in range(r)]
    for i in range(r):
        inner = ell - 2 if i < k else ell - 3
        mid = list(range(nxt, nxt + inner))
        labels += [f"I:p{i}:{t}" for t in range(inner)]
        nxt += inner
        paths.append(tuple([A[i]] + mid + [Ap[i]]))
    B = list(range(nxt, nxt + len(spec.h)))
    nxt += len(spec.h)
    Bp = list(range(nxt, nxt + len(spec.hp)))
    nxt += len(spec.hp)
    labels += [f"B:{i}" for i in range(len(B))] + [f"B':{i}" for i in range(len(Bp))]
    edges = []
    for p in paths:
        edges.extend(zip(p, p[1:]))
    for gg, ends in ((ga, A), (gap, Ap)):
        edges.extend((ends[a], ends[b]) for a, b in gg.edges())
    for side, hs, gg, ends in ((B, spec.h, ga, A), (Bp, spec.hp, gap, Ap)):
        for x in range(len(side)):
            for y in range(x + 1, len(side)):
                if hs[x] & hs[y]:
                    edges.append((side[x], side[y]))
            closed = gg.neighborhood_of_set(to_mask(hs[x])) | to_mask(hs[x])
            edges.extend((ends[i], side[x]) for i in bits(closed))
    g = Graph.from_edges(nxt, edges, labels)
    hmap = {x: frozenset(A[i] for i in e) for x, e in zip(B, spec.h)}
    hmap_p = {x: frozenset(Ap[i] for i in e) for x, e in zip(Bp, spec.hp)}
    w, wp = choose_witnesses(g, EVEN, A, B, Ap, Bp)
    part = TemplatePartition(EVEN, ell, tuple(A), tuple(Ap), tuple(B), tuple(Bp),
                             frozenset(v for p in paths for v in p[1:-1]), tuple(paths),
                             hmap, hmap_p, w, wp, k)
    if check_strong:
        cyc = has_hyper_cycle_gt2(derived_hypergraph(g, part))
        if cyc is not None:
            raise SpecError("hyper cycle", f"derived hypergraph has a hyper cycle of length {cyc.length}")
    return g, part


def derived_hypergraph(g: Graph, p: TemplatePartition) -> Hypergraph:
    """Side-tagged hypergraph on the S-indices 0..s-1 built from the extended
    hypergraphs of both sides."""
    edges, sides = [], []
    for primed, tag in ((False, "A"), (True, "A'")):
        S = p.Ap_S if primed else p.A_S
        pos = {v: j for j, v in enumerate(S)}
        for hset in h_extended(g, p, primed):
            part = sorted(pos[v] for v in hset if v in pos)
            if part:
                edges.append(part)
                sides.append(tag)
    return Hypergraph.make(p.s, edges, sides)


def strong_violation(g: Graph, p: TemplatePartition) -> HyperCycle | None:
    return has_hyper_cycle_gt2(derived_hypergraph(g, p))


def spec_from_partition(g: Graph, p: TemplatePartition) -> EvenTemplateSpec:
    k, s = p.n_clique, p.s
    pos = {v: i for i, v in enumerate(p.A)}
    pos_p = {v: i for i, v in enumerate(p.Ap)}
    if any(v not in pos for x in p.B for v in p.hmap[x]) or any(v not in pos_p for x in p.Bp for v in p.hmap_p[x]):
        raise SpecError("hmap", "an H-set leaves A or A'")
    cross = [[int(g.has_edge(p.A[i], p.A[k + j])) for j in range(s)] for i in range(k)]
    h = [frozenset(pos[v] for v in p.hmap[x]) for x in p.B]
    hp = [frozenset(pos_p[v] for v in p.hmap_p[x]) for x in p.Bp]
    return EvenTemplateSpec.make(p.ell, k, s, cross, h, hp)


def is_proper_even(g: Graph, p: TemplatePartition) -> bool:
    uni = universal_in(g, p.mask("A") | p.mask("B"))
    uni_p = universal_in(g, p.mask("Ap") | p.mask("Bp"))
    return not (uni & p.mask("A")) and not (uni_p & p.mask("Ap"))


def _shift_side(g: Graph, p: TemplatePartition) -> TemplatePartition:
    """Move a universal A-vertex w of G[A u B] into B; its I-neighbour becomes
    a new S-end and the far end of its path becomes an S-end of A'."""
    amask = p.mask("A")
    uni = universal_in(g, amask | p.mask("B")) & amask
    if not uni:
        return p
    cands = [i for i, v in enumerate(p.A) if uni >> v & 1]
    i = cands[0]
    if i >= p.n_clique:
        raise PreconditionError("template", "universal vertex of G[A u B] lies in A_S")
    w = p.A[i]
    path = p.paths[i]
    w_plus, w_far = path[1], path[-1]
    lab = Labeling(
        A=frozenset(p.A) - {w} | {w_plus},
        B=frozenset(p.B) | {w},
        Ap=frozenset(p.Ap),
        Bp=frozenset(p.Bp),
        I=frozenset(p.I) - {w_plus},
        A_S=frozenset(p.A_S) | {w_plus},
        Ap_S=frozenset(p.Ap_S) | {w_far},
    )
    return pretemplate_to_template(g, lab, p.ell, EVEN, check_spectrum=False)


def even_to_proper(g: Graph, p: TemplatePartition) -> TemplatePartition:
    """A partition where every universal vertex of G[A u B] (resp. G[A' u B'])
    lies in B (resp. B')."""
    if p.parity != EVEN:
        raise PreconditionError("parity", "even partition required")
    if p.ell < 4:
        raise PreconditionError("ell", "even templates need ell >= 4")
    q = _shift_side(g, p)
    q = _shift_side(g, q.mirrored()).mirrored()
    if not is_proper_even(g, q):
        raise PreconditionError("template", "relabelled partition is still not proper")
    return q
