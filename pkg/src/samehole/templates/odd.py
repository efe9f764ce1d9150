"""Odd templates: construction from a threshold graph and a laminar module
hypergraph, recovery of the generating data, and the proper relabelling."""

from __future__ import annotations

from dataclasses import dataclass

from ..classes import is_threshold
from ..errors import PreconditionError, SpecError
from ..graph import Graph, bits, complement, is_connected, is_module, to_mask
from ..hypergraph import Hypergraph, is_laminar
from .core import ODD, Labeling, TemplatePartition, choose_witnesses, pretemplate_to_template


@dataclass(frozen=True)
class OddTemplateSpec:
    """``j`` is a threshold graph on 0..k-1 and ``h`` a hypergraph on the same set."""

    ell: int
    j: Graph
    h: Hypergraph

    @property
    def k(self) -> int:
        return self.j.n


def check_odd_spec(spec: OddTemplateSpec) -> None:
    j, h = spec.j, spec.h
    if spec.ell < 2:
        raise SpecError("ell", f"ell must be at least 2, got {spec.ell}")
    if j.n < 3:
        raise SpecError("k", f"k must be at least 3, got {j.n}")
    if h.n != j.n:
        raise SpecError("ground set", "hypergraph and threshold graph disagree on k")
    if not is_threshold(j):
        raise SpecError("threshold", "J is not a threshold graph")
    for e in h.edges:
        if len(e) < 2 or not is_module(j, to_mask(e)):
            raise SpecError("condition (a)", f"hyperedge {sorted(e)} is not a module of J with >= 2 vertices")
    if not any(len(e) == j.n for e in h.edges):
        raise SpecError("condition (b)", "no hyperedge contains every vertex")
    if not is_laminar(h):
        raise SpecError("laminar", "hypergraph is not laminar")


def _anticonnected(g: Graph, mask: int) -> bool:
    return is_connected(complement(g), mask)


def build_odd_template(spec: OddTemplateSpec) -> tuple[Graph, TemplatePartition]:
    check_odd_spec(spec)
    j, h, ell, k = spec.j, spec.h, spec.ell, spec.j.n
    inner = ell - 2
    A = list(range(k))
    Ap = list(range(k, 2 * k))
    base = 2 * k
    paths = []
    for i in range(k):
        mid = [base + i * inner + t for t in range(inner)]
        paths.append(tuple([A[i]] + mid + [Ap[i]]))
    nxt = base + k * inner
    on_b = [_anticonnected(j, to_mask(e)) for e in h.edges]
    B, Bp, hb, hbp = [], [], [], []
    for e, side in zip(h.edges, on_b):
        if side:
            B.append(nxt)
            hb.append(e)
            nxt += 1
    for e, side in zip(h.edges, on_b):
        if not side:
            Bp.append(nxt)
            hbp.append(e)
            nxt += 1
    n = nxt
    jc = complement(j)
    edges = []
    for p in paths:
        edges.extend(zip(p, p[1:]))
    for a in range(k):
        for b in range(a + 1, k):
            if j.has_edge(a, b):
                edges.append((A[a], A[b]))
            else:
                edges.append((Ap[a], Ap[b]))
    for side, hs, J, ends in ((B, hb, j, A), (Bp, hbp, jc, Ap)):
        for x in range(len(side)):
            for y in range(x + 1, len(side)):
                if hs[x] & hs[y]:
                    edges.append((side[x], side[y]))
            closed = J.neighborhood_of_set(to_mask(hs[x])) | to_mask(hs[x])
            edges.extend((ends[i], side[x]) for i in bits(closed))
    labels = [f"A:{i}" for i in range(k)] + [f"A':{i}" for i in range(k)]
    labels += [f"I:p{i}:{t}" for i in range(k) for t in range(inner)]
    e_index = [i for i, s in enumerate(on_b) if s] + [i for i, s in enumerate(on_b) if not s]
    labels += [f"B:{i}" for i in e_index[:len(B)]] + [f"B':{i}" for i in e_index[len(B):]]
    g = Graph.from_edges(n, edges, labels)
    hmap = {x: frozenset(A[i] for i in e) for x, e in zip(B, hb)}
    hmap_p = {x: frozenset(Ap[i] for i in e) for x, e in zip(Bp, hbp)}
    w, wp = choose_witnesses(g, ODD, A, B, Ap, Bp)
    part = TemplatePartition(ODD, ell, tuple(A), tuple(Ap), tuple(B), tuple(Bp),
                             frozenset(v for p in paths for v in p[1:-1]), tuple(paths),
                             hmap, hmap_p, w, wp, k)
    return g, part


def spec_from_partition(g: Graph, p: TemplatePartition) -> OddTemplateSpec:
    """Generating data read back from a partition: J = G[A] in A order, and the
    H-sets of B followed by those of B' as hyperedges."""
    pos = {v: i for i, v in enumerate(p.A)}
    pos_p = {v: i for i, v in enumerate(p.Ap)}
    edges = [(pos[a], pos[b]) for a in p.A for b in p.A if a < b and g.has_edge(a, b)]
    j = Graph.from_edges(len(p.A), edges)
    hs = [sorted(pos[v] for v in p.hmap[x]) for x in p.B]
    hs += [sorted(pos_p[v] for v in p.hmap_p[x]) for x in p.Bp]
    if any(v not in pos for x in p.B for v in p.hmap[x]) or any(v not in pos_p for x in p.Bp for v in p.hmap_p[x]):
        raise SpecError("hmap", "an H-set leaves A or A'")
    return OddTemplateSpec(p.ell, j, Hypergraph.make(len(p.A), hs))


def isolated_count(g: Graph, mask: int) -> int:
    return sum(1 for v in bits(mask) if not g.adj[v] & mask)


def is_proper_odd(g: Graph, p: TemplatePartition) -> bool:
    return isolated_count(g, p.mask("A")) >= 2 or isolated_count(g, p.mask("Ap")) >= 2


def to_proper_partition(g: Graph, p: TemplatePartition) -> TemplatePartition:
    """A partition in which G[A] or G[A'] has at least two isolated vertices.

    If G[A] has exactly one isolated vertex v (after mirroring if needed),
    v moves into I, the witness w of the A side joins A in its place, the
    I-neighbour of v' joins A' and v' joins B'.
    """
    from ..graph import twin_classes
    if p.parity != ODD:
        raise PreconditionError("parity", "odd partition required")
    if p.ell < 3:
        raise PreconditionError("ell", "proper partitions need ell >= 3")
    if any(len(c) > 1 for c in twin_classes(g)):
        raise PreconditionError("twinless", "graph has twins; run make_twinless first")
    if is_proper_odd(g, p):
        return p
    flipped = False
    if isolated_count(g, p.mask("A")) == 0:
        p = p.mirrored()
        flipped = True
    amask = p.mask("A")
    iso = [i for i, v in enumerate(p.A) if not g.adj[v] & amask]
    if len(iso) != 1:
        raise PreconditionError("template", "G[A] has no isolated vertex on either side")
    i = iso[0]
    v, vp = p.A[i], p.Ap[i]
    w = p.w
    if w not in p.B:
        raise PreconditionError("template", "witness of the isolated side is not in B")
    path = p.paths[i]
    vp_plus = path[-2]
    lab = Labeling(
        A=frozenset(p.A) - {v} | {w},
        B=frozenset(p.B) - {w},
        Ap=frozenset(p.Ap) - {vp} | {vp_plus},
        Bp=frozenset(p.Bp) | {vp},
        I=(frozenset(p.I) | {v}) - {vp_plus},
    )
    q = pretemplate_to_template(g, lab, p.ell, ODD, check_spectrum=False)
    if not is_proper_odd(g, q):
        raise PreconditionError("template", "relabelled partition is still not proper")
    return q.mirrored() if flipped else q
