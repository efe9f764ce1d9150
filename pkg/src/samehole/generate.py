"""Seeded random instances: threshold graphs, template specs, blowups, rings
and composites glued along cliques. Every function takes an explicit
``random.Random`` so results depend only on the seed."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .blowup import FLAT, SOLID, BlowupSpec, build_blowup, cascade, check_blowup_spec, classify_edges, transpose
from .classes import threshold_from_word
from .errors import SpecError
from .graph import Graph, complement, complete_graph, is_connected, is_module, to_mask
from .hypergraph import Hypergraph
from .rings import build_ring
from .templates.even import EvenTemplateSpec, build_even_template, even_to_proper
from .templates.odd import OddTemplateSpec, build_odd_template, to_proper_partition


def random_word(rng: random.Random, k: int) -> str:
    return "A" + "".join(rng.choice("CA") for _ in range(k - 1))


def random_threshold(rng: random.Random, k: int) -> Graph:
    return threshold_from_word(random_word(rng, k))


def _laminar_pick(rng: random.Random, candidates: list[frozenset[int]], must: list[frozenset[int]],
                  extra: int) -> list[frozenset[int]]:
    chosen = list(must)
    pool = [c for c in candidates if c not in chosen]
    rng.shuffle(pool)
    for c in pool:
        if len(chosen) - len(must) >= extra:
            break
        if all(not (c & d) or c <= d or d <= c for d in chosen):
            chosen.append(c)
    return sorted(chosen, key=lambda e: (len(e), sorted(e)))


def random_odd_spec(rng: random.Random, ell: int, k: int, extra_edges: int | None = None,
                    word: str | None = None) -> tuple[OddTemplateSpec, str]:
    """Random odd spec with distinct hyperedges (so the template is twinless).
    J comes from ``word`` when given. Returns the spec and the elimination word of J."""
    if word is None:
        word = random_word(rng, k)
    j = threshold_from_word(word)
    full = frozenset(range(k))
    mods = [frozenset(s) for r in range(2, k) for s in combinations(range(k), r)
            if is_module(j, to_mask(s))]
    if extra_edges is None:
        extra_edges = rng.randint(0, min(3, len(mods)))
    edges = _laminar_pick(rng, mods, [full], extra_edges)
    return OddTemplateSpec(ell, j, Hypergraph.make(k, edges)), word


def _anticonnected(g: Graph, mask: int) -> bool:
    return is_connected(complement(g), mask)


def random_even_spec(rng: random.Random, ell: int, k: int, s: int, attempts: int = 100) -> EvenTemplateSpec:
    """Random even spec accepted by the builder (hyper-cycle rejection included).

    Side choices are nested: S-vertex j sees the first d_j clique vertices on
    the A side and the rest on the A' side, which keeps both sides threshold.
    """
    last = None
    for _ in range(attempts):
        d = [rng.randint(0, k) for _ in range(s)]
        cross = [[1 if i < d[j] else 0 for j in range(s)] for i in range(k)]
        probe = EvenTemplateSpec.make(ell, k, s, cross, [], [])
        ga, gap = probe.side_graphs()
        hs = []
        for gg in (ga, gap):
            n = k + s
            full = frozenset(range(n))
            cands = [frozenset(c) for r in range(2, n + 1) for c in combinations(range(n), r)
                     if is_module(gg, to_mask(c)) and _anticonnected(gg, to_mask(c))]
            must = [full] if not is_connected(gg) else []
            extra = rng.randint(0, min(3, len(cands)))
            hs.append(_laminar_pick(rng, cands, must, extra))
        spec = EvenTemplateSpec.make(ell, k, s, cross, hs[0], hs[1])
        try:
            build_even_template(spec)
            return spec
        except SpecError as exc:
            last = exc
    raise SpecError("hyper cycle", f"no acceptable even spec after {attempts} attempts: {last}")


def _nondecreasing(rng: random.Random, length: int, lo: int, hi: int, top: int | None) -> tuple[int, ...]:
    vals = sorted(rng.randint(lo, hi) for _ in range(length))
    if top is not None and vals:
        vals[-1] = top
        vals = [min(v, top) for v in vals]
    return tuple(vals)


def random_blowup_spec(rng: random.Random, g: Graph, p, max_total: int, grow_prob: float = 0.35,
                       max_size: int = 3, sizes=None) -> BlowupSpec:
    """Random valid staircases. Clique sizes are ``sizes`` when given, else
    they grow at random until ``max_total`` vertices are reached."""
    if sizes is None:
        sizes = [1] * g.n
        order = list(range(g.n))
        rng.shuffle(order)
        total = g.n
        for u in order:
            while total < max_total and sizes[u] < max_size and rng.random() < grow_prob:
                sizes[u] += 1
                total += 1
    else:
        sizes = list(sizes)
    classes = classify_edges(g, p)
    stairs: dict = {}
    aside = set(p.A) | set(p.Ap)
    for (u, v), c in sorted(classes.items()):
        if c == SOLID:
            continue
        if c == FLAT:
            stairs[(u, v)] = _nondecreasing(rng, sizes[u], 1, sizes[v], sizes[v])
            continue
        a, x = (u, v) if u in aside else (v, u)
        lo = 1 if x in (p.w, p.wp) else 0
        t = _nondecreasing(rng, sizes[a], lo, sizes[x], sizes[x])
        stairs[(u, v)] = t if a < x else transpose(t, sizes[x])
    cascade(g, p, sizes, stairs)
    spec = BlowupSpec(tuple(sizes), stairs)
    check_blowup_spec(g, p, spec)
    return spec


@dataclass(frozen=True)
class Instance:
    """A generated graph with the certificate data it was built from."""

    kind: str
    graph: Graph
    data: dict


def random_odd_blowup(rng: random.Random, ell: int, k: int, max_total: int = 40) -> Instance:
    spec, word = random_odd_spec(rng, ell, k)
    g, p = build_odd_template(spec)
    p = to_proper_partition(g, p)
    bs = random_blowup_spec(rng, g, p, max_total)
    gs, m = build_blowup(g, p, bs)
    return Instance("odd_blowup", gs, {"spec": spec, "word": word, "template": g, "partition": p,
                                       "blowup": bs, "mapping": m})


def random_even_blowup(rng: random.Random, ell: int, k: int, s: int, max_total: int = 40) -> Instance:
    spec = random_even_spec(rng, ell, k, s)
    g, p = build_even_template(spec)
    p = even_to_proper(g, p)
    bs = random_blowup_spec(rng, g, p, max_total)
    gs, m = build_blowup(g, p, bs)
    return Instance("even_blowup", gs, {"spec": spec, "template": g, "partition": p,
                                        "blowup": bs, "mapping": m})


def random_ring_spec(rng: random.Random, k: int, max_total: int) -> tuple[list[int], list[list[int]]]:
    sizes = [1] * k
    total = k
    while total < max_total and rng.random() < 0.8:
        sizes[rng.randrange(k)] += 1
        total += 1
    stairs = []
    for i in range(k):
        nxt = sizes[(i + 1) % k]
        t = sorted((rng.randint(1, nxt) for _ in range(sizes[i])), reverse=True)
        t[0] = nxt
        stairs.append(t)
    return sizes, stairs


def random_ring(rng: random.Random, k: int, max_total: int = 40) -> Instance:
    sizes, stairs = random_ring_spec(rng, k, max_total)
    g, part = build_ring(k, sizes, stairs)
    return Instance("ring", g, {"sizes": sizes, "staircases": stairs, "partition": part})


# composites ---------------------------------------------------------------------

def _cliques_of_size(g: Graph, r: int) -> list[tuple[int, ...]]:
    out = []
    for c in combinations(range(g.n), r):
        if g.is_clique(to_mask(c)):
            out.append(c)
    return out


def glue(g: Graph, h: Graph, cg: tuple[int, ...], ch: tuple[int, ...]) -> Graph:
    """Identify clique ``ch`` of h with clique ``cg`` of g (in order)."""
    idmap = {}
    nxt = g.n
    for v in range(h.n):
        if v in ch:
            idmap[v] = cg[ch.index(v)]
        else:
            idmap[v] = nxt
            nxt += 1
    edges = list(g.edges())
    for u, v in h.edges():
        a, b = idmap[u], idmap[v]
        if a != b and not (u in ch and v in ch):
            edges.append((a, b))
    return Graph.from_edges(nxt, edges)


def add_universal(g: Graph) -> Graph:
    return Graph.from_edges(g.n + 1, list(g.edges()) + [(v, g.n) for v in range(g.n)])


def random_piece(rng: random.Random, parity: str, ell: int, budget: int,
                 allow_complete: bool = True) -> Graph | None:
    """A certified building block with at most ``budget`` vertices, or None."""
    kinds = ["ring", "complete", "blowup", "blowup"] if allow_complete else ["ring", "blowup", "blowup"]
    rng.shuffle(kinds)
    for kind in kinds:
        if kind == "complete":
            r = rng.randint(1, min(4, budget))
            return complete_graph(r)
        if kind == "ring":
            length = 2 * ell + 1 if parity == "odd" else 2 * ell
            if budget < length:
                continue
            return random_ring(rng, length, min(budget, length + 4)).graph
        if parity == "odd":
            k = 3
            base = 2 * k + k * (ell - 2) + 1
            if budget < base + 1:
                continue
            return random_odd_blowup(rng, ell, k, max_total=min(budget, base + 6)).graph
        base = 3 * (ell - 1) + 2
        if budget < base + 4:
            continue
        k = rng.randint(0, 2)
        s = 3 - k
        try:
            inst = random_even_blowup(rng, ell, k, s, max_total=min(budget, base + 8))
        except SpecError:
            continue
        if inst.graph.n <= budget:
            return inst.graph
    return None


def random_composite(rng: random.Random, parity: str, ell: int, max_n: int = 36) -> Graph:
    """Pieces glued along cliques, with occasional universal vertices."""
    g = None
    while g is None:
        g = random_piece(rng, parity, ell, max_n - 4, allow_complete=False)
    steps = rng.randint(1, 3)
    for _ in range(steps):
        room = max_n - g.n
        if room <= 0:
            break
        move = rng.random()
        if move < 0.2:
            g = add_universal(g)
            continue
        h = random_piece(rng, parity, ell, room + 2)
        if h is None:
            continue
        r = rng.randint(0, 2)
        cgs = _cliques_of_size(g, r)
        chs = _cliques_of_size(h, r)
        if not cgs or not chs:
            continue
        cg = rng.choice(cgs)
        ch = rng.choice(chs)
        if g.n + h.n - r > max_n:
            continue
        g = glue(g, h, cg, ch)
    if g.n < max_n and rng.random() < 0.3:
        g = add_universal(g)
    return g

