"""Blowups of twinless templates: edge classes, construction from staircases,
verification, preblowups and their normalisation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError, ReconstructionError, SpecError
from .graph import Graph, bits, induced, to_mask, twin_classes
from .templates.core import EVEN, ODD, Labeling, TemplatePartition, pretemplate_to_template

SOLID = "solid"
FLAT = "flat"
OPTIONAL = "optional"


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def classify_edges(g: Graph, p: TemplatePartition) -> dict[tuple[int, int], str]:
    out = {}
    opt = set()
    for hm in (p.hmap, p.hmap_p):
        for x, hx in hm.items():
            hmask = to_mask(hx)
            for u in hx:
                if not g.adj[u] & hmask:
                    opt.add(_key(u, x))
    for u, v in g.edges():
        if u in p.I or v in p.I:
            out[(u, v)] = FLAT
        elif (u, v) in opt:
            out[(u, v)] = OPTIONAL
        else:
            out[(u, v)] = SOLID
    return out


def transpose(t, k_other: int) -> tuple[int, ...]:
    """Staircase seen from the other clique: vertex r of K_v (rank 0 lowest)
    is adjacent to the top s_r vertices of K_u."""
    k_v = k_other
    return tuple(sum(1 for ti in t if ti >= k_v - r) for r in range(k_v))


@dataclass(frozen=True)
class BlowupSpec:
    """Clique sizes and staircases.

    ``stairs[(u, v)]`` (u < v, uv an edge of the template) has one entry per
    rank of K_u, rank 0 lowest and rank k_u - 1 the template vertex; entry i
    is the number of top vertices of K_v adjacent to u_i. Missing edges
    default to complete.
    """

    sizes: tuple[int, ...]
    stairs: dict = field(default_factory=dict, hash=False)

    def stair(self, u: int, v: int) -> tuple[int, ...]:
        """Vector over K_u ranks towards K_v, in either orientation."""
        if u < v:
            t = self.stairs.get((u, v))
            return tuple(t) if t is not None else (self.sizes[v],) * self.sizes[u]
        t = self.stairs.get((v, u))
        if t is None:
            return (self.sizes[v],) * self.sizes[u]
        return transpose(t, self.sizes[u])


@dataclass(frozen=True)
class BlowupMapping:
    """``cliques[u]`` lists the blown vertices of K_u from lowest rank to the top;
    the top is the copy of template vertex u. ``template_of[v]`` and ``rank[v]``
    invert it. ``partition`` is the template partition the blowup refers to."""

    cliques: tuple[tuple[int, ...], ...]
    template_of: tuple[int, ...]
    rank: tuple[int, ...]
    partition: TemplatePartition = field(hash=False)

    @classmethod
    def from_cliques(cls, n_star: int, cliques, partition):
        tof = [-1] * n_star
        rk = [-1] * n_star
        for u, c in enumerate(cliques):
            for r, v in enumerate(c):
                tof[v] = u
                rk[v] = r
        return cls(tuple(tuple(c) for c in cliques), tuple(tof), tuple(rk), partition)

    def top(self, u: int) -> int:
        return self.cliques[u][-1]

    def kmask(self, u: int) -> int:
        return to_mask(self.cliques[u])

    def union(self, us) -> int:
        m = 0
        for u in us:
            m |= self.kmask(u)
        return m


def _opt_pairs(g: Graph, p: TemplatePartition, classes):
    """(u, x, y) with ux, uy optional, u in A (or A'), H_y strictly inside H_x."""
    out = []
    for hm in (p.hmap, p.hmap_p):
        for u in set().union(*hm.values()) if hm else ():
            xs = [x for x in hm if classes.get(_key(u, x)) == OPTIONAL]
            for x in xs:
                for y in xs:
                    if x != y and hm[y] < hm[x]:
                        out.append((u, x, y))
    return out


def check_blowup_spec(g: Graph, p: TemplatePartition, spec: BlowupSpec) -> None:
    """Raise SpecError naming the first violated blowup condition."""
    if len(spec.sizes) != g.n or min(spec.sizes, default=1) < 1:
        raise SpecError("(1)", "one clique size >= 1 per template vertex")
    for (u, v), t in spec.stairs.items():
        if u >= v or not g.has_edge(u, v):
            raise SpecError("(3)", f"staircase given for non-edge or unordered pair {(u, v)}")
        if len(t) != spec.sizes[u] or any(not 0 <= x <= spec.sizes[v] for x in t):
            raise SpecError("(2)", f"staircase {(u, v)} has the wrong shape")
        if any(t[i] > t[i + 1] for i in range(len(t) - 1)):
            raise SpecError("(2)", f"staircase {(u, v)} is not nondecreasing")
    classes = classify_edges(g, p)
    for (u, v), c in classes.items():
        tu, tv = spec.stair(u, v), spec.stair(v, u)
        ku, kv = spec.sizes[u], spec.sizes[v]
        if c == SOLID and (min(tu) < kv):
            raise SpecError("(4)", f"solid edge {(u, v)} is not complete")
        if c == FLAT and (tu[-1] < kv or tv[-1] < ku):
            raise SpecError("(5)", f"flat edge {(u, v)}: an end is not complete to the other clique")
        if c == OPTIONAL:
            a = u if (u in p.A or u in p.Ap) else v
            x = v if a == u else u
            if spec.stair(a, x)[-1] < spec.sizes[x]:
                raise SpecError("(6)", f"optional edge {(a, x)}: {a} is not complete to K_{x}")
    for u, x, y in _opt_pairs(g, p, classes):
        ty, tx = spec.stair(u, y), spec.stair(u, x)
        for i in range(spec.sizes[u]):
            if ty[i] >= 1 and tx[i] < spec.sizes[x]:
                raise SpecError("(7)", f"vertex {i} of K_{u} sees K_{y} but is not complete to K_{x}")
    for w, side in ((p.w, p.A + p.B), (p.wp, p.Ap + p.Bp)):
        for v in side:
            if v != w and spec.stair(w, v)[-1] < spec.sizes[v]:
                raise SpecError("(8)", f"witness {w} is not complete to K_{v}")


def cascade(g: Graph, p: TemplatePartition, sizes, stairs: dict) -> dict:
    """Upgrade rows so that condition (7) holds: a vertex of K_u seeing K_y
    becomes complete to K_x. Works on the dict in place and returns it."""
    spec = BlowupSpec(tuple(sizes), stairs)
    classes = classify_edges(g, p)
    trip = _opt_pairs(g, p, classes)
    changed = True
    while changed:
        changed = False
        for u, x, y in trip:
            ty, tx = list(spec.stair(u, y)), list(spec.stair(u, x))
            kx = sizes[x]
            new = [kx if ty[i] >= 1 else tx[i] for i in range(sizes[u])]
            # keep monotone: once complete, stay complete upward
            for i in range(1, len(new)):
                new[i] = max(new[i], new[i - 1])
            if new != tx:
                changed = True
                if u < x:
                    stairs[(u, x)] = tuple(new)
                else:
                    stairs[(x, u)] = transpose(new, sizes[x])
    return stairs


def build_blowup(g: Graph, p: TemplatePartition, spec: BlowupSpec,
                 check_template: bool = True) -> tuple[Graph, BlowupMapping]:
    """Blown graph in which template vertex u keeps id u and its lower copies
    are appended, clique by clique."""
    if check_template and any(len(c) > 1 for c in twin_classes(g)):
        raise PreconditionError("twinless", "blowups are defined for twinless templates")
    check_blowup_spec(g, p, spec)
    cliques = []
    nxt = g.n
    for u in range(g.n):
        extra = list(range(nxt, nxt + spec.sizes[u] - 1))
        nxt += spec.sizes[u] - 1
        cliques.append(extra + [u])
    labels = list(g.labels) if g.labels else [str(u) for u in range(g.n)]
    labels += [f"{labels[u]}#{r}" for u in range(g.n) for r in range(spec.sizes[u] - 1)]
    edges = []
    for c in cliques:
        edges.extend((c[a], c[b]) for a in range(len(c)) for b in range(a + 1, len(c)))
    for u, v in g.edges():
        t = spec.stair(u, v)
        cu, cv = cliques[u], cliques[v]
        kv = len(cv)
        for i, ti in enumerate(t):
            edges.extend((cu[i], cv[r]) for r in range(kv - ti, kv))
    gstar = Graph.from_edges(nxt, edges, labels)
    return gstar, BlowupMapping.from_cliques(nxt, cliques, p)


def verify_blowup(gstar: Graph, g: Graph, p: TemplatePartition, m: BlowupMapping,
                  require_proper: bool = False) -> list[str]:
    """Violated blowup conditions, each string starting with "(n)"."""
    out: list[str] = []
    if m.partition != p:
        out.append("mapping: blowup refers to a different partition")
    if len(m.cliques) != g.n:
        return out + ["(1) one blown clique per template vertex required"]
    seen = 0
    for u, c in enumerate(m.cliques):
        cm = to_mask(c)
        if not c:
            out.append(f"(1) K_{u} is empty")
        if seen & cm:
            out.append("(1) blown cliques overlap")
        seen |= cm
        if not gstar.is_clique(cm):
            out.append(f"(1) K_{u} is not a clique")
    if seen != gstar.all_mask:
        out.append("(1) blown cliques do not cover the graph")
    if out:
        return out
    tops = [m.top(u) for u in range(g.n)]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if gstar.has_edge(tops[u], tops[v]) != g.has_edge(u, v):
                out.append(f"(1) tops of K_{u} and K_{v} disagree with the template")
    twins = [c for c in twin_classes(g) if len(c) > 1]
    if twins:
        out.append("template: not twinless")
    if require_proper:
        from .templates.even import is_proper_even
        from .templates.odd import is_proper_odd
        ok = is_proper_odd(g, p) if p.parity == ODD else is_proper_even(g, p)
        if not ok:
            out.append("template: partition is not proper")
    for u, c in enumerate(m.cliques):
        for a, b in zip(c, c[1:]):
            if gstar.closed(a) & ~gstar.closed(b):
                out.append(f"(2) K_{u}: closed neighbourhoods are not nested by rank")
                break
    K = [m.kmask(u) for u in range(g.n)]
    classes = classify_edges(g, p)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                if gstar.neighborhood_of_set(K[u]) & K[v]:
                    out.append(f"(3) K_{u} and K_{v} are not anticomplete")
    for (u, v), cl in classes.items():
        if cl == SOLID:
            if not gstar.is_complete_to(K[u], K[v]):
                out.append(f"(4) solid edge {u}-{v}: K_{u} not complete to K_{v}")
        elif cl == FLAT:
            if not gstar.is_complete_to(1 << tops[u], K[v]) or not gstar.is_complete_to(1 << tops[v], K[u]):
                out.append(f"(5) flat edge {u}-{v}: an end is not complete to the other clique")
        else:
            a = u if (u in p.A or u in p.Ap) else v
            x = v if a == u else u
            if not gstar.is_complete_to(1 << tops[a], K[x]):
                out.append(f"(6) optional edge {a}-{x}: {a} is not complete to K_{x}")
    for u, x, y in _opt_pairs(g, p, classes):
        for us in m.cliques[u]:
            if gstar.adj[us] & K[y] and not gstar.is_complete_to(1 << us, K[x]):
                out.append(f"(7) a vertex of K_{u} sees K_{y} but is not complete to K_{x}")
                break
    for w, side in ((p.w, p.A + p.B), (p.wp, p.Ap + p.Bp)):
        blown = 0
        for v in side:
            blown |= K[v]
        if blown & ~gstar.closed(tops[w]):
            out.append(f"(8) witness {w} is not universal on its blown side")
    return out


# preblowups -----------------------------------------------------------------

@dataclass(frozen=True)
class PreblowupMapping:
    """``embed[u]`` is the vertex of gstar playing template vertex u.
    ``cliques`` maps every u in A, A', I to its clique K_u (containing embed[u]);
    ``bstar`` and ``bpstar`` are the pools replacing B and B'."""

    embed: tuple[int, ...]
    cliques: dict = field(hash=False)
    bstar: frozenset[int]
    bpstar: frozenset[int]


def as_preblowup(p: TemplatePartition, m: BlowupMapping) -> PreblowupMapping:
    embed = tuple(m.top(u) for u in range(len(m.cliques)))
    cl = {u: m.cliques[u] for u in list(p.A) + list(p.Ap) + sorted(p.I)}
    bs = frozenset(v for x in p.B for v in m.cliques[x])
    bps = frozenset(v for x in p.Bp for v in m.cliques[x])
    return PreblowupMapping(embed, cl, bs, bps)


def verify_preblowup(gstar: Graph, g: Graph, p: TemplatePartition, m: PreblowupMapping) -> list[str]:
    out: list[str] = []
    emb = m.embed
    if len(emb) != g.n or len(set(emb)) != g.n:
        return ["pb:structure: embedding of the template is not injective"]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if gstar.has_edge(emb[u], emb[v]) != g.has_edge(u, v):
                out.append("pb:structure: template is not induced in the blown graph")
                break
    core = list(p.A) + list(p.Ap) + sorted(p.I)
    if set(m.cliques) != set(core):
        return out + ["pb:structure: cliques must be given exactly for A, A' and I"]
    K = {u: to_mask(m.cliques[u]) for u in core}
    total = to_mask(m.bstar) | to_mask(m.bpstar)
    if to_mask(m.bstar) & to_mask(m.bpstar):
        out.append("pb:structure: B* and B'* overlap")
    for u in core:
        if not K[u] >> emb[u] & 1:
            out.append(f"pb:structure: K_{u} does not contain its template vertex")
        if not gstar.is_clique(K[u]):
            out.append(f"pb:structure: K_{u} is not a clique")
        if total & K[u]:
            out.append("pb:structure: blown cliques overlap")
        total |= K[u]
    if sum(len(c) for c in m.cliques.values()) + len(m.bstar) + len(m.bpstar) != gstar.n or total != gstar.all_mask:
        out.append("pb:structure: pieces do not partition the blown graph")
    for x in p.B:
        if emb[x] not in m.bstar:
            out.append("pb:structure: B is not inside B*")
    for x in p.Bp:
        if emb[x] not in m.bpstar:
            out.append("pb:structure: B' is not inside B'*")
    if out:
        return out
    for primed in (False, True):
        tag = "'" if primed else ""
        A = p.Ap if primed else p.A
        B = p.Bp if primed else p.B
        w = p.wp if primed else p.w
        bstar = to_mask(m.bpstar if primed else m.bstar)
        astar = 0
        for u in A:
            astar |= K[u]
        amask_tpl = to_mask(emb[u] for u in A)
        for u in A:
            uplus = p.path_neighbor(u)
            if uplus not in K:
                out.append(f"pb:A{tag}: path neighbour of {u} has no clique")
                continue
            if gstar.neighborhood_of_set(K[u]) & ~(astar | bstar | K[uplus]):
                out.append(f"pb:A{tag}: K_{u} has a neighbour outside A*, B* and K_{uplus}")
            want = (gstar.adj[emb[u]] & amask_tpl) | (1 << emb[u])
            for us in bits(K[u]):
                if us != emb[u] and gstar.adj[us] & amask_tpl != want:
                    out.append(f"pb:Acomp{tag}: a vertex of K_{u} has the wrong neighbours in A")
                    break
            for us in bits(K[u]):
                if not gstar.adj[us] & K[uplus]:
                    out.append(f"pb:AI{tag}: a vertex of K_{u} has no neighbour in K_{uplus}")
                    break
        if gstar.neighborhood_of_set(bstar) & ~astar:
            out.append(f"pb:B{tag}: B* has a neighbour outside A*")
        if w in B and not any(not (astar & ~gstar.adj[x]) for x in bits(bstar)):
            out.append(f"pb:Bw{tag}: no vertex of B* is complete to A*")
        for x in bits(bstar):
            hit = [u for u in A if gstar.adj[x] & K[u]]
            if not any(not g.has_edge(a, b) for i, a in enumerate(hit) for b in hit[i + 1:]):
                out.append(f"pb:BAN{tag}: vertex {x} of B* does not see two non-adjacent blown A-cliques")
    for u in sorted(p.I):
        a, b = (v for v in bits(g.adj[u]))
        if gstar.neighborhood_of_set(K[u]) & ~(K[a] | K[b]):
            out.append(f"pb:I: K_{u} has neighbours outside K_{a} and K_{b}")
        for us in bits(K[u]):
            if not gstar.adj[us] & K[a] or not gstar.adj[us] & K[b]:
                out.append(f"pb:II: a vertex of K_{u} misses K_{a} or K_{b}")
                break
    return out


def domination_score(gstar: Graph, g: Graph, p: TemplatePartition, m) -> int:
    """Sum over x in A, A', I of the copies x* in K_x with N[x*] inside N[x]."""
    if isinstance(m, BlowupMapping):
        m = as_preblowup(p, m)
    total = 0
    for u in list(p.A) + list(p.Ap) + sorted(p.I):
        top = gstar.closed(m.embed[u])
        total += sum(1 for x in m.cliques[u] if not gstar.closed(x) & ~top)
    return total


# normalisation -----------------------------------------------------------------

@dataclass(frozen=True)
class PreblowupPieces:
    """Raw pieces of a candidate blowup found in a graph.

    ``paths[i]`` lists the blown cliques along principal path i, from the
    A-end to the A'-end. ``n_clique`` is the number of K-indexed paths
    (even parity; they come first).
    """

    parity: str
    ell: int
    paths: tuple[tuple[frozenset[int], ...], ...]
    bstar: frozenset[int]
    bpstar: frozenset[int]
    n_clique: int


def _top_of(gstar: Graph, clique) -> int:
    """Lowest vertex of the clique whose closed neighbourhood contains all others'."""
    for v in sorted(clique):
        nv = gstar.closed(v)
        if all(not gstar.closed(u) & ~nv for u in clique):
            return v
    raise ReconstructionError("a blown clique has no vertex dominating the others")


def _rank_order(gstar: Graph, clique, top: int) -> tuple[int, ...]:
    rest = sorted((v for v in clique if v != top), key=lambda v: (bin(gstar.closed(v)).count("1"), v))
    return tuple(rest) + (top,)


def normalize_preblowup(gstar: Graph, pieces: PreblowupPieces, check_spectrum: bool = True):
    """Turn raw pieces into (template, partition, mapping) or raise.

    Representatives are the dominating vertex of each piece; B* and B'* are
    split into classes by their neighbours among the A-representatives.
    The recovered template is made proper and the blowup re-verified.
    """
    ell, parity = pieces.ell, pieces.parity
    if check_spectrum:
        from .holes import has_hole_other_than
        target = 2 * ell + 1 if parity == ODD else 2 * ell
        bad = has_hole_other_than(gstar, target)
        if bad is not None:
            raise PreconditionError("spectrum", f"hole of length {bad.length}, class needs {target}")
    groups: list[frozenset[int]] = []
    a_idx, ap_idx, i_idx = [], [], []
    for path in pieces.paths:
        if len(path) < 2:
            raise ReconstructionError("a principal path needs two ends")
        for j, c in enumerate(path):
            if not c or not gstar.is_clique(to_mask(c)):
                raise ReconstructionError("a path piece is empty or not a clique")
            (a_idx if j == 0 else ap_idx if j == len(path) - 1 else i_idx).append(len(groups))
            groups.append(frozenset(c))
    tops = [_top_of(gstar, c) for c in groups]
    b_groups = []
    for pool, ends in ((pieces.bstar, a_idx), (pieces.bpstar, ap_idx)):
        endmask = to_mask(tops[i] for i in ends)
        cls: dict[int, list[int]] = {}
        for x in sorted(pool):
            cls.setdefault(gstar.adj[x] & endmask, []).append(x)
        side = []
        for members in cls.values():
            if not gstar.is_clique(to_mask(members)):
                raise ReconstructionError("a class of B* is not a clique")
            side.append(len(groups))
            groups.append(frozenset(members))
            tops.append(_top_of(gstar, members))
        b_groups.append(side)
    tpl, back = induced(gstar, to_mask(tops))
    pos = {v: i for i, v in enumerate(back)}
    a_set = frozenset(pos[tops[i]] for i in a_idx)
    k_paths = pieces.n_clique
    lab = Labeling(
        A=a_set,
        B=frozenset(pos[tops[i]] for i in b_groups[0]),
        Ap=frozenset(pos[tops[i]] for i in ap_idx),
        Bp=frozenset(pos[tops[i]] for i in b_groups[1]),
        I=frozenset(pos[tops[i]] for i in i_idx),
        A_S=frozenset(pos[tops[i]] for i in a_idx[k_paths:]) if parity == EVEN else frozenset(),
        Ap_S=frozenset(pos[tops[i]] for i in ap_idx[k_paths:]) if parity == EVEN else frozenset(),
    )
    try:
        part = pretemplate_to_template(tpl, lab, ell, parity, check_spectrum=False)
    except (PreconditionError, ReconstructionError) as exc:
        raise ReconstructionError(f"recovered template is invalid: {exc}") from None
    if any(len(c) > 1 for c in twin_classes(tpl)):
        raise ReconstructionError("recovered template has twins")
    if parity == ODD:
        from .templates.odd import to_proper_partition
        part = to_proper_partition(tpl, part)
    else:
        from .templates.even import even_to_proper
        part = even_to_proper(tpl, part)
    cliques = [None] * tpl.n
    for c, t in zip(groups, tops):
        cliques[pos[t]] = _rank_order(gstar, c, t)
    # mapping ids are gstar ids; the template lives on 0..m-1 with embed = back
    m = BlowupMapping.from_cliques(gstar.n, cliques, part)
    viol = verify_blowup(gstar, tpl, part, m, require_proper=True)
    if viol:
        raise ReconstructionError("normalised blowup fails: " + "; ".join(viol[:5]))
    return tpl, part, m
