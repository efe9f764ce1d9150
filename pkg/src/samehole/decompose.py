"""Recursive decomposition of graphs whose holes all have length k into
universal-vertex peels, clique-cutset splits and certified leaves."""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import BlowupMapping, PreblowupPieces, normalize_preblowup, verify_blowup
from .cutsets import clique_cutset
from .errors import BudgetExceeded, ParseError, PreconditionError, SameHoleError, StuckError
from .formats import from_graph6, to_graph6
from .graph import Graph, bfs_distances, bits, component_masks, induced, to_mask, universal_in
from .holes import hole_spectrum
from .rings import RingPartition, recognize_ring, verify_ring
from .templates.core import EVEN, ODD, TemplatePartition, ell_for, template_violations


def check_membership(g: Graph, k: int, budget: int | None = None) -> bool:
    """True iff every hole of g has length exactly k (chordal graphs included)."""
    kw = {} if budget is None else {"budget": budget}
    return hole_spectrum(g, early_exit=True, **kw).is_member(k)


# certificates -------------------------------------------------------------------

@dataclass(frozen=True)
class LeafCertificate:
    """``kind`` is "tiny", "complete", "ring" or "blowup". Ids inside ``ring``
    and ``mapping`` are vertices of the leaf graph; the blowup template lives
    on its own ids 0..m-1 and ``mapping.cliques[t]`` ends with the copy of t."""

    kind: str
    ring: RingPartition | None = None
    template: Graph | None = None
    partition: TemplatePartition | None = field(default=None, hash=False)
    mapping: BlowupMapping | None = field(default=None, hash=False)


def _layers(g: Graph, start: int, comp: int) -> list[int] | None:
    """Layers of ``comp`` by distance from ``start`` (outside comp)."""
    dist = bfs_distances(g, start, within=start | comp)
    if any(v not in dist for v in bits(comp)):
        return None
    depth = max(dist[v] for v in bits(comp))
    out = [0] * depth
    for v in bits(comp):
        out[dist[v] - 1] |= 1 << v
    return out


def _pieces(g: Graph, parity: str, ell: int, astar: int, bstar: int, apstar: int, bpstar: int,
            istar: int) -> PreblowupPieces | None:
    kpaths, spaths = [], []
    used_a = used_ap = 0
    for comp in component_masks(g, within=istar) if istar else []:
        ka = g.neighborhood_of_set(comp) & astar
        kap = g.neighborhood_of_set(comp) & apstar
        if not ka or not kap or ka & used_a or kap & used_ap:
            return None
        if g.neighborhood_of_set(comp) & ~(comp | astar | apstar):
            return None
        used_a |= ka
        used_ap |= kap
        lay = _layers(g, ka, comp)
        if lay is None:
            return None
        piece = tuple(frozenset(bits(x)) for x in [ka] + lay + [kap])
        if len(lay) == ell - 2:
            kpaths.append(piece)
        elif parity == EVEN and len(lay) == ell - 3 and len(lay) > 0:
            spaths.append(piece)
        else:
            return None
    if used_a != astar or used_ap != apstar:
        return None
    if parity == ODD and len(kpaths) < 3 or parity == EVEN and len(kpaths) + len(spaths) < 3:
        return None
    return PreblowupPieces(parity, ell, tuple(kpaths + spaths), frozenset(bits(bstar)),
                           frozenset(bits(bpstar)), len(kpaths))


def _side(g: Graph, c: int) -> tuple[int, int, int]:
    """(S, A*, B*) for the anchor c: S = N[c], A* the part of S with neighbours outside S."""
    s = g.closed(c)
    a = 0
    for v in bits(s):
        if g.adj[v] & ~s:
            a |= 1 << v
    return s, a, s & ~a


def _try(g: Graph, pieces: PreblowupPieces | None):
    if pieces is None:
        return None
    try:
        return normalize_preblowup(g, pieces, check_spectrum=False)
    except BudgetExceeded:
        raise
    except SameHoleError:
        return None


def _blowup_search(g: Graph, parity: str, ell: int):
    full = g.all_mask
    tried = set()
    for c in range(g.n):
        s, a, b = _side(g, c)
        if not a or s in tried:
            continue
        tried.add(s)
        if parity == ODD:
            dist = bfs_distances(g, s)
            if len(dist) != g.n or max(dist.values()) not in (ell - 1, ell):
                continue
            lay = [0] * (ell + 1)
            for v, d in dist.items():
                lay[d] |= 1 << v
            istar = 0
            for d in range(1, ell - 1):
                istar |= lay[d]
            ap, bp = lay[ell - 1], lay[ell]
            if g.neighborhood_of_set(bp) & ~(ap | bp):
                continue
            res = _try(g, _pieces(g, parity, ell, a, b, ap, bp, istar))
            if res is not None:
                return res
            continue
        far = full & ~s & ~g.neighborhood_of_set(s)
        for c2 in bits(far):
            s2, a2, b2 = _side(g, c2)
            if s2 & s or g.neighborhood_of_set(s2) & s or (s, s2) in tried or not a2:
                continue
            tried.add((s, s2))
            res = _try(g, _pieces(g, parity, ell, a, b, a2, b2, full & ~s & ~s2))
            if res is not None:
                return res
    return None


def certify_leaf(g: Graph, k: int) -> LeafCertificate | None:
    """A leaf certificate for g, or None when g is not recognised as a leaf.

    Tries, in order: at most two vertices, a complete graph, a ring of length
    k, and a proper blowup of a twinless template (anchored search: in a
    proper blowup some witness copy c has N[c] equal to one blown side).
    """
    if g.n <= 2:
        return LeafCertificate("tiny")
    if g.is_clique(g.all_mask):
        return LeafCertificate("complete")
    if k < 7:
        raise PreconditionError("k", f"leaf certification needs k >= 7, got {k}")
    if not check_membership(g, k):
        raise PreconditionError("membership", f"graph has a hole of length other than {k}")
    ring = recognize_ring(g)
    if ring is not None and ring.k == k:
        return LeafCertificate("ring", ring=ring)
    parity, ell = ell_for(k)
    res = _blowup_search(g, parity, ell)
    if res is not None:
        tpl, part, m = res
        return LeafCertificate("blowup", template=tpl, partition=part, mapping=m)
    return None


def leaf_violations(g: Graph, cert: LeafCertificate, k: int) -> list[str]:
    if cert.kind == "tiny":
        return [] if g.n <= 2 else ["tiny: leaf has more than two vertices"]
    if cert.kind == "complete":
        return [] if g.is_clique(g.all_mask) else ["complete: leaf is not a clique"]
    if cert.kind == "ring":
        r = cert.ring
        if r is None or r.k != k:
            return ["ring: length differs from k"]
        return verify_ring(g, r)
    if cert.kind == "blowup":
        p, m = cert.partition, cert.mapping
        parity, ell = ell_for(k)
        if p is None or m is None or p.parity != parity or p.ell != ell:
            return ["blowup: parity or ell does not match k"]
        if len(m.cliques) == 0 or any(not c for c in m.cliques):
            return ["blowup: empty blown clique"]
        tops = [c[-1] for c in m.cliques]
        if tops != sorted(tops) or len(set(tops)) != len(tops) or max(tops) >= g.n:
            return ["blowup: template copies must be increasing leaf vertices"]
        if any(v < 0 or v >= g.n for c in m.cliques for v in c):
            return ["blowup: clique vertex out of range"]
        tpl, _ = induced(g, to_mask(tops))
        out = template_violations(tpl, p)
        if out:
            return out
        return verify_blowup(g, tpl, p, m, require_proper=True)
    return [f"unknown leaf kind {cert.kind}"]


# trees --------------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    vertices: tuple[int, ...]
    graph: Graph
    cert: LeafCertificate


@dataclass(frozen=True)
class Peel:
    vertex: int
    child: object


@dataclass(frozen=True)
class Split:
    clique: tuple[int, ...]
    children: tuple


@dataclass(frozen=True)
class DecompositionTree:
    k: int
    n: int
    root: object

    def nodes(self):
        stack = [self.root]
        while stack:
            x = stack.pop()
            yield x
            if isinstance(x, Peel):
                stack.append(x.child)
            elif isinstance(x, Split):
                stack.extend(reversed(x.children))

    def leaf_kinds(self) -> list[str]:
        return [x.cert.kind for x in self.nodes() if isinstance(x, Leaf)]

    def shape(self):
        def rec(x):
            if isinstance(x, Leaf):
                return x.cert.kind
            if isinstance(x, Peel):
                return ("peel", rec(x.child))
            return ("split",) + tuple(rec(c) for c in x.children)
        return rec(self.root)


def _has_configuration(g: Graph, parity: str) -> bool:
    from .truemper import find_configs
    kinds = ("pyramid",) if parity == ODD else ("theta", "prism")
    try:
        return bool(find_configs(g, kinds=kinds))
    except BudgetExceeded:
        return True


def decompose(g: Graph, k: int) -> DecompositionTree:
    """Decompose a graph whose holes all have length k (k >= 7).

    Each node first tries a leaf certificate, then peels a universal vertex,
    then splits on a clique cutset. Raises StuckError when none applies.
    """
    if k < 7:
        raise PreconditionError("k", f"decomposition needs k >= 7, got {k}")
    if not check_membership(g, k):
        raise PreconditionError("membership", f"graph has a hole of length other than {k}")
    parity, _ = ell_for(k)

    def node(ids: list[int]):
        sub, _ = induced(g, to_mask(ids))
        cert = certify_leaf(sub, k) if sub.n > 2 else LeafCertificate("tiny")
        if cert is not None:
            return Leaf(tuple(ids), sub, cert)
        uni = universal_in(sub, sub.all_mask)
        if uni:
            v = next(bits(uni))
            return Peel(ids[v], node([x for i, x in enumerate(ids) if i != v]))
        cut = clique_cutset(sub)
        if cut is not None:
            clique, (s1, s2) = cut
            kids = tuple(node(sorted(ids[i] for i in set(clique) | side)) for side in (s1, s2))
            return Split(tuple(sorted(ids[i] for i in clique)), kids)
        if not _has_configuration(sub, parity):
            raise StuckError("trichotomy violated: no configuration, yet not a ring and no universal "
                             "vertex or clique cutset", residual=(tuple(ids), sub))
        raise StuckError("no leaf certificate, universal vertex or clique cutset found",
                         residual=(tuple(ids), sub))

    return DecompositionTree(k, g.n, node(list(range(g.n))))


# reassembly ---------------------------------------------------------------------

def _assemble(x, k: int, errors: list[str]):
    """(vertex set, edge set) of a node, collecting violations."""
    if isinstance(x, Leaf):
        if x.graph.n != len(x.vertices) or len(set(x.vertices)) != len(x.vertices):
            errors.append("leaf: vertex list does not match its graph")
            return set(), set()
        for msg in leaf_violations(x.graph, x.cert, k):
            errors.append(f"leaf {x.cert.kind}: {msg}")
        vs = x.vertices
        return set(vs), {(min(vs[a], vs[b]), max(vs[a], vs[b])) for a, b in x.graph.edges()}
    if isinstance(x, Peel):
        vs, es = _assemble(x.child, k, errors)
        if x.vertex in vs:
            errors.append(f"peel {x.vertex}: vertex already present below")
        return vs | {x.vertex}, es | {(min(x.vertex, u), max(x.vertex, u)) for u in vs}
    if isinstance(x, Split):
        kset = set(x.clique)
        if len(x.children) < 2:
            errors.append("split: fewer than two children")
        parts = [_assemble(c, k, errors) for c in x.children]
        allv, alle = set(), set()
        for i, (vs, es) in enumerate(parts):
            if not kset <= vs:
                errors.append(f"split {sorted(kset)}: child {i} misses part of the cutset")
            if not vs - kset:
                errors.append(f"split {sorted(kset)}: child {i} has nothing outside the cutset")
            for j in range(i):
                if parts[j][0] & vs != kset:
                    errors.append(f"split {sorted(kset)}: children {j} and {i} overlap outside the cutset")
            inner = {(a, b) for a in kset for b in kset if a < b}
            if not inner <= es:
                errors.append(f"split {sorted(kset)}: cutset is not a clique in child {i}")
            allv |= vs
            alle |= es
        return allv, alle
    errors.append(f"unknown node {type(x).__name__}")
    return set(), set()


def tree_violations(g: Graph, t: DecompositionTree) -> list[str]:
    errors: list[str] = []
    vs, es = _assemble(t.root, t.k, errors)
    if vs != set(range(g.n)):
        errors.append("reassembly: vertex set differs from the graph")
        return errors
    rebuilt = Graph.from_edges(g.n, sorted(es))
    if to_graph6(rebuilt) != to_graph6(g):
        errors.append("reassembly: edges differ from the graph")
    return errors


def verify_tree(g: Graph, t: DecompositionTree) -> bool:
    return not tree_violations(g, t)


# text form ----------------------------------------------------------------------

def _ints(xs) -> str:
    return " ".join(map(str, xs))


def _cert_lines(leaf: Leaf) -> list[str]:
    c = leaf.cert
    out = [f"vertices {_ints(leaf.vertices)}", f"graph6 {to_graph6(leaf.graph)}"]
    if c.kind == "ring":
        out += [f"clique {_ints(q)}" for q in c.ring.cliques]
    elif c.kind == "blowup":
        p, m = c.partition, c.mapping
        out.append(f"n_clique {p.n_clique}")
        out += [f"A {_ints(p.A)}", f"A' {_ints(p.Ap)}", f"B {_ints(p.B)}", f"B' {_ints(p.Bp)}"]
        out += [f"path {_ints(q)}" for q in p.paths]
        out += [f"h {x} : {_ints(sorted(p.hmap[x]))}" for x in p.B]
        out += [f"h' {x} : {_ints(sorted(p.hmap_p[x]))}" for x in p.Bp]
        out += [f"w {p.w}", f"w' {p.wp}"]
        out += [f"blown {t} : {_ints(q)}" for t, q in enumerate(m.cliques)]
    return out


def tree_to_text(t: DecompositionTree) -> str:
    lines = [f"tree k={t.k} n={t.n}"]

    def rec(x, depth):
        pad = "  " * depth
        if isinstance(x, Peel):
            lines.append(f"{pad}peel {x.vertex}")
            rec(x.child, depth + 1)
        elif isinstance(x, Split):
            lines.append(pad + "split {" + ",".join(map(str, x.clique)) + "}")
            for c in x.children:
                rec(c, depth + 1)
        else:
            head = f"leaf {x.cert.kind}"
            if x.cert.kind == "ring":
                head = f"leaf ring k={x.cert.ring.k}"
            elif x.cert.kind == "blowup":
                head = f"leaf blowup {x.cert.partition.parity} ell={x.cert.partition.ell}"
            lines.append(pad + head)
            lines.extend(pad + "  " + s for s in _cert_lines(x))

    rec(t.root, 1)
    return "\n".join(lines) + "\n"


def _nums(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split())
    except ValueError:
        raise ParseError(f"expected integers, got {s!r}") from None


def _parse_leaf(head: str, body: list[str]) -> Leaf:
    kv: dict[str, list[str]] = {}
    for line in body:
        key, _, rest = line.partition(" ")
        kv.setdefault(key, []).append(rest)
    try:
        vertices = _nums(kv["vertices"][0])
        graph = from_graph6(kv["graph6"][0].strip())
    except (KeyError, IndexError):
        raise ParseError("leaf block needs 'vertices' and 'graph6' lines") from None
    words = head.split()
    kind = words[1] if len(words) > 1 else ""
    if kind in ("tiny", "complete"):
        return Leaf(vertices, graph, LeafCertificate(kind))
    if kind == "ring":
        kval = int(words[2].split("=")[1])
        cliques = tuple(_nums(s) for s in kv.get("clique", []))
        return Leaf(vertices, graph, LeafCertificate("ring", ring=RingPartition(kval, cliques)))
    if kind == "blowup":
        parity = words[2]
        ell = int(words[3].split("=")[1])

        def one(key):
            vals = kv.get(key, [""])
            return _nums(vals[0])

        def hsets(key):
            out = {}
            for s in kv.get(key, []):
                x, _, rest = s.partition(":")
                out[int(x)] = frozenset(_nums(rest))
            return out

        paths = tuple(_nums(s) for s in kv.get("path", []))
        blown = sorted((int(s.partition(":")[0]), _nums(s.partition(":")[2])) for s in kv.get("blown", []))
        cliques = tuple(q for _, q in blown)
        part = TemplatePartition(parity, ell, one("A"), one("A'"), one("B"), one("B'"),
                                 frozenset(v for q in paths for v in q[1:-1]), paths,
                                 hsets("h"), hsets("h'"), one("w")[0], one("w'")[0], one("n_clique")[0])
        m = BlowupMapping.from_cliques(graph.n, cliques, part)
        return Leaf(vertices, graph, LeafCertificate("blowup", template=None, partition=part, mapping=m))
    raise ParseError(f"unknown leaf line {head!r}")


def tree_from_text(text: str) -> DecompositionTree:
    lines = [ln.rstrip("\n") for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("tree "):
        raise ParseError("tree text must start with a 'tree' line")
    try:
        head = dict(x.split("=") for x in lines[0].split()[1:])
        k, n = int(head["k"]), int(head["n"])
    except (KeyError, ValueError):
        raise ParseError("malformed tree header") from None
    pos = [1]

    def depth(line):
        return (len(line) - len(line.lstrip(" "))) // 2

    def parse(d):
        if pos[0] >= len(lines):
            raise ParseError("unexpected end of tree")
        line = lines[pos[0]]
        if depth(line) != d:
            raise ParseError(f"bad indentation at line {pos[0] + 1}")
        body = line.strip()
        pos[0] += 1
        try:
            if body.startswith("peel "):
                v = int(body.split()[1])
                return Peel(v, parse(d + 1))
            if body.startswith("split "):
                inner = body[len("split "):].strip()
                if not (inner.startswith("{") and inner.endswith("}")):
                    raise ParseError("split needs a braced vertex set")
                clique = tuple(int(x) for x in inner[1:-1].split(",") if x.strip())
                kids = []
                while pos[0] < len(lines) and depth(lines[pos[0]]) == d + 1:
                    kids.append(parse(d + 1))
                return Split(clique, tuple(kids))
            if body.startswith("leaf "):
                block = []
                while pos[0] < len(lines) and depth(lines[pos[0]]) == d + 1:
                    block.append(lines[pos[0]].strip())
                    pos[0] += 1
                return _parse_leaf(body, block)
        except (ValueError, IndexError):
            raise ParseError(f"malformed node line {body!r}") from None
        raise ParseError(f"unknown node line {body!r}")

    root = parse(1)
    if pos[0] != len(lines):
        raise ParseError("trailing lines after the tree")
    return DecompositionTree(k, n, root)
