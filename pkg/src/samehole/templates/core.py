"""Partition data shared by odd and even templates, pretemplate validation and
recovery of a full template partition from a validated pretemplate."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..classes import leq_in
from ..errors import BudgetExceeded, PreconditionError, ReconstructionError
from ..graph import Graph, bits, component_masks, is_connected, popcount, to_mask, universal_in

ODD = "odd"
EVEN = "even"


@dataclass(frozen=True)
class TemplatePartition:
    """A labelled template partition.

    ``A[i]`` and ``Ap[i]`` are joined by the principal path ``paths[i]``. For
    even partitions the first ``n_clique`` entries of ``A`` form A_K and the
    rest A_S (same for ``Ap``). ``hmap[x]`` is H_x for x in B and ``hmap_p[x]``
    is H'_x for x in B'.
    """

    parity: str
    ell: int
    A: tuple[int, ...]
    Ap: tuple[int, ...]
    B: tuple[int, ...]
    Bp: tuple[int, ...]
    I: frozenset[int]
    paths: tuple[tuple[int, ...], ...]
    hmap: dict = field(hash=False)
    hmap_p: dict = field(hash=False)
    w: int
    wp: int
    n_clique: int

    # convenience --------------------------------------------------------
    @property
    def k(self) -> int:
        return self.n_clique if self.parity == EVEN else len(self.A)

    @property
    def s(self) -> int:
        return len(self.A) - self.n_clique if self.parity == EVEN else 0

    @property
    def A_K(self) -> tuple[int, ...]:
        return self.A[:self.n_clique]

    @property
    def A_S(self) -> tuple[int, ...]:
        return self.A[self.n_clique:]

    @property
    def Ap_K(self) -> tuple[int, ...]:
        return self.Ap[:self.n_clique]

    @property
    def Ap_S(self) -> tuple[int, ...]:
        return self.Ap[self.n_clique:]

    def mask(self, name: str) -> int:
        if name == "I":
            return to_mask(self.I)
        return to_mask(getattr(self, name))

    def side_of(self, v: int) -> str:
        if v in self.I:
            return "I"
        for name in ("A", "B", "Ap", "Bp"):
            if v in getattr(self, name):
                return name
        raise KeyError(v)

    def path_neighbor(self, v: int) -> int:
        """Neighbour in I (or across, for very short paths) of an end of a principal path."""
        for p in self.paths:
            if p[0] == v:
                return p[1]
            if p[-1] == v:
                return p[-2]
        raise KeyError(v)

    def mirrored(self) -> "TemplatePartition":
        return replace(self, A=self.Ap, Ap=self.A, B=self.Bp, Bp=self.B,
                       paths=tuple(tuple(reversed(p)) for p in self.paths),
                       hmap=dict(self.hmap_p), hmap_p=dict(self.hmap), w=self.wp, wp=self.w)

    def remap(self, m: dict[int, int]) -> "TemplatePartition":
        def t(xs):
            return tuple(m[x] for x in xs)
        return replace(self, A=t(self.A), Ap=t(self.Ap), B=t(self.B), Bp=t(self.Bp),
                       I=frozenset(m[x] for x in self.I), paths=tuple(t(p) for p in self.paths),
                       hmap={m[x]: frozenset(m[u] for u in h) for x, h in self.hmap.items()},
                       hmap_p={m[x]: frozenset(m[u] for u in h) for x, h in self.hmap_p.items()},
                       w=m[self.w], wp=m[self.wp])

    def labeling(self) -> "Labeling":
        return Labeling(frozenset(self.A), frozenset(self.B), frozenset(self.Ap),
                        frozenset(self.Bp), frozenset(self.I),
                        frozenset(self.A_S) if self.parity == EVEN else frozenset(),
                        frozenset(self.Ap_S) if self.parity == EVEN else frozenset())


@dataclass(frozen=True)
class Labeling:
    """Five-set labelling of a candidate pretemplate. For even candidates the
    S-indexed ends are listed in ``A_S`` / ``Ap_S``; the rest of A is A_K."""

    A: frozenset[int]
    B: frozenset[int]
    Ap: frozenset[int]
    Bp: frozenset[int]
    I: frozenset[int]
    A_S: frozenset[int] = frozenset()
    Ap_S: frozenset[int] = frozenset()

    def mirrored(self) -> "Labeling":
        return Labeling(self.Ap, self.Bp, self.A, self.B, self.I, self.Ap_S, self.A_S)


# pretemplate validation -----------------------------------------------------

def _paths_through(g: Graph, a: int, imask: int, apmask: int, limit: int = 200_000):
    """Simple paths from a whose interior lies in I and whose last vertex is in A'."""
    out = []
    budget = [limit]

    def rec(x, seen, path):
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("path search through I")
        for y in bits(g.adj[x] & ~seen):
            if apmask >> y & 1:
                out.append(tuple(path) + (y,))
            elif imask >> y & 1:
                path.append(y)
                rec(y, seen | (1 << y), path)
                path.pop()

    rec(a, 1 << a, [a])
    return out


def _interior_of_path(g: Graph, x: int, side: int, amask: int, limit: int = 100_000) -> bool:
    """Is x an interior vertex of some induced path of G[side] with both ends in A?"""
    budget = [limit]
    # induced paths starting at x (x excluded from the rest), ending in A
    branches: list[tuple[int, int]] = []  # (vertex mask of branch minus x, closed nbhd mask)

    def rec(last, forbid, onpath, nbh):
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("interior path search")
        if amask >> last & 1:
            branches.append((onpath, nbh))
        for y in bits(g.adj[last] & side & ~forbid & ~onpath):
            rec(y, forbid | g.adj[last] | (1 << last), onpath | (1 << y), nbh | g.adj[y] | (1 << y))

    for y in bits(g.adj[x] & side):
        rec(y, g.closed(x) & ~(1 << y), 1 << y, g.adj[y] | (1 << y))
        # forbid: later vertices may not touch x; y itself is allowed as first
    for i in range(len(branches)):
        pi, ni = branches[i]
        for j in range(i + 1, len(branches)):
            pj, nj = branches[j]
            if pi & pj:
                continue
            if ni & pj:
                continue
            return True
    return False


def validate_pretemplate(g: Graph, lab: Labeling, ell: int, parity: str) -> list[str]:
    """Violated pretemplate conditions as strings "condition N: reason"."""
    out: list[str] = []
    A, B, Ap, Bp, I = (to_mask(s) for s in (lab.A, lab.B, lab.Ap, lab.Bp, lab.I))
    parts = [A, B, Ap, Bp, I]
    total = 0
    for m in parts:
        if total & m:
            return ["partition: the five sets overlap"]
        total |= m
    if total != g.all_mask:
        return ["partition: the five sets do not cover the vertex set"]
    if parity == ODD and ell < 3:
        return ["ell: pretemplates need ell >= 3"]
    if parity == EVEN and ell < 4:
        return ["ell: even pretemplates need ell >= 4"]
    even = parity == EVEN
    c = {"paths": 4, "interior": 5, "lengths": 6, "conn": 7, "tnB": 8, "tnBp": 9}
    if even:
        c = {"paths": 5, "interior": 6, "lengths": 7, "conn": 8, "tnB": 9, "tnBp": 10}

    # 1 and 2: neighbourhood confinement
    if g.neighborhood_of_set(B) & ~A:
        out.append("condition 1: B has a neighbour outside A")
    if g.neighborhood_of_set(A | B) & ~I:
        out.append("condition 1: A or B has a neighbour outside A, B and I")
    if g.neighborhood_of_set(Bp) & ~Ap:
        out.append("condition 2: B' has a neighbour outside A'")
    if g.neighborhood_of_set(Ap | Bp) & ~I:
        out.append("condition 2: A' or B' has a neighbour outside A', B' and I")

    # cardinalities
    AS, ApS = to_mask(lab.A_S), to_mask(lab.Ap_S)
    if not even:
        if AS or ApS:
            out.append("condition 3: odd candidates have no S-indexed ends")
        if popcount(A) != popcount(Ap) or popcount(A) < 3:
            out.append("condition 3: |A| = |A'| >= 3 fails")
    else:
        if AS & ~A or ApS & ~Ap:
            out.append("condition 4: A_S must lie in A and A'_S in A'")
        if popcount(A & ~AS) != popcount(Ap & ~ApS):
            out.append("condition 3: |A_K| differs from |A'_K|")
        if popcount(AS) != popcount(ApS):
            out.append("condition 4: |A_S| differs from |A'_S|")
        if not g.is_stable(AS) or not g.is_stable(ApS):
            out.append("condition 4: A_S or A'_S is not stable")
        if popcount(A) < 3:
            out.append("condition 4: k + s < 3")

    # paths through I
    try:
        pairing, lengths, path_msgs, on_paths = _pair_up(g, lab, A, Ap, I)
    except BudgetExceeded:
        out.append(f"condition {c['paths']}: path search budget exhausted")
        return out
    out += [f"condition {c['paths']}: {m}" for m in path_msgs]
    bad_deg = [v for v in bits(I) if g.degree(v) != 2]
    if bad_deg:
        out.append(f"condition {c['interior']}: degree 2 fails at I-vertices {bad_deg}")
    if I & ~on_paths:
        out.append(f"condition {c['interior']}: some I-vertex lies on no principal path")
    for a, path in pairing.items():
        want = ell - 1
        if even and (a in lab.A_S):
            want = ell - 2
            if path[-1] not in lab.Ap_S:
                out.append(f"condition {c['paths']}: path from {a} joins A_S to A'_K")
        elif even and path[-1] in lab.Ap_S:
            out.append(f"condition {c['paths']}: path from {a} joins A_K to A'_S")
        if len(path) - 1 != want:
            out.append(f"condition {c['lengths']}: path from {a} has length {len(path) - 1}, expected {want}")

    if not is_connected(g, A | B) or not is_connected(g, Ap | Bp):
        out.append(f"condition {c['conn']}: G[A u B] or G[A' u B'] is disconnected")
    try:
        for x in bits(B):
            if not _interior_of_path(g, x, A | B, A):
                out.append(f"condition {c['tnB']}: B-vertex {x} is not interior to an A-A path")
        for x in bits(Bp):
            if not _interior_of_path(g, x, Ap | Bp, Ap):
                out.append(f"condition {c['tnBp']}: B'-vertex {x} is not interior to an A'-A' path")
    except BudgetExceeded:
        out.append(f"condition {c['tnB']}: interior path search budget exhausted")
    return out


def _pair_up(g: Graph, lab: Labeling, A: int, Ap: int, I: int):
    pairing: dict[int, tuple[int, ...]] = {}
    msgs = []
    on_paths = 0
    hit: dict[int, int] = {}
    for a in bits(A):
        paths = _paths_through(g, a, I, Ap)
        ends = {p[-1] for p in paths}
        if not paths:
            msgs.append(f"no path from {a} to A' through I")
            continue
        if len(ends) > 1:
            msgs.append(f"{a} reaches several A'-vertices through I")
            continue
        if len(paths) > 1:
            msgs.append(f"path from {a} through I is not unique")
            continue
        p = paths[0]
        pairing[a] = p
        hit[p[-1]] = hit.get(p[-1], 0) + 1
        on_paths |= to_mask(p[1:-1])
    for v, cnt in hit.items():
        if cnt > 1:
            msgs.append(f"A'-vertex {v} is reached from several A-vertices")
    if len(hit) != popcount(Ap) and not msgs:
        msgs.append("some A'-vertex is reached by no path")
    return pairing, None, msgs, on_paths


# recovery --------------------------------------------------------------------

def recover_hx(g: Graph, x: int, amask: int) -> frozenset[int]:
    """The unique anticomponent of G[N_A(x)] with at least two vertices."""
    na = g.adj[x] & amask
    big = [c for c in component_masks(g, within=na, anti=True) if popcount(c) >= 2]
    if len(big) != 1:
        raise ReconstructionError(
            f"vertex {x}: G[N_A(x)] has {len(big)} anticomponents of size >= 2")
    return frozenset(bits(big[0]))


def pretemplate_to_template(g: Graph, lab: Labeling, ell: int, parity: str = ODD,
                            check_spectrum: bool = True) -> TemplatePartition:
    """Turn a validated pretemplate labelling into a full template partition.

    ``check_spectrum`` enforces that every hole has the class length
    (2ell+1 for odd, 2ell for even) before reconstructing.
    """
    viol = validate_pretemplate(g, lab, ell, parity)
    if viol:
        raise PreconditionError("pretemplate", "; ".join(viol))
    if check_spectrum:
        from ..holes import has_hole_other_than
        target = 2 * ell + 1 if parity == ODD else 2 * ell
        bad = has_hole_other_than(g, target)
        if bad is not None:
            raise PreconditionError("spectrum", f"hole of length {bad.length}, class needs {target}")
    A, Ap, I = to_mask(lab.A), to_mask(lab.Ap), to_mask(lab.I)
    pairing, _, _, _ = _pair_up(g, lab, A, Ap, I)
    if parity == EVEN:
        order = sorted(lab.A - lab.A_S) + sorted(lab.A_S)
        n_clique = len(lab.A) - len(lab.A_S)
    else:
        order = sorted(lab.A)
        n_clique = len(order)
    paths = tuple(pairing[a] for a in order)
    Aseq = tuple(order)
    Apseq = tuple(p[-1] for p in paths)
    B = tuple(sorted(lab.B))
    Bp = tuple(sorted(lab.Bp))
    hmap = {x: recover_hx(g, x, A) for x in B}
    hmap_p = {x: recover_hx(g, x, Ap) for x in Bp}
    w, wp = choose_witnesses(g, parity, Aseq, B, Apseq, Bp)
    p = TemplatePartition(parity, ell, Aseq, Apseq, B, Bp, frozenset(lab.I), paths,
                          hmap, hmap_p, w, wp, n_clique)
    viol = template_violations(g, p)
    if viol:
        raise ReconstructionError("; ".join(viol))
    return p


def choose_witnesses(g: Graph, parity: str, A, B, Ap, Bp) -> tuple[int, int]:
    side = to_mask(A) | to_mask(B)
    side_p = to_mask(Ap) | to_mask(Bp)
    uni = universal_in(g, side)
    uni_p = universal_in(g, side_p)
    bset, bpset = set(B), set(Bp)
    # prefer witnesses in B, then lowest id
    cands = sorted(bits(uni), key=lambda v: (v not in bset, v))
    cands_p = sorted(bits(uni_p), key=lambda v: (v not in bpset, v))
    if not cands or not cands_p:
        raise ReconstructionError("no universal vertex on one side")
    if parity == EVEN:
        return cands[0], cands_p[0]
    for w in cands:
        for wp in cands_p:
            if (w in bset) != (wp in bpset):
                return w, wp
    raise ReconstructionError("no witness pair with one witness in B and the other in A'")


def template_violations(g: Graph, p: TemplatePartition) -> list[str]:
    """Check that g is exactly the template described by p.

    The partition's data (G[A], the H-sets, path lengths) determines a
    template spec, which is rebuilt and compared edge by edge under the
    natural vertex correspondence. Witness universality is checked separately.
    """
    from ..errors import SpecError
    from .even import build_even_template, spec_from_partition as even_spec
    from .odd import build_odd_template, spec_from_partition as odd_spec

    out: list[str] = []
    seen = list(p.A) + list(p.Ap) + list(p.B) + list(p.Bp) + sorted(p.I)
    if len(set(seen)) != len(seen) or set(seen) != set(range(g.n)):
        return ["partition: sets overlap or do not cover the vertex set"]
    if set(p.hmap) != set(p.B) or set(p.hmap_p) != set(p.Bp):
        return ["hmap: H-sets missing or extra"]
    for i, path in enumerate(p.paths):
        if path[0] != p.A[i] or path[-1] != p.Ap[i]:
            return [f"paths: principal path {i} does not join A[{i}] to A'[{i}]"]
    inner = [v for path in p.paths for v in path[1:-1]]
    if sorted(inner) != sorted(p.I):
        return ["paths: path interiors differ from I"]
    try:
        if p.parity == ODD:
            spec = odd_spec(g, p)
            h, q = build_odd_template(spec)
        else:
            spec = even_spec(g, p)
            h, q = build_even_template(spec)
    except SpecError as exc:
        return [f"template: {exc}"]
    if h.n != g.n:
        return ["template: vertex count differs from the rebuilt template"]
    # built vertex -> vertex of g
    m = {}
    for i in range(len(p.A)):
        for a, b in zip(q.paths[i], p.paths[i]):
            if a in m:
                return ["template: inconsistent path layout"]
            m[a] = b
        if len(q.paths[i]) != len(p.paths[i]):
            return [f"template: principal path {i} has the wrong length"]
    if len(q.B) != len(p.B) or len(q.Bp) != len(p.Bp):
        return ["template: a hyperedge lies on the wrong side (anticonnectivity)"]
    for a, b in zip(q.B, p.B):
        m[a] = b
    for a, b in zip(q.Bp, p.Bp):
        m[a] = b
    for u in range(h.n):
        want = 0
        for v in bits(h.adj[u]):
            want |= 1 << m[v]
        if g.adj[m[u]] != want:
            out.append(f"template: neighbourhood of vertex {m[u]} differs from the template rule")
    side = p.mask("A") | p.mask("B")
    side_p = p.mask("Ap") | p.mask("Bp")
    if not (universal_in(g, side) >> p.w & 1) or not side >> p.w & 1:
        out.append("witness: w is not universal in G[A u B]")
    if not (universal_in(g, side_p) >> p.wp & 1) or not side_p >> p.wp & 1:
        out.append("witness: w' is not universal in G[A' u B']")
    if p.parity == ODD and (p.w in p.B) == (p.wp in p.Bp):
        out.append("witness: need w in A and w' in B', or w in B and w' in A'")
    return out


def ell_for(k: int) -> tuple[str, int]:
    return (ODD, (k - 1) // 2) if k % 2 else (EVEN, k // 2)


def h_extended(g: Graph, p: TemplatePartition, primed: bool = False) -> list[frozenset[int]]:
    """H_A: the H-sets of B together with H_v = N_A[v] n {u : u <=_{G[A]} v} for v in A."""
    A = p.Ap if primed else p.A
    hm = p.hmap_p if primed else p.hmap
    B = p.Bp if primed else p.B
    amask = to_mask(A)
    out = [hm[x] for x in B]
    for v in A:
        nb = (g.adj[v] & amask) | (1 << v)
        out.append(frozenset(u for u in bits(nb) if leq_in(g, u, v, amask)))
    return out


def validate_odd_pretemplate(g: Graph, lab: Labeling, ell: int) -> list[str]:
    return validate_pretemplate(g, lab, ell, ODD)


def validate_even_pretemplate(g: Graph, lab: Labeling, ell: int) -> list[str]:
    return validate_pretemplate(g, lab, ell, EVEN)


validate_partition = template_violations


def make_twinless(g: Graph, p: TemplatePartition):
    """Delete all but one vertex of each twin class.

    Returns (graph, partition, removed) where removed lists, per twin class,
    the deleted vertices (original ids). The witnesses are kept as class
    representatives.
    """
    from ..graph import induced, twin_classes
    keep_first = {p.w, p.wp}
    removed: list[frozenset[int]] = []
    drop = 0
    for cls in twin_classes(g):
        if len(cls) < 2:
            continue
        cls = sorted(cls)
        rep = next((v for v in cls if v in keep_first), cls[0])
        gone = frozenset(v for v in cls if v != rep)
        removed.append(gone)
        drop |= to_mask(gone)
    if not drop:
        return g, p, []
    h, back = induced(g, g.all_mask & ~drop)
    fwd = {old: new for new, old in enumerate(back)}
    q = replace(p, B=tuple(x for x in p.B if not drop >> x & 1),
                Bp=tuple(x for x in p.Bp if not drop >> x & 1),
                hmap={x: s for x, s in p.hmap.items() if not drop >> x & 1},
                hmap_p={x: s for x, s in p.hmap_p.items() if not drop >> x & 1})
    return h, q.remap(fwd), removed


def hole_shape(p: TemplatePartition, cycle) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Split a hole into whole principal paths and extra vertices.

    Returns (path indices, extra vertices) when the hole is a union of whole
    principal paths plus vertices of A, B, A', B' that lie on no contained
    path; None if some principal path is only partly used.
    """
    vs = set(cycle)
    used = []
    covered: set[int] = set()
    for i, path in enumerate(p.paths):
        inter = vs.intersection(path)
        if not inter:
            continue
        if len(inter) == len(path):
            used.append(i)
            covered.update(path)
        elif inter & set(path[1:-1]):
            return None
    extra = tuple(sorted(vs - covered))
    if any(v in p.I for v in extra):
        return None
    return tuple(used), extra


def hole_shape_ok(p: TemplatePartition, cycle) -> bool:
    """Does a hole have one of the shapes every template hole must have?"""
    shape = hole_shape(p, cycle)
    if shape is None:
        return False
    used, extra = shape
    if len(used) != 2:
        return False
    ell = p.ell
    if p.parity == ODD:
        return len(extra) == 1 and len(cycle) == 2 * ell + 1
    if len(cycle) != 2 * ell:
        return False
    nk = sum(1 for i in used if i < p.n_clique)
    side = {v: p.side_of(v) for v in extra}
    a_k, ap_k = set(p.A_K), set(p.Ap_K)
    left = [v for v in extra if v in a_k or side[v] == "B"]
    right = [v for v in extra if v in ap_k or side[v] == "Bp"]
    if len(left) + len(right) != len(extra):
        return False
    if nk == 2:
        return not extra
    if nk == 1:
        return len(extra) == 1
    return len(left) == 1 and len(right) == 1
