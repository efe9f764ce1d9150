"""Prisms, pyramids, thetas and wheels.

Every prism, pyramid and theta has the property that any two of its three
paths close up into a hole. The search therefore walks over the holes of the
graph, takes two paths from the hole, and looks for the third path. That path
must avoid the closed neighbourhood of everything except its endpoints, so
the search space stays small. Wheels are holes plus a vertex with at least
three neighbours on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, PreconditionError
from .graph import Graph, bits, popcount, to_mask
from .holes import Hole, canonical_cycle, enumerate_holes, is_hole

KINDS = ("prism", "pyramid", "theta", "wheel")
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class TruemperConfig:
    kind: str
    paths: tuple[tuple[int, ...], ...] = ()
    apex: int | None = None
    center: int | None = None
    triangles: tuple[tuple[int, ...], ...] = ()
    rim: tuple[int, ...] = ()
    wheel_kind: str | None = None

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(p) - 1 for p in self.paths)

    @property
    def balanced(self) -> bool | None:
        if self.kind == "wheel":
            return None
        return len(set(self.lengths)) == 1

    @property
    def vertices(self) -> frozenset[int]:
        vs = set(self.rim)
        for p in self.paths:
            vs.update(p)
        if self.center is not None:
            vs.add(self.center)
        return frozenset(vs)

    def describe(self) -> str:
        if self.kind == "wheel":
            return (f"wheel {self.wheel_kind} center={self.center} "
                    f"rim={'-'.join(map(str, self.rim))}")
        paths = " | ".join("-".join(map(str, p)) for p in self.paths)
        bal = "balanced" if self.balanced else "unbalanced"
        return f"{self.kind} {bal} lengths={','.join(map(str, self.lengths))} paths={paths}"


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n):
        self.left = n

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("configuration search budget exhausted")


def _induced_paths(g: Graph, src: int, dst: int, allowed: int, budget: _Budget):
    """Chordless paths src..dst whose interior lies in ``allowed``."""
    adj = g.adj
    dbit = 1 << dst
    path = [src]
    out = []

    def rec(x, forbid, onpath):
        budget.tick()
        if adj[x] & dbit:
            out.append(tuple(path) + (dst,))
            return
        nforbid = forbid | adj[x] | (1 << x)
        for y in bits(adj[x] & allowed & ~forbid & ~onpath):
            path.append(y)
            rec(y, nforbid, onpath | (1 << y))
            path.pop()

    rec(src, 0, 1 << src)
    return out


def _closed_union(g: Graph, mask: int) -> int:
    m = mask
    for v in bits(mask):
        m |= g.adj[v]
    return m


def classify_wheel(g: Graph, rim, center: int) -> str:
    cyc = rim.cycle if isinstance(rim, Hole) else tuple(rim)
    if not is_hole(g, cyc):
        raise PreconditionError("rim", "rim is not a hole")
    if center in cyc:
        raise PreconditionError("center", "center lies on the rim")
    rmask = to_mask(cyc)
    nb = g.adj[center] & rmask
    cnt = popcount(nb)
    if cnt < 3:
        raise PreconditionError("center", "center has fewer than three rim neighbours")
    if cnt == len(cyc):
        return "universal"
    if cnt == 3:
        idx = [i for i, v in enumerate(cyc) if nb >> v & 1]
        L = len(cyc)
        for i in idx:
            if {(i - 1) % L, i, (i + 1) % L} == set(idx):
                return "twin"
    return "proper"


def _key(cfg: TruemperConfig):
    if cfg.kind == "wheel":
        return ("wheel", cfg.center, canonical_cycle(cfg.rim))
    return (cfg.kind, tuple(sorted(tuple(sorted(p)) for p in cfg.paths)),
            cfg.apex if cfg.apex is not None else -1)


def find_configs(g: Graph, kinds=KINDS, budget: int | None = DEFAULT_BUDGET,
                 max_configs: int | None = None, holes: list[Hole] | None = None,
                 ) -> list[TruemperConfig]:
    """Configurations of the requested kinds, deduplicated, in deterministic order.

    ``max_configs`` caps the number returned (the search stops early);
    exhausting ``budget`` raises BudgetExceeded.
    """
    kinds = set(kinds)
    bud = _Budget(budget if budget is not None else float("inf"))
    if holes is None:
        holes = enumerate_holes(g, budget=budget)
    found: dict = {}

    def add(cfg):
        k = _key(cfg)
        if k not in found:
            found[k] = cfg
        return max_configs is not None and len(found) >= max_configs

    full = g.all_mask
    for hole in holes:
        cyc = hole.cycle
        L = len(cyc)
        hmask = hole.mask
        if "wheel" in kinds:
            for c in bits(full & ~hmask):
                if popcount(g.adj[c] & hmask) >= 3:
                    bud.tick()
                    cfg = TruemperConfig("wheel", center=c, rim=cyc,
                                         wheel_kind=classify_wheel(g, cyc, c))
                    if add(cfg):
                        return _ordered(found)
        if "theta" in kinds:
            for i in range(L):
                for j in range(i + 2, L):
                    if i == 0 and j == L - 1:
                        continue
                    a, b = cyc[i], cyc[j]
                    inner = hmask & ~(1 << a) & ~(1 << b)
                    allowed = full & ~_closed_union(g, inner)
                    p1 = cyc[i:j + 1]
                    p2 = tuple(reversed(cyc[j:] + cyc[:i + 1]))
                    for q in _induced_paths(g, a, b, allowed, bud):
                        cfg = TruemperConfig("theta", paths=(p1, p2, q))
                        if add(cfg):
                            return _ordered(found)
        if "pyramid" in kinds:
            for i in range(L):
                a = cyc[i]
                rest = hmask & ~(1 << a)
                allowed = full & ~_closed_union(g, rest)
                for j in range(L):
                    if j == i or (j + 1) % L == i:
                        continue
                    b1, b2 = cyc[j], cyc[(j + 1) % L]
                    want = (1 << b1) | (1 << b2)
                    apexes = [(b3, g.adj[b3] & hmask) for b3 in bits(full & ~hmask & g.adj[b1] & g.adj[b2])]
                    apexes = [(b3, nh) for b3, nh in apexes if nh in (want, want | (1 << a))]
                    if not apexes:
                        continue
                    # path from a to b1 avoiding the edge b1b2, and from a to b2
                    p1 = _arc(cyc, i, j, away_from=(j + 1) % L)
                    p2 = _arc(cyc, i, (j + 1) % L, away_from=j)
                    for b3, nh in apexes:
                        if nh == want | (1 << a):
                            if len(p1) >= 3 and len(p2) >= 3:
                                if add(TruemperConfig("pyramid", paths=(p1, p2, (a, b3)), apex=a,
                                                      triangles=((b1, b2, b3),))):
                                    return _ordered(found)
                        elif nh == want:
                            for q in _induced_paths(g, a, b3, allowed, bud):
                                if add(TruemperConfig("pyramid", paths=(p1, p2, q), apex=a,
                                                      triangles=((b1, b2, b3),))):
                                    return _ordered(found)
        if "prism" in kinds:
            allowed = full & ~_closed_union(g, hmask)
            for i in range(L):
                a2, a1 = cyc[i], cyc[(i + 1) % L]
                for j in range(i + 2, L):
                    if (j + 1) % L == i:
                        continue
                    b1, b2 = cyc[j], cyc[(j + 1) % L]
                    a_side = full & ~hmask & g.adj[a1] & g.adj[a2]
                    if not a_side or not full & ~hmask & g.adj[b1] & g.adj[b2]:
                        continue
                    p1 = tuple(cyc[(i + 1) % L: j + 1])
                    p2 = _arc(cyc, i, (j + 1) % L, away_from=(i + 1) % L)
                    wa = (1 << a1) | (1 << a2)
                    wb = (1 << b1) | (1 << b2)
                    for a3 in bits(a_side):
                        if g.adj[a3] & hmask != wa:
                            continue
                        for b3 in bits(full & ~hmask & g.adj[b1] & g.adj[b2]):
                            if b3 == a3 or g.adj[b3] & hmask != wb:
                                continue
                            tri = ((a1, a2, a3), (b1, b2, b3))
                            if g.adj[a3] >> b3 & 1:
                                qs = [(a3, b3)]
                            else:
                                qs = _induced_paths(g, a3, b3, allowed, bud)
                            for q in qs:
                                cfg = TruemperConfig("prism", paths=(p1, p2, q),
                                                     triangles=tri)
                                if add(cfg):
                                    return _ordered(found)
    return _ordered(found)


def _arc(cyc, i, j, away_from):
    """Vertices of the cycle from position i to position j, walking in the
    direction that does not pass through position ``away_from``."""
    L = len(cyc)
    fwd = (j - i) % L
    if (away_from - i) % L > fwd:
        return tuple(cyc[(i + t) % L] for t in range(fwd + 1))
    return tuple(cyc[(i - t) % L] for t in range(L - fwd + 1))


_ORDER = {k: i for i, k in enumerate(KINDS)}


def _ordered(found: dict) -> list[TruemperConfig]:
    return [found[k] for k in sorted(found, key=lambda k: (_ORDER[k[0]], repr(k)))]


def config_holes(g: Graph, cfg: TruemperConfig) -> list[tuple[int, ...]]:
    """Holes read off a configuration: the three pairwise unions of paths, or
    for a wheel the rim together with its sector holes."""
    out = []
    if cfg.kind == "wheel":
        out.append(canonical_cycle(cfg.rim))
        rim = cfg.rim
        L = len(rim)
        idx = [i for i, v in enumerate(rim) if g.adj[cfg.center] >> v & 1]
        for t in range(len(idx)):
            s, e = idx[t], idx[(t + 1) % len(idx)]
            arc = []
            k = s
            while True:
                arc.append(rim[k])
                if k == e:
                    break
                k = (k + 1) % L
            if len(arc) >= 3:
                out.append(canonical_cycle([cfg.center] + arc))
        return out
    p = cfg.paths
    for x in range(3):
        for y in range(x + 1, 3):
            P, Q = p[x], p[y]
            if cfg.kind == "theta":
                cyc = list(P) + list(reversed(Q))[1:-1]
            elif cfg.kind == "pyramid":
                cyc = list(P) + list(reversed(Q))[:-1]
            else:
                cyc = list(P) + list(reversed(Q))
            out.append(canonical_cycle(cyc))
    return out


@dataclass
class AuditReport:
    k: int
    ell: int
    parity: str
    configs: list[TruemperConfig] = field(default_factory=list)
    violations: list[tuple[TruemperConfig, str]] = field(default_factory=list)
    truncated: bool = False

    def lines(self) -> list[str]:
        out = [f"audit k={self.k} configs={len(self.configs)} violations={len(self.violations)}"
               + (" (capped)" if self.truncated else "")]
        out += [f"violation: {why}: {cfg.describe()}" for cfg, why in self.violations]
        return out


def audit_configs_for_class(g: Graph, k: int, budget: int | None = DEFAULT_BUDGET,
                            max_configs: int | None = None) -> AuditReport:
    holes = enumerate_holes(g)
    lengths = {h.length for h in holes}
    if lengths and lengths != {k}:
        raise PreconditionError("spectrum", f"hole lengths {sorted(lengths)} differ from {k}")
    parity = "odd" if k % 2 else "even"
    ell = (k - 1) // 2 if parity == "odd" else k // 2
    rep = AuditReport(k, ell, parity)
    rep.configs = find_configs(g, budget=budget, max_configs=max_configs, holes=holes)
    rep.truncated = max_configs is not None and len(rep.configs) >= max_configs
    for cfg in rep.configs:
        why = _audit_reason(cfg, parity, ell)
        if why:
            rep.violations.append((cfg, why))
    return rep


def _audit_reason(cfg: TruemperConfig, parity: str, ell: int) -> str | None:
    if cfg.kind == "wheel":
        return None if cfg.wheel_kind in ("twin", "universal") else "proper wheel"
    lens = cfg.lengths
    if parity == "odd":
        if cfg.kind == "pyramid" and lens == (ell, ell, ell):
            return None
        return f"{cfg.kind} with path lengths {lens} in an odd class"
    if cfg.kind == "theta" and lens == (ell, ell, ell):
        return None
    if cfg.kind == "prism" and lens == (ell - 1,) * 3:
        return None
    return f"{cfg.kind} with path lengths {lens} in an even class"
