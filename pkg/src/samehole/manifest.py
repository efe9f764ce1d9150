"""Manifests: ``[section]`` headers followed by ``key: value`` lines.

Every generated graph ships with one. ``verify_manifest`` rebuilds what the
manifest describes and checks it against the graph with the matching verifier.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import BlowupMapping, BlowupSpec, build_blowup, verify_blowup
from .classes import threshold_from_word
from .errors import ParseError, SameHoleError
from .formats import to_graph6
from .hypergraph import Hypergraph
from .rings import RingPartition, verify_ring
from .templates.core import TemplatePartition, template_violations
from .templates.even import EvenTemplateSpec, build_even_template
from .templates.odd import OddTemplateSpec, build_odd_template


@dataclass
class Manifest:
    sections: list[tuple[str, list[tuple[str, str]]]] = field(default_factory=list)

    def add(self, name: str, items) -> "Manifest":
        self.sections.append((name, [(k, str(v)) for k, v in items]))
        return self

    def section(self, name: str) -> dict[str, str]:
        for n, items in self.sections:
            if n == name:
                return dict(items)
        raise ParseError(f"manifest has no [{name}] section")

    def has(self, name: str) -> bool:
        return any(n == name for n, _ in self.sections)

    @property
    def kind(self) -> str:
        return self.section("manifest")["kind"]

    def to_text(self) -> str:
        lines = []
        for name, items in self.sections:
            lines.append(f"[{name}]")
            lines.extend(f"{k}: {v}" for k, v in items)
        return "\n".join(lines) + "\n"


def parse_manifest(text: str) -> Manifest:
    m = Manifest()
    cur = None
    for no, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        if raw.startswith("[") and raw.rstrip().endswith("]"):
            cur = (raw.strip()[1:-1], [])
            m.sections.append(cur)
            continue
        if cur is None or ": " not in raw:
            raise ParseError(f"manifest line {no}: expected 'key: value' inside a section")
        k, v = raw.split(": ", 1)
        cur[1].append((k.strip(), v))
    if not m.has("manifest"):
        raise ParseError("manifest lacks a [manifest] section")
    return m


def _ints(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"expected integers, got {s!r}") from None


def _join(xs, sep=" ") -> str:
    return sep.join(map(str, xs))


def _indexed(d: dict[str, str], prefix: str) -> list[str]:
    out = []
    i = 0
    while f"{prefix}.{i}" in d:
        out.append(d[f"{prefix}.{i}"])
        i += 1
    return out


# writers ------------------------------------------------------------------------

def header(kind: str, g, **params) -> list[tuple[str, str]]:
    items = [("kind", kind), ("n", g.n), ("graph6", to_graph6(g))]
    items += [(k, v) for k, v in params.items()]
    return items


def partition_items(p: TemplatePartition) -> list[tuple[str, str]]:
    items = [("parity", p.parity), ("ell", p.ell), ("n_clique", p.n_clique),
             ("A", _join(p.A)), ("A'", _join(p.Ap)), ("B", _join(p.B)), ("B'", _join(p.Bp))]
    items += [(f"path.{i}", _join(q)) for i, q in enumerate(p.paths)]
    items += [(f"h.{x}", _join(sorted(p.hmap[x]))) for x in p.B]
    items += [(f"h'.{x}", _join(sorted(p.hmap_p[x]))) for x in p.Bp]
    items += [("w", p.w), ("w'", p.wp)]
    return items


def read_partition(d: dict[str, str]) -> TemplatePartition:
    try:
        paths = tuple(_ints(s) for s in _indexed(d, "path"))
        B, Bp = _ints(d["B"]), _ints(d["B'"])
        return TemplatePartition(
            d["parity"], int(d["ell"]), _ints(d["A"]), _ints(d["A'"]), B, Bp,
            frozenset(v for q in paths for v in q[1:-1]), paths,
            {x: frozenset(_ints(d[f"h.{x}"])) for x in B},
            {x: frozenset(_ints(d[f"h'.{x}"])) for x in Bp},
            int(d["w"]), int(d["w'"]), int(d["n_clique"]))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"malformed partition section: {exc}") from None


def odd_spec_items(spec: OddTemplateSpec, word: str) -> list[tuple[str, str]]:
    items = [("ell", spec.ell), ("k", spec.k), ("word", word)]
    items += [(f"hyperedge.{i}", _join(sorted(e))) for i, e in enumerate(spec.h.edges)]
    return items


def even_spec_items(spec: EvenTemplateSpec) -> list[tuple[str, str]]:
    items = [("ell", spec.ell), ("k", spec.k), ("s", spec.s)]
    items += [(f"cross.{i}", "".join(map(str, row))) for i, row in enumerate(spec.cross)]
    items += [(f"h.{i}", _join(sorted(e))) for i, e in enumerate(spec.h)]
    items += [(f"h'.{i}", _join(sorted(e))) for i, e in enumerate(spec.hp)]
    return items


def read_template_spec(m: Manifest):
    if m.has("odd-template"):
        d = m.section("odd-template")
        try:
            ell, k, word = int(d["ell"]), int(d["k"]), d["word"].strip()
        except (KeyError, ValueError):
            raise ParseError("odd-template section needs ell, k and word") from None
        if len(word) != k or set(word) - {"C", "A"}:
            raise ParseError(f"word {word!r} must have {k} C/A tokens")
        edges = [_ints(s) for s in _indexed(d, "hyperedge")]
        return OddTemplateSpec(ell, threshold_from_word(word), Hypergraph.make(k, edges))
    if m.has("even-template"):
        d = m.section("even-template")
        try:
            ell, k, s = int(d["ell"]), int(d["k"]), int(d["s"])
            cross = [[int(c) for c in row.strip()] for row in _indexed(d, "cross")]
        except (KeyError, ValueError):
            raise ParseError("even-template section needs ell, k, s and cross rows") from None
        h = [_ints(x) for x in _indexed(d, "h")]
        hp = [_ints(x) for x in _indexed(d, "h'")]
        return EvenTemplateSpec.make(ell, k, s, cross, h, hp)
    raise ParseError("manifest has no template section")


def build_template(spec):
    if isinstance(spec, OddTemplateSpec):
        return build_odd_template(spec)
    return build_even_template(spec)


def blowup_items(bs: BlowupSpec, mp: BlowupMapping) -> list[tuple[str, str]]:
    items = [("sizes", _join(bs.sizes, ","))]
    items += [(f"stair.{u}-{v}", _join(t, ",")) for (u, v), t in sorted(bs.stairs.items())]
    items += [(f"clique.{u}", _join(c)) for u, c in enumerate(mp.cliques)]
    return items


def read_blowup(d: dict[str, str]) -> tuple[BlowupSpec, list[tuple[int, ...]]]:
    try:
        sizes = _ints(d["sizes"])
    except KeyError:
        raise ParseError("blowup section needs a sizes line") from None
    stairs = {}
    for key, val in d.items():
        if key.startswith("stair."):
            u, v = key[len("stair."):].split("-")
            stairs[(int(u), int(v))] = _ints(val)
    cliques = [_ints(d[f"clique.{u}"]) for u in range(len(sizes)) if f"clique.{u}" in d]
    return BlowupSpec(sizes, stairs), cliques


# verification -------------------------------------------------------------------

def verify_manifest(g, m: Manifest) -> list[str]:
    """Violations found when checking the manifest against the graph g."""
    try:
        head = m.section("manifest")
        if head.get("graph6") and head["graph6"].strip() != to_graph6(g):
            return ["manifest: recorded graph6 differs from the graph"]
        kind = head["kind"]
        if kind == "threshold":
            d = m.section("threshold")
            h = threshold_from_word(d["word"].strip())
            return [] if to_graph6(h) == to_graph6(g) else ["threshold: word does not rebuild the graph"]
        if kind == "ring":
            d = m.section("ring")
            cl = tuple(_ints(s) for s in _indexed(d, "clique"))
            p = RingPartition(int(d["k"]), cl)
            out = verify_ring(g, p)
            if "sizes" in d and tuple(len(c) for c in cl) != _ints(d["sizes"]):
                out.append("ring: clique sizes differ from the recorded sizes")
            return out
        if kind in ("odd-template", "even-template"):
            spec = read_template_spec(m)
            h, _ = build_template(spec)
            p = read_partition(m.section("partition"))
            out = [] if to_graph6(h) == to_graph6(g) else ["template: spec does not rebuild the graph"]
            return out + template_violations(g, p)
        if kind == "blowup":
            spec = read_template_spec(m)
            tpl, _ = build_template(spec)
            p = read_partition(m.section("partition"))
            out = template_violations(tpl, p)
            bs, cliques = read_blowup(m.section("blowup"))
            gs, _ = build_blowup(tpl, p, bs)
            if to_graph6(gs) != to_graph6(g):
                out.append("blowup: spec does not rebuild the graph")
            if len(cliques) != tpl.n:
                return out + ["blowup: mapping lacks cliques"]
            mp = BlowupMapping.from_cliques(g.n, cliques, p)
            return out + verify_blowup(g, tpl, p, mp, require_proper=True)
        if kind == "composite":
            from .decompose import tree_from_text, tree_violations
            d = m.section("tree")
            text = "\n".join(d[f"line.{i}"] for i in range(len(d)))
            return tree_violations(g, tree_from_text(text))
    except SameHoleError as exc:
        return [f"manifest: {exc}"]
    except (KeyError, ValueError) as exc:
        return [f"manifest: malformed ({exc})"]
    return [f"manifest: unknown kind {kind!r}"]
