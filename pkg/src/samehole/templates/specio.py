"""Text format for template specs.

Odd::

    odd ELL K
    WORD                # threshold graph J as a C/A elimination word
    N E                 # hypergraph, one line per hyperedge
    SIZE v1 v2 ...

Even::

    even ELL K S
    row of S bits       # K rows, side choices
    N E                 # hypergraph on the A side
    ...
    N E                 # hypergraph on the A' side
    ...
"""

from __future__ import annotations

from ..classes import threshold_from_word
from ..errors import ParseError
from ..hypergraph import Hypergraph, from_lines, to_text
from .even import EvenTemplateSpec
from .odd import OddTemplateSpec


def odd_spec_to_text(spec: OddTemplateSpec, word: str | None = None) -> str:
    if word is None:
        word = _word_for(spec)
    return f"odd {spec.ell} {spec.k}\n{word}\n" + to_text(spec.h)


def _word_for(spec: OddTemplateSpec) -> str:
    """Elimination word reproducing J exactly on 0..k-1, if one exists."""
    j = spec.j
    word = []
    for i in range(j.n):
        below = (1 << i) - 1
        nb = j.adj[i] & below
        if nb == below and i > 0:
            word.append("C")
        elif nb == 0:
            word.append("A")
        else:
            raise ValueError("J is not in elimination-word order; store it with an explicit word")
    return "".join(word)


def even_spec_to_text(spec: EvenTemplateSpec) -> str:
    lines = [f"even {spec.ell} {spec.k} {spec.s}"]
    lines += ["".join(str(b) for b in row) for row in spec.cross]
    out = "\n".join(lines) + "\n"
    out += to_text(Hypergraph.make(spec.k + spec.s, spec.h))
    out += to_text(Hypergraph.make(spec.k + spec.s, spec.hp))
    return out


def parse_spec(text: str):
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty template spec")
    head = lines[0].split()
    try:
        if head[0] == "odd" and len(head) == 3:
            ell, k = int(head[1]), int(head[2])
            word = lines[1]
            if len(word) != k or set(word) - {"C", "A"}:
                raise ParseError(f"elimination word {word!r} must have {k} C/A tokens")
            h = from_lines(lines[2:])
            return OddTemplateSpec(ell, threshold_from_word(word), h)
        if head[0] == "even" and len(head) == 4:
            ell, k, s = int(head[1]), int(head[2]), int(head[3])
            rows = lines[1:1 + k]
            if len(rows) != k or any(len(r) != s or set(r) - {"0", "1"} for r in rows):
                raise ParseError("side-choice matrix must have k rows of s bits")
            rest = lines[1 + k:]
            e1 = int(rest[0].split()[1])
            h = from_lines(rest[:1 + e1])
            hp = from_lines(rest[1 + e1:])
            cross = [[int(c) for c in r] for r in rows]
            return EvenTemplateSpec.make(ell, k, s, cross, h.edges, hp.edges)
    except (ValueError, IndexError) as exc:
        raise ParseError(f"malformed template spec: {exc}") from None
    raise ParseError(f"unknown template spec header {lines[0]!r}")
