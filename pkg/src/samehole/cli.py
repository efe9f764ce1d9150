"""Command line: generate, check, classify, decompose and verify.

Exit codes: 0 success or member, 1 semantic rejection, 2 stuck or budget
exhausted, 3 parse error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import generate as gen
from .blowup import build_blowup
from .classes import classify, threshold_from_word
from .decompose import check_membership, decompose, tree_from_text, tree_to_text, tree_violations
from .errors import BudgetExceeded, ParseError, PreconditionError, SameHoleError, SpecError, StuckError
from .formats import read_graph, render_graph, to_dot, to_graph6
from .holes import DEFAULT_BUDGET, hole_spectrum
from .hypergraph import Hypergraph
from .manifest import (Manifest, blowup_items, build_template, even_spec_items, header, odd_spec_items,
                       parse_manifest, partition_items, read_template_spec,
                       verify_manifest)
from .rings import build_ring
from .templates.core import EVEN, ODD
from .templates.even import even_to_proper
from .templates.odd import OddTemplateSpec, build_odd_template, to_proper_partition

EXIT_OK, EXIT_REJECT, EXIT_STUCK, EXIT_PARSE = 0, 1, 2, 3


def _ints(s: str | None) -> list[int] | None:
    if s is None:
        return None
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {s!r}") from None


def _emit(args, g, m: Manifest | None) -> None:
    fmt = args.format or "graph6"
    if args.out is None:
        sys.stdout.write(render_graph(g, fmt))
        if m is not None:
            sys.stdout.write(m.to_text())
        return
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    ext = {"graph6": ".g6", "edgelist": ".txt", "dot": ".dot"}[fmt]
    Path(str(out) + ext).write_text(render_graph(g, fmt))
    if m is not None:
        Path(str(out) + ".manifest").write_text(m.to_text())
    if args.dot and fmt != "dot":
        Path(str(out) + ".dot").write_text(to_dot(g))


def _odd_template_from_args(args, rng):
    if args.ell is None or args.k is None:
        raise PreconditionError("arguments", "odd-template needs --ell and --k")
    if args.word or args.edgeless_j or args.full_hyperedge:
        word = args.word or ("A" * args.k if args.edgeless_j else gen.random_word(rng, args.k))
        if len(word) != args.k:
            raise PreconditionError("arguments", "--word must have --k letters")
        if args.full_hyperedge:
            edges = [tuple(range(args.k))]
            spec = OddTemplateSpec(args.ell, threshold_from_word(word), Hypergraph.make(args.k, edges))
        else:
            spec, _ = gen.random_odd_spec(rng, args.ell, args.k, word=word)
        return spec, word
    return gen.random_odd_spec(rng, args.ell, args.k)


def _template_manifest(kind, g, p, spec, word, args) -> Manifest:
    m = Manifest().add("manifest", header(kind, g, seed=args.seed))
    if kind == "odd-template" or isinstance(spec, OddTemplateSpec):
        m.add("odd-template", odd_spec_items(spec, word))
    else:
        m.add("even-template", even_spec_items(spec))
    return m.add("partition", partition_items(p))


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    kind = args.kind
    if kind == "threshold":
        if args.k is None:
            raise PreconditionError("arguments", "threshold needs --k")
        word = args.word or gen.random_word(rng, args.k)
        g = threshold_from_word(word)
        _emit(args, g, Manifest().add("manifest", header(kind, g, seed=args.seed)).add("threshold", [("word", word)]))
        return EXIT_OK
    if kind == "ring":
        if args.k is None:
            raise PreconditionError("arguments", "ring needs --k")
        sizes = _ints(args.sizes)
        if sizes is None:
            sizes, stairs = gen.random_ring_spec(rng, args.k, args.max_n or 2 * args.k)
        else:
            if len(sizes) != args.k:
                raise SpecError("sizes", f"--sizes needs {args.k} entries")
            stairs = []
            for i in range(args.k):
                nxt = sizes[(i + 1) % args.k]
                t = sorted((rng.randint(1, nxt) for _ in range(sizes[i])), reverse=True)
                t[0] = nxt
                stairs.append(t)
        g, part = build_ring(args.k, sizes, stairs)
        items = [("k", args.k), ("sizes", ",".join(map(str, sizes)))]
        items += [(f"staircase.{i}", ",".join(map(str, t))) for i, t in enumerate(stairs)]
        items += [(f"clique.{i}", " ".join(map(str, c))) for i, c in enumerate(part.cliques)]
        _emit(args, g, Manifest().add("manifest", header(kind, g, seed=args.seed)).add("ring", items))
        return EXIT_OK
    if kind == "odd-template":
        spec, word = _odd_template_from_args(args, rng)
        g, p = build_odd_template(spec)
        _emit(args, g, _template_manifest(kind, g, p, spec, word, args))
        return EXIT_OK
    if kind == "even-template":
        if args.ell is None or args.k is None or args.s is None:
            raise PreconditionError("arguments", "even-template needs --ell, --k and --s")
        spec = gen.random_even_spec(rng, args.ell, args.k, args.s)
        g, p = build_template(spec)
        _emit(args, g, _template_manifest(kind, g, p, spec, None, args))
        return EXIT_OK
    if kind == "blowup":
        return _gen_blowup(args, rng)
    if kind == "composite":
        parity = args.parity or ODD
        if args.ell is None:
            raise PreconditionError("arguments", "composite needs --ell")
        g = gen.random_composite(rng, parity, args.ell, args.max_n or 36)
        k = 2 * args.ell + 1 if parity == ODD else 2 * args.ell
        tree = decompose(g, k)
        lines = tree_to_text(tree).splitlines()
        m = Manifest().add("manifest", header(kind, g, seed=args.seed, parity=parity, ell=args.ell, k=k))
        m.add("tree", [(f"line.{i}", ln) for i, ln in enumerate(lines)])
        _emit(args, g, m)
        return EXIT_OK
    raise PreconditionError("arguments", f"unknown kind {kind}")


def _gen_blowup(args, rng) -> int:
    if args.from_manifest:
        src = parse_manifest(Path(args.from_manifest).read_text())
        spec = read_template_spec(src)
        word = src.section("odd-template").get("word") if src.has("odd-template") else None
    else:
        parity = args.parity or ODD
        if args.ell is None:
            raise PreconditionError("arguments", "blowup needs --from or --ell")
        if parity == ODD:
            spec, word = gen.random_odd_spec(rng, args.ell, args.k or 3)
        else:
            k = args.k if args.k is not None else 1
            s = args.s if args.s is not None else 2
            spec, word = gen.random_even_spec(rng, args.ell, k, s), None
    tpl, p = build_template(spec)
    p = to_proper_partition(tpl, p) if p.parity == ODD else even_to_proper(tpl, p)
    sizes = _ints(args.sizes)
    if sizes is None:
        bs = gen.random_blowup_spec(rng, tpl, p, args.max_n or 40)
    else:
        if len(sizes) != tpl.n:
            raise SpecError("sizes", f"--sizes needs {tpl.n} entries, one per template vertex")
        bs = gen.random_blowup_spec(rng, tpl, p, sum(sizes), sizes=sizes)
    g, mp = build_blowup(tpl, p, bs)
    m = Manifest().add("manifest", header("blowup", g, seed=args.seed))
    if p.parity == ODD:
        m.add("odd-template", odd_spec_items(spec, word))
    else:
        m.add("even-template", even_spec_items(spec))
    m.add("partition", partition_items(p)).add("blowup", blowup_items(bs, mp))
    _emit(args, g, m)
    return EXIT_OK


def _load(args):
    return read_graph(args.input, args.format)


def cmd_check(args) -> int:
    g = _load(args)
    spec = hole_spectrum(g, budget=args.budget)
    member = spec.is_member(args.k)
    print(f"n: {g.n}")
    print(f"spectrum: {spec.describe()}")
    if spec.kind == "chordal":
        print("verdict: chordal (vacuous member)")
    else:
        print(f"verdict: {'member' if member else 'not a member'} of C_{args.k}")
    for h in spec.witnesses:
        print(f"witness hole (length {h.length}): {' '.join(map(str, h.cycle))}")
    return EXIT_OK if member else EXIT_REJECT


def cmd_decompose(args) -> int:
    g = _load(args)
    if not check_membership(g, args.k, budget=args.budget):
        print(f"not a member of C_{args.k}", file=sys.stderr)
        return EXIT_REJECT
    try:
        tree = decompose(g, args.k)
    except StuckError as exc:
        print(f"stuck: {exc}", file=sys.stderr)
        if exc.residual is not None:
            ids, sub = exc.residual
            print(f"residual vertices: {' '.join(map(str, ids))}", file=sys.stderr)
            print(f"residual graph6: {to_graph6(sub)}", file=sys.stderr)
        return EXIT_STUCK
    text = tree_to_text(tree)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_classify(args) -> int:
    from .truemper import find_configs
    g = _load(args)
    flags = classify(g)
    for name in ("chordal", "cograph", "split", "threshold", "quasi-threshold", "half-graph"):
        print(f"{name}: {str(flags[name]).lower()}")
    try:
        cfgs = find_configs(g, budget=args.budget)
        counts: dict[str, int] = {}
        for c in cfgs:
            key = c.kind if c.kind != "wheel" else f"{c.wheel_kind} wheel"
            counts[key] = counts.get(key, 0) + 1
        census = ", ".join(f"{k}={v}" for k, v in sorted(counts.items())) or "none"
        print(f"truemper: {census}")
    except BudgetExceeded:
        print("truemper: budget exhausted")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args)
    text = Path(args.certificate).read_text()
    if text.startswith("tree "):
        out = tree_violations(g, tree_from_text(text))
    else:
        out = verify_manifest(g, parse_manifest(text))
    for line in out:
        print(line)
    print("ok" if not out else f"{len(out)} violation(s)")
    return EXIT_OK if not out else EXIT_REJECT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="samehole", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["graph6", "edgelist", "dot"])
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--out")

    g = sub.add_parser("gen", help="generate an instance and its manifest")
    g.add_argument("kind", choices=["threshold", "ring", "odd-template", "even-template", "blowup", "composite"])
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--s", type=int)
    g.add_argument("--ell", type=int)
    g.add_argument("--parity", choices=[ODD, EVEN])
    g.add_argument("--sizes")
    g.add_argument("--word")
    g.add_argument("--edgeless-j", action="store_true")
    g.add_argument("--full-hyperedge", action="store_true")
    g.add_argument("--from", dest="from_manifest")
    g.add_argument("--max-n", type=int)
    g.add_argument("--dot", action="store_true")
    common(g)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="hole spectrum and membership in C_k")
    c.add_argument("input")
    c.add_argument("--k", type=int, required=True)
    common(c)
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("decompose", help="decomposition tree of a member of C_k")
    d.add_argument("input")
    d.add_argument("--k", type=int, required=True)
    common(d)
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("classify", help="class memberships and Truemper census")
    s.add_argument("input")
    common(s)
    s.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="check a manifest or tree against a graph")
    v.add_argument("input")
    v.add_argument("certificate")
    common(v)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BudgetExceeded, StuckError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_STUCK
    except (PreconditionError, SpecError, SameHoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REJECT


if __name__ == "__main__":
    sys.exit(main())
