"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (shown in the terminal summary) before
asserting, so a failing criterion still reports its numbers.
"""

import os
import random
import subprocess
import sys
import time
from collections import Counter
from itertools import combinations
from pathlib import Path

import networkx as nx
import pytest

import oracles
from conftest import ACCEPTANCE_LINES
from samehole.blowup import BlowupMapping, verify_blowup
from samehole.classes import (recognize_half_graph, recognize_quasi_threshold, recognize_split,
                              recognize_threshold, replay_elimination)
from samehole.decompose import decompose, tree_from_text, tree_to_text, tree_violations
from samehole.errors import SameHoleError
from samehole.formats import to_graph6
from samehole.generate import (random_composite, random_even_blowup, random_even_spec, random_odd_blowup,
                               random_odd_spec, random_ring)
from samehole.graph import Graph
from samehole.hypergraph import line_graph
from samehole.rings import RingPartition, recognize_ring, verify_ring
from samehole.templates import (Labeling, build_even_template, build_odd_template, derived_hypergraph,
                                has_hyper_cycle_gt2, hole_shape_ok, pretemplate_to_template,
                                validate_even_pretemplate, validate_odd_pretemplate)
from samehole.truemper import audit_configs_for_class

SUITE_LIMIT = 300.0


def report(num, title, ok, detail, started):
    took = time.perf_counter() - started
    within = took <= SUITE_LIMIT
    line = f"[{'PASS' if ok and within else 'FAIL'}] criterion {num:2d} {title}: {detail} ({took:.1f}s)"
    ACCEPTANCE_LINES[num] = line
    print(line)
    assert ok, line
    assert within, line


# instance streams shared by several criteria --------------------------------------

def odd_blowups(count, seed0=1000):
    for i in range(count):
        rng = random.Random(seed0 + i)
        ell = 3 + i % 3
        k = 3 + (i // 3) % 3
        yield ell, random_odd_blowup(rng, ell, k, max_total=40)


def even_blowups(count, seed0=2000):
    for i in range(count):
        rng = random.Random(seed0 + i)
        ell = 4 + i % 2
        total = 3 + (i // 2) % 2
        k = rng.randint(0, total)
        yield ell, random_even_blowup(rng, ell, k, total - k, max_total=40)


def rings(count, seed0=3000):
    for i in range(count):
        k = 7 + i % 4
        yield k, random_ring(random.Random(seed0 + i), k, max_total=40)


COMPOSITE_KINDS = [("odd", 3, 7), ("odd", 4, 9), ("even", 4, 8)]


def composites(count, parity, ell, seed0=4000):
    for i in range(count):
        yield random_composite(random.Random(seed0 + 1000 * ell + (0 if parity == "odd" else 500) + i),
                               parity, ell, max_n=36)


# 1, 2, 3: soundness of generated instances ----------------------------------------

def test_criterion_01_odd_blowup_soundness():
    t0 = time.perf_counter()
    bad, biggest = [], 0
    for i, (ell, inst) in enumerate(odd_blowups(500)):
        g = inst.graph
        biggest = max(biggest, g.n)
        lengths = oracles.hole_lengths(g)
        d = inst.data
        if lengths - {2 * ell + 1} or g.n > 40 or verify_blowup(g, d["template"], d["partition"], d["mapping"]):
            bad.append(i)
    report(1, "odd blowups have only (2l+1)-holes", not bad,
           f"500 instances, max n={biggest}, failures={len(bad)}", t0)


def test_criterion_02_even_blowup_soundness():
    t0 = time.perf_counter()
    bad, biggest = [], 0
    for i, (ell, inst) in enumerate(even_blowups(300)):
        g = inst.graph
        biggest = max(biggest, g.n)
        d = inst.data
        if oracles.hole_lengths(g) - {2 * ell} or g.n > 40 \
                or verify_blowup(g, d["template"], d["partition"], d["mapping"]):
            bad.append(i)
    report(2, "even blowups have only 2l-holes", not bad,
           f"300 instances, max n={biggest}, failures={len(bad)}", t0)


def test_criterion_03_ring_soundness():
    t0 = time.perf_counter()
    bad_holes, bad_round = [], []
    for i, (k, inst) in enumerate(rings(300)):
        g = inst.graph
        if oracles.hole_lengths(g) != {k} or g.n > 40:
            bad_holes.append(i)
        p = recognize_ring(g)
        if p is None or p.k != k or verify_ring(g, p) or not oracles.ring_ok(g, p.cliques):
            bad_round.append(i)
    report(3, "rings have only k-holes and round-trip", not bad_holes and not bad_round,
           f"300 instances, hole failures={len(bad_holes)}, round-trip failures={len(bad_round)}", t0)


# 4: decomposition totality -----------------------------------------------------------

def test_criterion_04_decomposition_totality():
    t0 = time.perf_counter()
    stuck, broken, total, largest = 0, 0, 0, 0
    for parity, ell, k in COMPOSITE_KINDS:
        for g in composites(200, parity, ell):
            total += 1
            largest = max(largest, g.n)
            assert oracles.hole_lengths(g) <= {k}
            try:
                t = decompose(g, k)
            except SameHoleError:
                stuck += 1
                continue
            text = tree_to_text(t)
            back = tree_from_text(text)
            if tree_violations(g, t) or tree_violations(g, back) or tree_to_text(back) != text:
                broken += 1
    report(4, "every composite decomposes into a verifying tree", stuck == 0 and broken == 0,
           f"{total} composites (3 x 200), max n={largest}, stuck={stuck}, failing trees={broken}", t0)


# 5: characterizations on the census --------------------------------------------------

def _to_graph(h):
    return Graph.from_edges(h.number_of_nodes(), list(h.edges()))


def test_criterion_05_characterizations():
    t0 = time.perf_counter()
    atlas = nx.graph_atlas_g()[1:]
    mismatch = Counter()
    for h in atlas:
        g = _to_graph(h)
        has = {p: oracles.contains_induced(h, q) for p, q in
               (("P4", oracles.P4), ("C4", oracles.C4), ("C5", oracles.C5),
                ("2K2", oracles.TWO_K2), ("3K1", oracles.THREE_K1))}

        cert = recognize_threshold(g)
        if (cert is not None) != (not (has["P4"] or has["C4"] or has["2K2"])):
            mismatch["threshold"] += 1
        elif cert is not None and to_graph6(replay_elimination(g.n, cert.elimination)) != to_graph6(g):
            mismatch["threshold certificate"] += 1

        hg = recognize_quasi_threshold(g)
        if (hg is not None) != (not (has["P4"] or has["C4"])):
            mismatch["quasi-threshold"] += 1
        elif hg is not None and not (oracles.laminar(hg.edges)
                                     and nx.is_isomorphic(oracles.to_nx(line_graph(hg)), h)):
            mismatch["quasi-threshold reconstruction"] += 1

        half = recognize_half_graph(g)
        if (half is not None) != (not (has["3K1"] or has["C4"] or has["C5"])):
            mismatch["half graph"] += 1
        elif half is not None and not _half_graph_ok(h, half):
            mismatch["half graph certificate"] += 1

        sp = recognize_split(g)
        if (sp is not None) != (not (has["C4"] or has["C5"] or has["2K2"])):
            mismatch["split"] += 1
        elif sp is not None and not _split_ok(h, sp):
            mismatch["split certificate"] += 1
    report(5, "class recognizers match forbidden-subgraph characterizations", not mismatch,
           f"{len(atlas)} graphs with 1..7 vertices, mismatches={dict(mismatch) or 0}", t0)


def _half_graph_ok(h, cert):
    k1, k2 = set(cert.clique_k), set(cert.clique_k2)
    if k1 & k2 or k1 | k2 != set(h.nodes):
        return False
    if any(not h.has_edge(a, b) for side in (k1, k2) for a, b in combinations(side, 2)):
        return False
    cross = [set(h[v]) & k2 for v in k1]
    return all(a <= b or b <= a for a, b in combinations(cross, 2))


def _split_ok(h, sp):
    k, s = map(set, sp)
    if k & s or k | s != set(h.nodes):
        return False
    return (all(h.has_edge(a, b) for a, b in combinations(k, 2))
            and not any(h.has_edge(a, b) for a, b in combinations(s, 2)))


# 6: Truemper audit -------------------------------------------------------------------

def test_criterion_06_truemper_audit():
    t0 = time.perf_counter()
    # every instance of suites 1, 3 and 4, plus some even blowups from suite 2
    def pool():
        yield from ((2 * ell + 1, inst.graph) for ell, inst in odd_blowups(500))
        yield from ((k, inst.graph) for k, inst in rings(300))
        for parity, ell, k in COMPOSITE_KINDS:
            yield from ((k, g) for g in composites(200, parity, ell))
        yield from ((2 * ell, inst.graph) for ell, inst in even_blowups(60))

    count, violations, configs, capped, slowest = 0, 0, 0, 0, 0.0
    for k, g in pool():
        count += 1
        s = time.perf_counter()
        rep = audit_configs_for_class(g, k)
        slowest = max(slowest, time.perf_counter() - s)
        violations += len(rep.violations)
        configs += len(rep.configs)
        capped += rep.truncated
    report(6, "every Truemper configuration is of an allowed kind", violations == 0 and capped == 0,
           f"{count} instances, {configs} configurations, violations={violations}, "
           f"capped={capped}, slowest={slowest:.2f}s", t0)


# 7: pretemplate to template -------------------------------------------------------------

def _odd_layout_labeling(spec, g):
    """Labelling read off the construction layout, independent of the returned partition."""
    k, ell = spec.k, spec.ell
    A = frozenset(range(k))
    Ap = frozenset(range(k, 2 * k))
    first_b = 2 * k + k * (ell - 2)
    I = frozenset(range(2 * k, first_b))
    rest = range(first_b, g.n)
    B = frozenset(v for v in rest if g.labels[v].startswith("B:"))
    Bp = frozenset(v for v in rest if g.labels[v].startswith("B':"))
    return Labeling(A, B, Ap, Bp, I)


def test_criterion_07_pretemplate_recovery():
    t0 = time.perf_counter()
    odd_bad, even_bad, cross_checked = 0, 0, 0
    for i in range(200):
        rng = random.Random(5000 + i)
        ell, k = 3 + i % 3, 3 + (i // 3) % 4
        spec, _ = random_odd_spec(rng, ell, k)
        g, _ = build_odd_template(spec)
        lab = _odd_layout_labeling(spec, g)
        if validate_odd_pretemplate(g, lab, ell):
            odd_bad += 1
            continue
        q = pretemplate_to_template(g, lab, ell)
        got = Counter(frozenset(v for v in h) for h in q.hmap.values())
        got += Counter(frozenset(v - k for v in h) for h in q.hmap_p.values())
        if got != Counter(frozenset(e) for e in spec.h.edges):
            odd_bad += 1
    for i in range(200):
        rng = random.Random(6000 + i)
        ell = 4 + i % 3
        total = 3 + (i // 3) % 2
        kk = rng.randint(0, total)
        spec = random_even_spec(rng, ell, kk, total - kk)
        g, p = build_even_template(spec)
        if validate_even_pretemplate(g, p.labeling(), ell):
            even_bad += 1
            continue
        q = pretemplate_to_template(g, p.labeling(), ell, "even")
        hg = derived_hypergraph(g, q)
        if has_hyper_cycle_gt2(hg) is not None:
            even_bad += 1
        if len(hg.edges) <= 7:
            cross_checked += 1
            if oracles.hyper_cycle_lengths(hg.edges, hg.sides) - {2}:
                even_bad += 1
    report(7, "pretemplates recover their hypergraphs", odd_bad == 0 and even_bad == 0,
           f"odd 200 (failures={odd_bad}), even 200 (failures={even_bad}, "
           f"{cross_checked} checked by enumeration)", t0)


# 8: hole shapes ------------------------------------------------------------------------

def _odd_shape(p, hole):
    vs = set(hole)
    outside = set(p.A) | set(p.Ap) | set(p.B) | set(p.Bp)
    paths = [set(q) for q in p.paths]
    return any(vs == paths[i] | paths[j] | {x}
               for i, j in combinations(range(len(paths)), 2) for x in outside - paths[i] - paths[j])


def _even_shape(p, hole, ell):
    vs = set(hole)
    if len(vs) != 2 * ell:
        return False
    k_paths = [set(q) for q in p.paths if len(q) == ell]
    s_paths = [set(q) for q in p.paths if len(q) == ell - 1]
    left = (set(p.A_K) | set(p.B))
    right = (set(p.Ap_K) | set(p.Bp))
    for a, b in combinations(k_paths, 2):
        if vs == a | b:
            return True
    for a in k_paths:
        for b in s_paths:
            rest = vs - a - b
            if len(rest) == 1 and rest <= (left | right) and a | b <= vs:
                return True
    for a, b in combinations(s_paths, 2):
        rest = vs - a - b
        if a | b <= vs and len(rest) == 2 and len(rest & left) == 1 and len(rest & right) == 1:
            return True
    return False


def test_criterion_08_hole_shapes():
    t0 = time.perf_counter()
    odd_holes = even_holes = bad = 0
    for i in range(150):
        rng = random.Random(7000 + i)
        ell, k = 3 + i % 3, 3 + (i // 3) % 4
        spec, _ = random_odd_spec(rng, ell, k)
        g, p = build_odd_template(spec)
        for c in oracles.nx_holes(g):
            odd_holes += 1
            if len(c) != 2 * ell + 1 or not _odd_shape(p, c) or not hole_shape_ok(p, c):
                bad += 1
    for i in range(150):
        rng = random.Random(8000 + i)
        ell = 4 + i % 3
        total = 3 + (i // 3) % 2
        kk = rng.randint(0, total)
        g, p = build_even_template(random_even_spec(rng, ell, kk, total - kk))
        for c in oracles.nx_holes(g):
            even_holes += 1
            if not _even_shape(p, c, ell) or not hole_shape_ok(p, c):
                bad += 1
    report(8, "template holes have the expected shapes", bad == 0,
           f"{odd_holes} odd holes in 150 templates, {even_holes} even holes in 150 templates, bad={bad}", t0)


# 9: mutation sensitivity -----------------------------------------------------------------

def _flip(g, rng):
    a, b = rng.sample(range(g.n), 2)
    e = (min(a, b), max(a, b))
    return Graph.from_edges(g.n, sorted(set(g.edges()) ^ {e}))


def _move(cliques, rng):
    cl = [list(c) for c in cliques]
    src = rng.choice([i for i, c in enumerate(cl) if c])
    dst = rng.choice([i for i in range(len(cl)) if i != src])
    v = cl[src].pop(rng.randrange(len(cl[src])))
    cl[dst].insert(rng.randint(0, len(cl[dst])), v)
    return tuple(tuple(c) for c in cl)


def test_criterion_09_mutation_sensitivity():
    t0 = time.perf_counter()
    rng = random.Random(9000)
    outcomes = []  # (kind, flagged, truly_valid)
    for i in range(35):
        inst = random_ring(rng, 7 + i % 4, max_total=16)
        g, p = inst.graph, inst.data["partition"]
        if i % 2:
            h, cl = _flip(g, rng), p.cliques
        else:
            h, cl = g, _move(p.cliques, rng)
        flagged = bool(verify_ring(h, RingPartition(p.k, cl)))
        outcomes.append(("ring", flagged, oracles.ring_ok(h, cl)))
    for i in range(45):
        ell, inst = next(odd_blowups(1, 9100 + i)) if i % 3 else next(even_blowups(1, 9200 + i))
        d = inst.data
        g, gs, p, m = d["template"], inst.graph, d["partition"], d["mapping"]
        if i % 2:
            h, cl = _flip(gs, rng), m.cliques
        else:
            h, cl = gs, _move(m.cliques, rng)
        valid = oracles.blowup_ok(h, g, p, cl)
        if any(not c for c in cl):
            flagged = True
        else:
            flagged = bool(verify_blowup(h, g, p, BlowupMapping.from_cliques(h.n, cl, p)))
        outcomes.append(("blowup", flagged, valid))
    for i in range(20):
        g = random_composite(random.Random(9300 + i), "odd", 3, max_n=30)
        t = decompose(g, 7)
        h = _flip(g, rng)
        outcomes.append(("tree", bool(tree_violations(h, t)), False))
    flagged = sum(f for _, f, _ in outcomes)
    missed_invalid = [(kind, i) for i, (kind, f, v) in enumerate(outcomes) if not f and not v]
    flagged_valid = [(kind, i) for i, (kind, f, v) in enumerate(outcomes) if f and v]
    invalid = sum(1 for _, _, v in outcomes if not v)
    rate_invalid = (invalid - len(missed_invalid)) / invalid
    ok = not missed_invalid and not flagged_valid and rate_invalid >= 0.99
    report(9, "verifiers flag mutated certificates", ok,
           f"{len(outcomes)} mutants, flagged {flagged}; {len(outcomes) - invalid} unflagged mutants are "
           f"still valid by the oracle; detection among invalid {rate_invalid:.0%}, "
           f"valid-but-flagged={len(flagged_valid)}", t0)


# 10: determinism ----------------------------------------------------------------------------

def _generated_bytes(seed):
    out = []
    for ell, inst in odd_blowups(5, seed):
        out.append(to_graph6(inst.graph))
    for ell, inst in even_blowups(5, seed):
        out.append(to_graph6(inst.graph))
    for k, inst in rings(5, seed):
        out.append(to_graph6(inst.graph))
    for parity, ell, k in COMPOSITE_KINDS:
        for g in composites(3, parity, ell, seed):
            out.append(to_graph6(g))
            out.append(tree_to_text(decompose(g, k)))
    return "\n".join(out).encode()


CLI_RUNS = [
    ["gen", "threshold", "--k", "7", "--seed", "3"],
    ["gen", "ring", "--k", "9", "--seed", "4"],
    ["gen", "odd-template", "--ell", "4", "--k", "4", "--seed", "5"],
    ["gen", "even-template", "--ell", "4", "--k", "1", "--s", "2", "--seed", "6"],
    ["gen", "blowup", "--ell", "3", "--k", "4", "--seed", "7"],
    ["gen", "composite", "--ell", "3", "--seed", "8"],
    ["gen", "composite", "--ell", "4", "--parity", "even", "--seed", "9"],
]


def _cli_outputs(tmp: Path, hashseed: str) -> list[bytes]:
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    out = []
    for i, argv in enumerate(CLI_RUNS):
        prefix = tmp / f"run{i}"
        subprocess.run([sys.executable, "-m", "samehole", *argv, "--out", str(prefix)],
                       check=True, env=env, capture_output=True)
        g6 = prefix.with_suffix(".g6")
        tree = prefix.with_suffix(".tree")
        k = {"ring": "9", "odd-template": "9", "blowup": "7", "threshold": "7"}.get(argv[1])
        if argv[1] == "composite":
            k = "7" if "even" not in argv else "8"
        if argv[1] == "even-template":
            k = "8"
        subprocess.run([sys.executable, "-m", "samehole", "decompose", str(g6), "--k", k, "--out", str(tree)],
                       check=True, env=env, capture_output=True)
        out += [g6.read_bytes(), prefix.with_suffix(".manifest").read_bytes(), tree.read_bytes()]
    return out


def test_criterion_10_determinism(tmp_path):
    t0 = time.perf_counter()
    same_lib = _generated_bytes(11) == _generated_bytes(11)
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    first = _cli_outputs(tmp_path / "a", "1")
    second = _cli_outputs(tmp_path / "b", "2")
    same_cli = first == second
    report(10, "same seed gives byte-identical outputs", same_lib and same_cli,
           f"library streams identical={same_lib}; {len(first)} CLI files across two processes "
           f"with different hash seeds identical={same_cli}", t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
