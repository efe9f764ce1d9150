"""Build the smallest odd template (a balanced pyramid), inspect its edge
classes, and blow it up into a larger graph whose holes keep length 7."""

import random

from samehole.blowup import BlowupSpec, build_blowup, classify_edges, verify_blowup
from samehole.generate import random_blowup_spec
from samehole.graph import empty_graph
from samehole.holes import enumerate_holes
from samehole.hypergraph import Hypergraph
from samehole.templates import OddTemplateSpec, build_odd_template, template_violations

ell = 3
spec = OddTemplateSpec(ell, empty_graph(3), Hypergraph.make(3, [{0, 1, 2}]))
g, p = build_odd_template(spec)
print(f"template on {g.n} vertices: A={p.A} A'={p.Ap} B={p.B} B'={p.Bp} I={sorted(p.I)}")
print("principal paths:", p.paths)
print("template checks:", template_violations(g, p) or "none violated")
print("hole lengths:", sorted({h.length for h in enumerate_holes(g)}))

kinds = classify_edges(g, p)
for kind in ("solid", "flat", "optional"):
    print(f"  {kind:8s}", sorted(e for e, c in kinds.items() if c == kind))

# every I vertex doubled, all staircases complete
sizes = tuple(2 if v in p.I else 1 for v in range(g.n))
gs, m = build_blowup(g, p, BlowupSpec(sizes))
print(f"\ndoubling I gives {gs.n} vertices; holes:", sorted({h.length for h in enumerate_holes(gs)}))

# a random blowup with thinned staircases
bs = random_blowup_spec(random.Random(4), g, p, max_total=20)
gs, m = build_blowup(g, p, bs)
print(f"random blowup: sizes {bs.sizes}, {gs.n} vertices")
print("blowup checks:", verify_blowup(gs, g, p, m) or "none violated")
print("holes:", sorted({h.length for h in enumerate_holes(gs)}))
