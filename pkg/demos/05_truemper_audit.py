"""Every Truemper configuration inside a graph with only 7-holes is a twin
wheel, a universal wheel, or a pyramid with three paths of length 3. This
script lists what the search finds in a blown-up template and in a ring."""

import random
from collections import Counter

from samehole.generate import random_odd_blowup, random_ring
from samehole.truemper import audit_configs_for_class

for name, g in (("odd blowup", random_odd_blowup(random.Random(1), 3, 4, max_total=24).graph),
                ("ring", random_ring(random.Random(1), 7, max_total=14).graph)):
    rep = audit_configs_for_class(g, 7)
    tally = Counter(c.kind if c.kind != "wheel" else f"{c.wheel_kind} wheel" for c in rep.configs)
    print(f"{name} on {g.n} vertices:", dict(tally))
    for line in rep.lines():
        print("  " + line)
    pyr = next((c for c in rep.configs if c.kind == "pyramid"), None)
    if pyr:
        print("  e.g.", pyr.describe())
