"""Glue certified pieces along cliques, add a universal vertex, and let the
decomposer take the result apart again. The tree is written as text and the
checker rebuilds the graph from it."""

import random

from samehole.decompose import decompose, tree_from_text, tree_to_text, tree_violations
from samehole.generate import random_composite
from samehole.holes import hole_spectrum

rng = random.Random(2024)
g = random_composite(rng, "odd", 3, max_n=30)
print(f"composite graph: {g.n} vertices, spectrum {hole_spectrum(g).describe()}")

tree = decompose(g, 7)
print("tree shape:", tree.shape())
text = tree_to_text(tree)
print(text[:600] + ("..." if len(text) > 600 else ""))

again = tree_from_text(text)
print("reassembly problems:", tree_violations(g, again) or "none")
