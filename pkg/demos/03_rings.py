"""Rings: a circle of cliques with nested neighbourhoods between neighbours.
Build one from clique sizes and staircases, then recover it from the bare graph."""

from samehole.holes import hole_spectrum
from samehole.rings import build_ring, recognize_ring, verify_ring

sizes = [2, 1, 3, 1, 1, 2, 1, 1, 1]
g, planted = build_ring(9, sizes)
print(f"ring with sizes {sizes}: {g.n} vertices, spectrum {hole_spectrum(g).describe()}")

found = recognize_ring(g)
print("recovered cliques:", found.cliques)
print("ring checks:", verify_ring(g, found) or "none violated")

# staircase i lists, for each vertex of clique i from the top down, how many top
# vertices of clique i+1 it sees; the first entry must be the full clique
stairs = [[3], [2, 1, 1], [1, 1], [1], [1], [1], [1], [1], [1]]
g2, part = build_ring(9, [1, 3, 2, 1, 1, 1, 1, 1, 1], stairs)
print(f"\nthinned ring: {g2.n} vertices, spectrum {hole_spectrum(g2).describe()}")
print("ring checks:", verify_ring(g2, part) or "none violated")
