"""Threshold graphs from construction words, and the certificates the
recognizers hand back for a few small graph classes."""

from samehole.classes import classify, recognize_half_graph, recognize_quasi_threshold, recognize_threshold, \
    replay_elimination, threshold_from_word
from samehole.formats import to_graph6
from samehole.graph import cycle_graph, path_graph

# A word over {A, C}: each letter adds a vertex anticomplete (A) or complete (C)
# to everything built so far.
word = "ACCACAC"
g = threshold_from_word(word)
print(f"word {word} gives a graph with {g.n} vertices and {len(g.edges())} edges")

cert = recognize_threshold(g)
print("recovered word:", cert.word())
print("domination order (smallest neighbourhood first):", cert.domination)
assert to_graph6(replay_elimination(g.n, cert.elimination)) == to_graph6(g)
print("replaying the elimination rebuilds the same graph\n")

# quasi-threshold graphs come back as a laminar hypergraph whose line graph is g
h = recognize_quasi_threshold(g)
print("laminar hyperedges:", [sorted(e) for e in h.edges])

# two cliques with nested cross neighbourhoods
half = recognize_half_graph(threshold_from_word("CCAC"))
print("half graph cliques of CCAC:", sorted(half.clique_k), sorted(half.clique_k2))

print()
for name, x in (("P4", path_graph(4)), ("C4", cycle_graph(4)), ("C5", cycle_graph(5))):
    flags = classify(x)
    print(f"{name}:", ", ".join(k for k, v in flags.items() if v) or "none of the classes")
