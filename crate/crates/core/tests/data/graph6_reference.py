# Regenerates graph6_reference.txt with networkx as the reference encoder.
import random

import networkx as nx

rng = random.Random(20240607)
lines = []
for k in range(100):
    n = 1 + k % 8
    p = rng.random()
    g = nx.gnp_random_graph(n, p, seed=rng.randrange(1 << 30))
    edges = sorted(tuple(sorted(e)) for e in g.edges())
    code = nx.to_graph6_bytes(g, header=False).decode().strip()
    flat = " ".join(f"{u}-{v}" for u, v in edges)
    lines.append(f"{code}\t{n}\t{flat}")
with open("graph6_reference.txt", "w") as f:
    f.write("\n".join(lines) + "\n")
