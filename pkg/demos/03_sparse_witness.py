"""
Why the gap stalls below the connectivity threshold
===================================================

With p = 0.4 log(n)/n the graph is disconnected but its giant component is
large.  The giant's spectrum presses against both ends of [0, 2]: lambda_2
stays near 0 and lambda_max near 2, so the absolute gap stays near 1 no
matter how large n grows.  The structural culprit is a path u-v-w-x whose
interior has degree 2; such a witness exists with high probability and
forces the bounds, as the two-star gadget shows in isolation.
"""
import math

from spectop.audit import find_path_witness
from spectop.graphs import GraphParams, components, erdos_renyi, induced_subgraph
from spectop.seeding import derive_seed
from spectop.spectral import gap

import numpy as np


def giant(g):
    comp = components(g)
    return induced_subgraph(g, np.flatnonzero(comp.component_id == comp.giant))


n, coeff = 2000, 0.4
p = coeff * math.log(n) / n
m = max(1, math.floor(n * p / 2))

print(f"n={n} p={p:.5f} (below threshold), witness endpoint degree m={m}")
for i in range(5):
    g = erdos_renyi(GraphParams(n, p, derive_seed(11, i)))
    sub = giant(g)
    r = gap(sub)
    wit = find_path_witness(sub, m)
    tag = f"witness {wit.u}-{wit.v}-{wit.w}-{wit.x}" if wit else "no witness"
    print(f"  giant {sub.n:4d}/{n}  lambda2={r.lambda2:.4f}  "
          f"lambda_max={r.lambda_max:.4f}  gap={r.lambda_abs:.4f}  {tag}")
print()

# the gadget: two degree-m stars joined by a fresh 2-path.  Its spectrum
# obeys lambda_max >= 3/2 and lambda_2 <= 1/2 + 2/sqrt(m) + 2/m exactly.
from spectop.graphs import from_edges  # noqa: E402


def two_star_gadget(m):
    edges = [(0, 2), (2, 3), (1, 3)]
    nxt = 4
    for hub in (0, 1):
        for _ in range(m - 1):
            edges.append((hub, nxt))
            nxt += 1
    return from_edges(nxt, edges)


for m in (4, 16, 64, 256):
    r = gap(two_star_gadget(m))
    bound = 0.5 + 2.0 / math.sqrt(m) + 2.0 / m
    print(f"gadget m={m:<4} lambda2={r.lambda2:.4f} <= {bound:.4f}   "
          f"lambda_max={r.lambda_max:.4f} >= 1.5")
