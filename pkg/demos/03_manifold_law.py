"""Growing manifolds: every simplex with q+1 vertices has trussness d - q."""
from collections import defaultdict

from simtruss import ManifoldParams, decompose, gen_manifold

for d in (2, 3, 4):
    K = gen_manifold(ManifoldParams(d, s=20, seed=d))
    dec = decompose(K, prune=False)
    by_size = defaultdict(set)
    for s, t in dec.tr.items():
        by_size[len(s)].add(t)
    law = {q + 1: {d - q} for q in range(1, d + 1)}
    print(f"d={d}: observed {dict(by_size)}; law holds: {dict(by_size) == law}")
