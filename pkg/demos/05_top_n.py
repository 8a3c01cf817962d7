"""Find the most cohesive triangles without decomposing every level."""
import time

from simtruss import FlagParams, decompose, gen_flag_complex, top_n

K = gen_flag_complex(FlagParams(n=50, p=0.3, max_size=4, seed=11))

start = time.perf_counter()
best = top_n(K, n=5, q=3)
print(f"top_n took {time.perf_counter() - start:.3f}s")
for s, t in best:
    print(" ", K.external(s), t)

full = decompose(K, max_size=3, prune=False)
ranked = sorted(((s, t) for s, t in full.tr.items() if len(s) == 3), key=lambda r: (-r[1], r[0]))
print("agrees with full decomposition:", ranked[:5] == best)
