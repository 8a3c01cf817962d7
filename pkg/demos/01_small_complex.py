"""Decompose a six-vertex complex: one tetrahedron and two triangles glued on a shared edge.

Run: python demos/01_small_complex.py
"""
from simtruss import decompose, parse_complex, trusses

TEXT = """\
# labels 0..5; the edge 2-3 is shared by everything
0 1 2 3
2 3 5
2 3 4
"""

K = parse_complex(TEXT)
print(f"{len(K)} maximal simplices on {len(K.vertices)} vertices\n")

dec = decompose(K)
print("simplex      |J|  tr  lb")
for s, tr, lb in dec.items():
    print(f"{' '.join(map(str, K.external(s))):<12} {dec.ub(s):>3} {tr:>3} {lb:>3}")

# The 2-truss is exactly the tetrahedron's edges; the pendant triangles only reach 1.
for k, T in enumerate(trusses(dec.tr), start=1):
    print(f"T_{k}: {len(T)} simplices")
