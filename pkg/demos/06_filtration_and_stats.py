"""Turn trussness into a filtration and summarise joists."""
from simtruss import (SimplicialComplex, decompose, export_filtration, is_valid_filtration,
                      joist_stats, parse_complex, truss_sizes)
from simtruss.analysis import format_filtration

K = parse_complex("0 1 2 3\n2 3 5\n2 3 4\n")
dec = decompose(K)
filt = export_filtration(K, dec)
print(format_filtration(K, filt), end="")
print("valid:", is_valid_filtration(filt))

# Hollow K5: every joist is an open triangle and nothing sits at its lower bound.
K5 = SimplicialComplex((u, v) for u in range(5) for v in range(u + 1, 5))
print()
print(joist_stats(K5, decompose(K5)).to_tsv(), end="")
print("truss sizes:", truss_sizes(decompose(K5).tr))
