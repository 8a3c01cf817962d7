"""On an edge-only complex simplicial trussness coincides with graph trussness.

Filling in the cliques keeps the edge values (a joist on edges is a triangle
either way) and adds trussness for the higher simplices.
"""
import networkx as nx

from simtruss import SimplicialComplex, decompose, graph_trussness

G = nx.gnp_random_graph(14, 0.45, seed=3)
edges = SimplicialComplex(sorted(e) for e in G.edges)
dec = decompose(edges)
print("edge-only complex equals graph trussness:", dec.tr == graph_trussness(G))

cliques = SimplicialComplex(sorted(c) for c in nx.find_cliques(G))
flag = decompose(cliques)
same = sum(1 for e in dec.tr if flag.tr[e] == dec.tr[e])
print(f"flag complex: {same}/{len(dec.tr)} edges keep their graph trussness")
sizes = sorted({len(s) for s in flag.tr})
print("max trussness by simplex size:",
      {q: max(t for s, t in flag.tr.items() if len(s) == q) for q in sizes})
