"""Post-processing of a decomposition: filtrations, joist statistics, truss sizes,
and classic graph trussness for comparison on the 1-skeleton."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import asdict, dataclass
from itertools import combinations

import networkx as nx

from .core import Simplex, SimplicialComplex, codes, contains
from .engine import Decomposition


class FiltrationError(ValueError):
    pass


def export_filtration(K: SimplicialComplex, dec: Decomposition,
                      max_size: int | None = None) -> list[tuple[int, Simplex]]:
    """Reverse-trussness filtration of ``K`` as ``(value, simplex)`` pairs.

    Vertices enter at 0 and every other simplex at ``K_max - tr``. Simplices
    the decomposition skipped are accepted at trussness 0 only when one of
    their faces already has trussness 0.
    """
    if max_size is None:
        max_size = dec.max_size
    top = min(max_size, K.max_size)
    kmax = max(dec.tr.values(), default=0)
    tr: dict[Simplex, int] = {}
    out = [(0, (v,)) for v in K.vertices]
    for q in range(2, top + 1):
        for s in sorted(K.faces(q)):
            t = dec.tr.get(s)
            if t is None:
                if q == 2 or not any(tr.get(f) == 0 for f in codes(s)):
                    raise FiltrationError(f"no trussness for simplex {K.external(s)}")
                t = 0
            tr[s] = t
            out.append((kmax - t, s))
    out.sort(key=lambda item: (item[0], len(item[1]), item[1]))
    return out


def format_filtration(K: SimplicialComplex, filtration) -> str:
    return "".join(f"{value}\t{' '.join(map(str, K.external(s)))}\n" for value, s in filtration)


def is_valid_filtration(filtration) -> bool:
    """Every proper face of an entry appears strictly earlier, with no larger value."""
    seen: dict[Simplex, int] = {}
    for value, s in filtration:
        if len(s) > 1:
            for f in codes(s):
                if f not in seen or seen[f] > value:
                    return False
        seen[s] = value
    return True


@dataclass
class ComplexStats:
    total_joists: int
    open_joists: int
    open_triangles: int
    non_trivial_count: int
    total_simplices: int

    @property
    def open_joists_pct(self) -> float:
        return 100.0 * self.open_joists / self.total_joists if self.total_joists else 0.0

    @property
    def open_triangles_pct(self) -> float:
        """Share of open joists that are hollow triangles."""
        return 100.0 * self.open_triangles / self.open_joists if self.open_joists else 0.0

    @property
    def non_trivial_pct(self) -> float:
        return 100.0 * self.non_trivial_count / self.total_simplices if self.total_simplices else 0.0

    def to_tsv(self) -> str:
        row = asdict(self)
        row.update(open_joists_pct=self.open_joists_pct,
                   open_triangles_pct=self.open_triangles_pct,
                   non_trivial_pct=self.non_trivial_pct)
        cols = list(row)
        vals = [f"{row[c]:.6g}" if isinstance(row[c], float) else str(row[c]) for c in cols]
        return "\t".join(cols) + "\n" + "\t".join(vals) + "\n"


def joist_stats(K: SimplicialComplex, dec: Decomposition) -> ComplexStats:
    """Count validated joists, the open ones among them, and non-trivial trussness."""
    joists = {tuple(sorted(s + (w,))) for s, apexes in dec.joists.items() for w in apexes}
    open_ = [W for W in joists if not contains(K, W)]
    non_trivial = sum(1 for s, t in dec.tr.items() if t != dec.lb[s])
    return ComplexStats(
        total_joists=len(joists),
        open_joists=len(open_),
        open_triangles=sum(1 for W in open_ if len(W) == 3),
        non_trivial_count=non_trivial,
        total_simplices=len(dec.tr),
    )


def truss_sizes(tr: Mapping[Simplex, int]) -> dict[int, int]:
    top = max(tr.values(), default=0)
    counts = [0] * (top + 2)
    for t in tr.values():
        counts[t] += 1
    sizes, running = {}, 0
    for k in range(top, 0, -1):
        running += counts[k]
        sizes[k] = running
    return dict(sorted(sizes.items()))


def skeleton(K: SimplicialComplex) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(K.vertices)
    for m in K.maximal:
        G.add_edges_from(combinations(m, 2))
    return G


def graph_trussness(G: nx.Graph) -> dict[tuple[int, int], int]:
    """Edge trussness where a k-truss requires k triangles per edge.

    Standard support peeling: repeatedly remove an edge of minimum triangle
    support and decrement the two other edges of each triangle it closes.
    """
    adj = {u: set(G[u]) - {u} for u in G}
    support = {}
    for u, v in G.edges():
        if u != v:
            e = (u, v) if u < v else (v, u)
            support[e] = len(adj[u] & adj[v])
    buckets: dict[int, set] = {}
    for e, c in support.items():
        buckets.setdefault(c, set()).add(e)
    out: dict[tuple[int, int], int] = {}
    k = 0
    while support:
        while not buckets.get(k):
            k += 1
        e = min(buckets[k])
        buckets[k].remove(e)
        out[e] = k
        del support[e]
        u, v = e
        for w in adj[u] & adj[v]:
            for f in ((min(u, w), max(u, w)), (min(v, w), max(v, w))):
                c = support[f]
                if c > k:
                    buckets[c].remove(f)
                    buckets.setdefault(c - 1, set()).add(f)
                    support[f] = c - 1
        adj[u].discard(v)
        adj[v].discard(u)
    return out
