"""Synthetic complexes: growing simplicial manifolds and random flag complexes."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .core import SimplicialComplex


@dataclass(frozen=True)
class ManifoldParams:
    d: int
    s: int
    seed: int = 0


@dataclass(frozen=True)
class FlagParams:
    n: int
    p: float
    max_size: int
    seed: int = 0


def gen_manifold(params: ManifoldParams) -> SimplicialComplex:
    """Grow a ``d``-manifold of ``s`` top simplices on ``s + d`` vertices.

    Starting from one ``d``-simplex, each step picks a free boundary face
    (a ``(d-1)``-face lying in exactly one top simplex) uniformly at random
    and glues a new top simplex onto it through a fresh vertex. Faces already
    shared by two top simplices have zero attachment weight, so uniform
    choice over the free faces is the exact attachment law.
    """
    d, s = params.d, params.s
    if d < 1 or s < 1:
        raise ValueError("d and s must be at least 1")
    rng = random.Random(params.seed)
    first = tuple(range(d + 1))
    tops = [first]
    free = list(combinations(first, d))
    for v in range(d + 1, d + s):
        i = rng.randrange(len(free))
        face = free[i]
        free[i] = free[-1]
        free.pop()
        tops.append(face + (v,))
        free.extend(f + (v,) for f in combinations(face, d - 1))
    return SimplicialComplex(tops)


def random_graph(n: int, p: float, seed: int = 0) -> nx.Graph:
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    return nx.gnp_random_graph(n, p, seed=seed)


def flag_complex(G: nx.Graph, max_size: int) -> SimplicialComplex:
    """Clique complex of ``G`` truncated to simplices of at most ``max_size`` vertices."""
    if max_size < 2:
        raise ValueError("max_size must be at least 2")
    simplices = []
    for clique in nx.find_cliques(G):
        clique = sorted(clique)
        if len(clique) <= max_size:
            simplices.append(clique)
        else:
            simplices.extend(combinations(clique, max_size))
    return SimplicialComplex(simplices)


def gen_flag_complex(params: FlagParams) -> SimplicialComplex:
    """Random flag complex over an Erdos-Renyi graph ``G(n, p)``."""
    return flag_complex(random_graph(params.n, params.p, params.seed), params.max_size)
