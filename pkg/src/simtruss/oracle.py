"""Brute-force reference implementations.

Nothing here uses the inverted index, candidate store, bounds, pruning or
peeling of the optimised path. Everything is exponential; keep inputs tiny.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import Simplex, SimplicialComplex


@dataclass
class OracleResult:
    joists: dict[Simplex, set[int]] = field(default_factory=dict)
    tr: dict[Simplex, int] = field(default_factory=dict)
    lb: dict[Simplex, int] = field(default_factory=dict)


def brute_joists(E) -> dict[Simplex, set[int]]:
    """Apexes of every joist whose members all lie in ``E``."""
    E = {tuple(sorted(s)) for s in E}
    if not E:
        return {}
    sizes = {len(s) for s in E}
    if len(sizes) != 1:
        raise ValueError("simplices in E must all have the same size")
    (size,) = sizes
    ground = sorted({v for s in E for v in s})
    J: dict[Simplex, set[int]] = {}
    for W in combinations(ground, size + 1):
        members = list(combinations(W, size))
        if all(m in E for m in members):
            for m in members:
                (apex,) = set(W) - set(m)
                J.setdefault(m, set()).add(apex)
    return J


def _level(maximal, q):
    simplices = set()
    for m in maximal:
        simplices.update(combinations(m, q))
    joists = brute_joists(simplices) if simplices else {}
    # each joist as the list of its other members
    support = {s: [[tuple(sorted(set(s) - {a} | {w})) for a in s]
                   for w in joists.get(s, ())] for s in simplices}
    tr = {s: 0 for s in simplices}
    k = 1
    alive = set(simplices)
    while alive:
        while True:
            drop = {s for s in alive
                    if sum(all(m in alive for m in joist) for joist in support[s]) < k}
            if not drop:
                break
            alive -= drop
        for s in alive:
            tr[s] = k
        k += 1
    lb = {s: max(len(m) for m in maximal if set(s) <= set(m)) - q for s in simplices}
    return joists, tr, lb


def brute_trussness(K: SimplicialComplex, max_size: int | None = None) -> OracleResult:
    """Trussness of every simplex with 2..max_size vertices by direct fixpoint."""
    maximal = [tuple(m) for m in K.maximal]
    top = max((len(m) for m in maximal), default=0)
    d = top if max_size is None else min(max_size, top)
    out = OracleResult()
    for q in range(2, d + 1):
        joists, tr, lb = _level(maximal, q)
        out.joists.update(joists)
        out.tr.update(tr)
        out.lb.update(lb)
    return out


def brute_top_n(K: SimplicialComplex, n: int, q: int) -> list[tuple[Simplex, int]]:
    maximal = [tuple(m) for m in K.maximal]
    if q > max((len(m) for m in maximal), default=0):
        return []
    _, tr, _ = _level(maximal, q)
    ranked = sorted(tr.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:n]


def compare(tr: dict[Simplex, int], lb: dict[Simplex, int], ref: OracleResult) -> list[str]:
    """Differences between an engine result and the oracle.

    Simplices the engine did not examine are accepted only when the oracle
    gives them trussness 0 (they were pruned as extensions of zero-trussness
    faces).
    """
    problems = []
    for s, t in sorted(tr.items()):
        if s not in ref.tr:
            problems.append(f"{s}: not a simplex of the complex")
        elif (t, lb[s]) != (ref.tr[s], ref.lb[s]):
            problems.append(f"{s}: engine tr={t} lb={lb[s]}, oracle tr={ref.tr[s]} lb={ref.lb[s]}")
    for s, t in sorted(ref.tr.items()):
        if s not in tr and t != 0:
            problems.append(f"{s}: missing from engine output, oracle tr={t}")
    return problems
