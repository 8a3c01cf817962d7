"""Level-wise simplicial truss decomposition and the top-n variant.

Simplices are processed by size, from edges upwards. At each size the
candidate simplices are generated from the survivors of the previous level,
their joists are validated, and trussness is obtained by peeling from the
joist-count upper bound. When every upper bound already equals the lower
bound given by the largest containing maximal simplex, peeling is skipped.
"""
from __future__ import annotations

import logging
import warnings
from collections.abc import Iterable, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import Simplex, SimplicialComplex, connected_components, extend_simplices, lower_bound
from .joists import CandidateStore, JoistMap, find_joists

log = logging.getLogger(__name__)


@dataclass
class LevelStats:
    component: int
    size: int
    simplices: int
    candidates: int
    joists: int
    batches: int
    spilled: bool

    def as_line(self) -> str:
        return (f"component={self.component} size={self.size} simplices={self.simplices} "
                f"candidates={self.candidates} joists={self.joists} "
                f"batches={self.batches} spilled={int(self.spilled)}")


@dataclass
class Decomposition:
    """Trussness and lower bound of every examined simplex.

    ``joists`` keeps the validated apexes of each simplex as found before
    peeling, so ``len(joists[s])`` is the upper bound used to seed it.
    """
    tr: dict[Simplex, int] = field(default_factory=dict)
    lb: dict[Simplex, int] = field(default_factory=dict)
    joists: dict[Simplex, frozenset[int]] = field(default_factory=dict)
    levels: list[LevelStats] = field(default_factory=list)
    labels: tuple[int, ...] = ()
    max_size: int = 0

    def ub(self, s: Simplex) -> int:
        return len(self.joists.get(s, ()))

    def items(self, include_trivial: bool = True):
        """``(simplex, tr, lb)`` sorted by size then lexicographically."""
        for s in sorted(self.tr, key=lambda s: (len(s), s)):
            if include_trivial or self.tr[s] != self.lb[s]:
                yield s, self.tr[s], self.lb[s]

    def to_tsv(self, include_trivial: bool = True) -> str:
        lines = []
        for s, t, b in self.items(include_trivial):
            ext = " ".join(str(self.labels[v]) for v in s) if self.labels else " ".join(map(str, s))
            lines.append(f"{ext}\t{t}\t{b}\n")
        return "".join(lines)


class PeelQueue:
    """Buckets of simplices keyed by their current trussness estimate.

    Estimates only decrease, and never below the bucket being drained, so a
    forward-moving cursor finds the minimum.
    """

    def __init__(self, est: Mapping[Simplex, int]):
        top = max(est.values(), default=0)
        self.buckets: list[set[Simplex]] = [set() for _ in range(top + 1)]
        for s, k in est.items():
            self.buckets[k].add(s)
        self.cursor = 0

    def pop_min(self) -> tuple[int, list[Simplex]] | None:
        while self.cursor < len(self.buckets) and not self.buckets[self.cursor]:
            self.cursor += 1
        if self.cursor == len(self.buckets):
            return None
        batch = sorted(self.buckets[self.cursor])
        self.buckets[self.cursor] = set()
        return self.cursor, batch

    def move(self, s: Simplex, old: int, new: int) -> None:
        self.buckets[old].discard(s)
        self.buckets[new].add(s)


def _mate(xi_left: Simplex, xi_right: Simplex, v: int) -> Simplex:
    return tuple(sorted(xi_left + xi_right + (v,)))


def peel_level(E: Iterable[Simplex], J: JoistMap, tr: Mapping[Simplex, int]) -> tuple[dict[Simplex, int], int]:
    """Peel one level; ``tr`` holds the joist counts of ``E``.

    ``J`` is consumed: apexes of destroyed joists are removed from it.
    Returns the final trussness and the number of batches extracted.
    """
    est = {s: tr[s] for s in E}
    queue = PeelQueue(est)
    batches = 0
    while (item := queue.pop_min()) is not None:
        k, batch = item
        batches += 1
        for sigma in batch:
            for v in sorted(J.get(sigma, ())):
                for i, a in enumerate(sigma):
                    tau = _mate(sigma[:i], sigma[i + 1:], v)
                    t = est[tau]
                    if t <= k:
                        continue
                    apexes = J[tau]
                    if a in apexes:
                        apexes.remove(a)
                        new = max(t - 1, k)
                        if new != t:
                            queue.move(tau, t, new)
                            est[tau] = new
    return est, batches


def trusses(tr: Mapping[Simplex, int]) -> list[frozenset[Simplex]]:
    """The nested trusses ``[T_1, ..., T_K]`` with ``T_k = {s : tr(s) >= k}``."""
    top = max(tr.values(), default=0)
    return [frozenset(s for s, t in tr.items() if t >= k) for k in range(1, top + 1)]


@dataclass
class _Config:
    max_size: int | None
    budget: int | None
    chunks: int
    workdir: str | None
    keep_workdir: bool
    prune: bool
    strict_budget: bool


def _decompose_component(C: SimplicialComplex, cid: int, cfg: _Config) -> Decomposition:
    out = Decomposition(labels=C.labels)
    d = C.max_size if cfg.max_size is None else min(cfg.max_size, C.max_size)
    S: list[Simplex] = []
    for q in range(2, d + 1):
        if q > 2 and not S:
            break
        E = extend_simplices(S, C, q)
        if not E:
            break
        lb = {s: lower_bound(C, s) for s in E}
        with CandidateStore(cfg.budget, cfg.chunks, cfg.workdir, cid, q,
                            cfg.keep_workdir, cfg.strict_budget) as store:
            J = find_joists(E, store)
            records, spilled = store.record_count, store.spilled
        ub = {s: len(J.get(s, ())) for s in E}
        batches = 0
        if any(lb[s] != ub[s] for s in E):
            tr, batches = peel_level(E, {s: set(a) for s, a in J.items()}, ub)
        else:
            tr = ub
        out.tr.update(tr)
        out.lb.update(lb)
        out.joists.update((s, frozenset(a)) for s, a in J.items())
        njoists = sum(len(a) for a in J.values()) // (q + 1)
        stats = LevelStats(cid, q, len(E), records, njoists, batches, spilled)
        out.levels.append(stats)
        log.info(stats.as_line())
        S = sorted(s for s in E if tr[s] > 0) if cfg.prune else sorted(E)
    return out


def decompose(K: SimplicialComplex, max_size: int | None = None, budget: int | None = None,
              chunks: int = 8, workdir: str | None = None, keep_workdir: bool = False,
              prune: bool = True, strict_budget: bool = False, workers: int = 1) -> Decomposition:
    """Simplicial truss decomposition of ``K`` up to simplices of ``max_size`` vertices.

    ``budget`` caps the candidate records kept in memory per level before
    spilling to ``chunks`` files in ``workdir``. With ``prune`` (the
    default) only simplices of positive trussness are extended; supersets
    of the others have trussness 0 and are not reported.
    """
    if max_size is not None and max_size < 2:
        raise ValueError("max_size must be at least 2")
    cfg = _Config(max_size, budget, chunks, workdir, keep_workdir, prune, strict_budget)
    comps = connected_components(K)
    if workers > 1 and len(comps) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_decompose_component, comps, range(len(comps)),
                                  [cfg] * len(comps)))
    else:
        parts = [_decompose_component(C, cid, cfg) for cid, C in enumerate(comps)]
    top = K.max_size if max_size is None else min(max_size, K.max_size)
    out = Decomposition(labels=K.labels, max_size=top)
    for part in parts:
        out.tr.update(part.tr)
        out.lb.update(part.lb)
        out.joists.update(part.joists)
        out.levels.extend(part.levels)
    return out


class TopNWarning(UserWarning):
    pass


def _hindex(values: list[int], cap: int) -> int:
    h = 0
    for i, m in enumerate(sorted(values, reverse=True), start=1):
        if m >= i and i <= cap:
            h = i
        else:
            break
    return h


def top_n(K: SimplicialComplex, n: int, q: int, budget: int | None = None, chunks: int = 8,
          workdir: str | None = None) -> list[tuple[Simplex, int]]:
    """The ``n`` simplices of ``q`` vertices with largest trussness.

    Ties are broken lexicographically. Simplices are examined by descending
    upper bound. An estimate is lowered to the h-index of its joists (each
    joist scored by the smallest estimate among its other members) until a
    whole bucket is stable, at which point that bucket is exact; the search
    stops as soon as ``n`` results are final.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if q < 2:
        raise ValueError("q must be at least 2")
    E = K.faces(q) if q <= K.max_size else set()
    if len(E) < n:
        warnings.warn(f"only {len(E)} simplices of size {q} exist, fewer than n={n}",
                      TopNWarning, stacklevel=2)
    if not E:
        return []
    with CandidateStore(budget, chunks, workdir, 0, q) as store:
        J = find_joists(E, store)
    est = {s: len(J.get(s, ())) for s in E}
    queue: dict[int, set[Simplex]] = {}
    for s, k in est.items():
        queue.setdefault(k, set()).add(s)
    done: list[tuple[Simplex, int]] = []

    def support(sigma):
        scores = []
        for v in J.get(sigma, ()):
            scores.append(min(est[_mate(sigma[:i], sigma[i + 1:], v)] for i in range(len(sigma))))
        return scores

    while queue:
        top = max(queue)
        if len(done) >= n and top < done[n - 1][1]:
            break
        bucket = queue.pop(top)
        changed = True
        while changed:
            changed = False
            for sigma in sorted(bucket):
                h = _hindex(support(sigma), top)
                if h < top:
                    bucket.discard(sigma)
                    est[sigma] = h
                    queue.setdefault(h, set()).add(sigma)
                    changed = True
        done.extend((s, top) for s in sorted(bucket))
    return done[:n]
