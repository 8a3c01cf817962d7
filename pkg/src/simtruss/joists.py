"""Joist discovery over one level of equally sized simplices.

Two simplices of size q can sit in a common joist only if they share q - 1
vertices, i.e. one of their codes (faces missing one vertex). An inverted
index from code to simplex id yields every candidate pair exactly once. Each
pair is recorded under the member lacking the largest vertex of the pair's
union; that member is then the unique representative of the joist, so a
joist is validated once, when all ``q`` mates sharing its extra vertex are
present.

Candidate pairs live in a :class:`CandidateStore`. Past a record budget the
store moves everything to ``M`` chunk files routed by ``idx1 % M`` and
appends later records straight to disk. Chunks that exceed the budget are
externally sorted so that each simplex's candidates can be streamed as one
group.
"""
from __future__ import annotations

import heapq
import logging
import os
import tempfile
from collections.abc import Iterable, Iterator, Sequence
from itertools import groupby

import numpy as np

from .core import Simplex, codes

log = logging.getLogger(__name__)

RECORD = np.dtype("<u8")
RECORD_BYTES = 16
_WRITE_BUFFER = 8192

JoistMap = dict[Simplex, set[int]]


class InvariantError(RuntimeError):
    pass


class BudgetExceededError(RuntimeError):
    pass


def find_matches(s: Simplex, index: dict[Simplex, list[int]]) -> set[int]:
    """Ids of indexed simplices sharing a code with ``s``."""
    out: set[int] = set()
    for code in codes(s):
        ids = index.get(code)
        if ids:
            out.update(ids)
    return out


def merge_candidates(store: CandidateStore, matches: Iterable[int], sid: int,
                     table: Sequence[Simplex]) -> None:
    """Record each (s, match) pair under its representative simplex."""
    s = table[sid]
    ss = set(s)
    for tid in sorted(matches):
        t = table[tid]
        u = set(t) - ss
        v = ss.difference(t)
        if len(u) != 1 or len(v) != 1:
            raise InvariantError(f"{t} and {s} do not share {len(s) - 1} vertices")
        if next(iter(u)) > s[-1]:
            store.add(sid, tid)
        if next(iter(v)) > t[-1]:
            store.add(tid, sid)


def validate_joists(groups: Iterable[tuple[int, Sequence[int]]],
                    table: Sequence[Simplex], J: JoistMap | None = None) -> JoistMap:
    """Turn grouped candidate lists into validated joist apexes.

    ``groups`` yields ``(idx1, mates)`` with every candidate of ``idx1`` in a
    single group. A vertex ``w`` is an apex of the representative when exactly
    ``len(sigma)`` of its candidates contain ``w``.
    """
    if J is None:
        J = {}
    seen: set[int] = set()
    for idx1, mates in groups:
        if idx1 in seen:
            raise InvariantError(f"candidates of simplex {idx1} split across groups")
        seen.add(idx1)
        sigma = table[idx1]
        ss = set(sigma)
        by_apex: dict[int, list[Simplex]] = {}
        for tid in mates:
            t = table[tid]
            (w,) = set(t) - ss
            by_apex.setdefault(w, []).append(t)
        for w, group in by_apex.items():
            if len(group) != len(sigma):
                continue
            J.setdefault(sigma, set()).add(w)
            for t in group:
                (a,) = ss.difference(t)
                J.setdefault(t, set()).add(a)
    return J


class CandidateStore:
    """Candidate pairs ``(idx1, idx2)``, in memory or spilled to chunks.

    ``budget`` is the number of records held in memory before spilling
    (``None`` means never spill). Chunk files are named
    ``cand_<component>_<level>_<i>.bin`` inside ``workdir``.
    """

    def __init__(self, budget: int | None = None, chunks: int = 8,
                 workdir: str | os.PathLike | None = None, component: int = 0,
                 level: int = 2, keep_workdir: bool = False, strict: bool = False):
        if budget is not None and budget < 1:
            raise ValueError("budget must be at least 1")
        if chunks < 1:
            raise ValueError("chunk count must be at least 1")
        self.budget = budget
        self.chunks = chunks
        self.workdir = workdir
        self.component = component
        self.level = level
        self.keep_workdir = keep_workdir
        self.strict = strict
        self.record_count = 0
        self.memory: dict[int, list[int]] = {}
        self.paths: list[str] = []
        self._buffers: list[list[int]] = []
        self._chunk_counts: list[int] = []
        self._tmpdir: tempfile.TemporaryDirectory | None = None

    @property
    def spilled(self) -> bool:
        return bool(self.paths)

    def add(self, idx1: int, idx2: int) -> None:
        self.record_count += 1
        if self.spilled:
            i = idx1 % self.chunks
            buf = self._buffers[i]
            buf.append(idx1)
            buf.append(idx2)
            self._chunk_counts[i] += 1
            if len(buf) >= 2 * _WRITE_BUFFER:
                self._flush(i)
            return
        self.memory.setdefault(idx1, []).append(idx2)
        if self.budget is not None and self.record_count >= self.budget:
            spill_candidates(self, self.chunks, self._spill_dir())

    def _spill_dir(self) -> str:
        if self.workdir is not None:
            os.makedirs(self.workdir, exist_ok=True)
            return os.fspath(self.workdir)
        self._tmpdir = tempfile.TemporaryDirectory(prefix="simtruss-")
        return self._tmpdir.name

    def _flush(self, i: int) -> None:
        buf = self._buffers[i]
        if buf:
            with open(self.paths[i], "ab") as fh:
                np.asarray(buf, dtype=RECORD).tofile(fh)
            buf.clear()

    def flush(self) -> None:
        for i in range(len(self.paths)):
            self._flush(i)

    def groups(self) -> Iterator[tuple[int, list[int]]]:
        """Yield ``(idx1, mates)`` with all candidates of ``idx1`` together."""
        if not self.spilled:
            for idx1 in sorted(self.memory):
                yield idx1, sorted(self.memory[idx1])
            return
        self.flush()
        oversize = 0
        for i, path in enumerate(self.paths):
            n = self._chunk_counts[i]
            if n == 0:
                continue
            if self.budget is None or n <= self.budget:
                recs = np.fromfile(path, dtype=RECORD).reshape(-1, 2)
                order = np.lexsort((recs[:, 1], recs[:, 0]))
                yield from _group_records(map(tuple, recs[order].tolist()))
            else:
                external_sort_chunk(path, self.budget)
                for idx1, mates in _group_records(iter_records(path)):
                    if len(mates) > self.budget:
                        if self.strict:
                            raise BudgetExceededError(
                                f"candidate group of simplex {idx1} holds {len(mates)} records, "
                                f"over the budget of {self.budget} "
                                f"(component {self.component}, level {self.level})")
                        oversize += 1
                    yield idx1, mates
        if oversize:
            log.warning("%d candidate groups exceeded the budget of %d records "
                        "(component %d, level %d)", oversize, self.budget,
                        self.component, self.level)

    def close(self) -> None:
        if not self.keep_workdir:
            for path in self.paths:
                if os.path.exists(path):
                    os.remove(path)
        if self._tmpdir is not None and not self.keep_workdir:
            self._tmpdir.cleanup()
            self._tmpdir = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def _group_records(records: Iterable[tuple[int, int]]) -> Iterator[tuple[int, list[int]]]:
    for idx1, grp in groupby(records, key=lambda r: r[0]):
        yield idx1, [r[1] for r in grp]


def spill_candidates(store: CandidateStore, M: int, directory: str) -> list[str]:
    """Move the in-memory records of ``store`` into ``M`` chunk files.

    Chunk ``i`` receives the records with ``idx1 % M == i``. Later records
    are appended to their chunk directly.
    """
    if store.spilled:
        raise InvariantError("store already spilled")
    paths = [os.path.join(directory, f"cand_{store.component}_{store.level}_{i}.bin")
             for i in range(M)]
    counts = [0] * M
    try:
        parts: list[list[int]] = [[] for _ in range(M)]
        for idx1 in sorted(store.memory):
            part = parts[idx1 % M]
            for idx2 in store.memory[idx1]:
                part.append(idx1)
                part.append(idx2)
            counts[idx1 % M] += len(store.memory[idx1])
        for path, part in zip(paths, parts):
            with open(path, "wb") as fh:
                np.asarray(part, dtype=RECORD).tofile(fh)
    except OSError:
        for path in paths:
            if os.path.exists(path):
                os.remove(path)
        raise
    store.chunks = M
    store.paths = paths
    store._chunk_counts = counts
    store._buffers = [[] for _ in range(M)]
    store.memory = {}
    log.debug("spilled %d records into %d chunks in %s", store.record_count, M, directory)
    return paths


def iter_records(path: str, block: int = 65536) -> Iterator[tuple[int, int]]:
    """Stream ``(idx1, idx2)`` records from a chunk file."""
    with open(path, "rb") as fh:
        while True:
            data = np.fromfile(fh, dtype=RECORD, count=2 * block)
            if data.size == 0:
                return
            yield from map(tuple, data.reshape(-1, 2).tolist())


def external_sort_chunk(path: str, budget: int) -> str:
    """Sort a chunk file by ``(idx1, idx2)`` holding at most ``budget`` records at a time.

    Sorted runs are written next to the chunk and merged k-way back into
    ``path``.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    runs: list[str] = []
    try:
        with open(path, "rb") as fh:
            while True:
                data = np.fromfile(fh, dtype=RECORD, count=2 * budget)
                if data.size == 0:
                    break
                recs = data.reshape(-1, 2)
                recs = recs[np.lexsort((recs[:, 1], recs[:, 0]))]
                run = f"{path}.run{len(runs)}"
                recs.tofile(run)
                runs.append(run)
        if len(runs) <= 1:
            if runs:
                os.replace(runs.pop(), path)
            return path
        out = path + ".sorted"
        block = max(1, budget // (len(runs) + 1))
        merged = heapq.merge(*(iter_records(r, block) for r in runs))
        with open(out, "wb") as fh:
            buf: list[int] = []
            for idx1, idx2 in merged:
                buf.append(idx1)
                buf.append(idx2)
                if len(buf) >= 2 * block:
                    np.asarray(buf, dtype=RECORD).tofile(fh)
                    buf.clear()
            np.asarray(buf, dtype=RECORD).tofile(fh)
        os.replace(out, path)
        return path
    finally:
        for run in runs:
            if os.path.exists(run):
                os.remove(run)


def find_joists(E: Iterable[Simplex], store: CandidateStore | None = None) -> JoistMap:
    """Validated joists among the equally sized simplices ``E``.

    Returns a map from simplex to its apex vertices; simplices in no joist
    are absent.
    """
    table = sorted(set(E))
    if not table:
        return {}
    size = len(table[0])
    if any(len(s) != size for s in table):
        raise ValueError("simplices in E must all have the same size")
    own = store is None
    if store is None:
        store = CandidateStore()
    try:
        index: dict[Simplex, list[int]] = {}
        for sid, s in enumerate(table):
            merge_candidates(store, find_matches(s, index), sid, table)
            for code in codes(s):
                index.setdefault(code, []).append(sid)
        del index
        return validate_joists(store.groups(), table)
    finally:
        if own:
            store.close()
