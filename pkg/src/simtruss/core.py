"""Simplicial complexes stored as their maximal simplices.

A simplex is a strictly ascending tuple of vertex ids. A complex keeps only
its maximal simplices plus an inverted index from each vertex to the
maximal simplices containing it; every other simplex is implicit (it belongs
to the complex iff it is a subset of some maximal simplex).

Input labels are arbitrary non-negative integers. ``parse_complex`` maps
them onto a dense 0-based range in ascending label order, so lexicographic
order on internal ids agrees with lexicographic order on the original
labels. ``SimplicialComplex.labels`` inverts the mapping on output.
"""
from __future__ import annotations

from collections.abc import Iterable
from itertools import combinations

Simplex = tuple[int, ...]


class ComplexParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def canonical(vertices: Iterable[int]) -> Simplex:
    """Return the canonical (sorted, duplicate-free) form of a vertex set."""
    s = tuple(sorted(vertices))
    for a, b in zip(s, s[1:]):
        if a == b:
            raise ValueError(f"duplicate vertex {a} in simplex")
    return s


def codes(s: Simplex) -> list[Simplex]:
    """All faces of ``s`` missing exactly one vertex, in position order."""
    return [s[:i] + s[i + 1:] for i in range(len(s))]


class SimplicialComplex:
    """Immutable complex given by its maximal simplices.

    ``labels[i]`` is the external label of internal vertex ``i``. Components
    produced by :func:`connected_components` share the parent's labels and
    internal ids.
    """

    def __init__(self, simplices: Iterable[Iterable[int]] = (),
                 labels: tuple[int, ...] | None = None):
        unique = {canonical(s) for s in simplices}
        unique.discard(())
        # larger simplices first so a candidate is only tested against
        # already-accepted maximal ones
        ordered = sorted(unique, key=lambda s: (-len(s), s))
        index: dict[int, list[int]] = {}
        maximal: list[Simplex] = []
        for s in ordered:
            if self._covered(s, index):
                continue
            mid = len(maximal)
            maximal.append(s)
            for v in s:
                index.setdefault(v, []).append(mid)
        # renumber in lexicographic order for deterministic ids
        order = sorted(range(len(maximal)), key=lambda i: maximal[i])
        self.maximal: tuple[Simplex, ...] = tuple(maximal[i] for i in order)
        by_vertex: dict[int, list[int]] = {}
        for mid, s in enumerate(self.maximal):
            for v in s:
                by_vertex.setdefault(v, []).append(mid)
        self.vertex_index: dict[int, tuple[int, ...]] = {
            v: tuple(by_vertex[v]) for v in sorted(by_vertex)}
        if labels is None:
            top = max(self.vertex_index, default=-1)
            labels = tuple(range(top + 1))
        self.labels = labels

    @staticmethod
    def _covered(s, index) -> bool:
        cands = None
        for v in s:
            ids = index.get(v)
            if not ids:
                return False
            cands = set(ids) if cands is None else cands.intersection(ids)
            if not cands:
                return False
        return bool(cands)

    @property
    def vertices(self) -> list[int]:
        return list(self.vertex_index)

    @property
    def max_size(self) -> int:
        return max((len(s) for s in self.maximal), default=0)

    def __len__(self) -> int:
        return len(self.maximal)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.maximal == other.maximal

    def __repr__(self) -> str:
        return (f"SimplicialComplex({len(self.maximal)} maximal simplices, "
                f"{len(self.vertex_index)} vertices)")

    def supersets(self, s: Simplex) -> set[int]:
        """Ids of the maximal simplices containing ``s``."""
        found: set[int] | None = None
        for v in s:
            ids = self.vertex_index.get(v)
            if ids is None:
                return set()
            found = set(ids) if found is None else found.intersection(ids)
            if not found:
                return found
        return found if found is not None else set()

    def external(self, s: Simplex) -> tuple[int, ...]:
        return tuple(self.labels[v] for v in s)

    def faces(self, size: int) -> set[Simplex]:
        """Every simplex of the complex with ``size`` vertices."""
        out: set[Simplex] = set()
        for m in self.maximal:
            out.update(combinations(m, size))
        return out

    def to_text(self) -> str:
        return "".join(" ".join(map(str, self.external(s))) + "\n" for s in self.maximal)


def parse_complex(text: str) -> SimplicialComplex:
    """Parse the maximal-simplex text format.

    One simplex per line as whitespace-separated decimal vertex ids. Lines
    starting with ``#`` and blank lines are skipped. Duplicate and subsumed
    lines are dropped.
    """
    rows: list[tuple[int, ...]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        row = []
        for tok in line.split():
            if not tok.isdigit():
                raise ComplexParseError(lineno, f"invalid vertex id {tok!r}")
            row.append(int(tok))
        if len(set(row)) != len(row):
            raise ComplexParseError(lineno, "duplicate vertex in simplex")
        rows.append(tuple(row))
    labels = sorted({v for row in rows for v in row})
    dense = {v: i for i, v in enumerate(labels)}
    return SimplicialComplex(([dense[v] for v in row] for row in rows), labels=tuple(labels))


def read_complex(path) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_complex(fh.read())


def contains(K: SimplicialComplex, s: Simplex) -> bool:
    return bool(s) and bool(K.supersets(s))


def connected_components(K: SimplicialComplex) -> list[SimplicialComplex]:
    """Split ``K`` by connectivity of its 1-skeleton.

    Components are ordered by their smallest vertex.
    """
    parent = {v: v for v in K.vertex_index}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in K.maximal:
        root = find(s[0])
        for v in s[1:]:
            r = find(v)
            if r != root:
                if r < root:
                    r, root = root, r
                parent[r] = root
    groups: dict[int, list[Simplex]] = {}
    for s in K.maximal:
        groups.setdefault(find(s[0]), []).append(s)
    return [SimplicialComplex(groups[r], labels=K.labels) for r in sorted(groups)]


def extend_simplices(S: Iterable[Simplex], C: SimplicialComplex, q: int) -> set[Simplex]:
    """Candidate simplices of size ``q``.

    For ``q == 2`` every edge of ``C``; otherwise each simplex of ``S`` grown
    by one vertex that co-occurs with it in some maximal simplex.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if q == 2:
        return C.faces(2)
    out: set[Simplex] = set()
    for s in S:
        if len(s) != q - 1:
            raise ValueError(f"simplex {s} does not have size {q - 1}")
        co: set[int] = set()
        for mid in C.supersets(s):
            co.update(C.maximal[mid])
        co.difference_update(s)
        for v in co:
            out.add(tuple(sorted(s + (v,))))
    return out


def lower_bound(K: SimplicialComplex, s: Simplex) -> int:
    """Size of the largest maximal simplex containing ``s`` minus ``len(s)``."""
    ids = K.supersets(s)
    if not ids:
        raise ValueError(f"simplex {s} is not in the complex")
    return max(len(K.maximal[i]) for i in ids) - len(s)
