import os
import struct
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _instances import CF, DC, DH, JK, JL, LB, GOLDEN_ROWS
from simtruss.core import SimplicialComplex, codes
from simtruss.joists import (BudgetExceededError, CandidateStore, InvariantError,
                             external_sort_chunk, find_joists, find_matches, iter_records,
                             merge_candidates, spill_candidates, validate_joists)
from simtruss.oracle import brute_joists

level_sets = st.integers(2, 4).flatmap(
    lambda q: st.sets(st.tuples(*[st.integers(0, 7)] * q).map(lambda t: tuple(sorted(set(t))))
                      .filter(lambda t: len(t) == q), max_size=30))


def index_of(simplices):
    index = {}
    for sid, s in enumerate(simplices):
        for c in codes(s):
            index.setdefault(c, []).append(sid)
    return index


def test_find_matches():
    index = index_of([(1, 2), (1, 3)])
    assert find_matches((2, 3), index) == {0, 1}
    assert find_matches((2, 3), {}) == set()
    assert find_matches((3, 4), index_of([(1, 2)])) == set()


def test_merge_records_under_representative():
    table = [(1, 2), (1, 3), (2, 3)]
    store = CandidateStore()
    merge_candidates(store, {1, 2}, 0, table)
    assert store.memory == {0: [1, 2]}


def test_merge_neither_direction():
    table = [(1, 3), (2, 3)]
    store = CandidateStore()
    merge_candidates(store, {0}, 1, table)
    assert store.record_count == 0
    merge_candidates(store, set(), 1, table)
    assert store.record_count == 0


def test_merge_rejects_non_mates():
    store = CandidateStore()
    with pytest.raises(InvariantError):
        merge_candidates(store, {0}, 1, [(1, 2), (3, 4)])


def test_validate_four_clique_minus_edge():
    table = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
    J = validate_joists([(0, [1, 3, 2, 4])], table)
    assert J == {(1, 2): {3, 4}, (1, 3): {2}, (2, 3): {1}, (1, 4): {2}, (2, 4): {1}}
    assert J == brute_joists(table)


def test_validate_incomplete_and_empty():
    assert validate_joists([(0, [1])], [(1, 2), (1, 3)]) == {}
    assert validate_joists([], []) == {}


def test_validate_rejects_split_group():
    table = [(1, 2), (1, 3), (2, 3)]
    with pytest.raises(InvariantError):
        validate_joists([(0, [1]), (0, [2])], table)


def test_find_joists_gadget(gadget_complex):
    J = find_joists(gadget_complex.faces(2))
    assert J[(JK, JL)] == {CF, DC, LB, DH}
    assert J[(JK, LB)] == {JL}
    for s, nj, _, _ in GOLDEN_ROWS:
        if len(s) == 2:
            assert len(J.get(tuple(sorted(s)), ())) == nj


def test_find_joists_k5(k5):
    J = find_joists(k5.maximal)
    assert len(J) == 10 and all(len(a) == 3 for a in J.values())


def test_find_joists_trivial():
    assert find_joists([(1, 2)]) == {}
    assert find_joists([]) == {}
    with pytest.raises(ValueError):
        find_joists([(1, 2), (1, 2, 3)])


def _filled(records, **kw):
    store = CandidateStore(**kw)
    for a, b in records:
        store.add(a, b)
    return store


def _chunk(path):
    return [tuple(r) for r in np.fromfile(path, dtype="<u8").reshape(-1, 2).tolist()]


def test_spill_routes_by_modulo(tmp_path):
    records = [(i, j) for i in range(5) for j in (7, 9)]
    store = _filled(records, component=3, level=2, keep_workdir=True)
    paths = spill_candidates(store, 2, str(tmp_path))
    assert [os.path.basename(p) for p in paths] == ["cand_3_2_0.bin", "cand_3_2_1.bin"]
    assert {r[0] for r in _chunk(paths[0])} == {0, 2, 4}
    assert {r[0] for r in _chunk(paths[1])} == {1, 3}
    assert store.memory == {}
    store.add(5, 1)
    store.flush()
    assert _chunk(paths[1])[-1] == (5, 1)


def test_spill_single_chunk_and_empty(tmp_path):
    records = [(2, 1), (0, 3)]
    store = _filled(records)
    (path,) = spill_candidates(store, 1, str(tmp_path))
    assert sorted(_chunk(path)) == sorted(records)
    empty = tmp_path / "empty"
    empty.mkdir()
    paths = spill_candidates(CandidateStore(), 3, str(empty))
    assert len(paths) == 3 and all(os.path.getsize(p) == 0 for p in paths)


def test_record_format(tmp_path):
    store = _filled([(1, 2**40 + 3)])
    (path,) = spill_candidates(store, 1, str(tmp_path))
    with open(path, "rb") as fh:
        assert fh.read() == struct.pack("<QQ", 1, 2**40 + 3)


def _write(path, records):
    np.asarray(records, dtype="<u8").reshape(-1, 2).tofile(path)


@pytest.mark.parametrize("records", [[(3, 1), (0, 2), (3, 0)], [(0, 1), (0, 2), (4, 4)]])
def test_external_sort_small(tmp_path, records):
    path = str(tmp_path / "c.bin")
    _write(path, records)
    external_sort_chunk(path, 2)
    assert list(iter_records(path)) == sorted(records)
    assert os.listdir(tmp_path) == ["c.bin"]


def test_external_sort_large(tmp_path):
    rng = np.random.default_rng(5)
    recs = rng.integers(0, 5000, size=(10**5, 2), dtype=np.uint64)
    path = str(tmp_path / "c.bin")
    recs.astype("<u8").tofile(path)
    external_sort_chunk(path, 10**3)
    expected = recs[np.lexsort((recs[:, 1], recs[:, 0]))]
    assert np.array_equal(np.fromfile(path, dtype="<u8").reshape(-1, 2), expected)


def test_chunks_deleted_unless_kept(tmp_path):
    E = SimplicialComplex((u, v) for u in range(6) for v in range(u + 1, 6)).maximal
    with CandidateStore(budget=4, chunks=3, workdir=tmp_path, level=2) as store:
        find_joists(E, store)
        assert store.spilled
        assert sorted(os.listdir(tmp_path)) == [f"cand_0_2_{i}.bin" for i in range(3)]
    assert os.listdir(tmp_path) == []
    with CandidateStore(budget=4, chunks=3, workdir=tmp_path, keep_workdir=True) as store:
        find_joists(E, store)
    assert len(os.listdir(tmp_path)) == 3


def test_strict_budget_raises(tmp_path):
    E = SimplicialComplex((u, v) for u in range(6) for v in range(u + 1, 6)).maximal
    with CandidateStore(budget=2, chunks=1, workdir=tmp_path, strict=True) as store:
        with pytest.raises(BudgetExceededError, match="level 2"):
            find_joists(E, store)


@settings(max_examples=150, deadline=None)
@given(level_sets)
def test_oracle_equivalence(E):
    assert find_joists(E) == brute_joists(E)


@settings(max_examples=60, deadline=None)
@given(level_sets, st.integers(1, 8), st.integers(1, 40))
def test_spill_transparency(E, M, budget):
    with CandidateStore(budget=budget, chunks=M) as store:
        assert find_joists(E, store) == find_joists(E)


@settings(max_examples=80, deadline=None)
@given(level_sets)
def test_each_pair_recorded_at_most_once(E):
    store = CandidateStore()
    find_joists(E, store)
    table = sorted(E)
    seen = set()
    for idx1, mates in store.groups():
        for idx2 in mates:
            pair = frozenset((idx1, idx2))
            assert pair not in seen
            seen.add(pair)
            a, b = table[idx1], table[idx2]
            assert len(set(a) & set(b)) == len(a) - 1
            # stored under the member lacking the union's largest vertex
            assert max(a + b) not in a
    assert len(seen) == store.record_count


@settings(max_examples=80, deadline=None)
@given(level_sets)
def test_apex_symmetry(E):
    J = find_joists(E)
    for s, apexes in J.items():
        for w in apexes:
            assert w not in s
            W = tuple(sorted(s + (w,)))
            for t in combinations(W, len(s)):
                assert t in E
                (a,) = set(W) - set(t)
                assert a in J[t]
