from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import word
from oracles import (
    all_factorizations, brute_M, brute_T, naive_expand, partitionable, random_dictionary,
    random_slp,
)
from slpwordbreak.boolmat import BoolMatrix, mat_mul
from slpwordbreak.dictionary import Dictionary
from slpwordbreak.engine import (
    QueryState, build_index, compute_M, compute_T, folklore_solve, load_index, query,
    save_index, solve, solve_compressed, terminal_matrix, witness,
)
from slpwordbreak.errors import (
    ExpansionTooLarge, IndexFormatError, MemoryBudgetError, PositionError,
)
from slpwordbreak.slp import build_balanced_slp, expand, power_slp, repeat_slp

AB_B = Dictionary([word("ab"), word("b")])


@pytest.mark.parametrize("text, want", [
    ("abbab", [1, 0, 1, 1, 0, 1]),
    ("a", [1, 0]),
    ("", [1]),
])
def test_folklore_examples(text, want):
    assert list(folklore_solve(word(text), AB_B)) == want


def test_folklore_matches_enumeration():
    rng = random.Random(0)
    for _ in range(300):
        text = [rng.randrange(3) for _ in range(rng.randint(0, 14))]
        words = random_dictionary(rng, text, 3)
        f = folklore_solve(text, Dictionary(words))
        for i in range(len(text) + 1):
            assert f[i] == int(bool(all_factorizations(text[:i], words)))


def test_T_examples(abbab):
    t3 = compute_T(abbab, AB_B, 2)
    assert t3.to_lists() == [[0, 1, 0], [0, 1, 0], [0, 0, 0]]
    t4 = compute_T(abbab, AB_B, 3)
    assert t4.to_lists() == [[0, 1, 0], [1, 0, 0], [1, 0, 0]]
    assert compute_T(abbab, Dictionary([]), 2).to_lists() == [[0]]
    with pytest.raises(ValueError):
        compute_T(abbab, AB_B, 0)


def test_M_examples(abbab):
    m1, m2 = terminal_matrix(ord("a"), AB_B), terminal_matrix(ord("b"), AB_B)
    assert m2.to_lists() == [[1, 1, 0], [1, 0, 0], [0, 0, 0]]
    assert compute_M(abbab, AB_B, 1).to_lists() == m2.to_lists()
    m3 = compute_M(abbab, AB_B, 2, (m1, m2), compute_T(abbab, AB_B, 2))
    assert m3.to_lists() == [[1, 0, 1], [1, 1, 0], [1, 0, 0]]
    m4 = compute_M(abbab, AB_B, 3, (m3, m2), compute_T(abbab, AB_B, 3))
    assert m4.to_lists() == [[1, 1, 0], [1, 1, 1], [1, 1, 0]]
    for v, mat in ((1, m2), (2, m3), (3, m4)):
        assert mat.to_lists() == brute_M(naive_expand(abbab, v), AB_B.words, 2)


def test_bare_product_misses_side_cases(abbab):
    m1, m2 = terminal_matrix(ord("a"), AB_B), terminal_matrix(ord("b"), AB_B)
    t3 = compute_T(abbab, AB_B, 2)
    bare = mat_mul(m1, mat_mul(t3, m2))
    assert bare[0, 2] == 0
    assert compute_M(abbab, AB_B, 2, (m1, m2), t3)[0, 2] == 1


def _definition_conformance(seed: int, count: int):
    rng = random.Random(seed)
    for _ in range(count):
        alphabet = rng.randint(1, 3)
        slp = random_slp(rng, 64, alphabet, extra=20)
        text = naive_expand(slp)
        words = random_dictionary(rng, text, alphabet, k_max=8, m_max=6)
        d = Dictionary(words)
        index = build_index(slp, d, balance_first=False)
        for v in range(slp.size):
            exp_v = naive_expand(slp, v)
            assert index.M[v].to_lists() == brute_M(exp_v, words, d.m), (v, exp_v, words)
            if slp.token[v] < 0:
                sa = naive_expand(slp, slp.left[v])
                sb = naive_expand(slp, slp.right[v])
                assert index.T[v].to_lists() == brute_T(sa, sb, words, d.m)
                assert index.T[v][0, 0] == 0


def test_definition_conformance_random():
    _definition_conformance(100, 60)


def test_empty_dictionary_band(abbab):
    d = Dictionary([])
    index = build_index(abbab, d, balance_first=False)
    assert not solve(index)
    for v in range(abbab.size):
        assert index.M[v].to_lists() == [[int(abbab.length[v] == 0)]]
    bigger = Dictionary([(999,) * 3])  # m = 3, never matches
    index = build_index(abbab, bigger, balance_first=False)
    for v in range(abbab.size):
        lv = abbab.length[v]
        assert index.M[v].to_lists() == [[int(i + j == lv) for j in range(4)] for i in range(4)]
        if abbab.token[v] < 0:
            assert index.T[v].count() == 0


def test_solve_examples(abbab):
    assert solve(build_index(abbab, AB_B))
    assert not solve(build_index(abbab, Dictionary([word("ab")])))
    assert solve(build_index(abbab, AB_B)) == bool(folklore_solve(expand(abbab), AB_B)[-1])


def test_power_of_two():
    slp = power_slp(ord("a"), 30)
    d = Dictionary([word("aa"), word("aaa")])
    index = build_index(slp, d)
    assert index.stats["rules"] == 31
    assert solve(index)
    assert solve_compressed(slp, d)
    assert index.M[slp.root][0, 0] == 1


@pytest.mark.parametrize("i, j, want", [(2, 3, True), (3, 4, False), (1, 5, True)])
def test_query_examples(abbab, i, j, want):
    index = build_index(abbab, AB_B)
    assert query(index, i, j) is want
    assert index.query(1, 5) == index.solve()


def test_query_rejects_bad_ranges(abbab):
    index = build_index(abbab, AB_B)
    for i, j in [(0, 1), (4, 3), (1, 6)]:
        with pytest.raises(PositionError):
            query(index, i, j)


def test_query_exhaustive_small():
    rng = random.Random(8)
    for trial in range(40):
        n = rng.randint(1, 48)
        sigma = rng.randint(1, 3)
        text = [rng.randrange(sigma) for _ in range(n)]
        words = random_dictionary(rng, text, sigma, k_max=8, m_max=rng.choice([3, 6, 10]))
        d = Dictionary(words)
        slp = build_balanced_slp(text) if trial % 2 else random_slp_for(rng, text)
        index = build_index(slp, d, balance_first=bool(trial % 3))
        for i in range(1, n + 1):
            f = folklore_solve(text[i - 1:], d)
            for j in range(i, n + 1):
                assert query(index, i, j) == bool(f[j - i + 1]), (text, words, i, j)


def random_slp_for(rng: random.Random, text):
    """Unbalanced SLP for ``text``: random split points, no sharing."""
    from slpwordbreak.slp import SlpBuilder
    b = SlpBuilder()

    def build(lo, hi):
        if hi - lo == 1:
            return b.terminal(text[lo])
        mid = rng.randint(lo + 1, hi - 1)
        return b.pair(build(lo, mid), build(mid, hi))

    return b.finish(build(0, len(text)))


def test_query_on_long_periodic_text():
    rng = random.Random(12)
    base = [rng.randrange(2) for _ in range(16)]
    slp = repeat_slp(base, 6)  # N = 1024
    text = base * 64
    for _ in range(5):
        words = random_dictionary(rng, text, 2, k_max=10, m_max=12)
        d = Dictionary(words)
        index = build_index(slp, d)
        assert solve(index) == bool(folklore_solve(text, d)[-1])
        for _ in range(150):
            i = rng.randint(1, len(text))
            j = rng.randint(i, min(len(text), i + rng.choice([5, 40, 400])))
            assert query(index, i, j) == bool(folklore_solve(text[i - 1:j], d)[-1])


def test_monotone_in_dictionary():
    rng = random.Random(21)
    for _ in range(100):
        n = rng.randint(1, 24)
        text = [rng.randrange(2) for _ in range(n)]
        slp = build_balanced_slp(text)
        pool = random_dictionary(rng, text, 2, k_max=8, m_max=5)
        ranges = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        sample = rng.sample(ranges, min(12, len(ranges)))
        prev = None
        for k in range(len(pool) + 1):
            index = build_index(slp, Dictionary(pool[:k]))
            now = [solve(index)] + [query(index, i, j) for i, j in sample]
            if prev is not None:
                assert all(b or not a for a, b in zip(prev, now))
            prev = now


def test_witness():
    from slpwordbreak.slp import parse_slp
    abbab = parse_slp("R 0 T 97\nR 1 T 98\nR 2 N 0 1\nR 3 N 2 1\nR 4 N 3 2\nS 4\n")
    assert witness(abbab, AB_B) == [2, 1, 2]
    assert witness(abbab, Dictionary([word("ab")])) is None
    b = parse_slp("R 0 T 98\nS 0\n")
    assert witness(b, Dictionary([word("b")])) == [1]
    with pytest.raises(ExpansionTooLarge):
        witness(power_slp(0, 30), Dictionary([(0,)]), limit=1000)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=40), st.integers(0, 10**6))
def test_witness_factors_are_words(text, seed):
    rng = random.Random(seed)
    words = random_dictionary(rng, text, 3)
    d = Dictionary(words)
    got = witness(build_balanced_slp(text), d)
    assert (got is not None) == partitionable(text, words)
    if got is not None:
        assert sum(got) == len(text)
        pos = 0
        for ell in got:
            assert tuple(text[pos:pos + ell]) in d
            pos += ell


def test_memory_cap(abbab):
    with pytest.raises(MemoryBudgetError):
        build_index(abbab, AB_B, memory_cap=10)


def test_query_state_vector():
    st_ = QueryState(3)
    assert st_.vector.to_list() == [1, 0, 0, 0]
    assert st_.context.maxlen == 3


def test_index_round_trip(tmp_path, abbab):
    index = build_index(abbab, AB_B)
    path = tmp_path / "abbab.swbi"
    save_index(index, path, abbab)
    assert path.read_bytes()[:4] == b"SWBI"
    loaded = load_index(path, abbab, AB_B)
    assert [m.rows for m in loaded.M] == [m.rows for m in index.M]
    assert loaded.query(2, 3) and not loaded.query(3, 4)
    with pytest.raises(IndexFormatError):
        load_index(path, abbab, Dictionary([word("ab")]))
    with pytest.raises(IndexFormatError):
        load_index(path, build_balanced_slp(word("abbaa")), AB_B)


def test_index_round_trip_unbalanced(tmp_path, abbab):
    index = build_index(abbab, AB_B, balance_first=False)
    path = tmp_path / "raw.swbi"
    save_index(index, path, abbab)
    loaded = load_index(path, abbab, AB_B)
    assert not loaded.balanced
    assert loaded.slp is abbab
    assert [t.rows if t else None for t in loaded.T] == [t.rows if t else None for t in index.T]


def test_bad_magic(tmp_path, abbab):
    path = tmp_path / "junk"
    path.write_bytes(b"NOPE" + bytes(40))
    with pytest.raises(IndexFormatError):
        load_index(path, abbab, AB_B)


def test_compute_m_requires_children(abbab):
    with pytest.raises(ValueError):
        compute_M(abbab, AB_B, 2)
    assert isinstance(compute_M(abbab, AB_B, 0), BoolMatrix)


def test_word_spanning_many_segments():
    from slpwordbreak.slp import decompose
    slp = build_balanced_slp(word("abcdefgh"))
    segs = decompose(slp, 2, 7)
    assert len(segs) >= 3
    index = build_index(slp, Dictionary([word("bcdefg")]), balance_first=False)
    assert query(index, 2, 7)
    assert not query(index, 2, 8)
    index = build_index(slp, Dictionary([word("bcdefg"), word("h"), word("a")]))
    assert query(index, 1, 8) and solve(index)


def test_index_affixes_match_navigation():
    from slpwordbreak.slp import expand_affix
    rng = random.Random(5)
    for _ in range(20):
        text = [rng.randrange(3) for _ in range(rng.randint(1, 60))]
        d = Dictionary(random_dictionary(rng, text, 3, m_max=9))
        index = build_index(random_slp_for(rng, text), d, balance_first=False)
        for v in range(index.slp.size):
            assert list(index.prefix[v]) == expand_affix(index.slp, v, d.m, "prefix")
            assert list(index.suffix[v]) == expand_affix(index.slp, v, d.m, "suffix")
