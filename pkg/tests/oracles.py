"""Brute-force reference implementations used only by the tests.

Nothing here touches the tries, the bitset kernels or the SLP navigation
code under test.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Sequence

from slpwordbreak.slp import Binary, Slp, Terminal


def partitionable(s: Sequence[int], words) -> bool:
    """Try every split point; memoized on the suffix start."""
    s = tuple(s)
    words = {tuple(w) for w in words}

    @lru_cache(maxsize=None)
    def rest(p: int) -> bool:
        if p == len(s):
            return True
        return any(s[p:q] in words and rest(q) for q in range(p + 1, len(s) + 1))

    return rest(0)


def all_factorizations(s: Sequence[int], words) -> list[list[int]]:
    s = tuple(s)
    words = {tuple(w) for w in words}
    out = []

    def go(p, acc):
        if p == len(s):
            out.append(list(acc))
            return
        for q in range(p + 1, len(s) + 1):
            if s[p:q] in words:
                acc.append(q - p)
                go(q, acc)
                acc.pop()

    go(0, [])
    return out


def naive_expand(slp: Slp, v: int | None = None) -> list[int]:
    rules = slp.rules
    memo: dict[int, list[int]] = {}

    def exp(x):
        if x not in memo:
            r = rules[x]
            memo[x] = [r.token] if isinstance(r, Terminal) else exp(r.left) + exp(r.right)
        return memo[x]

    return list(exp(slp.root if v is None else v))


def naive_matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    return [[int(any(a[i][k] and b[k][j] for k in range(n))) for j in range(n)]
            for i in range(n)]


def brute_M(s: Sequence[int], words, m: int) -> list[list[int]]:
    n = len(s)
    return [[int(i + j <= n and partitionable(s[i:n - j], words)) for j in range(m + 1)]
            for i in range(m + 1)]


def brute_T(sa: Sequence[int], sb: Sequence[int], words, m: int) -> list[list[int]]:
    words = {tuple(w) for w in words}
    la, lb = len(sa), len(sb)
    return [[int(i <= la and j <= lb and tuple(sa[la - i:]) + tuple(sb[:j]) in words)
             for j in range(m + 1)] for i in range(m + 1)]


def random_slp(rng: random.Random, max_len: int, alphabet: int,
               extra: int = 12) -> Slp:
    """Random SLP DAG: terminals, then random pairs of existing rules."""
    rules: list = [Terminal(t) for t in range(alphabet)]
    length = [1] * alphabet
    for _ in range(rng.randint(1, extra)):
        a, b = rng.randrange(len(rules)), rng.randrange(len(rules))
        if length[a] + length[b] <= max_len:
            rules.append(Binary(a, b))
            length.append(length[a] + length[b])
    # root: combine the longest rules until no more fit
    root = max(range(len(rules)), key=lambda v: length[v])
    # keep only rules reachable from root, renumbered bottom-up
    order, seen = [], set()

    def visit(v):
        if v in seen:
            return
        seen.add(v)
        r = rules[v]
        if isinstance(r, Binary):
            visit(r.left)
            visit(r.right)
        order.append(v)

    visit(root)
    new = {v: k for k, v in enumerate(order)}
    out = [Binary(new[rules[v].left], new[rules[v].right]) if isinstance(rules[v], Binary)
           else rules[v] for v in order]
    return Slp(out, new[root], alphabet)


def random_dictionary(rng: random.Random, text: Sequence[int], alphabet: int,
                      k_max: int = 8, m_max: int = 6) -> list[tuple[int, ...]]:
    """Mix of text substrings and random words so answers vary."""
    words = []
    for _ in range(rng.randint(1, k_max)):
        ell = rng.randint(1, m_max)
        if text and rng.random() < 0.7 and ell <= len(text):
            p = rng.randrange(len(text) - ell + 1)
            words.append(tuple(text[p:p + ell]))
        else:
            words.append(tuple(rng.randrange(alphabet) for _ in range(ell)))
    return words
