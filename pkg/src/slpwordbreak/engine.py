"""Word Break solvers for plain and SLP-compressed text.

For every nonterminal ``v`` the index keeps an ``(m+1) x (m+1)`` boolean
matrix ``M[v]`` whose bit ``(i, j)`` says that exp(v) with ``i`` tokens cut
from the front and ``j`` from the back splits into dictionary words (the
empty string always does). Binary rules ``v -> a b`` also keep the
crossing table ``T[v]``: bit ``(i, j)`` is set when the length-``i`` suffix
of exp(a) followed by the length-``j`` prefix of exp(b) is a word.

``M[v]`` is ``M[a] x T[v] x M[b]`` OR-ed with three side cases the product
cannot see: the empty middle (``i + j = len(v)``), a middle lying wholly in
``a``, and a middle lying wholly in ``b``.
"""

from __future__ import annotations

import hashlib
import struct
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from . import slp as slpmod
from .boolmat import BoolMatrix, BoolVector, mat_mul, vec_mat
from .dictionary import Dictionary, rev_scan, scan_matches
from .errors import ExpansionTooLarge, IndexFormatError, MemoryBudgetError, PositionError
from .slp import Slp

DEFAULT_MEMORY_CAP = 8 * 2**30


# --------------------------------------------------------------------------
# uncompressed baseline

def folklore_solve(text: Sequence[int], dictionary: Dictionary) -> bytearray:
    """Prefix table ``F``: ``F[i] == 1`` iff ``text[:i]`` splits into words."""
    n = len(text)
    f = bytearray(n + 1)
    f[0] = 1
    for i in range(n):
        if f[i]:
            for ell in scan_matches(dictionary, text, i):
                f[i + ell] = 1
    return f


def witness(slp: Slp, dictionary: Dictionary, limit: int = 10**7) -> list[int] | None:
    """Word lengths of one factorization of exp(root), or ``None``."""
    text = slpmod.expand(slp, limit)
    n = len(text)
    back = [0] * (n + 1)
    reach = bytearray(n + 1)
    reach[0] = 1
    for i in range(n):
        if reach[i]:
            for ell in scan_matches(dictionary, text, i):
                if not reach[i + ell]:
                    reach[i + ell] = 1
                    back[i + ell] = ell
    if not reach[n]:
        return None
    out = []
    pos = n
    while pos:
        out.append(back[pos])
        pos -= back[pos]
    out.reverse()
    return out


# --------------------------------------------------------------------------
# per-rule tables

def crossing_table(suffix: Sequence[int], prefix: Sequence[int],
                   dictionary: Dictionary) -> BoolMatrix:
    """Bit ``(i, l)`` set iff ``suffix[-i:] + prefix[:l]`` is a word (i, l >= 0)."""
    m = dictionary.m
    children = dictionary.forward_trie.children
    final = dictionary.forward_trie.final
    rows = [0] * (m + 1)
    ls = len(suffix)
    for i in range(ls + 1):
        node = 0
        for tok in suffix[ls - i:]:
            node = children[node].get(tok)
            if node is None:
                break
        if node is None:
            continue
        row = 1 if (i and final[node]) else 0
        for ell, tok in enumerate(prefix[:m - i], 1):
            node = children[node].get(tok)
            if node is None:
                break
            if final[node]:
                row |= 1 << ell
        rows[i] = row
    return BoolMatrix(m + 1, rows)


def compute_T(slp: Slp, dictionary: Dictionary, v: int) -> BoolMatrix:
    if slp.token[v] >= 0:
        raise ValueError(f"rule {v} is a terminal rule; T is defined for binary rules")
    m = dictionary.m
    a, b = slp.left[v], slp.right[v]
    return crossing_table(slpmod.expand_affix(slp, a, m, "suffix"),
                          slpmod.expand_affix(slp, b, m, "prefix"), dictionary)


def terminal_matrix(token: int, dictionary: Dictionary) -> BoolMatrix:
    m = dictionary.m
    mat = BoolMatrix(m + 1)
    if m >= 1:
        mat.rows[0] = 2
        mat.rows[1] = 1
    if (token,) in dictionary:
        mat.rows[0] |= 1
    return mat


def combine(ma: BoolMatrix, tv: BoolMatrix, mb: BoolMatrix,
            len_a: int, len_b: int) -> BoolMatrix:
    """``M[v]`` for ``v -> a b`` from the children's tables."""
    dim = ma.dim
    m = dim - 1
    mask = (1 << dim) - 1
    out = mat_mul(ma, mat_mul(tv, mb))
    rows = out.rows
    lv = len_a + len_b
    # empty middle: i + j == len(v)
    for i in range(max(0, lv - m), min(m, lv) + 1):
        rows[i] |= 1 << (lv - i)
    # middle inside a: M_a[i, j - len(b)]
    if len_b <= m:
        for i, r in enumerate(ma.rows):
            if r:
                rows[i] |= (r << len_b) & mask
    # middle inside b: M_b[i - len(a), j]
    if len_a <= m:
        mbrows = mb.rows
        for i in range(len_a, dim):
            rows[i] |= mbrows[i - len_a]
    return out


def compute_M(slp: Slp, dictionary: Dictionary, v: int,
              children: tuple[BoolMatrix, BoolMatrix] | None = None,
              tv: BoolMatrix | None = None) -> BoolMatrix:
    if slp.token[v] >= 0:
        return terminal_matrix(slp.token[v], dictionary)
    if children is None or tv is None:
        raise ValueError("binary rule needs both child matrices and its T table")
    a, b = slp.left[v], slp.right[v]
    return combine(children[0], tv, children[1], slp.length[a], slp.length[b])


def estimate_bytes(g: int, m: int) -> int:
    n = m + 1
    return 2 * g * n * ((n + 63) // 64) * 8


def _affixes(slp: Slp, m: int):
    """Length-``min(m, len(v))`` prefix and suffix of every rule, bottom-up."""
    pre: list[tuple[int, ...]] = [()] * slp.size
    suf: list[tuple[int, ...]] = [()] * slp.size
    for v in slp.order:
        if slp.token[v] >= 0:
            pre[v] = suf[v] = (slp.token[v],) if m else ()
            continue
        a, b = slp.left[v], slp.right[v]
        pa, sb = pre[a], suf[b]
        pre[v] = pa if len(pa) >= m else (pa + pre[b])[:m]
        suf[v] = sb if len(sb) >= m else (suf[a] + sb)[-m:]
    return pre, suf


def _tables(slp: Slp, dictionary: Dictionary, keep: bool, stats: dict):
    """Compute M (and T) bottom-up; returns ``(M, T, prefixes, suffixes)``.

    With ``keep=False`` a child's tables are dropped after its last parent
    is done, so only the root matrix survives.
    """
    m = dictionary.m
    g = slp.size
    token, left, right, length = slp.token, slp.left, slp.right, slp.length
    M: list[BoolMatrix | None] = [None] * g
    T: list[BoolMatrix | None] = [None] * g
    pre: list[tuple[int, ...] | None] = [None] * g
    suf: list[tuple[int, ...] | None] = [None] * g
    cache: dict[tuple, BoolMatrix] = {}
    hits = 0
    if not keep:
        parents = [0] * g
        for v in range(g):
            if token[v] < 0:
                parents[left[v]] += 1
                parents[right[v]] += 1
    for v in slp.order:
        tok = token[v]
        if tok >= 0:
            M[v] = terminal_matrix(tok, dictionary)
            pre[v] = suf[v] = (tok,) if m else ()
            continue
        a, b = left[v], right[v]
        sa, pb = suf[a], pre[b]
        key = (sa, pb)
        tv = cache.get(key)
        if tv is None:
            tv = cache[key] = crossing_table(sa, pb, dictionary)
        else:
            hits += 1
        M[v] = combine(M[a], tv, M[b], length[a], length[b])
        if keep:
            T[v] = tv
        pa = pre[a]
        pre[v] = pa if len(pa) >= m else (pa + pb)[:m]
        sb = suf[b]
        suf[v] = sb if len(sb) >= m else (sa + sb)[-m:]
        if not keep:
            for c in (a, b):
                parents[c] -= 1
                if parents[c] == 0:
                    M[c] = pre[c] = suf[c] = None
    stats["t_cache_hits"] = hits
    stats["t_distinct"] = len(cache)
    return M, T, pre, suf


# --------------------------------------------------------------------------
# index

@dataclass
class WordBreakIndex:
    slp: Slp
    dictionary: Dictionary
    M: list[BoolMatrix]
    T: list[BoolMatrix | None]
    balanced: bool = True
    stats: dict = field(default_factory=dict)
    # first/last min(m, len) tokens of each rule; saves a descent per segment
    prefix: list = field(default=None, repr=False)
    suffix: list = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.prefix is None or self.suffix is None:
            self.prefix, self.suffix = _affixes(self.slp, self.dictionary.m)

    @property
    def m(self) -> int:
        return self.dictionary.m

    def solve(self) -> bool:
        return solve(self)

    def query(self, i: int, j: int) -> bool:
        return query(self, i, j)


def build_index(slp: Slp, dictionary: Dictionary, balance_first: bool = True,
                memory_cap: int = DEFAULT_MEMORY_CAP) -> WordBreakIndex:
    """Precompute ``M[v]`` and ``T[v]`` for every nonterminal.

    Balancing only matters for query time (segment count); whole-text
    solving is correct on any SLP.
    """
    started = time.perf_counter()
    source_rules = slp.size
    if balance_first:
        slp = slpmod.balance(slp)
    need = estimate_bytes(slp.size, dictionary.m)
    if need > memory_cap:
        raise MemoryBudgetError(need, memory_cap)
    stats: dict = {"source_rules": source_rules, "rules": slp.size,
                   "height": slp.height[slp.root], "m": dictionary.m,
                   "matrix_bytes": need}
    M, T, pre, suf = _tables(slp, dictionary, True, stats)
    stats["build_seconds"] = time.perf_counter() - started
    return WordBreakIndex(slp, dictionary, M, T, balance_first, stats, pre, suf)


def solve(index: WordBreakIndex) -> bool:
    return bool(index.M[index.slp.root].rows[0] & 1)


def solve_compressed(slp: Slp, dictionary: Dictionary) -> bool:
    """Whole-text answer without keeping per-rule tables."""
    M = _tables(slp, dictionary, False, {})[0]
    return bool(M[slp.root].rows[0] & 1)


@dataclass
class QueryState:
    """Partition points near the frontier plus the last ``m`` tokens.

    Bit ``o`` of ``u`` is set when the processed prefix minus its last
    ``o`` tokens splits into words.
    """
    m: int
    u: int = 1
    context: deque = field(default_factory=deque)

    def __post_init__(self) -> None:
        self.context = deque(self.context, maxlen=self.m)

    @property
    def vector(self) -> BoolVector:
        return BoolVector(self.m + 1, self.u)


def _push_literal(state: QueryState, tok: int, dictionary: Dictionary, mask: int) -> None:
    state.context.append(tok)
    u = (state.u << 1) & mask
    for ell in rev_scan(dictionary, state.context):
        if (u >> ell) & 1:
            u |= 1
            break
    state.u = u


def _push_segment(state: QueryState, index: WordBreakIndex, v: int) -> None:
    dictionary = index.dictionary
    m = dictionary.m
    children = dictionary.forward_trie.children
    final = dictionary.forward_trie.final
    ctx = list(state.context)
    head = index.prefix[v]
    # start vector over the rows of M[v]: bit l set when a word can end l
    # tokens into the segment, starting from a live partition point
    start = state.u & 1
    u = state.u >> 1
    k = 1
    while u and k <= len(ctx):
        if u & 1:
            node = 0
            for tok in ctx[len(ctx) - k:]:
                node = children[node].get(tok)
                if node is None:
                    break
            if node is not None:
                if final[node]:
                    start |= 1
                for ell, tok in enumerate(head[:m - k], 1):
                    node = children[node].get(tok)
                    if node is None:
                        break
                    if final[node]:
                        start |= 1 << ell
        u >>= 1
        k += 1
    state.u = vec_mat(BoolVector(m + 1, start), index.M[v]).bits
    state.context = deque(index.suffix[v], maxlen=m)


def query(index: WordBreakIndex, i: int, j: int) -> bool:
    """Does ``w[i..j]`` (1-based, inclusive) split into dictionary words?

    Segments shorter than ``m`` are fed token by token; longer ones go
    through their precomputed ``M`` matrix after resolving the words that
    cross into them from the buffered context.
    """
    slp = index.slp
    m = index.dictionary.m
    mask = (1 << (m + 1)) - 1
    state = QueryState(m)
    for seg in slpmod.decompose(slp, i, j):
        if seg.length < m:
            for tok in slpmod.expand_node(slp, seg.node):
                _push_literal(state, tok, index.dictionary, mask)
        else:
            _push_segment(state, index, seg.node)
    return bool(state.u & 1)


# --------------------------------------------------------------------------
# persistence

MAGIC = b"SWBI"
FORMAT_VERSION = 1


def slp_digest(slp: Slp) -> bytes:
    return hashlib.sha256(slpmod.format_slp(slp).encode()).digest()


def save_index(index: WordBreakIndex, path, source: Slp) -> None:
    """Write ``index``; ``source`` is the SLP the index was built from."""
    s = index.slp
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IIQQB", FORMAT_VERSION, index.m, s.size, s.root,
                             1 if index.balanced else 0))
        fh.write(slp_digest(source))
        fh.write(index.dictionary.digest())
        for v in range(s.size):
            fh.write(index.M[v].to_bytes())
            if s.token[v] < 0:
                fh.write(index.T[v].to_bytes())


def load_index(path, source: Slp, dictionary: Dictionary) -> WordBreakIndex:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != MAGIC:
        raise IndexFormatError("not an index file (bad magic)")
    version, m, g, root, balanced = struct.unpack_from("<IIQQB", data, 4)
    if version != FORMAT_VERSION:
        raise IndexFormatError(f"unsupported index format version {version}")
    off = 4 + struct.calcsize("<IIQQB")
    slp_hash, dict_hash = data[off:off + 32], data[off + 32:off + 64]
    off += 64
    if slp_hash != slp_digest(source):
        raise IndexFormatError("SLP does not match the one the index was built from")
    if dict_hash != dictionary.digest() or m != dictionary.m:
        raise IndexFormatError("dictionary does not match the one the index was built from")
    slp = slpmod.balance(source) if balanced else source
    if slp.size != g or slp.root != root:
        raise IndexFormatError("rebuilt SLP shape differs from the index header")
    M: list[BoolMatrix] = []
    T: list[BoolMatrix | None] = []
    for v in range(g):
        mat, off = BoolMatrix.from_bytes(data, off)
        M.append(mat)
        if slp.token[v] < 0:
            mat, off = BoolMatrix.from_bytes(data, off)
            T.append(mat)
        else:
            T.append(None)
    if off != len(data):
        raise IndexFormatError("trailing bytes after the last matrix block")
    return WordBreakIndex(slp, dictionary, M, T, bool(balanced),
                          {"rules": g, "m": m, "loaded_from": str(path)})


__all__ = [
    "DEFAULT_MEMORY_CAP", "ExpansionTooLarge", "PositionError", "QueryState",
    "WordBreakIndex", "build_index", "combine", "compute_M", "compute_T",
    "crossing_table", "folklore_solve", "load_index", "query", "save_index",
    "solve", "solve_compressed", "terminal_matrix", "witness",
]
