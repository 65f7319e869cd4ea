"""Word Break instances that encode 4k-clique detection.

Given a graph on vertices ``1..n`` and ``k``, k-cliques are identified with
integers in ``[1..N]``, ``N = n**k``, through their sorted vertex tuple read
in base ``n``. The generated text is highly compressible: every copy of
``1 2 ... N`` is one shared nonterminal, so the SLP has ``O(k N^2)`` rules
while the dictionary has total length ``O(N^3)``.

Token layout: clique ids (and vertex numbers, which appear between ``#``
markers) use tokens ``1..N``; the six separators follow.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .slp import Slp, SlpBuilder


class Graph:
    """Simple undirected graph on vertices ``1..n``."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            raise ValueError(f"edge ({u}, {v}) outside vertices 1..{self.n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(1, self.n + 1) for v in sorted(self.adj[u]) if u < v]

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, itertools.combinations(range(1, n + 1), 2))

    @classmethod
    def random(cls, n: int, p: float, seed: int) -> Graph:
        """Erdos-Renyi G(n, p); edges drawn in lexicographic pair order."""
        rng = random.Random(seed)
        return cls(n, [(u, v) for u, v in itertools.combinations(range(1, n + 1), 2)
                       if rng.random() < p])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges})"


@dataclass(frozen=True)
class Symbols:
    """Token assignment for an instance with ``N`` clique ids."""
    N: int

    @property
    def dollar(self) -> int:
        return self.N + 1

    @property
    def hash(self) -> int:
        return self.N + 2

    @property
    def gamma(self) -> int:
        return self.N + 3

    @property
    def mu(self) -> int:
        return self.N + 4

    @property
    def alpha(self) -> int:
        return self.N + 5

    @property
    def beta(self) -> int:
        return self.N + 6

    @property
    def alphabet_size(self) -> int:
        return self.N + 7

    def names(self) -> dict[int, str]:
        return {self.dollar: "$", self.hash: "#", self.gamma: "γ", self.mu: "μ",
                self.alpha: "α", self.beta: "β"}


@dataclass
class CliqueInstance:
    slp: Slp
    dict_words: list[tuple[int, ...]]
    n: int
    k: int
    N: int
    symbols: Symbols = field(repr=False)


def clique_id(clique: Sequence[int], n: int) -> int:
    """``1 + sum((b_i - 1) * n**(k-i))`` for the sorted vertex tuple."""
    out = 0
    for b in clique:
        out = out * n + (b - 1)
    return out + 1


def enumerate_k_cliques(g: Graph, k: int) -> list[tuple[int, ...]]:
    """All k-cliques as sorted tuples, in lexicographic order."""
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} outside 1..{g.n}")
    out: list[tuple[int, ...]] = []

    def grow(clique: list[int], cands: list[int]) -> None:
        if len(clique) == k:
            out.append(tuple(clique))
            return
        for idx, v in enumerate(cands):
            clique.append(v)
            grow(clique, [w for w in cands[idx + 1:] if w in g.adj[v]])
            clique.pop()

    grow([], list(range(1, g.n + 1)))
    return out


def is_biclique(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    a, b = set(a), set(b)
    if a & b:
        return False
    return all(y in g.adj[x] for x in a for y in b)


def brute_force_clique(g: Graph, size: int) -> bool:
    """Exact backtracking search for a clique of ``size`` vertices."""
    if size > g.n:
        return False
    if size <= 0:
        return True

    def extend(depth: int, cands: set[int]) -> bool:
        if depth == size:
            return True
        if depth + len(cands) < size:
            return False
        for v in sorted(cands):
            if extend(depth + 1, {w for w in cands if w > v and w in g.adj[v]}):
                return True
        return False

    return extend(0, set(range(1, g.n + 1)))


def f0(s: Sequence[int], sym: Symbols) -> list[int]:
    out: list[int] = []
    for c in s:
        out += (sym.alpha, c, sym.beta)
    return out


def f1(s: Sequence[int], sym: Symbols) -> list[int]:
    out: list[int] = []
    for c in s:
        out += (c, sym.beta, sym.alpha)
    return out


def f_transform(s: Sequence[int], variant: str, sym: Symbols) -> list[int]:
    if variant == "f0":
        return f0(s, sym)
    if variant == "f1":
        return f1(s, sym)
    raise ValueError(f"variant must be 'f0' or 'f1', not {variant!r}")


def build_dictionary_from_graph(g: Graph, k: int) -> list[tuple[int, ...]]:
    """Emit the reduction dictionary in step order (duplicates kept)."""
    N = g.n ** k
    sym = Symbols(N)
    cliques = enumerate_k_cliques(g, k) if k <= g.n else []
    ids = [clique_id(c, g.n) for c in cliques]
    words: list[tuple[int, ...]] = []
    head = lambda b: list(range(b, N + 1))       # noqa: E731  B (B+1) ... N
    tail = lambda b: list(range(1, b))           # noqa: E731  1 2 ... (B-1)

    for b in ids:
        words.append(tuple(f1([sym.dollar] + tail(b), sym)))
        words.append(tuple(f1(head(b), sym)))
    for c, b in zip(cliques, ids):
        common = set(range(1, g.n + 1))
        for v in c:
            common &= g.adj[v]
        for i in sorted(common):
            words.append(tuple(f1(head(b) + [sym.hash, i, sym.hash] + tail(b), sym)))
    for cb, b in zip(cliques, ids):
        for cc, c in zip(cliques, ids):
            if is_biclique(g, cb, cc):
                words.append(tuple(f1(head(b) + [sym.dollar, sym.gamma, sym.dollar]
                                      + tail(c), sym)))
    for s in list(range(1, N + 1)) + [sym.dollar, sym.hash, sym.gamma, sym.mu]:
        words.append((sym.alpha, s, sym.beta))
        words.append((sym.beta, sym.alpha, s))
    words.append((sym.alpha, sym.mu, sym.beta, sym.alpha))
    words.append((sym.dollar, sym.beta, sym.alpha, sym.mu))
    words.append((sym.beta, sym.mu, sym.mu))
    return words


def gadget(clique: Sequence[int], N: int, sym: Symbols) -> list[int]:
    """Plain token string ``$ 1..N # a_1 # 1..N # ... # a_2k # 1..N $``."""
    ramp = list(range(1, N + 1))
    out = [sym.dollar] + ramp
    for a in clique:
        out += [sym.hash, a, sym.hash] + ramp
    out.append(sym.dollar)
    return out


def build_w_slp(g: Graph, k: int) -> Slp:
    """SLP for the reduction text, sharing one nonterminal for f0(1 2 ... N).

    Each 2k-clique contributes a constant number of blocks per vertex; the
    blocks of all cliques are joined by a balanced tournament, then the two
    closing ``mu`` tokens are appended.
    """
    N = g.n ** k
    sym = Symbols(N)
    b = SlpBuilder()
    alpha, beta = b.terminal(sym.alpha), b.terminal(sym.beta)
    wrapped: dict[int, int] = {}

    def F(s: int) -> int:
        v = wrapped.get(s)
        if v is None:
            v = wrapped[s] = b.pair(b.pair(alpha, b.terminal(s)), beta)
        return v

    mu = b.terminal(sym.mu)
    cliques = enumerate_k_cliques(g, 2 * k) if 2 * k <= g.n else []
    blocks: list[int] = []
    if cliques:
        ramp = b.concat([F(s) for s in range(1, N + 1)])
        opening = b.concat([F(sym.mu), F(sym.dollar), ramp])
        middle = b.concat([F(sym.dollar), F(sym.gamma), F(sym.dollar), ramp])
        closing = b.pair(F(sym.dollar), F(sym.mu))
        vertex = {}
        for a in sorted({v for c in cliques for v in c}):
            vertex[a] = b.concat([F(sym.hash), F(a), F(sym.hash), ramp])
        for c in cliques:
            half = [vertex[a] for a in c]
            blocks.append(b.concat([opening, *half, middle, *half, closing]))
    blocks.append(b.pair(mu, mu))
    return b.finish(b.concat(blocks), sym.alphabet_size)


def naive_w(g: Graph, k: int) -> list[int]:
    """The reduction text built directly as a token list (for small graphs)."""
    N = g.n ** k
    sym = Symbols(N)
    out: list[int] = []
    cliques = enumerate_k_cliques(g, 2 * k) if 2 * k <= g.n else []
    for c in cliques:
        w = gadget(c, N, sym)
        out += f0([sym.mu] + w + [sym.gamma] + w + [sym.mu], sym)
    return out + [sym.mu, sym.mu]


def build_instance(g: Graph, k: int) -> CliqueInstance:
    N = g.n ** k
    return CliqueInstance(build_w_slp(g, k), build_dictionary_from_graph(g, k),
                          g.n, k, N, Symbols(N))


def w_length(g: Graph, k: int) -> int:
    """Closed-form length of the reduction text."""
    N = g.n ** k
    count = len(enumerate_k_cliques(g, 2 * k)) if 2 * k <= g.n else 0
    gadget_len = 2 + (2 * k + 1) * N + 2 * k * 3
    return count * 3 * (2 * gadget_len + 3) + 2


def parse_graph(text: str) -> Graph:
    """``G <n> <edge_count>`` followed by one ``u v`` pair per line."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "G" or len(lines[0]) != 3:
        raise ValueError("graph file must start with 'G <n> <edge_count>'")
    n, m = int(lines[0][1]), int(lines[0][2])
    if len(lines) - 1 != m:
        raise ValueError(f"header declares {m} edges, found {len(lines) - 1}")
    g = Graph(n)
    for parts in lines[1:]:
        if len(parts) != 2:
            raise ValueError(f"bad edge line {' '.join(parts)!r}")
        g.add_edge(int(parts[0]), int(parts[1]))
    return g


def format_graph(g: Graph) -> str:
    edges = g.edges
    return "".join([f"G {g.n} {len(edges)}\n"] + [f"{u} {v}\n" for u, v in edges])
