"""Straight-line programs over an integer token alphabet.

An SLP is a grammar in which every nonterminal has exactly one rule,
either a single terminal token or the concatenation of two nonterminals,
and which derives exactly one string. Nonterminals are identified by
dense integer ids ``0..g-1``. Positions exposed by the public API are
1-based and inclusive, so ``extract(slp, i, j)`` returns ``w[i..j]``.

The :class:`Slp` object is immutable once constructed; the expansion
length and derivation height of every nonterminal are cached at
validation time, so the text itself is never materialized unless a
caller asks for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import ExpansionTooLarge, PositionError, SlpError

MAX_LENGTH = 2**63 - 1


@dataclass(frozen=True, slots=True)
class Terminal:
    token: int


@dataclass(frozen=True, slots=True)
class Binary:
    left: int
    right: int


Rule = Union[Terminal, Binary]


@dataclass(frozen=True, slots=True)
class Segment:
    node: int
    length: int


class Slp:
    """A validated straight-line program.

    ``rules[v]`` is the right-hand side of nonterminal ``v``. Construction
    validates the grammar and fills the ``length``/``height`` caches and
    a topological ``order`` (children before parents).
    """

    __slots__ = ("left", "right", "token", "root", "alphabet_size",
                 "length", "height", "order")

    def __init__(self, rules: Sequence[Rule], root: int,
                 alphabet_size: int | None = None) -> None:
        g = len(rules)
        self.left = [-1] * g
        self.right = [-1] * g
        self.token = [-1] * g
        for v, rule in enumerate(rules):
            if isinstance(rule, Terminal):
                self.token[v] = rule.token
            elif isinstance(rule, Binary):
                self.left[v] = rule.left
                self.right[v] = rule.right
            else:
                raise SlpError(f"rule {v}: not a Terminal or Binary rule")
        if alphabet_size is None:
            alphabet_size = max((t for t in self.token if t >= 0), default=-1) + 1
        self.alphabet_size = alphabet_size
        self.root = root
        self.length: list[int] = []
        self.height: list[int] = []
        self.order: list[int] = []
        validate(self)

    def __len__(self) -> int:
        return self.length[self.root]

    @property
    def size(self) -> int:
        """Number of rules (nonterminals)."""
        return len(self.token)

    @property
    def rules(self) -> list[Rule]:
        return [Terminal(t) if t >= 0 else Binary(l, r)
                for t, l, r in zip(self.token, self.left, self.right)]

    def is_terminal(self, v: int) -> bool:
        return self.token[v] >= 0

    def __repr__(self) -> str:
        return (f"Slp(rules={self.size}, root={self.root}, "
                f"len={self.length[self.root]}, height={self.height[self.root]})")


def validate(slp: Slp) -> None:
    """Check acyclicity, reachability and token ranges; fill caches.

    Raises :class:`SlpError` naming the offending rule.
    """
    g = len(slp.token)
    left, right, token = slp.left, slp.right, slp.token
    if not 0 <= slp.root < g:
        raise SlpError(f"root {slp.root} is not a rule id")
    for v in range(g):
        if token[v] >= 0:
            if token[v] >= slp.alphabet_size:
                raise SlpError(f"rule {v}: token {token[v]} outside alphabet "
                               f"of size {slp.alphabet_size}")
        elif token[v] == -1:
            for c in (left[v], right[v]):
                if not 0 <= c < g:
                    raise SlpError(f"rule {v}: dangling reference to {c}")
        else:
            raise SlpError(f"rule {v}: negative token {token[v]}")

    # iterative post-order DFS; state 1 = on stack, 2 = done
    state = bytearray(g)
    order: list[int] = []
    stack = [slp.root]
    while stack:
        v = stack[-1]
        if state[v] == 0:
            state[v] = 1
            if token[v] < 0:
                for c in (right[v], left[v]):
                    if state[c] == 1:
                        raise SlpError(f"rule {v}: cycle through rule {c}")
                    if state[c] == 0:
                        stack.append(c)
        else:
            stack.pop()
            if state[v] == 1:
                if token[v] < 0 and (state[left[v]] != 2 or state[right[v]] != 2):
                    raise SlpError(f"rule {v}: cycle detected")
                state[v] = 2
                order.append(v)
    if len(order) != g:
        missing = next(v for v in range(g) if state[v] != 2)
        raise SlpError(f"rule {missing} is unreachable from root {slp.root}")

    length = [0] * g
    height = [0] * g
    for v in order:
        if token[v] >= 0:
            length[v] = 1
        else:
            a, b = left[v], right[v]
            n = length[a] + length[b]
            if n > MAX_LENGTH:
                raise SlpError(f"rule {v}: expansion length exceeds 2^63-1")
            length[v] = n
            height[v] = 1 + max(height[a], height[b])
    slp.length = length
    slp.height = height
    slp.order = order


# --------------------------------------------------------------------------
# text format

def parse_slp(source: str | Iterable[str]) -> Slp:
    """Parse the line-oriented SLP text format.

    ``A <alphabet_size>``, ``R <id> T <token>``, ``R <id> N <left> <right>``,
    ``S <root>``; ``#`` starts a comment.
    """
    lines = source.splitlines() if isinstance(source, str) else source
    rules: dict[int, Rule] = {}
    where: dict[int, int] = {}
    root = alphabet = None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            kind = line[0]
            if kind == "R" and len(line) >= 3:
                rid = _nonneg(line[1])
                if rid in rules:
                    raise SlpError(f"duplicate rule id {rid}", lineno)
                if line[2] == "T" and len(line) == 4:
                    rules[rid] = Terminal(_nonneg(line[3]))
                elif line[2] == "N" and len(line) == 5:
                    rules[rid] = Binary(_nonneg(line[3]), _nonneg(line[4]))
                else:
                    raise SlpError(f"malformed rule: {raw.strip()!r}", lineno)
                where[rid] = lineno
            elif kind == "S" and len(line) == 2:
                if root is not None:
                    raise SlpError("duplicate root line", lineno)
                root = _nonneg(line[1])
            elif kind == "A" and len(line) == 2:
                if alphabet is not None:
                    raise SlpError("duplicate alphabet line", lineno)
                alphabet = _nonneg(line[1])
            else:
                raise SlpError(f"unrecognized line: {raw.strip()!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, SlpError):
                raise
            raise SlpError(f"bad integer in {raw.strip()!r}", lineno) from None
    if root is None:
        raise SlpError("missing root line 'S <id>'")
    g = len(rules)
    for rid, rule in rules.items():
        if isinstance(rule, Binary):
            for c in (rule.left, rule.right):
                if c not in rules:
                    raise SlpError(f"rule {rid}: dangling reference to {c}", where[rid])
    if root not in rules:
        raise SlpError(f"root {root} is not a rule id")
    if max(rules) != g - 1:
        gap = next(i for i in range(g) if i not in rules)
        raise SlpError(f"rule ids must be contiguous from 0; id {gap} missing")
    return Slp([rules[i] for i in range(g)], root, alphabet)


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError(text)
    return value


def format_slp(slp: Slp, header: Iterable[str] = ()) -> str:
    out = [f"# {line}" for line in header]
    out.append(f"A {slp.alphabet_size}")
    for v in range(slp.size):
        if slp.token[v] >= 0:
            out.append(f"R {v} T {slp.token[v]}")
        else:
            out.append(f"R {v} N {slp.left[v]} {slp.right[v]}")
    out.append(f"S {slp.root}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# navigation

def _expand_into(slp: Slp, v: int, out: list[int]) -> None:
    left, right, token = slp.left, slp.right, slp.token
    stack = [v]
    while stack:
        x = stack.pop()
        t = token[x]
        if t >= 0:
            out.append(t)
        else:
            stack.append(right[x])
            stack.append(left[x])


def expand_node(slp: Slp, v: int) -> list[int]:
    out: list[int] = []
    _expand_into(slp, v, out)
    return out


def expand(slp: Slp, limit: int = 10**7) -> list[int]:
    n = slp.length[slp.root]
    if n > limit:
        raise ExpansionTooLarge(n, limit)
    return expand_node(slp, slp.root)


def expand_affix(slp: Slp, v: int, t: int, side: str = "prefix") -> list[int]:
    """First (``side="prefix"``) or last (``"suffix"``) ``min(t, len(v))`` tokens of exp(v)."""
    if not 0 <= v < slp.size:
        raise SlpError(f"unknown nonterminal {v}")
    if t < 0:
        raise ValueError("affix length must be non-negative")
    if side not in ("prefix", "suffix"):
        raise ValueError(f"side must be 'prefix' or 'suffix', not {side!r}")
    length, left, right = slp.length, slp.left, slp.right
    if t >= length[v]:
        return expand_node(slp, v)
    pieces: list[int] = []
    need = t
    stack = [v]
    first, second = (right, left) if side == "prefix" else (left, right)
    while stack and need > 0:
        x = stack.pop()
        if length[x] <= need:
            pieces.append(x)
            need -= length[x]
        else:
            stack.append(first[x])
            stack.append(second[x])
    if side == "suffix":
        pieces.reverse()
    out: list[int] = []
    for x in pieces:
        _expand_into(slp, x, out)
    return out


def _check_range(slp: Slp, i: int, j: int) -> None:
    n = slp.length[slp.root]
    if not 1 <= i <= j <= n:
        raise PositionError(f"range [{i}..{j}] outside 1..{n} or empty")


def decompose(slp: Slp, i: int, j: int) -> list[Segment]:
    """Cover ``w[i..j]`` by whole-nonterminal segments, left to right.

    Descends to the lowest nonterminal whose expansion contains the range,
    then emits maximal subtrees of its left child's suffix and its right
    child's prefix. At most ``2*height(root)+1`` segments.
    """
    _check_range(slp, i, j)
    length, left, right, token = slp.length, slp.left, slp.right, slp.token
    lo, hi = i - 1, j  # half-open, relative to x
    x = slp.root
    while token[x] < 0 and not (lo == 0 and hi == length[x]):
        ll = length[left[x]]
        if hi <= ll:
            x = left[x]
        elif lo >= ll:
            x, lo, hi = right[x], lo - ll, hi - ll
        else:
            break
    if token[x] >= 0 or (lo == 0 and hi == length[x]):
        return [Segment(x, length[x])]

    ll = length[left[x]]
    nodes: list[int] = []
    # suffix of the left child starting at lo
    y, start, rights = left[x], lo, []
    while start > 0:
        yl = length[left[y]]
        if start >= yl:
            start -= yl
            y = right[y]
        else:
            rights.append(right[y])
            y = left[y]
    nodes.append(y)
    nodes.extend(reversed(rights))
    # prefix of the right child ending at hi - ll
    y, end = right[x], hi - ll
    while end < length[y]:
        yl = length[left[y]]
        if end <= yl:
            y = left[y]
        else:
            nodes.append(left[y])
            end -= yl
            y = right[y]
    nodes.append(y)
    return [Segment(v, length[v]) for v in nodes]


def extract(slp: Slp, i: int, j: int) -> list[int]:
    """Tokens ``w[i..j]`` (1-based, inclusive)."""
    out: list[int] = []
    for seg in decompose(slp, i, j):
        _expand_into(slp, seg.node, out)
    return out


def iter_segments_tokens(slp: Slp, segments: Sequence[Segment]) -> Iterator[int]:
    for seg in segments:
        yield from expand_node(slp, seg.node)


# --------------------------------------------------------------------------
# construction

class SlpBuilder:
    """Hash-consing SLP builder.

    Equal terminals and equal ``(left, right)`` pairs map to the same
    provisional id. :meth:`finish` prunes unreachable rules and renumbers
    the survivors in topological order.
    """

    def __init__(self) -> None:
        self.rules: list[Rule] = []
        self.length: list[int] = []
        self.height: list[int] = []
        self._terms: dict[int, int] = {}
        self._pairs: dict[tuple[int, int], int] = {}

    def terminal(self, token: int) -> int:
        v = self._terms.get(token)
        if v is None:
            v = self._terms[token] = len(self.rules)
            self.rules.append(Terminal(token))
            self.length.append(1)
            self.height.append(0)
        return v

    def pair(self, a: int, b: int) -> int:
        key = (a, b)
        v = self._pairs.get(key)
        if v is None:
            v = self._pairs[key] = len(self.rules)
            self.rules.append(Binary(a, b))
            self.length.append(self.length[a] + self.length[b])
            self.height.append(1 + max(self.height[a], self.height[b]))
        return v

    def concat(self, nodes: Sequence[int]) -> int:
        """Pairwise (tournament) concatenation of a nonempty node list."""
        if not nodes:
            raise ValueError("cannot concatenate an empty node list")
        level = list(nodes)
        while len(level) > 1:
            nxt = [self.pair(level[k], level[k + 1]) for k in range(0, len(level) - 1, 2)]
            if len(level) % 2:
                nxt.append(level[-1])
            level = nxt
        return level[0]

    def avl_concat(self, x: int, y: int) -> int:
        """Concatenate two AVL-balanced nodes keeping the result AVL-balanced.

        Height of the result is ``max(h(x), h(y))`` or one more; at most
        ``O(|h(x) - h(y)| + 1)`` fresh rules are created.
        """
        h = self.height
        if abs(h[x] - h[y]) <= 1:
            return self.pair(x, y)
        if h[x] > h[y]:
            rule = self.rules[x]
            l, r = rule.left, rule.right
            t = self.avl_concat(r, y)
            if h[t] <= h[l] + 1:
                return self.pair(l, t)
            tl, tr = self.rules[t].left, self.rules[t].right
            if h[tl] > h[tr]:
                inner = self.rules[tl]
                return self.pair(self.pair(l, inner.left), self.pair(inner.right, tr))
            return self.pair(self.pair(l, tl), tr)
        rule = self.rules[y]
        l, r = rule.left, rule.right
        t = self.avl_concat(x, l)
        if h[t] <= h[r] + 1:
            return self.pair(t, r)
        tl, tr = self.rules[t].left, self.rules[t].right
        if h[tr] > h[tl]:
            inner = self.rules[tr]
            return self.pair(self.pair(tl, inner.left), self.pair(inner.right, r))
        return self.pair(tl, self.pair(tr, r))

    def finish(self, root: int, alphabet_size: int | None = None) -> Slp:
        rules = self.rules
        seen = bytearray(len(rules))
        order: list[int] = []
        stack = [(root, False)]
        while stack:
            v, expanded = stack.pop()
            if expanded:
                order.append(v)
                continue
            if seen[v]:
                continue
            seen[v] = 1
            stack.append((v, True))
            rule = rules[v]
            if isinstance(rule, Binary):
                stack.append((rule.right, False))
                stack.append((rule.left, False))
        newid = {v: k for k, v in enumerate(order)}
        out: list[Rule] = []
        for v in order:
            rule = rules[v]
            if isinstance(rule, Binary):
                out.append(Binary(newid[rule.left], newid[rule.right]))
            else:
                out.append(rule)
        return Slp(out, newid[root], alphabet_size)


def build_balanced_slp(text: Sequence[int], alphabet_size: int | None = None) -> Slp:
    """Balanced SLP for ``text``: height at most ceil(log2 N), at most 2N rules."""
    if len(text) == 0:
        raise SlpError("cannot build an SLP for the empty string")
    b = SlpBuilder()
    return b.finish(b.concat([b.terminal(t) for t in text]), alphabet_size)


def balance(slp: Slp) -> Slp:
    """Rebuild ``slp`` as an AVL-balanced grammar with the same expansion.

    Rules are processed bottom-up; each binary rule becomes the AVL
    concatenation of its children's balanced versions. The result has
    height below ``1.45*log2(N) + 2`` and ``O(|G| log N)`` rules.
    """
    b = SlpBuilder()
    image = [0] * slp.size
    token, left, right = slp.token, slp.left, slp.right
    for v in slp.order:
        if token[v] >= 0:
            image[v] = b.terminal(token[v])
        else:
            image[v] = b.avl_concat(image[left[v]], image[right[v]])
    return b.finish(image[slp.root], slp.alphabet_size)


def power_slp(token: int, t: int, alphabet_size: int | None = None) -> Slp:
    """SLP for ``token`` repeated ``2**t`` times by ``t`` doubling rules."""
    rules: list[Rule] = [Terminal(token)]
    for k in range(t):
        rules.append(Binary(k, k))
    return Slp(rules, t, alphabet_size)


def repeat_slp(text: Sequence[int], t: int, alphabet_size: int | None = None) -> Slp:
    """SLP for ``text`` repeated ``2**t`` times (balanced base, doubled t times)."""
    b = SlpBuilder()
    v = b.concat([b.terminal(c) for c in text])
    for _ in range(t):
        v = b.pair(v, v)
    return b.finish(v, alphabet_size)
