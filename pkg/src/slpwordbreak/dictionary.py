"""Word dictionaries backed by a forward trie and a reversed-word trie."""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence

from .errors import DictionaryError


class _Trie:
    """Array-of-dicts trie; node 0 is the root."""

    __slots__ = ("children", "final")

    def __init__(self) -> None:
        self.children: list[dict[int, int]] = [{}]
        self.final = bytearray(1)

    def insert(self, word: Iterable[int]) -> None:
        children = self.children
        node = 0
        for tok in word:
            nxt = children[node].get(tok)
            if nxt is None:
                nxt = len(children)
                children[node][tok] = nxt
                children.append({})
                self.final.append(0)
            node = nxt
        self.final[node] = 1

    def __contains__(self, word: Iterable[int]) -> bool:
        children = self.children
        node = 0
        for tok in word:
            node = children[node].get(tok)
            if node is None:
                return False
        return bool(self.final[node])

    def __len__(self) -> int:
        return len(self.children)


class Dictionary:
    """An immutable set of nonempty words.

    ``K`` is the word count, ``m`` the maximum word length and ``M`` the
    total length, all over the deduplicated set.
    """

    def __init__(self, words: Iterable[Sequence[int]] = ()) -> None:
        uniq: dict[tuple[int, ...], None] = {}
        for w in words:
            w = tuple(w)
            if not w:
                raise DictionaryError("the empty word is not allowed in a dictionary")
            uniq[w] = None
        self.words: tuple[tuple[int, ...], ...] = tuple(uniq)
        self._set = frozenset(self.words)
        self.K = len(self.words)
        self.m = max(map(len, self.words), default=0)
        self.M = sum(map(len, self.words))
        self.forward_trie = _Trie()
        self.reverse_trie = _Trie()
        for w in self.words:
            self.forward_trie.insert(w)
            self.reverse_trie.insert(reversed(w))

    def __contains__(self, word: Sequence[int]) -> bool:
        return tuple(word) in self._set

    def __len__(self) -> int:
        return self.K

    def __iter__(self):
        return iter(self.words)

    def __repr__(self) -> str:
        return f"Dictionary(K={self.K}, m={self.m}, M={self.M})"

    def digest(self) -> bytes:
        """SHA-256 of the sorted word list; independent of insertion order."""
        h = hashlib.sha256()
        for w in sorted(self.words):
            h.update(" ".join(map(str, w)).encode())
            h.update(b"\n")
        return h.digest()


def build_dictionary(words: Iterable[Sequence[int]]) -> Dictionary:
    return Dictionary(words)


def contains(dictionary: Dictionary, word: Sequence[int]) -> bool:
    return word in dictionary


def scan_matches(dictionary: Dictionary, text: Sequence[int], start: int) -> list[int]:
    """Lengths ``l`` such that ``text[start:start+l]`` is a word, ascending."""
    children = dictionary.forward_trie.children
    final = dictionary.forward_trie.final
    out = []
    node = 0
    for pos in range(start, min(len(text), start + dictionary.m)):
        node = children[node].get(text[pos])
        if node is None:
            break
        if final[node]:
            out.append(pos - start + 1)
    return out


def rev_scan(dictionary: Dictionary, buffer: Sequence[int]) -> list[int]:
    """Lengths ``l`` such that the last ``l`` tokens of ``buffer`` form a word."""
    children = dictionary.reverse_trie.children
    final = dictionary.reverse_trie.final
    out = []
    node = 0
    depth = 0
    for tok in reversed(buffer):
        node = children[node].get(tok)
        if node is None:
            break
        depth += 1
        if final[node]:
            out.append(depth)
    return out
