"""Readers and writers for text, dictionary and range files."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .errors import DictionaryError


class InputError(ValueError):
    pass


def parse_tokens(line: str, lineno: int) -> list[int]:
    try:
        out = [int(t) for t in line.split()]
    except ValueError:
        raise InputError(f"line {lineno}: expected decimal tokens, got {line.strip()!r}") from None
    if any(t < 0 or t >= 2**32 for t in out):
        raise InputError(f"line {lineno}: tokens must be in 0..2^32-1")
    return out


def read_text(path: str | Path, tokens: bool = False) -> list[int]:
    """Byte mode: every raw byte is a token. Token mode: all decimal tokens in order."""
    data = Path(path).read_bytes()
    if not tokens:
        return list(data)
    out: list[int] = []
    for lineno, line in enumerate(data.decode().splitlines(), 1):
        out += parse_tokens(line, lineno)
    return out


def read_words(path: str | Path, tokens: bool = False) -> list[tuple[int, ...]]:
    """One word per line; empty lines are skipped."""
    data = Path(path).read_bytes()
    words: list[tuple[int, ...]] = []
    if not tokens:
        for raw in data.split(b"\n"):
            if raw:
                words.append(tuple(raw))
        return words
    for lineno, line in enumerate(data.decode().split("\n"), 1):
        if line == "":
            continue
        if not line.strip():
            raise DictionaryError(f"line {lineno}: whitespace-only line in token-mode dictionary")
        words.append(tuple(parse_tokens(line, lineno)))
    return words


def format_words(words: Iterable[Sequence[int]]) -> str:
    return "".join(" ".join(map(str, w)) + "\n" for w in words)


def read_ranges(path: str | Path) -> list[tuple[int, tuple[int, int] | None]]:
    """``(lineno, (i, j))`` per nonblank line; ``None`` when a line is malformed."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        try:
            i, j = (int(p) for p in parts)
        except ValueError:
            out.append((lineno, None))
            continue
        out.append((lineno, (i, j)))
    return out
