"""Boolean matrices and vectors over the (or, and) semiring.

Each row is stored as a Python ``int`` bitset (bit ``j`` is column ``j``),
so OR-ing a whole row is a single word-parallel operation. Products use
the row-oriented cubic kernel: for each set bit ``A[i,k]``, row ``k`` of
``B`` is OR-ed into row ``i`` of the result.
"""

from __future__ import annotations

import struct
from typing import Iterator, Sequence

from .errors import DimensionError


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class BoolVector:
    __slots__ = ("dim", "bits")

    def __init__(self, dim: int, bits: int = 0) -> None:
        self.dim = dim
        self.bits = bits & ((1 << dim) - 1)

    @classmethod
    def unit(cls, dim: int, i: int = 0) -> BoolVector:
        if not 0 <= i < dim:
            raise IndexError(i)
        return cls(dim, 1 << i)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.dim:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, BoolVector) and self.dim == other.dim
                and self.bits == other.bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.dim)]

    def __repr__(self) -> str:
        return f"BoolVector({self.to_list()})"


class BoolMatrix:
    """Square ``dim x dim`` boolean matrix with bit-packed rows."""

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, rows: Sequence[int] | None = None) -> None:
        if dim < 1:
            raise DimensionError("matrix dimension must be positive")
        self.dim = dim
        if rows is None:
            self.rows = [0] * dim
        else:
            if len(rows) != dim:
                raise DimensionError(f"expected {dim} rows, got {len(rows)}")
            mask = (1 << dim) - 1
            self.rows = [r & mask for r in rows]

    @classmethod
    def from_lists(cls, table: Sequence[Sequence[int]]) -> BoolMatrix:
        return cls(len(table), [sum(1 << j for j, b in enumerate(row) if b) for row in table])

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.dim)] for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        self._check(i, j)
        return (self.rows[i] >> j) & 1

    def __setitem__(self, ij: tuple[int, int], bit: int) -> None:
        i, j = ij
        self._check(i, j)
        if bit:
            self.rows[i] |= 1 << j
        else:
            self.rows[i] &= ~(1 << j)

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise IndexError(f"({i}, {j}) outside {self.dim}x{self.dim}")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, BoolMatrix) and self.dim == other.dim
                and self.rows == other.rows)

    def __matmul__(self, other: BoolMatrix) -> BoolMatrix:
        return mat_mul(self, other)

    def copy(self) -> BoolMatrix:
        return BoolMatrix(self.dim, self.rows)

    def count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def __repr__(self) -> str:
        return f"BoolMatrix({self.to_lists()})"

    # serialization: dim (u32 LE), then each row as ceil(dim/64) u64 LE words
    def to_bytes(self) -> bytes:
        nbytes = 8 * ((self.dim + 63) // 64)
        return struct.pack("<I", self.dim) + b"".join(
            r.to_bytes(nbytes, "little") for r in self.rows)

    @classmethod
    def from_bytes(cls, data: bytes, offset: int = 0) -> tuple[BoolMatrix, int]:
        (dim,) = struct.unpack_from("<I", data, offset)
        offset += 4
        nbytes = 8 * ((dim + 63) // 64)
        rows = []
        for _ in range(dim):
            rows.append(int.from_bytes(data[offset:offset + nbytes], "little"))
            offset += nbytes
        if any(r >> dim for r in rows):
            raise ValueError("nonzero padding bits in serialized matrix row")
        return cls(dim, rows), offset


def zero(n: int) -> BoolMatrix:
    return BoolMatrix(n)


def identity(n: int) -> BoolMatrix:
    return BoolMatrix(n, [1 << i for i in range(n)])


def get(a: BoolMatrix, i: int, j: int) -> int:
    return a[i, j]


def set_bit(a: BoolMatrix, i: int, j: int, bit: int) -> None:
    a[i, j] = bit


def equals(a: BoolMatrix, b: BoolMatrix) -> bool:
    return a == b


def mat_mul(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    if a.dim != b.dim:
        raise DimensionError(f"cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}")
    brows = b.rows
    # rows of B that are zero contribute nothing; skip them up front
    live = 0
    for k, r in enumerate(brows):
        if r:
            live |= 1 << k
    out = []
    for row in a.rows:
        x = row & live
        acc = 0
        while x:
            low = x & -x
            acc |= brows[low.bit_length() - 1]
            x ^= low
        out.append(acc)
    c = BoolMatrix.__new__(BoolMatrix)
    c.dim = a.dim
    c.rows = out
    return c


def vec_mat(v: BoolVector, a: BoolMatrix) -> BoolVector:
    """Row vector times matrix: OR of the rows selected by ``v``."""
    if v.dim != a.dim:
        raise DimensionError(f"vector of dim {v.dim} vs matrix of dim {a.dim}")
    rows = a.rows
    acc = 0
    for k in _bits(v.bits):
        acc |= rows[k]
    return BoolVector(a.dim, acc)


def mat_vec(a: BoolMatrix, v: BoolVector) -> BoolVector:
    """Matrix times column vector: bit i is set iff row i meets ``v``."""
    if v.dim != a.dim:
        raise DimensionError(f"vector of dim {v.dim} vs matrix of dim {a.dim}")
    bits = v.bits
    out = 0
    for i, r in enumerate(a.rows):
        if r & bits:
            out |= 1 << i
    return BoolVector(a.dim, out)
