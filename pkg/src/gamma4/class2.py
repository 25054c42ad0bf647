"""The free exponent-2 class-2 group on ``m`` involutive generators.

An element is written ``x_1^{a_1} ... x_m^{a_m} · Π_{i<j} [x_i, x_j]^{c_ij}``
with all exponents in GF(2).  Generator squares are trivial and so are the
squares of commutators (``[x_i², x_j] = [x_i, x_j]²`` in class 2), which is
why no integer signs are ever tracked.  Commutator coordinates ``c`` are
indexed by the lexicographic rank of the pair ``(i, j)``, ``i < j``.

Collection rule: moving a letter ``x_i`` of the right factor to the left past
a letter ``x_j`` with ``j > i`` of the left factor costs one ``[x_i, x_j]``,
hence ``κ(a, b)_{ij} = a_j b_i``.

Bit vectors are held unpacked (one ``uint8`` per coordinate) for arithmetic;
:meth:`Class2Element.packed_c` gives the 64-bit LSB-first layout used on disk
and by the central-space kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch


def num_pairs(m: int) -> int:
    return m * (m - 1) // 2


def pair_rank(i: int, j: int, m: int) -> int:
    if i > j:
        i, j = j, i
    if not 0 <= i < j < m:
        raise DimensionMismatch(f"bad pair ({i}, {j}) for m = {m}")
    return i * (2 * m - i - 1) // 2 + (j - i - 1)


def pair_of_rank(r: int, m: int) -> tuple[int, int]:
    _, rows, cols, _ = _layout(m)
    return int(rows[r]), int(cols[r])


@lru_cache(maxsize=None)
def _layout(m: int):
    rows, cols = np.triu_indices(m, 1)
    offsets = np.zeros(m + 1, dtype=np.int64)
    offsets[1:] = np.cumsum(np.arange(m - 1, -1, -1))
    return rows * m + cols, rows, cols, offsets


@lru_cache(maxsize=None)
def pair_rank_matrix(m: int) -> np.ndarray:
    """``R[i, j]`` = rank of the pair ``{i, j}``; ``-1`` on the diagonal."""
    _, rows, cols, _ = _layout(m)
    R = np.full((m, m), -1, dtype=np.int64)
    ranks = np.arange(len(rows), dtype=np.int64)
    R[rows, cols] = ranks
    R[cols, rows] = ranks
    return R


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 vector into little-endian uint64 words, LSB first."""
    nwords = (len(bits) + 63) // 64
    raw = np.packbits(bits.astype(np.uint8, copy=False), bitorder="little")
    buf = np.zeros(nwords * 8, dtype=np.uint8)
    buf[: len(raw)] = raw
    return buf.view("<u8").astype(np.uint64)


def unpack_bits(words: np.ndarray, length: int) -> np.ndarray:
    raw = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length]


def kappa(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Collection cocycle: pair ``(i<j)`` gets ``a_j · b_i``."""
    lin = _layout(len(a))[0]
    return np.outer(b, a).ravel()[lin]


def beta(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Commutator form: pair ``(i<j)`` gets ``a_i b_j + a_j b_i``."""
    lin = _layout(len(a))[0]
    outer = np.outer(a, b)
    return (outer ^ outer.T).ravel()[lin]


@dataclass(frozen=True, eq=False)
class Class2Element:
    a: np.ndarray
    c: np.ndarray

    @property
    def m(self) -> int:
        return len(self.a)

    def is_identity(self) -> bool:
        return not self.a.any() and not self.c.any()

    def is_central(self) -> bool:
        return not self.a.any()

    def packed_a(self) -> np.ndarray:
        return pack_bits(self.a)

    def packed_c(self) -> np.ndarray:
        return pack_bits(self.c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Class2Element):
            return NotImplemented
        return np.array_equal(self.a, other.a) and np.array_equal(self.c, other.c)

    def __hash__(self) -> int:
        return hash((self.a.tobytes(), self.c.tobytes()))

    def __mul__(self, other: "Class2Element") -> "Class2Element":
        return multiply(self, other)

    def __repr__(self) -> str:
        gens = np.flatnonzero(self.a).tolist()
        return f"Class2Element(m={self.m}, a={gens}, |c|={int(self.c.sum())})"


def identity(m: int) -> Class2Element:
    return Class2Element(np.zeros(m, np.uint8), np.zeros(num_pairs(m), np.uint8))


def embed(g: int, m: int) -> Class2Element:
    x = identity(m)
    x.a[g] = 1
    return x


def central(c: np.ndarray, m: int) -> Class2Element:
    c = np.asarray(c, dtype=np.uint8)
    if len(c) != num_pairs(m):
        raise DimensionMismatch(f"c-part has length {len(c)}, expected {num_pairs(m)}")
    return Class2Element(np.zeros(m, np.uint8), c)


def from_packed(a_words: np.ndarray, c_words: np.ndarray, m: int) -> Class2Element:
    return Class2Element(unpack_bits(a_words, m), unpack_bits(c_words, num_pairs(m)))


def _check(x: Class2Element, y: Class2Element) -> None:
    if len(x.a) != len(y.a) or len(x.c) != len(y.c):
        raise DimensionMismatch(f"elements of rank {x.m} and {y.m}")


def multiply(x: Class2Element, y: Class2Element) -> Class2Element:
    _check(x, y)
    return Class2Element(x.a ^ y.a, x.c ^ y.c ^ kappa(x.a, y.a))


def inverse(x: Class2Element) -> Class2Element:
    return Class2Element(x.a.copy(), x.c ^ kappa(x.a, x.a))


def commutator(x: Class2Element, y: Class2Element) -> Class2Element:
    """``[x, y] = x y x⁻¹ y⁻¹``; central and determined by the a-parts."""
    _check(x, y)
    return Class2Element(np.zeros_like(x.a), beta(x.a, y.a))


def square(x: Class2Element) -> Class2Element:
    return Class2Element(np.zeros_like(x.a), kappa(x.a, x.a))


def power(x: Class2Element, k: int) -> Class2Element:
    out = identity(x.m)
    for _ in range(k % 4):
        out = multiply(out, x)
    return out


def collect_indices(letters: Iterable[int], m: int) -> Class2Element:
    """Left-to-right collection of a word given by generator indices."""
    _, _, _, offsets = _layout(m)
    a = np.zeros(m, np.uint8)
    c = np.zeros(num_pairs(m), np.uint8)
    for g in letters:
        if not 0 <= g < m:
            raise DimensionMismatch(f"generator index {g} outside [0, {m})")
        # κ(prefix, e_g): block g receives the prefix bits above g
        c[offsets[g] : offsets[g + 1]] ^= a[g + 1 :]
        a[g] ^= 1
    return Class2Element(a, c)


def collect_word(w: Sequence, m: int) -> Class2Element:
    """Collect a word whose letters are indexed :class:`GeneratorId` values."""
    return collect_indices((g.index for g in w), m)
