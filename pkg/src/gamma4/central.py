"""Central section of the relation subgroup.

:class:`CentralSpace` accumulates the central (commutator-coordinate) vectors
lying in the relation subgroup and keeps their span in reduced row echelon
form over the ``C(m, 2)`` pair coordinates.  Unit vectors never become rows:
they are recorded in a kill mask, which keeps the row count bounded by the
number of surviving coordinates (a few thousand at n = 8).

Freezing turns the span into the quotient projection φ.  The free columns
(neither killed nor pivot) form a basis of the quotient; φ of a coordinate is
its reduced form read off at those columns, stored as one packed ``p``-bit
word per coordinate.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import DimensionMismatch, Frozen

_ONE = np.uint64(1)


def packed_from_indices(idx, nwords: int) -> np.ndarray:
    """Packed vector with the given bit positions toggled (duplicates cancel)."""
    vec = np.zeros(nwords, np.uint64)
    for t in idx:
        vec[t >> 6] ^= _ONE << np.uint64(t & 63)
    return vec


class CentralSpace:
    def __init__(self, dim: int):
        self.dim = dim
        self.nwords = (dim + 63) // 64
        self.killed = np.zeros(self.nwords, np.uint64)
        self.pivmask = np.zeros(self.nwords, np.uint64)
        self.row_of_col = np.full(max(dim, 1), -1, np.int64)
        self.rows = np.zeros((16, self.nwords), np.uint64)
        self.nrows = 0
        self.nkilled = 0
        self.frozen = False
        self.phi: np.ndarray | None = None
        self.p: int | None = None

    # -- building -------------------------------------------------------

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        """Canonical representative of ``vec`` modulo the span (copy)."""
        if vec.shape != (self.nwords,):
            raise DimensionMismatch(f"vector of {vec.shape[0]} words, expected {self.nwords}")
        out = vec & ~self.killed
        kernels.reduce_inplace(out, self.rows, self.row_of_col, self.pivmask)
        return out

    def contains(self, vec: np.ndarray) -> bool:
        return not self.reduce(vec).any()

    def add(self, vec: np.ndarray) -> bool:
        """Add ``vec`` to the span; returns whether the span grew."""
        if self.frozen:
            raise Frozen("central space is frozen")
        res = self.reduce(vec)
        col = kernels.lowest_bit(res)
        if col < 0:
            return False
        w, b = col >> 6, np.uint64(col & 63)
        if kernels.popcount(res) == 1:
            self.killed[w] |= _ONE << b
            self.nkilled += 1
            kernels.clear_column(self.rows, self.nrows, col)
            return True
        kernels.eliminate_column(self.rows, self.nrows, col, res)
        if self.nrows == self.rows.shape[0]:
            grown = np.zeros((2 * self.rows.shape[0], self.nwords), np.uint64)
            grown[: self.nrows] = self.rows[: self.nrows]
            self.rows = grown
        self.rows[self.nrows] = res
        self.row_of_col[col] = self.nrows
        self.pivmask[w] |= _ONE << b
        self.nrows += 1
        return True

    def add_indices(self, idx) -> bool:
        return self.add(packed_from_indices(idx, self.nwords))

    @property
    def rank(self) -> int:
        return self.nkilled + self.nrows

    # -- quotient projection ------------------------------------------------

    def freeze(self) -> None:
        """Compute φ; afterwards the space is read-only."""
        if self.frozen:
            return
        from .class2 import unpack_bits

        killed = unpack_bits(self.killed, self.dim).astype(bool)
        pivots = unpack_bits(self.pivmask, self.dim).astype(bool)
        free = np.flatnonzero(~killed & ~pivots)
        p = len(free)
        pw = max(1, (p + 63) // 64)
        phi = np.zeros((self.dim, pw), np.uint64)
        free_pos = np.arange(p)
        phi[free, free_pos >> 6] = _ONE << (free_pos & 63).astype(np.uint64)
        chunk = 512
        for start in range(0, self.nrows, chunk):
            block = self.rows[start : min(self.nrows, start + chunk)]
            bits = np.unpackbits(block.view(np.uint8), axis=1, bitorder="little")[:, : self.dim]
            sub = bits[:, free]
            packed = np.zeros((len(block), pw * 8), np.uint8)
            raw = np.packbits(sub, axis=1, bitorder="little")
            packed[:, : raw.shape[1]] = raw
            piv_cols = [kernels.lowest_bit(row) for row in block]
            phi[piv_cols] = packed.view("<u8").astype(np.uint64)
        self.phi = phi
        self.p = p
        self.frozen = True
        self.rows = self.rows[: self.nrows].copy()


def phi_of_bits(phi: np.ndarray, c_bits: np.ndarray) -> int:
    """φ of an unpacked c-vector, as a Python int bitset."""
    acc = np.zeros(phi.shape[1], np.uint64)
    kernels.xor_gather(phi, np.flatnonzero(c_bits).astype(np.int64), acc)
    return words_to_int(acc)


def phi_of_indices(phi: np.ndarray, idx) -> int:
    acc = np.zeros(phi.shape[1], np.uint64)
    kernels.xor_gather(phi, np.asarray(idx, dtype=np.int64), acc)
    return words_to_int(acc)


def words_to_int(words: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(words, dtype="<u8").tobytes(), "little")


def int_to_words(x: int, nwords: int) -> np.ndarray:
    return np.frombuffer(x.to_bytes(nwords * 8, "little"), dtype="<u8").astype(np.uint64)
