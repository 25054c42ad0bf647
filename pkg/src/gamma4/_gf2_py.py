"""Pure numpy implementation of the packed GF(2) kernels.

Rows are ``uint64`` words, bit ``t`` of a vector living in word ``t >> 6`` at
position ``t & 63``.  The reduction kernels assume the row set is in reduced
echelon form: a row's pivot column is clear in every other row.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_ONE = np.uint64(1)


def set_bits(vec: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(vec)
    if nz.size == 0:
        return nz
    bits = np.unpackbits(np.ascontiguousarray(vec[nz]).view(np.uint8), bitorder="little").reshape(-1, 64)
    w, b = np.nonzero(bits)
    return nz[w] * 64 + b


def lowest_bit(vec: np.ndarray) -> int:
    nz = np.flatnonzero(vec)
    if nz.size == 0:
        return -1
    w = int(nz[0])
    x = int(vec[w])
    return w * 64 + ((x & -x).bit_length() - 1)


def popcount(vec: np.ndarray) -> int:
    return int(np.unpackbits(np.ascontiguousarray(vec).view(np.uint8)).sum())


def xor_gather(table: np.ndarray, idx: np.ndarray, out: np.ndarray) -> None:
    """``out ^= XOR of table[idx]``."""
    if len(idx):
        out ^= np.bitwise_xor.reduce(table[idx], axis=0)


def reduce_inplace(vec: np.ndarray, rows: np.ndarray, row_of_col: np.ndarray, pivmask: np.ndarray) -> None:
    hits = set_bits(vec & pivmask)
    if hits.size:
        vec ^= np.bitwise_xor.reduce(rows[row_of_col[hits]], axis=0)


def eliminate_column(rows: np.ndarray, nrows: int, col: int, newrow: np.ndarray) -> None:
    """XOR ``newrow`` into every one of the first ``nrows`` rows with bit ``col`` set."""
    w, b = divmod(col, 64)
    hit = np.flatnonzero((rows[:nrows, w] >> np.uint64(b)) & _ONE)
    if hit.size:
        rows[hit] ^= newrow


def clear_column(rows: np.ndarray, nrows: int, col: int) -> None:
    w, b = divmod(col, 64)
    rows[:nrows, w] &= ~(_ONE << np.uint64(b))


def rank_inplace(mat: np.ndarray, ncols: int) -> int:
    """Rank of the packed matrix; destroys ``mat``."""
    nrows = mat.shape[0]
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        w, b = divmod(col, 64)
        colbits = (mat[r:, w] >> np.uint64(b)) & _ONE
        nz = np.flatnonzero(colbits)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            mat[[r, piv]] = mat[[piv, r]]
        below = r + 1 + np.flatnonzero((mat[r + 1 :, w] >> np.uint64(b)) & _ONE)
        if below.size:
            mat[below] ^= mat[r]
        r += 1
    return r
