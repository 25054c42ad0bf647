"""Binary model files.

Layout (all integers little-endian)::

    b"G4M1"
    u32 n, u32 m, u32 k (pivot rows), u32 p
    payload:
        k × (packed a-part, packed c-part)     # pivot rows
        C(m,2) × ceil(p/64) words              # φ, one column per c-coordinate
    u64 checksum of the payload (BLAKE2b, 8-byte digest)

Bit vectors are packed into 64-bit words, least significant bit first.  The
header is validated against the payload length, so a file whose ``n`` does not
match its tables fails with :class:`FormatError`; a corrupted payload fails
with :class:`ChecksumMismatch`.
"""

from __future__ import annotations

import hashlib
import struct
from math import comb
from pathlib import Path

import numpy as np

from .central import CentralSpace
from .class2 import from_packed, num_pairs
from .engine import GroupModel, RelationBasis, finish_model
from .errors import ChecksumMismatch, FormatError
from .generators import GeneratorTable

MAGIC = b"G4M1"
_HEADER = struct.Struct("<4sIIII")


def _nwords(bits: int) -> int:
    return (bits + 63) // 64


def checksum(payload: bytes) -> int:
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


def model_bytes(model: GroupModel) -> bytes:
    basis = model.basis
    m, p = model.m, model.p
    parts = []
    for u in basis.rows:
        parts.append(u.packed_a().astype("<u8").tobytes())
        parts.append(u.packed_c().astype("<u8").tobytes())
    phi = basis.central.phi
    parts.append(np.ascontiguousarray(phi[:, : _phi_words(p)], dtype="<u8").tobytes())
    payload = b"".join(parts)
    header = _HEADER.pack(MAGIC, model.n, m, len(basis.rows), p)
    return header + payload + struct.pack("<Q", checksum(payload))


def _phi_words(p: int) -> int:
    return max(1, _nwords(p))


def save_model(model: GroupModel, path: str | Path) -> None:
    Path(path).write_bytes(model_bytes(model))


def model_from_bytes(data: bytes) -> GroupModel:
    if len(data) < _HEADER.size + 8:
        raise FormatError("file too short for a model header")
    magic, n, m, k, p = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if n < 5 or m != 3 * comb(n, 4):
        raise FormatError(f"header n = {n} inconsistent with generator count m = {m}")
    dim = num_pairs(m)
    aw, cw, pw = _nwords(m), _nwords(dim), _phi_words(p)
    if k > m or p > dim:
        raise FormatError(f"header counts out of range: k = {k}, p = {p}")
    payload_len = 8 * (k * (aw + cw) + dim * pw)
    if len(data) != _HEADER.size + payload_len + 8:
        raise FormatError(f"payload is {len(data) - _HEADER.size - 8} bytes, header implies {payload_len}")
    payload = data[_HEADER.size : _HEADER.size + payload_len]
    (stored,) = struct.unpack_from("<Q", data, _HEADER.size + payload_len)
    if stored != checksum(payload):
        raise ChecksumMismatch("model payload checksum mismatch")

    words = np.frombuffer(payload, dtype="<u8").astype(np.uint64)
    basis = RelationBasis(m)
    rows, pivots, off = [], [], 0
    for _ in range(k):
        u = from_packed(words[off : off + aw], words[off + aw : off + aw + cw], m)
        off += aw + cw
        if not u.a.any():
            raise FormatError("pivot row with zero exponent vector")
        rows.append(u)
        pivots.append(int(np.flatnonzero(u.a)[0]))
    if pivots != sorted(set(pivots)):
        raise FormatError("pivot rows are not strictly increasing")
    phi = words[off:].reshape(dim, pw).copy()

    basis.rows, basis.pivots = rows, pivots
    central = CentralSpace(dim)
    central.phi, central.p, central.frozen = phi, p, True
    basis.central = central
    basis.frozen = True
    basis._sync()
    return finish_model(n, GeneratorTable(n), basis)


def load_model(path: str | Path) -> GroupModel:
    return model_from_bytes(Path(path).read_bytes())
