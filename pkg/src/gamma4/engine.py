"""Exact class-2 quotient of Γₙ⁴ and its normal forms.

The quotient ``G = N₂ / R̃`` is built by sifting relator images into a
:class:`RelationBasis`: pivot rows carry the part of ``R̃`` that is visible in
the generator exponents, and a :class:`~gamma4.central.CentralSpace` carries
``R̃`` ∩ centre.  All reductions of pivot rows are group multiplications; the
set of coordinates of ``R̃`` is never treated as a vector space.

For ``n ≥ 7`` the group Γₙ⁴ has class at most 2, so ``G`` is Γₙ⁴ itself and
normal forms decide its word problem.  For smaller ``n`` the model is only the
class-2 quotient and carries ``warning_n_lt_7``.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .central import CentralSpace, phi_of_bits
from .class2 import (
    Class2Element,
    _layout,
    collect_indices,
    commutator,
    embed,
    inverse,
    multiply,
    num_pairs,
    pack_bits,
    pair_rank,
    pair_rank_matrix,
    square,
    unpack_bits,
)
from .errors import BadSubset, DimensionMismatch, Frozen, MemoryBudgetExceeded, NTooSmall
from .generators import MIN_N, GeneratorId, GeneratorTable
from .words import enumerate_pentagon_relators

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 9
UNRESTRICTED_MAX_N = 8


@dataclass(frozen=True)
class NormalForm:
    """Residual generator exponents and φ-image of the central residue, as bitsets."""

    a_res: int = 0
    h_res: int = 0

    def is_identity(self) -> bool:
        return self.a_res == 0 and self.h_res == 0

    def to_json(self) -> dict:
        return {"a_res": format(self.a_res, "x"), "h_res": format(self.h_res, "x")}

    @classmethod
    def from_json(cls, data: dict) -> "NormalForm":
        return cls(int(data["a_res"], 16), int(data["h_res"], 16))


def _bits_to_int(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


class RelationBasis:
    """Generating data of the relation subgroup ``R̃`` inside ``N₂``."""

    def __init__(self, m: int):
        self.m = m
        self.dim = num_pairs(m)
        self.central = CentralSpace(self.dim)
        self.rows: list[Class2Element] = []
        self.pivots: list[int] = []
        self.frozen = False
        self._sync()

    def _sync(self) -> None:
        k = len(self.rows)
        self._piv = np.asarray(self.pivots, dtype=np.int64)
        self._A = np.array([u.a for u in self.rows], dtype=np.uint8).reshape(k, self.m)
        # c-parts of the inverses: c_u + κ(a_u, a_u)
        self._Cinv = np.array([inverse(u).c for u in self.rows], dtype=np.uint8).reshape(k, self.dim)

    @property
    def p_dim(self) -> int | None:
        return self.central.p

    def sift(self, x: Class2Element) -> Class2Element:
        """Left-multiply by ``u⁻¹`` for each pivot row ``u`` whose pivot bit is set.

        Rows are fully back-reduced, so the rows used are exactly those whose
        pivot is set in ``x`` at the start; the whole pass is done at once.
        """
        if len(x.a) != self.m:
            raise DimensionMismatch(f"element of rank {len(x.a)}, basis rank {self.m}")
        if not self.rows:
            return x
        sel = np.flatnonzero(x.a[self._piv])
        if sel.size == 0:
            return x
        U = self._A[sel]
        cum = np.bitwise_xor.accumulate(U, axis=0)
        before = cum ^ U ^ x.a
        lin = _layout(self.m)[0]
        cross = (before.T.astype(np.float32) @ U.astype(np.float32)).ravel()[lin]
        c = x.c ^ np.bitwise_xor.reduce(self._Cinv[sel], axis=0) ^ (cross.astype(np.int64) & 1).astype(np.uint8)
        return Class2Element(x.a ^ cum[-1], c)

    def sift_sequential(self, x: Class2Element) -> Class2Element:
        """Reference implementation of :meth:`sift`, one multiplication per row."""
        for u, piv in zip(self.rows, self.pivots):
            if x.a[piv]:
                x = multiply(inverse(u), x)
        return x

    def insert(self, x: Class2Element) -> bool:
        """Add ``x`` to the subgroup; returns whether the subgroup grew."""
        if self.frozen:
            raise Frozen("relation basis is frozen")
        queue = deque([x])
        changed = False
        while queue:
            r = self.sift(queue.popleft())
            if r.a.any():
                queue.extend(self._install(r))
                changed = True
            elif self.central.add(pack_bits(r.c)):
                changed = True
        return changed

    def insert_central_indices(self, idx: Iterable[int]) -> bool:
        """Insert the central element whose commutator coordinates are ``idx``."""
        if self.frozen:
            raise Frozen("relation basis is frozen")
        return self.central.add_indices(idx)

    def _install(self, u: Class2Element) -> list[Class2Element]:
        piv = int(np.flatnonzero(u.a)[0])
        u_inv = inverse(u)
        rows = [multiply(u_inv, v) if v.a[piv] else v for v in self.rows]
        closure = [square(u)] + [commutator(u, v) for v in rows]
        pos = int(np.searchsorted(np.asarray(self.pivots, dtype=np.int64), piv))
        rows.insert(pos, u)
        self.pivots.insert(pos, piv)
        self.rows = rows
        self._sync()
        return closure

    def freeze(self) -> None:
        if self.frozen:
            return
        # canonical c-parts: every row reduced modulo the central span
        self.rows = [
            Class2Element(u.a, unpack_bits(self.central.reduce(pack_bits(u.c)), self.dim)) for u in self.rows
        ]
        self.central.freeze()
        self._sync()
        self.frozen = True

    def phi(self, c_bits: np.ndarray) -> int:
        if self.central.phi is None:
            raise Frozen("φ is only available after freeze")
        return phi_of_bits(self.central.phi, c_bits)

    def normal_form(self, x: Class2Element) -> NormalForm:
        r = self.sift(x)
        return NormalForm(_bits_to_int(r.a), self.phi(r.c))

    def contains(self, x: Class2Element) -> bool:
        return self.normal_form(x).is_identity()


@dataclass
class GroupModel:
    n: int
    table: GeneratorTable
    basis: RelationBasis
    central_classes: dict[tuple[int, int, int], NormalForm] = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.table.m

    @property
    def q(self) -> int:
        return self.m - len(self.basis.rows)

    @property
    def p(self) -> int:
        return int(self.basis.p_dim)

    @property
    def order_log2(self) -> int:
        return self.p + self.q

    @property
    def warning_n_lt_7(self) -> bool:
        return self.n < 7

    def element(self, w: Sequence[GeneratorId]) -> Class2Element:
        return collect_indices((self.table.index_of(g) for g in w), self.m)

    def generator(self, g: GeneratorId | int) -> Class2Element:
        idx = g if isinstance(g, int) else self.table.index_of(g)
        return embed(idx, self.m)


# -- construction -------------------------------------------------------------


def estimated_c_bytes(n: int) -> int:
    """Worst-case bytes of the central echelon form: one dense row per coordinate."""
    dim = num_pairs(3 * comb(n, 4))
    return dim * ((dim + 63) // 64) * 8


def _check_n(n: int, allow_big_n: bool, max_n: int) -> None:
    if n < MIN_N:
        raise NTooSmall(f"n = {n} < {MIN_N}")
    if n > max_n and not allow_big_n:
        raise MemoryBudgetExceeded(
            f"n = {n} exceeds the memory guard (max {max_n}): the commutator space has "
            f"{num_pairs(3 * comb(n, 4))} coordinates, worst case {estimated_c_bytes(n) / 2**30:.1f} GiB "
            "of echelon rows; pass allow_big_n (--allow-big-n) to override"
        )
    if n > UNRESTRICTED_MAX_N:
        log.warning("n = %d: model build needs substantial memory", n)
    if n < 7:
        log.warning("n = %d < 7: the model is the class-2 quotient of Γₙ⁴, not proven equal to it", n)


def relator_candidates(table: GeneratorTable) -> list[tuple[str, tuple[int, ...]]]:
    """Everything inserted into the basis, in the default order.

    Items are ``("word", generator indices)`` for pentagon relators, to be
    collected, or ``("central", pair ranks)`` for central elements given by
    their commutator coordinates: the commutation relators and the normality
    tails ``[r, x_i]``.
    """
    m = table.m
    items: list[tuple[str, tuple[int, ...]]] = []
    for g, h in combinations(table.generators, 2):
        if len(g.support & h.support) <= 2:
            items.append(("central", (pair_rank(g.index, h.index, m),)))
    words = [tuple(g.index for g in r.word) for r in enumerate_pentagon_relators(table.n, table)]
    items.extend(("word", w) for w in words)
    # [r, x_i] only depends on the exponent vector of r: its five letters
    for supp in sorted({tuple(sorted(w)) for w in words}):
        for i in range(m):
            idx = tuple(pair_rank(g, i, m) for g in supp if g != i)
            if idx:
                items.append(("central", idx))
    return items


def _feed(basis: RelationBasis, items, m: int, workers: int) -> None:
    def element(item):
        kind, payload = item
        return collect_indices(payload, m) if kind == "word" else None

    if workers <= 1:
        for kind, payload in items:
            if kind == "central":
                basis.insert_central_indices(payload)
            else:
                basis.insert(collect_indices(payload, m))
        return
    # workers collect words in parallel; insertion stays single-writer and in order
    batch = 1024
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(items), batch):
            chunk = items[start : start + batch]
            for (kind, payload), x in zip(chunk, pool.map(element, chunk)):
                if kind == "central":
                    basis.insert_central_indices(payload)
                else:
                    basis.insert(x)


def build_model(
    n: int,
    *,
    allow_big_n: bool = False,
    max_n: int = DEFAULT_MAX_N,
    order_seed: int | None = None,
    workers: int = 1,
) -> GroupModel:
    """Build and freeze the class-2 quotient model for Γₙ⁴.

    Args:
        n: number of labels, at least 5.
        allow_big_n: bypass the memory guard for ``n > max_n``.
        order_seed: if given, relator insertion order is shuffled with this
            seed.  The resulting invariants and normal forms do not depend on it.
        workers: threads used to collect relator images.
    """
    _check_n(n, allow_big_n, max_n)
    table = GeneratorTable(n)
    basis = RelationBasis(table.m)
    items = relator_candidates(table)
    if order_seed is not None:
        random.Random(order_seed).shuffle(items)
    _feed(basis, items, table.m, workers)
    basis.freeze()
    return finish_model(n, table, basis)


def finish_model(n: int, table: GeneratorTable, basis: RelationBasis) -> GroupModel:
    model = GroupModel(n, table, basis)
    for K in combinations(range(1, n + 1), 3):
        model.central_classes[K] = _central_class_nf(model, K)
    return model


# -- queries ---------------------------------------------------------------------


def nf(model: GroupModel, w: Sequence[GeneratorId]) -> NormalForm:
    return model.basis.normal_form(model.element(w))


def nf_element(model: GroupModel, x: Class2Element) -> NormalForm:
    return model.basis.normal_form(x)


def element_order_of(model: GroupModel, x: Class2Element) -> int:
    if nf_element(model, x).is_identity():
        return 1
    if nf_element(model, multiply(x, x)).is_identity():
        return 2
    return 4


def element_order(model: GroupModel, w: Sequence[GeneratorId]) -> int:
    return element_order_of(model, model.element(w))


def generator_commutator_classes(model: GroupModel, x: Class2Element) -> np.ndarray:
    """φ-images of ``[x, x_g]`` for every generator g, as an ``(m, words)`` array.

    ``[x, x_g]`` is central with coordinates ``{i, g}`` for ``i`` in the support
    of ``x``; its normal form is ``(0, row g)``.
    """
    phi = model.basis.central.phi
    supp = np.flatnonzero(x.a)
    out = np.zeros((model.m, phi.shape[1]), np.uint64)
    if supp.size == 0:
        return out
    ranks = pair_rank_matrix(model.m)[supp]
    cols = phi[np.where(ranks >= 0, ranks, 0)]
    cols[ranks < 0] = 0
    return np.bitwise_xor.reduce(cols, axis=0)


def is_central_element(model: GroupModel, x: Class2Element) -> bool:
    return not generator_commutator_classes(model, x).any()


def is_central(model: GroupModel, w: Sequence[GeneratorId]) -> bool:
    return is_central_element(model, model.element(w))


def _check_subset(model: GroupModel, K: Iterable[int]) -> tuple[int, int, int]:
    K = tuple(sorted(set(int(k) for k in K)))
    if len(K) != 3 or K[0] < 1 or K[-1] > model.n:
        raise BadSubset(f"K must be a 3-subset of [1, {model.n}], got {K}")
    return K


def central_class_pair(model: GroupModel, K: Iterable[int]) -> tuple[GeneratorId, GeneratorId]:
    """The least-index ``s_P, s_Q`` for the lexicographically least ``P ≠ Q ⊃ K``."""
    K = _check_subset(model, K)
    a, b = [x for x in range(1, model.n + 1) if x not in K][:2]
    s_p = model.table.with_support(K + (a,))[0]
    s_q = model.table.with_support(K + (b,))[0]
    return s_p, s_q


def _central_class_nf(model: GroupModel, K) -> NormalForm:
    s_p, s_q = central_class_pair(model, K)
    return nf_element(model, commutator(model.generator(s_p), model.generator(s_q)))


def central_class(model: GroupModel, K: Iterable[int]) -> NormalForm:
    K = _check_subset(model, K)
    if K not in model.central_classes:
        model.central_classes[K] = _central_class_nf(model, K)
    return model.central_classes[K]


def phi_matrix_rank(model: GroupModel) -> int:
    """Rank of all generator-commutator classes φ(β(e_g, e_h)): the derived subgroup."""
    phi = model.basis.central.phi
    mat = np.ascontiguousarray(phi.copy())
    return int(kernels.rank_inplace(mat, model.p))


def invariants(model: GroupModel) -> dict:
    return {
        "n": model.n,
        "m": model.m,
        "q": model.q,
        "p": model.p,
        "order_log2": model.order_log2,
        "p_from_commutators": phi_matrix_rank(model),
        "warning_n_lt_7": model.warning_n_lt_7,
    }


def summary_json(model: GroupModel) -> dict:
    table = [
        {"K": list(K), "trivial": cls.is_identity(), **cls.to_json()} for K, cls in sorted(model.central_classes.items())
    ]
    return {
        "n": model.n,
        "m": model.m,
        "q": model.q,
        "p": model.p,
        "order_log2": model.order_log2,
        "warning_n_lt_7": model.warning_n_lt_7,
        "central_class_table": table,
    }


__all__ = [
    "NormalForm",
    "RelationBasis",
    "GroupModel",
    "build_model",
    "nf",
    "nf_element",
    "element_order",
    "element_order_of",
    "is_central",
    "is_central_element",
    "central_class",
    "central_class_pair",
    "invariants",
    "summary_json",
]
