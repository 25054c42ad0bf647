"""Canonical naming and dense indexing of the generators s_{ik}^{jl}.

A generator is an unordered pair of disjoint unordered pairs of labels in
``[n] = {1, ..., n}``.  It is stored with the smaller label first inside each
pair and with the pair holding the overall smallest label first, so the key
``(a1, a2, b1, b2)`` satisfies ``a1 < a2``, ``b1 < b2`` and ``a1 < b1``.

The surface syntax ``d(i,j,k,l)`` denotes the generator whose pairs are
``{i,k}`` and ``{j,l}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .errors import DuplicateLabel, NTooSmall, OutOfRange

MIN_N = 5


@dataclass(frozen=True, order=True)
class GeneratorId:
    pair_a: tuple[int, int]
    pair_b: tuple[int, int]
    index: int = field(default=-1, compare=False)

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (*self.pair_a, *self.pair_b)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.pair_a + self.pair_b)

    def d_form(self) -> tuple[int, int, int, int]:
        """Lexicographically least ``(i, j, k, l)`` with ``d(i,j,k,l) == self``."""
        (a1, a2), (b1, b2) = self.pair_a, self.pair_b
        return (a1, b1, a2, b2)

    def __str__(self) -> str:
        return "d({},{},{},{})".format(*self.d_form())

    def __repr__(self) -> str:
        return f"GeneratorId({self.pair_a}, {self.pair_b}, index={self.index})"


def _check_labels(labels: Iterable[int], n: int | None) -> tuple[int, ...]:
    labels = tuple(int(x) for x in labels)
    for x in labels:
        if x < 1 or (n is not None and x > n):
            raise OutOfRange(f"label {x} outside [1, {n if n is not None else 'n'}]")
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(f"labels not pairwise distinct: {labels}")
    return labels


def from_pairs(p: tuple[int, int], r: tuple[int, int]) -> GeneratorId:
    """Generator determined by the two (unordered) pairs ``p`` and ``r``."""
    p = (min(p), max(p))
    r = (min(r), max(r))
    if p[0] > r[0]:
        p, r = r, p
    return GeneratorId(p, r)


def canonicalize(i: int, j: int, k: int, l: int, n: int | None = None) -> GeneratorId:
    """Canonical generator for ``d(i,j,k,l) = s_{ik}^{jl}``.

    Raises:
        OutOfRange: a label is below 1 or above ``n`` (when ``n`` is given).
        DuplicateLabel: the labels are not pairwise distinct.
    """
    i, j, k, l = _check_labels((i, j, k, l), n)
    return from_pairs((i, k), (j, l))


def support(g: GeneratorId) -> frozenset[int]:
    return g.support


def intersection_size(g: GeneratorId, h: GeneratorId) -> int:
    return len(g.support & h.support)


def _pairings(quad: tuple[int, int, int, int]) -> Iterator[GeneratorId]:
    a, b, c, d = quad
    # the three perfect matchings of a sorted 4-set, already in key order
    yield GeneratorId((a, b), (c, d))
    yield GeneratorId((a, c), (b, d))
    yield GeneratorId((a, d), (b, c))


def enumerate_generators(n: int) -> list[GeneratorId]:
    """All ``3 * C(n, 4)`` generators sorted by canonical key, indexed by position."""
    if n < MIN_N:
        raise NTooSmall(f"n = {n} < {MIN_N}: the pentagon relation needs 5 labels")
    gens = sorted(g for quad in combinations(range(1, n + 1), 4) for g in _pairings(quad))
    return [GeneratorId(g.pair_a, g.pair_b, idx) for idx, g in enumerate(gens)]


class GeneratorTable:
    """Generators of Γₙ⁴ for a fixed ``n`` with index lookup."""

    def __init__(self, n: int):
        self.n = n
        self.generators = enumerate_generators(n)
        self._by_key = {g.key: g for g in self.generators}
        self._by_support: dict[frozenset[int], list[GeneratorId]] = {}
        for g in self.generators:
            self._by_support.setdefault(g.support, []).append(g)

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, idx: int) -> GeneratorId:
        return self.generators[idx]

    def __iter__(self) -> Iterator[GeneratorId]:
        return iter(self.generators)

    @property
    def m(self) -> int:
        return len(self.generators)

    def lookup(self, g: GeneratorId) -> GeneratorId:
        """Return the indexed copy of ``g``; raises OutOfRange if foreign to ``n``."""
        try:
            return self._by_key[g.key]
        except KeyError:
            raise OutOfRange(f"{g} is not a generator for n = {self.n}") from None

    def index_of(self, g: GeneratorId) -> int:
        if 0 <= g.index < len(self.generators) and self.generators[g.index].key == g.key:
            return g.index
        return self.lookup(g).index

    def canonicalize(self, i: int, j: int, k: int, l: int) -> GeneratorId:
        return self.lookup(canonicalize(i, j, k, l, self.n))

    def with_support(self, labels: Iterable[int]) -> list[GeneratorId]:
        """The three generators ``S_P`` with support ``P``, in index order."""
        P = frozenset(labels)
        if len(P) != 4:
            raise DuplicateLabel(f"support must have 4 distinct labels, got {sorted(P)}")
        _check_labels(P, self.n)
        return list(self._by_support[P])

    @staticmethod
    def expected_size(n: int) -> int:
        return 3 * comb(n, 4)
