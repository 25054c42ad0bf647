from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma4.class2 import (
    Class2Element,
    beta,
    central,
    collect_indices,
    collect_word,
    commutator,
    embed,
    identity,
    inverse,
    kappa,
    multiply,
    num_pairs,
    pack_bits,
    pair_of_rank,
    pair_rank,
    pair_rank_matrix,
    power,
    square,
    unpack_bits,
)
from gamma4.errors import DimensionMismatch
from gamma4.generators import GeneratorTable
from gamma4.words import pentagon_relator

M = 9


@st.composite
def elements(draw, m=M):
    a = draw(st.lists(st.integers(0, 1), min_size=m, max_size=m))
    c = draw(st.lists(st.integers(0, 1), min_size=num_pairs(m), max_size=num_pairs(m)))
    return Class2Element(np.array(a, np.uint8), np.array(c, np.uint8))


def naive_kappa(a, b):
    m = len(a)
    out = np.zeros(num_pairs(m), np.uint8)
    for i in range(m):
        for j in range(i + 1, m):
            out[pair_rank(i, j, m)] = a[j] & b[i]
    return out


def test_pair_rank_layout():
    m = 7
    ranks = [pair_rank(i, j, m) for i in range(m) for j in range(i + 1, m)]
    assert ranks == list(range(num_pairs(m)))
    for r in range(num_pairs(m)):
        assert pair_rank(*pair_of_rank(r, m), m) == r
    R = pair_rank_matrix(m)
    assert (R == R.T).all() and (np.diag(R) == -1).all()
    with pytest.raises(DimensionMismatch):
        pair_rank(3, 3, m)


def test_multiply_collection_convention():
    x = multiply(embed(1, 4), embed(0, 4))
    assert x.c.tolist() == [1 if r == pair_rank(0, 1, 4) else 0 for r in range(num_pairs(4))]
    assert multiply(embed(0, 4), embed(1, 4)).c.sum() == 0


@given(elements())
def test_identity_and_involution(y):
    assert multiply(identity(M), y) == y == multiply(y, identity(M))
    for g in range(M):
        assert multiply(embed(g, M), embed(g, M)).is_identity()


@settings(max_examples=300)
@given(elements(), elements(), elements())
def test_group_axioms(x, y, z):
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    assert multiply(x, inverse(x)).is_identity()
    assert multiply(inverse(x), x).is_identity()


def test_axioms_seeded_bulk():
    rng = np.random.default_rng(7)
    for _ in range(10_000 // 10):
        x, y, z = (Class2Element(rng.integers(0, 2, M, dtype=np.uint8), rng.integers(0, 2, num_pairs(M), dtype=np.uint8)) for _ in range(3))
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
        assert multiply(x, inverse(x)).is_identity()


@given(elements(), elements())
def test_kappa_matches_naive(x, y):
    assert np.array_equal(kappa(x.a, y.a), naive_kappa(x.a, y.a))
    assert np.array_equal(beta(x.a, y.a), naive_kappa(x.a, y.a) ^ naive_kappa(y.a, x.a))


def test_inverse_examples():
    assert inverse(identity(M)).is_identity()
    for g in range(M):
        assert inverse(embed(g, M)) == embed(g, M)


@given(elements(), elements())
def test_commutator_definition(x, y):
    xyxy = multiply(multiply(multiply(x, y), inverse(x)), inverse(y))
    assert commutator(x, y) == xyxy
    assert commutator(x, y) == commutator(y, x)
    assert commutator(x, x).is_identity()
    assert multiply(commutator(x, y), commutator(x, y)).is_identity()


def test_commutator_basic():
    x = commutator(embed(0, 4), embed(1, 4))
    assert np.flatnonzero(x.c).tolist() == [pair_rank(0, 1, 4)] and not x.a.any()


@given(elements(), elements(), elements(), elements())
def test_commutator_only_sees_a(x, y, z, w):
    zc, wc = central(z.c, M), central(w.c, M)
    assert commutator(x, y) == commutator(multiply(x, zc), multiply(y, wc))


@given(elements())
def test_square_power_properties(x):
    assert square(x) == multiply(x, x)
    assert square(square(x)).is_identity()
    assert power(x, 4).is_identity()
    assert power(x, 5) == x
    for g in range(M):
        assert commutator(square(x), embed(g, M)).is_identity()


def test_square_examples():
    for g in range(M):
        assert square(embed(g, M)).is_identity()
    g, h = embed(2, M), embed(5, M)
    assert square(multiply(g, h)) == commutator(g, h)


def test_embed_injective():
    assert len({embed(g, M) for g in range(M)}) == M


@given(st.lists(st.integers(0, M - 1), max_size=40), st.lists(st.integers(0, M - 1), max_size=40))
def test_collect_homomorphism(u, v):
    fold = identity(M)
    for g in u:
        fold = multiply(fold, embed(g, M))
    assert collect_indices(u, M) == fold
    assert collect_indices(u + v, M) == multiply(collect_indices(u, M), collect_indices(v, M))


def test_collect_pentagon_and_square():
    table = GeneratorTable(5)
    word = tuple(table.lookup(g) for g in pentagon_relator(1, 2, 3, 4, 5).word)
    # five pairwise distinct letters, so five a-bits
    assert len({g.index for g in word}) == 5
    assert int(collect_word(word, table.m).a.sum()) == 5
    assert collect_word((word[0], word[0]), table.m).is_identity()
    assert collect_word((), table.m).is_identity()


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        multiply(identity(4), identity(5))
    with pytest.raises(DimensionMismatch):
        collect_indices([4], 4)
    with pytest.raises(DimensionMismatch):
        central(np.zeros(3, np.uint8), 4)


@given(st.lists(st.integers(0, 1), max_size=300))
def test_pack_round_trip(bits):
    arr = np.array(bits, np.uint8)
    words = pack_bits(arr)
    assert words.dtype == np.uint64 and len(words) == (len(bits) + 63) // 64
    assert np.array_equal(unpack_bits(words, len(bits)), arr)
    as_int = sum(b << i for i, b in enumerate(bits))
    assert sum(int(w) << (64 * k) for k, w in enumerate(words)) == as_int
