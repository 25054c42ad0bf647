"""Independent rank oracle for the abelianization.

Self-contained on purpose: it rebuilds the generator list and the pentagon
letter sets from scratch and eliminates with Python integers as bit rows, so
it shares no code with the quotient engine.  Modulo squares and commutators a
pentagon word is the sum of its five letters, so

    q = 3·C(n, 4) - oracle_rank(n).
"""

from __future__ import annotations

from itertools import combinations, permutations


def _generator_keys(n: int) -> list[tuple[int, int, int, int]]:
    keys = []
    for a, b, c, d in combinations(range(1, n + 1), 4):
        keys += [(a, b, c, d), (a, c, b, d), (a, d, b, c)]
    return sorted(keys)


def _key(p: tuple[int, int], r: tuple[int, int]) -> tuple[int, int, int, int]:
    p, r = tuple(sorted(p)), tuple(sorted(r))
    return p + r if p < r else r + p


def pentagon_rows(n: int) -> list[int]:
    """One bit row per distinct pentagon word (letters as generator columns)."""
    if n < 5:
        from .errors import NTooSmall

        raise NTooSmall(f"n = {n} < 5")
    column = {k: i for i, k in enumerate(_generator_keys(n))}
    seen_words = set()
    rows = []
    for ks in permutations(range(1, n + 1), 5):
        word = tuple(
            column[_key((ks[t], ks[(t + 1) % 5]), (ks[(t + 2) % 5], ks[(t + 3) % 5]))] for t in range(5)
        )
        if word in seen_words:
            continue
        seen_words.add(word)
        row = 0
        for col in word:
            row ^= 1 << col
        rows.append(row)
    return rows


def gf2_rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                break
            row ^= pivots[top]
    return len(pivots)


def oracle_rank(n: int) -> int:
    return gf2_rank(pentagon_rows(n))
