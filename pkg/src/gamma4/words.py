"""Words over the generators and the defining relator instances.

Every generator is an involution, so a word is just a tuple of generators and
the inverse of a word is its reversal.  The involution relators ``g g`` are
deliberately not produced by the enumerators below: they vanish identically in
the mod-2 class-2 coordinates (see :mod:`gamma4.class2`), and the verifier
checks them separately as claim R1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import DuplicateLabel, NTooSmall, WordSyntaxError
from .generators import MIN_N, GeneratorId, GeneratorTable, _check_labels, canonicalize, from_pairs, intersection_size

Word = tuple[GeneratorId, ...]

_TOKEN = re.compile(r"d\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)(\^-1)?")


class RelatorKind(str, Enum):
    INVOLUTION = "Involution"
    COMMUTATION = "Commutation"
    PENTAGON = "Pentagon"


@dataclass(frozen=True)
class RelatorInstance:
    kind: RelatorKind
    word: Word
    meta: tuple


def parse_word(text: str, n: int | None = None) -> Word:
    """Parse whitespace-separated ``d(i,j,k,l)`` tokens; a ``^-1`` suffix is ignored."""
    letters = []
    for token in text.split():
        match = _TOKEN.fullmatch(token)
        if match is None:
            raise WordSyntaxError(f"bad generator token {token!r}")
        letters.append(canonicalize(*map(int, match.groups()[:4]), n=n))
    return tuple(letters)


def format_word(w: Sequence[GeneratorId]) -> str:
    return " ".join(str(g) for g in w)


def free_reduce(w: Sequence[GeneratorId]) -> Word:
    """Cancel adjacent equal letters until none remain."""
    stack: list[GeneratorId] = []
    for g in w:
        if stack and stack[-1] == g:
            stack.pop()
        else:
            stack.append(g)
    return tuple(stack)


def inverse_word(w: Sequence[GeneratorId]) -> Word:
    return tuple(reversed(w))


def commutator_word(x: Sequence[GeneratorId], y: Sequence[GeneratorId]) -> Word:
    """The word ``x y x⁻¹ y⁻¹``."""
    return tuple(x) + tuple(y) + inverse_word(x) + inverse_word(y)


def pentagon_letters(ks: Sequence[int]) -> Word:
    if len(ks) != 5:
        raise DuplicateLabel(f"pentagon needs 5 labels, got {len(ks)}")
    return tuple(
        from_pairs((ks[t], ks[(t + 1) % 5]), (ks[(t + 2) % 5], ks[(t + 3) % 5])) for t in range(5)
    )


def pentagon_relator(k1: int, k2: int, k3: int, k4: int, k5: int, n: int | None = None) -> RelatorInstance:
    ks = _check_labels((k1, k2, k3, k4, k5), n)
    return RelatorInstance(RelatorKind.PENTAGON, pentagon_letters(ks), ks)


def pentagon_tuples(n: int) -> Iterable[tuple[int, ...]]:
    if n < MIN_N:
        raise NTooSmall(f"n = {n} < {MIN_N}")
    return permutations(range(1, n + 1), 5)


def enumerate_pentagon_relators(n: int, table: GeneratorTable | None = None) -> list[RelatorInstance]:
    """One relator per ordered 5-tuple, deduplicated by exact letter sequence.

    With ``table`` given, letters carry their dense index.
    """
    seen: set[tuple] = set()
    out = []
    for ks in pentagon_tuples(n):
        word = pentagon_letters(ks)
        if table is not None:
            word = tuple(table.lookup(g) for g in word)
        key = tuple(g.key for g in word)
        if key in seen:
            continue
        seen.add(key)
        out.append(RelatorInstance(RelatorKind.PENTAGON, word, ks))
    return out


def enumerate_commutation_relators(n: int, table: GeneratorTable | None = None) -> list[RelatorInstance]:
    """``g h g h`` for every unordered pair with at most two common labels."""
    table = table if table is not None else GeneratorTable(n)
    out = []
    for g, h in combinations(table.generators, 2):
        if intersection_size(g, h) <= 2:
            out.append(RelatorInstance(RelatorKind.COMMUTATION, (g, h, g, h), (g.index, h.index)))
    return out


def export_relators(relators: Iterable[RelatorInstance]) -> str:
    """Line-oriented text, one word per line."""
    return "".join(format_word(r.word) + "\n" for r in relators)
