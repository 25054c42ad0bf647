"""Machine checks of the relations, lemmas, theorem and corollary on a frozen model.

Each check returns :class:`ClaimReport` objects.  Exhaustive checks walk the
full index set; sampled checks draw from ``random.Random(f"{seed}:{claim}")``
so every claim replays bit-for-bit from ``(seed, samples)`` regardless of the
order or parallelism in which claims run.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Callable, Sequence

from .class2 import Class2Element, commutator, inverse, multiply, power
from .engine import (
    GroupModel,
    central_class,
    central_class_pair,
    element_order,
    element_order_of,
    is_central,
    is_central_element,
    nf,
    nf_element,
    phi_matrix_rank,
)
from .errors import NTooSmallForClaim
from .generators import canonicalize
from .words import (
    Word,
    commutator_word,
    enumerate_commutation_relators,
    enumerate_pentagon_relators,
    format_word,
)

CLAIMS = ("C1", "L1", "L2", "L3", "L4", "R1", "R2", "R3", "R4", "SIM", "T1")
DEFAULT_SAMPLES = 1000
DEFAULT_SEED = 42
DEFAULT_MAX_LEN = 50


@dataclass
class ClaimReport:
    claim: str
    mode: str
    status: str
    checked: int = 0
    samples: int | None = None
    seed: int | None = None
    counterexample: tuple[str, ...] | None = None
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def outcome(self) -> dict:
        """Everything except timing; equal outcomes mean identical verification results."""
        out = asdict(self)
        out.pop("elapsed")
        return out


def _skipped(claim: str, why: str) -> ClaimReport:
    return ClaimReport(claim, "skipped", "skipped", detail={"reason": why})


class _Check:
    """Accumulates one claim's outcome; first failure is kept as counterexample."""

    def __init__(self, claim: str, mode: str, samples: int | None = None, seed: int | None = None):
        self.report = ClaimReport(claim, mode, "pass", samples=samples, seed=seed)
        self.start = time.perf_counter()

    def check(self, ok: bool, witness: Callable[[], Sequence[str]]) -> None:
        self.report.checked += 1
        if not ok and self.report.counterexample is None:
            self.report.status = "fail"
            self.report.counterexample = tuple(witness())

    def done(self) -> ClaimReport:
        self.report.elapsed = time.perf_counter() - self.start
        return self.report


def _require(model: GroupModel, n_min: int, claim: str) -> None:
    if model.n < n_min:
        raise NTooSmallForClaim(f"{claim} needs n >= {n_min}, model has n = {model.n}")


def random_word(rng: random.Random, model: GroupModel, max_len: int = DEFAULT_MAX_LEN) -> Word:
    gens = model.table.generators
    return tuple(rng.choice(gens) for _ in range(rng.randint(0, max_len)))


def _rng(seed: int, claim: str) -> random.Random:
    return random.Random(f"{seed}:{claim}")


# -- relations ---------------------------------------------------------------------


def verify_relators(model: GroupModel) -> list[ClaimReport]:
    """R1 (involutions), R2 (commutation), R3 (symmetry, structural), R4 (pentagons)."""
    reports = []

    chk = _Check("R1", "exhaustive")
    for g in model.table:
        chk.check(nf(model, (g, g)).is_identity(), lambda: [format_word((g, g))])
    reports.append(chk.done())

    chk = _Check("R2", "exhaustive")
    for r in enumerate_commutation_relators(model.n, model.table):
        chk.check(nf(model, r.word).is_identity(), lambda: [format_word(r.word)])
    reports.append(chk.done())

    # relation 3 holds by construction: all symmetric spellings canonicalize alike
    chk = _Check("R3", "structural")
    for i, j, k, l in permutations(range(1, model.n + 1), 4):
        images = {canonicalize(*t) for t in ((i, j, k, l), (k, j, i, l), (i, l, k, j), (j, i, l, k))}
        chk.check(len(images) == 1, lambda: [f"d({i},{j},{k},{l})"])
    spellings = {canonicalize(*t) for t in permutations(range(1, model.n + 1), 4)}
    chk.check(len(spellings) == model.m, lambda: [f"{len(spellings)} classes for {model.m} generators"])
    reports.append(chk.done())

    chk = _Check("R4", "exhaustive")
    for r in enumerate_pentagon_relators(model.n, model.table):
        chk.check(nf(model, r.word).is_identity(), lambda: [format_word(r.word)])
    reports.append(chk.done())
    return reports


# -- the relation ∼_a ----------------------------------------------------------------


def sim_criteria(model: GroupModel, a: Class2Element, x: Class2Element, y: Class2Element) -> tuple[bool, ...]:
    """The four formulations of ``x ∼_a y``, each decided through normal forms."""
    xi, yi = inverse(x), inverse(y)
    c1 = nf_element(model, commutator(multiply(xi, y), a)).is_identity()
    c2 = nf_element(model, multiply(multiply(x, a), xi)) == nf_element(model, multiply(multiply(y, a), yi))
    c3 = nf_element(model, commutator(x, a)) == nf_element(model, commutator(y, a))
    c4 = nf_element(model, commutator(a, x)) == nf_element(model, commutator(a, y))
    return c1, c2, c3, c4


def verify_sim_equivalence(
    model: GroupModel, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED, max_len: int = DEFAULT_MAX_LEN
) -> ClaimReport:
    rng = _rng(seed, "SIM")
    chk = _Check("SIM", "sampled", samples, seed)
    related = 0
    for _ in range(samples):
        wa = random_word(rng, model, max_len)
        wx = random_word(rng, model, max_len)
        # a third of the time y is a short perturbation of x so that ∼_a often holds
        wy = wx + random_word(rng, model, 3) if rng.random() < 1 / 3 else random_word(rng, model, max_len)
        a, x, y = (model.element(w) for w in (wa, wx, wy))
        crit = sim_criteria(model, a, x, y)
        related += crit[0]
        chk.check(len(set(crit)) == 1, lambda: [format_word(wa), format_word(wx), format_word(wy)])
    chk.report.detail["related_triples"] = related
    return chk.done()


# -- lemmas -------------------------------------------------------------------------


def verify_lemma_eqv(model: GroupModel) -> ClaimReport:
    """L1: inside ``⋃_{k'∉P} S_{K⊔{k'}}`` every element conjugates ``s ∈ S_P`` alike."""
    _require(model, 6, "L1")
    n, table = model.n, model.table
    chk = _Check("L1", "exhaustive")
    contexts = 0
    for P in combinations(range(1, n + 1), 4):
        outside = [k for k in range(1, n + 1) if k not in P]
        for K in combinations(P, 3):
            cands = [g for k in outside for g in table.with_support(K + (k,))]
            for s in table.with_support(P):
                contexts += 1
                sx = model.generator(s)
                classes = [nf_element(model, commutator(model.generator(g), sx)) for g in cands]
                for g, cls in zip(cands, classes):
                    chk.check(cls == classes[0], lambda: [str(s), str(cands[0]), str(g)])
    chk.report.detail["contexts"] = contexts
    return chk.done()


def verify_lemma_com(model: GroupModel) -> ClaimReport:
    """L2: per 3-subset K one commutator class c^(K), an involution, central for n ≥ 7."""
    _require(model, 6, "L2")
    n, table = model.n, model.table
    chk = _Check("L2", "exhaustive")
    trivial: dict[str, bool] = {}
    for K in combinations(range(1, n + 1), 3):
        outside = [k for k in range(1, n + 1) if k not in K]
        ref = central_class(model, K)
        for i, j in permutations(outside, 2):
            for si in table.with_support(K + (i,)):
                for sj in table.with_support(K + (j,)):
                    cls = nf_element(model, commutator(model.generator(si), model.generator(sj)))
                    chk.check(cls == ref, lambda: [str(si), str(sj)])
        s_p, s_q = central_class_pair(model, K)
        word = commutator_word((s_p,), (s_q,))
        chk.check(nf(model, word + word).is_identity(), lambda: [format_word(word + word)])
        if n >= 7:
            chk.check(is_central(model, word), lambda: [format_word(word)])
        trivial[",".join(map(str, K))] = ref.is_identity()
    chk.report.detail["c_K_trivial"] = trivial
    chk.report.detail["centrality_checked"] = n >= 7
    return chk.done()


def h_span_basis(model: GroupModel) -> dict[int, int]:
    """Echelon basis (by leading bit) of the span of the φ-images of all c^(K)."""
    basis: dict[int, int] = {}
    for K in combinations(range(1, model.n + 1), 3):
        _reduce_into(basis, central_class(model, K).h_res, insert=True)
    return basis


def _reduce_into(basis: dict[int, int], v: int, insert: bool = False) -> int:
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            if insert:
                basis[top] = v
            return v
        v ^= basis[top]
    return 0


def verify_lemma_codi_coal(model: GroupModel) -> list[ClaimReport]:
    """L3 (distinct supports) and L4 (all pairs): every [g, h] lies in H."""
    _require(model, 7, "L3/L4")
    span = h_span_basis(model)
    l3, l4 = _Check("L3", "exhaustive"), _Check("L4", "exhaustive")
    for g, h in combinations(model.table.generators, 2):
        cls = nf_element(model, commutator(model.generator(g), model.generator(h)))
        in_h = cls.a_res == 0 and _reduce_into(span, cls.h_res) == 0
        if g.support != h.support:
            l3.check(in_h, lambda: [str(g), str(h)])
        l4.check(in_h, lambda: [str(g), str(h)])
    l4.report.detail["h_span_dim"] = len(span)
    return [l3.done(), l4.done()]


# -- theorem and corollary --------------------------------------------------------------


def verify_theorem_and_corollary(
    model: GroupModel, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED, max_len: int = DEFAULT_MAX_LEN
) -> list[ClaimReport]:
    _require(model, 7, "T1/C1")
    n = model.n
    t1 = _Check("T1", "sampled", samples, seed)
    t1.check(model.p <= comb(n, 3), lambda: [f"p = {model.p} > C({n},3)"])
    t1.check(model.q <= 3 * comb(n, 4), lambda: [f"q = {model.q} > 3·C({n},4)"])
    h_dim = len(h_span_basis(model))
    t1.check(h_dim == model.p, lambda: [f"dim H = {h_dim} != p = {model.p}"])
    p_cross = phi_matrix_rank(model)
    t1.check(p_cross == model.p, lambda: [f"rank of commutator classes {p_cross} != p = {model.p}"])
    rng = _rng(seed, "T1")
    for _ in range(samples):
        wx, wy = random_word(rng, model, max_len), random_word(rng, model, max_len)
        t1.check(is_central(model, commutator_word(wx, wy)), lambda: [format_word(wx), format_word(wy)])
    t1.report.detail.update(p=model.p, q=model.q, h_span_dim=h_dim, p_from_commutators=p_cross)

    c1 = _Check("C1", "sampled", samples, seed)
    rng = _rng(seed, "C1")
    orders = {1: 0, 2: 0, 4: 0}
    for _ in range(samples):
        w = random_word(rng, model, max_len)
        x = model.element(w)
        order = element_order_of(model, x)
        ok = (
            nf_element(model, power(x, 4)).is_identity()
            and is_central_element(model, multiply(x, x))
            and order in orders
        )
        if order in orders:
            orders[order] += 1
        c1.check(ok, lambda: [format_word(w)])
    c1.report.detail["orders"] = {str(k): v for k, v in orders.items()}
    return [t1.done(), c1.done()]


# -- 4-torsion ---------------------------------------------------------------------


def torsion_report(model: GroupModel) -> dict:
    """Per K whether c^(K) is trivial, plus an order-4 witness ``s_P s_Q`` if one exists."""
    table = {}
    witness = None
    for K in combinations(range(1, model.n + 1), 3):
        cls = central_class(model, K)
        table[K] = cls.is_identity()
        if witness is None and not cls.is_identity():
            s_p, s_q = central_class_pair(model, K)
            word = (s_p, s_q)
            witness = {"K": list(K), "word": format_word(word), "order": element_order(model, word)}
    return {"c_K_trivial": table, "witness": witness}


# -- driver and export ---------------------------------------------------------------


def verify_all(
    model: GroupModel,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    max_len: int = DEFAULT_MAX_LEN,
    workers: int = 1,
    claims: Sequence[str] | None = None,
) -> list[ClaimReport]:
    """Run the selected claims (all by default), skipping unmet n-hypotheses."""
    wanted = set(CLAIMS if claims is None else claims)
    unknown = wanted - set(CLAIMS)
    if unknown:
        raise ValueError(f"unknown claims: {sorted(unknown)}")
    n = model.n
    jobs: list[tuple[tuple[str, ...], Callable[[], list[ClaimReport]], int]] = [
        (("R1", "R2", "R3", "R4"), lambda: verify_relators(model), 5),
        (("SIM",), lambda: [verify_sim_equivalence(model, samples, seed, max_len)], 5),
        (("L1",), lambda: [verify_lemma_eqv(model)], 6),
        (("L2",), lambda: [verify_lemma_com(model)], 6),
        (("L3", "L4"), lambda: verify_lemma_codi_coal(model), 7),
        (("T1", "C1"), lambda: verify_theorem_and_corollary(model, samples, seed, max_len), 7),
    ]
    reports: list[ClaimReport] = []
    runnable = []
    for ids, job, n_min in jobs:
        if not wanted & set(ids):
            continue
        if n < n_min:
            reports.extend(_skipped(c, f"hypothesis n >= {n_min} unmet (n = {n})") for c in ids)
        else:
            runnable.append(job)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for out in pool.map(lambda job: job(), runnable):
                reports.extend(out)
    else:
        for job in runnable:
            reports.extend(job())
    return sorted((r for r in reports if r.claim in wanted), key=lambda r: r.claim)


def any_failed(reports: Sequence[ClaimReport]) -> bool:
    return any(r.status == "fail" for r in reports)


def reports_json(reports: Sequence[ClaimReport], model: GroupModel | None = None) -> str:
    doc: dict = {"claims": [asdict(r) for r in reports]}
    if model is not None:
        doc["n"] = model.n
        doc["warning_n_lt_7"] = model.warning_n_lt_7
    return json.dumps(doc, indent=2, sort_keys=True)


CSV_FIELDS = ("claim", "mode", "status", "checked", "samples", "seed", "counterexample", "elapsed")


def reports_csv(reports: Sequence[ClaimReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in reports:
        cex = " | ".join(r.counterexample) if r.counterexample else ""
        writer.writerow(
            [r.claim, r.mode, r.status, r.checked, r.samples or "", "" if r.seed is None else r.seed, cex, f"{r.elapsed:.3f}"]
        )
    return buf.getvalue()
