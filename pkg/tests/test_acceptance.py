"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All tolerances are exact (zero failures, exact equality) except the resource
limits of criterion 1, which are 300 s wall time and 10**9 bytes peak RSS
measured in a fresh interpreter.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
from contextlib import contextmanager
from math import comb

from conftest import ACCEPTANCE_LINES, cached_model
from gamma4.engine import build_model, element_order, invariants, nf
from gamma4.oracle import oracle_rank
from gamma4.persist import load_model, save_model
from gamma4.verify import (
    random_word,
    torsion_report,
    verify_all,
    verify_lemma_codi_coal,
    verify_lemma_com,
    verify_lemma_eqv,
    verify_theorem_and_corollary,
)
from gamma4.words import enumerate_commutation_relators, enumerate_pentagon_relators, parse_word

BUILD_SECONDS = 300.0
BUILD_BYTES = 10**9


@contextmanager
def criterion(k: int, title: str):
    info: dict = {}
    try:
        yield info
    except BaseException:
        line = f"criterion {k}: FAIL  {title}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        raise
    extra = "  (" + ", ".join(f"{a}={b}" for a, b in info.items()) + ")" if info else ""
    line = f"criterion {k}: PASS  {title}{extra}"
    print(line)
    ACCEPTANCE_LINES.append(line)


_BUILD_PROBE = """
import json, resource, time
t = time.perf_counter()
from gamma4.engine import build_model, invariants
model = build_model(7)
elapsed = time.perf_counter() - t
peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
print(json.dumps({"elapsed": elapsed, "peak": peak, **invariants(model)}))
"""


def test_criterion_01_bounds_and_resources():
    with criterion(1, "n=7 build within 5 min and 1 GB, p <= 35, q <= 3*C(7,4), p equals commutator-class rank") as info:
        out = subprocess.run([sys.executable, "-c", _BUILD_PROBE], capture_output=True, text=True, check=True)
        doc = json.loads(out.stdout.strip().splitlines()[-1])
        assert doc["elapsed"] < BUILD_SECONDS
        assert doc["peak"] < BUILD_BYTES
        assert doc["p"] <= comb(7, 3) == 35
        # 3·C(7,4) is 105; the looser figure 315 follows from it
        assert doc["q"] <= 3 * comb(7, 4) == 105 < 315
        assert doc["p"] == doc["p_from_commutators"]
        info.update(p=doc["p"], q=doc["q"], seconds=round(doc["elapsed"], 2), peak_MB=round(doc["peak"] / 1e6))


def test_criterion_02_relator_soundness():
    with criterion(2, "every relator instance is trivial, n in {5,6,7,8}") as info:
        for n in (5, 6, 7, 8):
            model = cached_model(n)
            rels = [(g, g) for g in model.table]
            rels += [r.word for r in enumerate_commutation_relators(n, model.table)]
            rels += [r.word for r in enumerate_pentagon_relators(n, model.table)]
            bad = [w for w in rels if not nf(model, w).is_identity()]
            assert not bad
            info[f"n{n}"] = len(rels)


def test_criterion_03_l2():
    with criterion(3, "n=7 one central involution class per K, all admissible choices") as info:
        report = verify_lemma_com(cached_model(7))
        assert report.status == "pass" and report.counterexample is None
        assert len(report.detail["c_K_trivial"]) == 35 and report.detail["centrality_checked"]
        info["checks"] = report.checked


def test_criterion_04_l3_l4():
    with criterion(4, "n=7 all 5460 commutator classes lie in the span of c^(K), span dim = p") as info:
        model = cached_model(7)
        l3, l4 = verify_lemma_codi_coal(model)
        assert l3.passed and l4.passed
        assert l4.checked == comb(105, 2) == 5460
        assert l4.detail["h_span_dim"] == model.p
        info.update(pairs=l4.checked, span_dim=model.p)


def test_criterion_05_l1():
    with criterion(5, "exhaustive conjugation-class check, n in {6,7}") as info:
        for n in (6, 7):
            report = verify_lemma_eqv(cached_model(n))
            assert report.passed
            info[f"n{n}_contexts"] = report.detail["contexts"]


def test_criterion_06_c1():
    with criterion(6, "n=7 1000 words len<=50 seed 42: w^4 = e, w^2 central, order in {1,2,4}") as info:
        _, c1 = verify_theorem_and_corollary(cached_model(7), samples=1000, seed=42, max_len=50)
        assert c1.passed and c1.checked == 1000
        info.update(orders=c1.detail["orders"])


def test_criterion_07_oracle():
    with criterion(7, "q = 3*C(n,4) - oracle_rank(n), n in {5,6,7,8}") as info:
        for n in (5, 6, 7, 8):
            q = cached_model(n).q
            assert q == 3 * comb(n, 4) - oracle_rank(n)
            info[f"q{n}"] = q


def test_criterion_08_metamorphic_and_order():
    with criterion(8, "n=7 1000 relator splices keep nf, 5 insertion orders agree") as info:
        model = cached_model(7)
        rng = random.Random(42)
        rels = [r.word for r in enumerate_pentagon_relators(7, model.table)]
        rels += [r.word for r in enumerate_commutation_relators(7, model.table)]
        rels += [(g, g) for g in model.table]
        for _ in range(1000):
            w = random_word(rng, model)
            t = rng.randint(0, len(w))
            assert nf(model, w[:t] + rng.choice(rels) + w[t:]) == nf(model, w)
        ref = (model.q, model.p, model.central_classes)
        for seed in range(5):
            other = build_model(7, order_seed=seed)
            assert (other.q, other.p, other.central_classes) == ref
        info.update(splices=1000, orders=5)


def test_criterion_09_torsion():
    with criterion(9, "n=7 c^(K) table reported, order-4 witness s_P s_Q") as info:
        model = cached_model(7)
        rep = torsion_report(model)
        assert len(rep["c_K_trivial"]) == 35
        nontrivial = sum(not t for t in rep["c_K_trivial"].values())
        assert nontrivial > 0
        wit = rep["witness"]
        assert wit is not None and wit["order"] == 4
        s_p, s_q = (model.table.lookup(g) for g in parse_word(wit["word"], 7))
        assert len(s_p.support & s_q.support) == 3
        assert element_order(model, (s_p, s_q)) == 4
        info.update(nontrivial=nontrivial, witness=wit["word"])


def test_criterion_10_persistence(tmp_path):
    with criterion(10, "save/load reproduces invariants and every claim outcome") as info:
        model = cached_model(7)
        path = tmp_path / "g7.g4m"
        save_model(model, path)
        again = load_model(path)
        assert invariants(again) == invariants(model)
        assert again.central_classes == model.central_classes
        before = [r.outcome() for r in verify_all(model)]
        after = [r.outcome() for r in verify_all(again)]
        assert before == after
        info["claims"] = len(before)
