"""Acceptance criteria, one test each; every test records a single verdict line.

Run ``python tests/test_acceptance.py`` for the lines alone, or pytest for the
full report (the lines are repeated in the terminal summary).
"""

import time
from collections import Counter

import pytest

from relfl.heckealg import E_SIDE, HeckeElt, verify_sft_special, verify_xi_identity
from relfl.localfield import LocalCfg
from relfl.orbint import sampling
from relfl.orbint.engines import class_representative
from relfl.orbint.verify import (
    theta_dual_is_identity,
    verify_elementary_lemma,
    verify_hecke_fl,
    verify_invariant_conjugation,
    verify_jr_fl,
    verify_omega_equivariance,
    verify_orbital_reduction,
    verify_relative_fl,
    verify_split_transfer,
    verify_window_stability,
)
from relfl.cli import split_pairs
from relfl.symfunc import hall_littlewood, monomial_sym, partitions

VERDICTS = {}


def record(num, title, rows, elapsed, budget, extra=""):
    counts = Counter(r.status for r in rows)
    ok = bool(rows) and counts.get("pass", 0) == len(rows) and elapsed < budget
    line = "criterion %d %-34s %s  rows=%d pass=%d fail=%d boundary=%d  %.1fs/%ds%s" % (
        num, title, "PASS" if ok else "FAIL", len(rows), counts.get("pass", 0),
        counts.get("fail", 0), counts.get("boundary", 0), elapsed, budget, extra)
    VERDICTS[num] = line
    print(line)
    return ok


def _bad(rows):
    return [r.as_row() for r in rows if not r.ok][:3]


def test_criterion_1_symbolic_satake():
    t = time.time()
    rows = [verify_sft_special(n, d) for n in range(1, 5) for d in range(6)]
    assert record(1, "symbolic Satake identity", rows, time.time() - t, 10), _bad(rows)


def test_criterion_2_hecke_morphism():
    t = time.time()
    rows = [verify_xi_identity(n, a, n - a, d) for n in range(2, 5) for a in range(1, n) for d in range(5)]
    assert record(2, "Hecke-morphism identity", rows, time.time() - t, 30), _bad(rows)


def test_criterion_3_hall_littlewood_degeneration():
    from relfl.report import OrbReport
    t = time.time()
    rows = []
    for n in range(1, 4):
        for d in range(5):
            for lam in partitions(d, n):
                rows.append(OrbReport.compare("hl_degeneration", {"n": n, "lambda": lam},
                                              hall_littlewood(lam, n, 1), monomial_sym(lam, n)))
    assert record(3, "Hall-Littlewood degeneration", rows, time.time() - t, 5), _bad(rows)


def test_criterion_4_jr_rank_one():
    t = time.time()
    rows, vanishing = [], {}
    for p in (3, 5):
        cfg = LocalCfg(p)
        samples = sampling.jr_rank1_samples(cfg, 64, seed=1000 + p, M=4)
        vanishing[p] = sum(s["kind"] == "vanishing" for s in samples)
        rows += verify_jr_fl(samples, cfg, 4, seed=1000 + p)
    enough = all(v >= 16 for v in vanishing.values())
    ok = record(4, "JR fundamental lemma, n = 1", rows, time.time() - t, 60,
                "  vanishing=%s" % vanishing)
    assert ok and enough, _bad(rows)


def test_criterion_5_jr_rank_two():
    cfg = LocalCfg(3)
    t = time.time()
    samples = sampling.jr_rank2_samples(cfg, 8, seed=2002, M=2, vanishing=2)
    rows = verify_jr_fl(samples, cfg, 2, seed=2002)
    assert record(5, "JR fundamental lemma, n = 2", rows, time.time() - t, 600), _bad(rows)


def test_criterion_6_hecke_fundamental_lemma():
    cfg = LocalCfg(3)
    t = time.time()
    rows = []
    for lam in [(0, 0), (1, 0), (1, 1), (2, 0)]:
        phi = HeckeElt.indicator(lam, E_SIDE)
        samples = sampling.hecke_samples(cfg, lam, 8, seed=3003, vanishing=4 if lam == (0, 0) else 0)
        rows += verify_hecke_fl(phi, samples, cfg, 10, seed=3003)
    assert record(6, "Hecke-algebra fundamental lemma", rows, time.time() - t, 600), _bad(rows)


def test_criterion_7_relative_fundamental_lemma():
    cfg = LocalCfg(3)
    t = time.time()
    samples = sampling.relative_samples(cfg, 8, seed=4004, vanishing=4)
    rows = verify_relative_fl(samples, cfg, 2, seed=4004)
    signs = {r.detail.get("calibration") for r in rows}
    constant = all(r.detail.get("class_constant") for r in rows)
    ok = record(7, "relative endoscopic FL", rows, time.time() - t, 600,
                "  calibration=%s" % sorted(signs))
    assert ok and len(signs) == 1 and constant, _bad(rows)


def test_criterion_8_contraction_identities():
    cfg = LocalCfg(3)
    t = time.time()
    reps = [class_representative(s["alpha"], s["beta"], s["sign"], cfg)
            for s in sampling.relative_samples(cfg, 10, seed=5005, vanishing=0)]
    rows = verify_orbital_reduction(reps, cfg, 2, seed=5005)
    Xs = sampling.integral_endomorphisms(cfg, 10, seed=5006)
    phis = [HeckeElt.indicator(lam, E_SIDE) for lam in [(0, 0), (1, 0), (1, 1)]]
    rows += verify_elementary_lemma(Xs, phis, cfg, 2, seed=5006)
    assert record(8, "contraction identities", rows, time.time() - t, 300), _bad(rows)


def test_criterion_9_property_suites():
    cfg = LocalCfg(3)
    t = time.time()
    s1 = sampling.jr_rank1_samples(cfg, 32, seed=6006)
    s2 = sampling.jr_rank2_samples(cfg, 4, seed=6007, M=2, vanishing=1)
    rows = []
    for s in (s1, s2):
        rows += verify_omega_equivariance(s, cfg, 6008) + verify_invariant_conjugation(s, cfg, 6008)
    # window re-check on a subset of each sample family
    rows += verify_window_stability(s1[::4], cfg, 4, 6006)
    rows += verify_window_stability(s2[:2], cfg, 2, 6007, unitary=False)
    split = sampling.split_samples(cfg, 6, seed=6009)
    pairs = split_pairs()
    gs = [s["delta1"] for s in split] + [s["delta2"] for s in split]
    twist_ok = all(theta_dual_is_identity(f, gs, cfg.p) for pair in pairs for f in pair)
    rows += verify_split_transfer(pairs, split, cfg, 3, 4, seed=6009)
    ok = record(9, "property suites and split transfer", rows, time.time() - t, 120)
    assert ok and twist_ok, _bad(rows)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
