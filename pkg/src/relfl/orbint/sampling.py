"""Deterministic sample generators; every sample is a plain dict of exact values."""

import random
from fractions import Fraction

from ..localfield import ExtElt, conj_transpose, eta, mat_det, mat_inv, mat_mul, val
from ..orbitgeo import (
    HermJRElement,
    Invariants,
    invariants_jr,
    is_regular_ss,
    moment_matrix,
    section_from_invariants,
)
from .engines import norm_preimage


def _unit(rng, p, lo=1, hi=6):
    while True:
        u = rng.choice([x for x in range(-hi, hi + 1) if x])
        if u % p:
            return u


def _pval(rng, p, v):
    return Fraction(p) ** v * _unit(rng, p)


def _ext(rng, cfg, bound=3):
    return ExtElt(rng.randint(-bound, bound), rng.randint(-bound, bound), cfg.epsilon)


def jr_rank1_samples(cfg, count, seed, vanishing_every=4, M=4):
    """n = 1 Jacquet-Rallis samples; every ``vanishing_every``-th sample has a
    pairing invariant of odd valuation (no matching Y on the split form)."""
    rng = random.Random(seed)
    p = cfg.p
    out = []
    for i in range(count):
        j = rng.randint(-1, 1)
        h = _pval(rng, p, j)
        a = _pval(rng, p, rng.choice([0, 0, 1, 2, -1]))
        d = _pval(rng, p, rng.choice([0, 0, 1, -1]))
        if i % vanishing_every == vanishing_every - 1:
            b0 = _pval(rng, p, rng.choice([-1, 1, 1]))
            X = section_from_invariants(Invariants((a,), (b0,), d)).conjugate([[h]])
            out.append({"kind": "vanishing", "X": X, "Y": None, "h": h})
            continue
        w = ExtElt(_unit(rng, p), rng.randint(-2, 2), cfg.epsilon) * Fraction(p) ** rng.choice([0, 0, 1])
        Y = HermJRElement([[cfg.ext(a)]], [w], d)
        X = section_from_invariants(invariants_jr(Y)).conjugate([[h]])
        out.append({"kind": "match", "X": X, "Y": Y, "h": h})
    return out


def _enclosed(L_basis, M, p):
    """Columns span a lattice L with L inside p^-M O^n and p^M O^n inside L."""
    if mat_det(L_basis) == 0:
        return False
    if any(x != 0 and val(x, p) < -M for r in L_basis for x in r):
        return False
    inv = mat_inv(L_basis)
    return all(x == 0 or val(x, p) >= -M for r in inv for x in r)


def _gl_enclosure_ok(X, M, p):
    A = [list(r) for r in X.A]
    n = X.n
    # span(b, Ab, ...) and the dual of span(c, cA, ...)
    cols, v = [], list(X.b)
    for _ in range(n):
        cols.append(v)
        v = [sum(A[i][k] * v[k] for k in range(n)) for i in range(n)]
    L0 = [[cols[j][i] for j in range(n)] for i in range(n)]
    rows, r = [], list(X.c)
    for _ in range(n):
        rows.append(r)
        r = [sum(r[k] * A[k][j] for k in range(n)) for j in range(n)]
    if mat_det(rows) == 0 or mat_det(L0) == 0:
        return False
    L1 = mat_inv(rows)
    return _enclosed(L0, M, p) and _enclosed(L1, M, p)


def _herm_enclosure_ok(Y, M, p):
    y = [list(r) for r in Y.A]
    n = Y.n
    cols, v = [], list(Y.b)
    for _ in range(n):
        cols.append(v)
        v = [sum((y[i][k] * v[k] for k in range(n)), 0 * v[0]) for i in range(n)]
    L0 = [[cols[j][i] for j in range(n)] for i in range(n)]
    if mat_det(L0) == 0:
        return False
    L0dual = mat_inv(conj_transpose(L0))
    return _enclosed(L0, M, p) and _enclosed(L0dual, M, p)


def jr_rank2_samples(cfg, count, seed, M=2, vanishing=0, max_tries=4000):
    """n = 2 samples whose a-priori lattice enclosures sit strictly inside the window."""
    rng = random.Random(seed)
    p = cfg.p
    out = []
    tries = 0
    while len([s for s in out if s["kind"] == "match"]) < count and tries < max_tries:
        tries += 1
        z = _ext(rng, cfg, 2)
        y = [[cfg.ext(rng.randint(-3, 3)), z], [z.conj(), cfg.ext(rng.randint(-3, 3))]]
        w = [_ext(rng, cfg, 2), _ext(rng, cfg, 2)]
        d = Fraction(rng.randint(-3, 3))
        Y = HermJRElement(y, w, d)
        if not is_regular_ss(Y) or not _herm_enclosure_ok(Y, M - 1, p):
            continue
        X = section_from_invariants(invariants_jr(Y))
        if not _gl_enclosure_ok(X, M - 1, p):
            continue
        out.append({"kind": "match", "X": X, "Y": Y})
    tries = 0
    found = 0
    while found < vanishing and tries < max_tries:
        tries += 1
        a = (Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
        b = (Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-4, 4)))
        inv = Invariants(a, b, Fraction(rng.randint(-3, 3)))
        try:
            X = section_from_invariants(inv)
        except ValueError:
            continue
        if eta(mat_det(moment_matrix(X)), p) != -1 or not _gl_enclosure_ok(X, M - 1, p):
            continue
        out.append({"kind": "vanishing", "X": X, "Y": None})
        found += 1
    return out


def _unimodular_ext(rng, cfg):
    t, s = _ext(rng, cfg, 2), _ext(rng, cfg, 2)
    one, zero = cfg.ext(1), cfg.ext(0)
    return mat_mul([[one, t], [zero, one]], [[one, zero], [s, one]])


def hecke_samples(cfg, lam, count, seed, vanishing=4):
    """Matching pairs (X in GL_2(F), Y Hermitian) with Y = h Y0 h^* for h of
    Cartan type ``lam`` and Y0 unimodular, plus pairs with v(cb) odd."""
    rng = random.Random(seed)
    p = cfg.p
    out = []
    while len(out) < count:
        while True:
            a, e = rng.randint(-3, 3), rng.randint(-3, 3)
            z = _ext(rng, cfg, 2)
            det0 = a * e - z.norm()
            if det0 != 0 and val(det0, p) == 0:
                break
        Y0 = [[cfg.ext(a), z], [z.conj(), cfg.ext(e)]]
        D = [[cfg.ext(Fraction(p) ** lam[0]), cfg.ext(0)], [cfg.ext(0), cfg.ext(Fraction(p) ** lam[1])]]
        h = mat_mul(mat_mul(_unimodular_ext(rng, cfg), D), _unimodular_ext(rng, cfg))
        Y = mat_mul(mat_mul(h, Y0), conj_transpose(h))
        y, w, lm = Y[0][0], Y[0][1], Y[1][1]
        if y == 0 or w == 0:
            continue
        j = rng.randint(-1, 1)
        t = _pval(rng, p, j)
        X = [[y.a, t], [w.norm() / t, lm.a]]
        out.append({"kind": "match", "X": X, "Y": Y})
    for _ in range(vanishing):
        A = Fraction(rng.randint(-3, 3))
        b = _pval(rng, p, rng.randint(-1, 1))
        c = _pval(rng, p, rng.choice([-1, 1, 1, 3])) / b
        dd = Fraction(rng.randint(-3, 3))
        if A * dd - b * c == 0:
            dd += 1
        out.append({"kind": "vanishing", "X": [[A, b], [c, dd]], "Y": None})
    return out


def relative_samples(cfg, count, seed, vanishing=4):
    """(alpha, beta, class sign) with split contraction; vanishing ones have
    alpha, beta of odd valuation."""
    rng = random.Random(seed)
    p = cfg.p
    mus = []
    for a in range(-3, 4):
        for b in range(-3, 4):
            m = ExtElt(a, b, cfg.epsilon)
            if m and m.norm() != 1 and val(m.norm(), p) in (0, 2):
                mus.append(m)
    # rational preimages exist only for global norms
    units = [u for u in range(1, 30) if u % p and norm_preimage(u, cfg, bound=6) is not None]
    out = []

    def draw(odd):
        while True:
            v = 1 if odd else rng.choice([0, 0, 0, 2])
            alpha = Fraction(p) ** v * rng.choice(units)
            mu = rng.choice(mus)
            beta = alpha * mu.norm()
            if beta != alpha and val(alpha - beta, p) - min(val(alpha, p), 0) <= 2:
                return alpha, beta

    for _ in range(count):
        alpha, beta = draw(False)
        out.append({"kind": "match", "alpha": alpha, "beta": beta, "sign": rng.choice([1, -1])})
    for _ in range(vanishing):
        alpha, beta = draw(True)
        out.append({"kind": "vanishing", "alpha": alpha, "beta": beta, "sign": rng.choice([1, -1])})
    return out


def integral_endomorphisms(cfg, count, seed, types=((0, 0), (1, 0), (1, 1), (2, 0))):
    """X = U diag(p^a, p^b) V over O_E with U, V unimodular, cycling through ``types``."""
    rng = random.Random(seed)
    p = cfg.p
    out = []
    for i in range(count):
        a, b = types[i % len(types)]
        D = [[cfg.ext(Fraction(p) ** a), cfg.ext(0)], [cfg.ext(0), cfg.ext(Fraction(p) ** b)]]
        out.append(mat_mul(mat_mul(_unimodular_ext(rng, cfg), D), _unimodular_ext(rng, cfg)))
    return out


def split_samples(cfg, count, seed):
    """Pairs of elements of GL_1(F) x GL_2(F) with small entries; GL_2 parts
    have v(det) <= 1 so that the twisted sums stay inside a rank-2 window of size 3."""
    rng = random.Random(seed)
    p = cfg.p
    out = []
    while len(out) < count:
        g1 = _pval(rng, p, rng.randint(0, 1))
        g2 = [[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        h1 = _pval(rng, p, rng.randint(0, 1))
        h2 = [[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        if mat_det(g2) == 0 or mat_det(h2) == 0:
            continue
        if val(mat_det(g2), p) > 1 or val(mat_det(h2), p) > 1:
            continue
        out.append({"delta1": (g1, g2), "delta2": (h1, h2)})
    return out
