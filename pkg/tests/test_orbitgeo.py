import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from relfl.localfield import ExtElt, LocalCfg, charpoly, conj_transpose, eta, is_hermitian, mat_det, mat_mul
from relfl.orbitgeo import (
    HermJRElement,
    Invariants,
    IrregularInvariants,
    JRElement,
    contraction_r,
    eigenline_class,
    invariants_jr,
    is_regular_ss,
    is_z_regular,
    kappa_sign,
    match_jr,
    section_from_invariants,
    split_roots,
    stable_class_reps,
    transfer_factor_omega,
)

CFG = LocalCfg(3)
P = 3


def ext(a, b=0):
    return ExtElt(a, b, CFG.epsilon)


def jr(A, b, c, d):
    fr = lambda x: Fraction(x)  # noqa: E731
    return JRElement([[fr(x) for x in r] for r in A], [fr(x) for x in b], [fr(x) for x in c], fr(d))


def random_jr(rng, n, bound=4):
    return jr([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)],
              [rng.randint(-bound, bound) for _ in range(n)],
              [rng.randint(-bound, bound) for _ in range(n)], rng.randint(-bound, bound))


def test_invariants_examples():
    zero = invariants_jr(jr([[0, 0], [0, 0]], [0, 0], [0, 0], 0))
    assert all(x == 0 for x in zero.as_tuple())
    assert invariants_jr(jr([[2]], [3], [5], 7)).as_tuple() == (2, 15, 7)


def test_invariants_against_sympy():
    rng = random.Random(11)
    for _ in range(10):
        X = random_jr(rng, 2)
        A, b, c = sympy.Matrix(X.A), sympy.Matrix(X.b), sympy.Matrix([X.c])
        wedge2 = (A.trace() ** 2 - (A * A).trace()) / 2
        want = (A.trace(), wedge2, (c * b)[0], (c * A * b)[0], X.d)
        assert invariants_jr(X).as_tuple() == tuple(Fraction(str(x)) for x in want)


def test_regularity_examples():
    assert is_regular_ss(jr([[1]], [2], [3], 0))
    assert not is_regular_ss(jr([[1]], [0], [3], 0))
    assert not is_z_regular(jr([[0]], [2], [3], 1))
    assert not is_z_regular(jr([[1]], [2], [3], 0))
    assert is_z_regular(jr([[1]], [2], [3], 1))


def test_regularity_against_cyclic_frames():
    rng = random.Random(12)
    for _ in range(30):
        X = random_jr(rng, 2, 2)
        A, b, c = sympy.Matrix(X.A), sympy.Matrix(X.b), sympy.Matrix([X.c])
        cyclic = sympy.Matrix.hstack(b, A * b).det() != 0 and sympy.Matrix.vstack(c, c * A).det() != 0
        assert is_regular_ss(X) == cyclic


def test_omega_examples():
    for beta in (1, 2, 3, Fraction(1, 9), 6):
        X = jr([[5]], [beta], [2], 4)
        assert transfer_factor_omega(X, P) == eta(-Fraction(beta), P)
        Xp = jr([[5]], [3 * Fraction(beta)], [2], 4)
        assert transfer_factor_omega(Xp, P) == -transfer_factor_omega(X, P)
    assert transfer_factor_omega(jr([[0, 1], [1, 0]], [0, 1], [1, 0], 1), P) == 1


def test_match_and_section_examples():
    Y = HermJRElement([[ext(2)]], [ext(1, 1)], Fraction(3))
    X = section_from_invariants(invariants_jr(Y))
    assert [list(r) for r in X.A] == [[2]]
    assert list(X.b) == [1] and list(X.c) == [2] and X.d == 3
    assert match_jr(X, Y)
    assert not match_jr(jr([[2]], [1], [2], 4), Y)
    with pytest.raises(IrregularInvariants):
        section_from_invariants(Invariants((1,), (0,), 1))


def test_section_round_trip():
    rng = random.Random(13)
    done = 0
    while done < 20:
        X = random_jr(rng, 2)
        if not is_regular_ss(X):
            continue
        inv = invariants_jr(X)
        assert invariants_jr(section_from_invariants(inv)) == inv
        done += 1


def _random_gl(rng, n):
    while True:
        h = [[Fraction(rng.randint(-3, 3), rng.choice([1, 1, 3])) for _ in range(n)] for _ in range(n)]
        if mat_det(h) != 0:
            return h


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.integers(0, 10**6))
def test_conjugation_properties(n, seed):
    rng = random.Random(seed)
    X, h = random_jr(rng, n), _random_gl(rng, n)
    Xh = X.conjugate(h)
    assert invariants_jr(Xh) == invariants_jr(X)
    if is_regular_ss(X):
        assert transfer_factor_omega(Xh, P) == eta(mat_det(h), P) * transfer_factor_omega(X, P)


def test_contraction_examples():
    I = [[ext(1), ext(0)], [ext(0), ext(1)]]
    assert contraction_r(I) == I
    z = ext(2, 1)
    assert contraction_r([[z]]) == [[ext(z.norm())]]


def _unitary(rng):
    a, b = ext(Fraction(3, 5), Fraction(4, 5)), ext(Fraction(5, 13), Fraction(12, 13))
    rot = [[ext(Fraction(3, 5)), -ext(Fraction(4, 5))], [ext(Fraction(4, 5)), ext(Fraction(3, 5))]]
    d = [[a, ext(0)], [ext(0), b]]
    return mat_mul(d, rot) if rng.random() < 0.5 else mat_mul(rot, d)


def test_contraction_properties():
    rng = random.Random(14)
    for _ in range(20):
        X = [[ext(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        r1, r2 = contraction_r(X, 1), contraction_r(X, 2)
        assert is_hermitian(r1) and charpoly(r1) == charpoly(r2)
    for _ in range(10):
        X = [[ext(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        g1, g2 = _unitary(rng), _unitary(rng)
        moved = mat_mul(mat_mul(g1, X), conj_transpose(g2))
        assert contraction_r(moved) == mat_mul(mat_mul(g1, contraction_r(X)), conj_transpose(g1))


def test_stable_classes():
    for alpha, beta in [(1, 4), (Fraction(1, 9), 1), (2, 10)]:
        y = [[ext(alpha), ext(0)], [ext(0), ext(beta)]]
        reps = stable_class_reps(y, CFG)
        assert [s for _, s in reps] == [1, -1]
        (base, _), (other, _) = reps
        assert charpoly(other) == charpoly(base)
        assert split_roots(other) == split_roots(base)
        a = max(alpha, beta)
        assert eigenline_class(other, a, P) == -eigenline_class(base, a, P)
        assert kappa_sign(base, base, CFG) == 1
        assert kappa_sign(base, other, CFG) == -1
        assert kappa_sign(other, other, CFG) * kappa_sign(base, other, CFG) == kappa_sign(base, other, CFG)
