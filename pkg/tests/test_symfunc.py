import itertools
import random
from functools import lru_cache

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from relfl.exactcore import RatFunc, U
from relfl.symfunc import (
    BadShape,
    NotSymmetric,
    SymLaurentPoly,
    TensorSym,
    expand_in_hall_littlewood,
    from_hall_littlewood,
    hall_littlewood,
    monomial_sym,
    orbit,
    partitions,
    substitute_scaled,
)

from conftest import ratfunc_to_sympy, u


@lru_cache(maxsize=None)
def hl_by_symmetrization(lam, n):
    """P_lam via the symmetrization formula, with t = u; returns {mu: sympy expr}."""
    xs = sympy.symbols("x1:%d" % (n + 1))
    t = u
    total = 0
    for w in itertools.permutations(range(n)):
        y = [xs[i] for i in w]
        term = sympy.Mul(*[y[i] ** lam[i] for i in range(n)])
        for i in range(n):
            for j in range(i + 1, n):
                term *= (y[i] - t * y[j]) / (y[i] - y[j])
        total += term
    v = 1
    for part in set(lam):
        m = lam.count(part)
        for j in range(1, m + 1):
            v *= (1 - t**j) / (1 - t)
    poly = sympy.Poly(sympy.cancel(sympy.together(total / v)), *xs)
    return {mon: sympy.cancel(c) for mon, c in poly.terms()}


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_hall_littlewood_matches_symmetrization(n, d):
    for lam in partitions(d, n):
        ours = hall_littlewood(lam, n, U)
        oracle = hl_by_symmetrization(lam, n)
        mons = ours.monomials()
        assert set(mons) == set(oracle)
        for e, c in mons.items():
            assert sympy.cancel(ratfunc_to_sympy(c) - oracle[e]) == 0


def test_orbit_examples():
    assert sorted(orbit((1, 0))) == [(0, 1), (1, 0)]
    assert orbit((0, 0)) == [(0, 0)] or list(orbit((0, 0))) == [(0, 0)]
    assert sorted(orbit((2, 1))) == [(1, 2), (2, 1)]


def test_hall_littlewood_examples():
    assert hall_littlewood((1,), 2, U) == monomial_sym((1, 0), 2)
    assert hall_littlewood((1, 1), 2, U) == monomial_sym((1, 1), 2)
    want = monomial_sym((2, 0), 2) + monomial_sym((1, 1), 2).scale(1 - U)
    assert hall_littlewood((2,), 2, U) == want


def test_expand_examples():
    assert expand_in_hall_littlewood(monomial_sym((1, 0), 2), U) == {(1, 0): RatFunc.const(1)}
    got = expand_in_hall_littlewood(monomial_sym((2, 0), 2), U)
    assert got == {(2, 0): RatFunc.const(1), (1, 1): -(1 - U)}
    assert expand_in_hall_littlewood(hall_littlewood((2,), 2, U), U) == {(2, 0): RatFunc.const(1)}


def test_negative_weights_use_det_twist():
    p = hall_littlewood((0, -1), 2, U)
    assert p == hall_littlewood((1, 0), 2, U).shift(-1)
    assert expand_in_hall_littlewood(p, U) == {(0, -1): RatFunc.const(1)}


def test_bad_shape_and_symmetry_checks():
    with pytest.raises(BadShape):
        SymLaurentPoly(2, {(0, 1): 1})
    with pytest.raises(NotSymmetric):
        SymLaurentPoly.from_monomials(2, {(1, 0): RatFunc.const(1)})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_degeneration_at_t_one(n):
    for d in range(5):
        for lam in partitions(d, n):
            assert hall_littlewood(lam, n, 1) == monomial_sym(lam, n)


@pytest.mark.parametrize("n", [2, 3])
def test_homogeneous(n):
    for d in range(5):
        for lam in partitions(d, n):
            assert hall_littlewood(lam, n, U).degrees() == {d}


coeff_maps = st.dictionaries(
    st.sampled_from([lam for d in range(5) for lam in partitions(d, 3)]),
    st.integers(-5, 5).filter(bool),
    min_size=1,
    max_size=4,
)


@settings(max_examples=20, deadline=None)
@given(coeff_maps)
def test_expand_inverts_build(coeffs):
    coeffs = {k: RatFunc.const(v) for k, v in coeffs.items()}
    assert expand_in_hall_littlewood(from_hall_littlewood(coeffs, 3, U), U) == coeffs


def test_substitute_examples():
    p = monomial_sym((1, 0), 2)
    sq = substitute_scaled(p, [(1, 0, 0, 2), (1, 0, 1, 2)], (2,))
    assert sq == TensorSym((2,), {((2, 0),): 1})
    qi = RatFunc.u_pow(-2)
    subs = [(qi, 0, 0, 1), (qi, 1, 0, 1)]
    assert substitute_scaled(p, subs, (1, 1)) == TensorSym((1, 1), {((1,), (0,)): qi, ((0,), (1,)): qi})
    assert substitute_scaled(monomial_sym((1, 1), 2), subs, (1, 1)) == TensorSym((1, 1), {((1,), (1,)): qi * qi})


def _random_sym(rng, n):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        lam = rng.choice([lam for d in range(3) for lam in partitions(d, n)])
        terms[lam] = rng.randint(-3, 3)
    return SymLaurentPoly(n, terms)


def test_substitute_is_multiplicative():
    rng = random.Random(5)
    qi = RatFunc.u_pow(-2)
    subs = [(qi, 0, 0, 1), (qi, 0, 1, 1), (RatFunc.u_pow(-4), 1, 0, 1)]
    for _ in range(20):
        a, b = _random_sym(rng, 3), _random_sym(rng, 3)
        lhs = substitute_scaled(a * b, subs, (2, 1))
        rhs = substitute_scaled(a, subs, (2, 1)) * substitute_scaled(b, subs, (2, 1))
        assert lhs == rhs
