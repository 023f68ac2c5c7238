import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relfl.exactcore import RatFunc, U
from relfl.heckealg import (
    E_SIDE,
    F_SIDE,
    HeckeElt,
    HeckeTensor,
    SideMismatch,
    bc_morphism,
    convolve,
    satake,
    satake_inv,
    unit_ball_sum,
    verify_sft_special,
    verify_xi_identity,
    xi_ab,
)
from relfl.symfunc import SymLaurentPoly, monomial_sym, partitions

ONE = RatFunc.const(1)
Q = RatFunc.u_pow(2)


def ind(lam, side=F_SIDE):
    return HeckeElt.indicator(lam, side)


def test_satake_examples():
    assert satake(ind((0, 0))) == SymLaurentPoly.one(2)
    assert satake(ind((1, 0))) == monomial_sym((1, 0), 2).scale(U)
    assert satake(ind((1, 0), E_SIDE)) == monomial_sym((1, 0), 2).scale(Q)


def test_satake_inverse_examples():
    assert satake_inv(SymLaurentPoly.one(2), F_SIDE) == ind((0, 0))
    assert satake_inv(monomial_sym((1, 0), 2).scale(U), F_SIDE) == ind((1, 0))
    assert satake_inv(monomial_sym((1, 1), 2), F_SIDE) == ind((1, 1))


def test_convolution_square_of_minuscule():
    h = convolve(ind((1, 0)), ind((1, 0)))
    # classical: 1_{K w K} * 1_{K w K} = 1_{K w^2 K} + (q + 1) 1_{w K}
    assert h == HeckeElt(2, F_SIDE, {(2, 0): ONE, (1, 1): Q + 1})


def test_convolution_unit_and_commutativity():
    h = ind((2, 1, 0)) + ind((1, 1, 0)).scale(U)
    assert convolve(HeckeElt.unit(3, F_SIDE), h) == h
    a, b = ind((1, 0, 0), E_SIDE), ind((2, 2, 0), E_SIDE)
    assert convolve(a, b) == convolve(b, a)


def test_base_change_examples():
    assert bc_morphism(HeckeElt.unit(2, E_SIDE)) == HeckeElt.unit(2, F_SIDE)
    for m in range(-2, 4):
        assert bc_morphism(ind((m,), E_SIDE)) == ind((2 * m,))
    assert bc_morphism(ind((1, 0), E_SIDE)) == HeckeElt(2, F_SIDE, {(2, 0): ONE, (1, 1): 1 - Q})
    with pytest.raises(SideMismatch):
        bc_morphism(ind((1, 0)))


def test_xi_examples():
    assert xi_ab(HeckeElt.unit(2, E_SIDE), 1, 1) == HeckeTensor.outer(HeckeElt.unit(1, E_SIDE), HeckeElt.unit(1, E_SIDE))
    want = HeckeTensor((1, 1), E_SIDE, {((1,), (0,)): ONE, ((0,), (1,)): ONE})
    assert xi_ab(ind((1, 0), E_SIDE), 1, 1) == want
    for d in range(4):
        rhs = HeckeTensor((1, 1), E_SIDE)
        for da in range(d + 1):
            rhs = rhs + HeckeTensor.outer(ind((da,), E_SIDE), ind((d - da,), E_SIDE))
        assert xi_ab(unit_ball_sum(d, 2), 1, 1, check=True) == rhs


def test_unit_ball_sum_examples():
    assert unit_ball_sum(0, 2) == HeckeElt.unit(2, E_SIDE)
    assert unit_ball_sum(2, 2) == ind((2, 0), E_SIDE) + ind((1, 1), E_SIDE)
    assert unit_ball_sum(3, 2) == ind((3, 0), E_SIDE) + ind((2, 1), E_SIDE)


def test_verifiers_small_cases():
    for k in range(4):
        assert verify_sft_special(1, k).ok
        assert satake(ind((k,), E_SIDE)) == monomial_sym((k,), 1)
    assert verify_sft_special(2, 1).ok
    assert verify_sft_special(3, 2).ok
    for d in range(5):
        assert verify_xi_identity(2, 1, 1, d).ok
    for d in range(4):
        assert verify_xi_identity(3, 2, 1, d).ok


def _random_elt(rng, n, side):
    lams = [lam for d in range(4) for lam in partitions(d, n)]
    h = HeckeElt(n, side, {})
    for _ in range(rng.randint(1, 3)):
        h = h + ind(rng.choice(lams), side).scale(rng.randint(-3, 3))
    return h


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.sampled_from([F_SIDE, E_SIDE]), st.integers(0, 10**6))
def test_satake_round_trip(n, side, seed):
    h = _random_elt(random.Random(seed), n, side)
    assert satake_inv(satake(h), side, n) == h


def test_xi_and_bc_are_algebra_maps():
    rng = random.Random(3)
    for _ in range(10):
        a, b = _random_elt(rng, 2, E_SIDE), _random_elt(rng, 2, E_SIDE)
        assert xi_ab(convolve(a, b), 1, 1) == xi_ab(a, 1, 1).convolve(xi_ab(b, 1, 1))
        assert bc_morphism(convolve(a, b)) == convolve(bc_morphism(a), bc_morphism(b))
