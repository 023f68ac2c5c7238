import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from relfl.localfield import (
    ConfigError,
    DimensionMismatch,
    ExtElt,
    LocalCfg,
    ZeroArgument,
    charpoly,
    eta,
    hermitian_pair,
    identity,
    mat_inv,
    mat_mul,
    norm_class,
    reduce_mod,
    unitary_membership,
    val,
)

CFG = LocalCfg(3)
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def ext(a, b=0):
    return ExtElt(a, b, CFG.epsilon)


def test_config():
    assert LocalCfg(3).epsilon == -1
    assert LocalCfg(5).epsilon == -2
    assert LocalCfg(7).epsilon == -1
    with pytest.raises(ConfigError):
        LocalCfg(3, 1)
    with pytest.raises(ConfigError):
        LocalCfg(9)
    assert LocalCfg.from_json(json.dumps({"p": 5})) == LocalCfg(5, -2)
    with pytest.raises(ConfigError):
        LocalCfg.from_json("{}")


def test_eta_examples():
    assert eta(3, 3) == -1
    assert eta(Fraction(1, 9), 3) == 1
    assert eta(7, 3) == 1
    assert eta(CFG.epsilon, 3) == 1
    assert eta(5 * 5 * 3, 5) == 1
    with pytest.raises(ZeroArgument):
        eta(0, 3)


def test_valuation_and_reduction():
    assert val(Fraction(18, 5), 3) == 2
    assert val(ext(0, 9), 3) == 2
    assert val(ext(3, 1), 3) == 0
    assert reduce_mod(Fraction(1, 2), 2, 3) == 5
    assert reduce_mod(Fraction(10, 3), 1, 3) == Fraction(1, 3)
    assert reduce_mod(27, 2, 3) == 0


def test_charpoly_examples():
    assert charpoly(identity(2, Fraction(1))) == [1, -2, 1]
    assert charpoly([[Fraction(2), 0], [0, Fraction(5)]]) == [10, -7, 1]


def test_charpoly_matches_sympy():
    rng = random.Random(1)
    t = sympy.Symbol("t")
    for _ in range(10):
        M = [[Fraction(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        oracle = sympy.Poly((t * sympy.eye(3) - sympy.Matrix(M)).det(), t).all_coeffs()[::-1]
        assert charpoly(M) == [Fraction(int(c)) for c in oracle]


def test_charpoly_conjugation_invariant():
    rng = random.Random(2)
    for _ in range(20):
        M = [[ext(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        g = [[ext(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        if (g[0][0] * g[1][1] - g[0][1] * g[1][0]) == 0:
            continue
        assert charpoly(mat_mul(mat_mul(mat_inv(g), M), g)) == charpoly(M)


def test_hermitian_pair_examples():
    I = identity(2, ext(1))
    e1, e2 = [ext(1), ext(0)], [ext(0), ext(1)]
    assert hermitian_pair(I, e1, e1) == 1
    assert hermitian_pair(I, e1, e2) == 0
    assert hermitian_pair([[ext(1), ext(0)], [ext(0), ext(3)]], e2, e2) == 3
    with pytest.raises(DimensionMismatch):
        hermitian_pair(I, [ext(1)], e1)


def test_unitary_membership_examples():
    I = identity(2, ext(1))
    z = ext(Fraction(3, 5), Fraction(4, 5))
    assert z.norm() == 1
    assert unitary_membership(I, I)
    assert unitary_membership([[z, ext(0)], [ext(0), z.conj()]], I)
    assert not unitary_membership([[ext(3), ext(0)], [ext(0), ext(1)]], I)


@settings(max_examples=50, deadline=None)
@given(rationals, rationals, rationals, rationals)
def test_norm_multiplicative_trace_additive(a, b, c, d):
    x, y = ext(a, b), ext(c, d)
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    if x:
        assert x * x.inverse() == ext(1)


@settings(max_examples=50, deadline=None)
@given(rationals.filter(bool), st.sampled_from([3, 5, 7]))
def test_norm_class_is_eta(x, p):
    assert norm_class(x, LocalCfg(p)) == eta(x, p)
