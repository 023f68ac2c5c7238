import sympy

from relfl.exactcore import RatFunc

u = sympy.Symbol("u")


def ratfunc_to_sympy(f):
    num = sum(sympy.Rational(c.numerator, c.denominator) * u**i for i, c in enumerate(f.num))
    den = sum(sympy.Rational(c.numerator, c.denominator) * u**i for i, c in enumerate(f.den))
    return num / den


def sympy_to_ratfunc(expr):
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    n = sympy.Poly(num, u).all_coeffs()[::-1]
    d = sympy.Poly(den, u).all_coeffs()[::-1]
    return RatFunc([sympy.Rational(c) for c in n], [sympy.Rational(c) for c in d])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[num])
