"""Exact coefficient arithmetic.

Scalars are :class:`fractions.Fraction`.  Rational functions live in the
single indeterminate ``u`` with ``q = u**2``; the E-side residue cardinality
is ``q_E = u**4``.  A negative power of ``u`` is stored as ``1/u**k``.
"""

from fractions import Fraction
from math import gcd

Rat = Fraction


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtPoint(ZeroDivisionError):
    pass


# -- dense univariate polynomials: tuples of Fractions, ascending, no trailing zeros

def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def pneg(a):
    return tuple(-x for x in a)


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def pscale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def pdivmod(a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), _trim(a)
    quo = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        quo[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _trim(quo), _trim(a[:db])


def pmonic(a):
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(x / lead for x in a)


def _u_order(a):
    k = 0
    while k < len(a) and not a[k]:
        k += 1
    return k


def _is_monomial(a):
    return _u_order(a) == len(a) - 1


def pgcd(a, b):
    """Monic gcd over Q (Euclid)."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a) if a else ()


def peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


_ONE = (Fraction(1),)


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials in ``u``; ``den`` monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=_ONE, _reduced=False):
        num = _trim(Fraction(x) for x in num)
        den = _trim(Fraction(x) for x in den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls((c,) if c else (), _ONE, _reduced=True)

    @classmethod
    def u_pow(cls, k):
        """``u**k`` for any integer ``k``."""
        if k >= 0:
            return cls((Fraction(0),) * k + (Fraction(1),), _ONE, _reduced=True)
        return cls(_ONE, (Fraction(0),) * (-k) + (Fraction(1),), _reduced=True)

    @classmethod
    def q_pow(cls, k, side_exp=2):
        """``u**(side_exp*k)``; ``side_exp`` is 2 for q and 4 for q_E."""
        return cls.u_pow(side_exp * k)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFunc):
            return x
        return cls.const(x)

    # predicates
    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_const(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant: %s" % self)
        return self.num[0] if self.num else Fraction(0)

    def is_even(self):
        """True iff the function lies in Q(u**2)."""
        return all(not c for c in self.num[1::2]) and all(not c for c in self.den[1::2])

    # arithmetic
    def __add__(self, other):
        other = RatFunc.coerce(other)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFunc(padd(self.num, other.num), self.den)
        return RatFunc(padd(pmul(self.num, other.den), pmul(other.num, self.den)),
                       pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        other = RatFunc.coerce(other)
        if not self.num or not other.num:
            return ZERO
        if other.den == _ONE and len(other.num) == 1:
            return RatFunc(pscale(self.num, other.num[0]), self.den, _reduced=True)
        if self.den == _ONE and len(self.num) == 1:
            return RatFunc(pscale(other.num, self.num[0]), other.den, _reduced=True)
        return RatFunc(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = RatFunc.coerce(other)
        if not other.num:
            raise DivisionByZero("rational function division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # evaluation
    def eval(self, u0):
        u0 = Fraction(u0)
        d = peval(self.den, u0)
        if not d:
            raise PoleAtPoint("pole at u = %s" % u0)
        return peval(self.num, u0) / d

    def eval_q(self, q0):
        """Evaluate at ``u**2 = q0``; the function must lie in Q(u**2)."""
        if not self.is_even():
            raise ValueError("odd powers of u present; cannot specialise at q = %s" % q0)
        q0 = Fraction(q0)
        d = peval(self.den[::2], q0)
        if not d:
            raise PoleAtPoint("pole at q = %s" % q0)
        return peval(self.num[::2], q0) / d

    # rendering
    def int_lists(self):
        """Integer coefficient lists (num, den), den primitive with positive lead."""
        den_l = 1
        for c in self.num + self.den:
            den_l = den_l * c.denominator // gcd(den_l, c.denominator)
        num = [int(c * den_l) for c in self.num]
        den = [int(c * den_l) for c in self.den]
        g = 0
        for c in num + den:
            g = gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den = [c // g for c in den]
        return num, den

    def render(self):
        num, den = self.int_lists()
        return "(%s)/(%s)" % (",".join(map(str, num)) or "0", ",".join(map(str, den)))

    @classmethod
    def parse(cls, text):
        a, b = text.strip().split(")/(")
        num = [int(x) for x in a.lstrip("(").split(",")]
        den = [int(x) for x in b.rstrip(")").split(",")]
        return cls(num, den)

    def __repr__(self):
        return "RatFunc%s" % self.render()

    def __str__(self):
        return _pretty(self.num) if self.den == _ONE else "(%s)/(%s)" % (_pretty(self.num), _pretty(self.den))


def _pretty(p):
    if not p:
        return "0"
    terms = []
    for k, c in enumerate(p):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = "u" if k == 1 else "u^%d" % k
            terms.append(mono if c == 1 else ("-" + mono if c == -1 else "%s*%s" % (c, mono)))
    return "+".join(terms).replace("+-", "-")


def _reduce(num, den):
    if not num:
        return (), _ONE
    if len(den) == 1:
        return pscale(num, 1 / den[0]) if den[0] != 1 else num, _ONE
    if _is_monomial(den):
        k = min(_u_order(num), len(den) - 1)
        lead = den[-1]
        num = num[k:]
        den = den[k:]
        if lead != 1:
            num = pscale(num, 1 / lead)
            den = pscale(den, 1 / lead)
        return num, den
    g = pgcd(num, den)
    if len(g) > 1:
        num = pdivmod(num, g)[0]
        den = pdivmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        num = pscale(num, 1 / lead)
        den = pscale(den, 1 / lead)
    return num, den


ZERO = RatFunc((), _ONE, _reduced=True)
ONE = RatFunc.const(1)
U = RatFunc.u_pow(1)


def ratfunc_arith(a, b, op):
    """Binary operation by name: add, sub, mul or div."""
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def ratfunc_eval(f, u0):
    return RatFunc.coerce(f).eval(u0)
