"""Exact models of F = Q inside Q_p and of its unramified quadratic extension
E = F(omega), omega^2 = epsilon, with matrix and Hermitian-form helpers."""

import json
from fractions import Fraction


class ConfigError(ValueError):
    pass


class ZeroArgument(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


class LocalCfg:
    __slots__ = ("p", "epsilon")

    def __init__(self, p=3, epsilon=None):
        p = int(p)
        if p % 2 == 0 or not _is_prime(p):
            raise ConfigError("p must be an odd prime, got %r" % (p,))
        if epsilon is None:
            epsilon = default_nonresidue(p)
        epsilon = int(epsilon)
        if legendre(epsilon, p) != -1:
            raise ConfigError("epsilon=%d is not a quadratic non-residue mod %d" % (epsilon, p))
        self.p = p
        self.epsilon = epsilon

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("config is not valid JSON: %s" % exc) from None
        if "p" not in data:
            raise ConfigError("config needs a 'p' entry")
        return cls(data["p"], data.get("epsilon"))

    def __eq__(self, other):
        return isinstance(other, LocalCfg) and (self.p, self.epsilon) == (other.p, other.epsilon)

    def __hash__(self):
        return hash((self.p, self.epsilon))

    def __repr__(self):
        return "LocalCfg(p=%d, epsilon=%d)" % (self.p, self.epsilon)

    def ext(self, a, b=0):
        return ExtElt(a, b, self.epsilon)

    @property
    def omega(self):
        return ExtElt(0, 1, self.epsilon)


def default_nonresidue(p):
    """Small non-residue, preferring -1 and then -2 so that norm forms stay simple."""
    for e in (-1, -2) + tuple(range(2, p)):
        if legendre(e, p) == -1:
            return e
    raise ConfigError("no non-residue mod %d" % p)


def _vp_int(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val(x, p):
    """p-adic valuation of a nonzero rational or ExtElt."""
    if isinstance(x, ExtElt):
        return x.val(p)
    x = Fraction(x)
    if x == 0:
        raise ZeroArgument("valuation of 0")
    return _vp_int(abs(x.numerator), p) - _vp_int(x.denominator, p)


def val_or_inf(x, p):
    if x == 0:
        return float("inf")
    return val(x, p)


def is_integral(x, p):
    return x == 0 or val(x, p) >= 0


def eta(x, p):
    if x == 0:
        raise ZeroArgument("eta(0)")
    return -1 if val(x, p) % 2 else 1


def norm_class(x, cfg):
    """+1 iff x is a norm from E; decided by solving a^2 - eps b^2 = unit part
    over the residue field, with odd valuation declared non-norm."""
    if x == 0:
        raise ZeroArgument("norm_class(0)")
    p = cfg.p
    v = val(x, p)
    if v % 2:
        return -1
    unit = Fraction(x) / Fraction(p) ** v
    target = unit.numerator * pow(unit.denominator, -1, p) % p
    for a in range(p):
        for b in range(p):
            if (a * a - cfg.epsilon * b * b - target) % p == 0:
                return 1
    return -1


def reduce_mod(x, k, p):
    """Canonical representative of x + p^k O for rational x."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    v = val(x, p)
    if v >= k:
        return Fraction(0)
    pv = Fraction(p) ** v
    unit = x / pv
    m = p ** (k - v)
    digit = unit.numerator * pow(unit.denominator, -1, m) % m
    return pv * digit


class ExtElt:
    """a + b*omega with omega^2 = eps; a, b rational."""

    __slots__ = ("a", "b", "eps")

    def __init__(self, a, b=0, eps=-1):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.eps = eps

    def _coerce(self, other):
        if isinstance(other, ExtElt):
            return other
        if isinstance(other, (int, Fraction)):
            return ExtElt(other, 0, self.eps)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElt(self.a + other.a, self.b + other.b, self.eps)

    __radd__ = __add__

    def __neg__(self):
        return ExtElt(-self.a, -self.b, self.eps)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElt(self.a - other.a, self.b - other.b, self.eps)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExtElt(self.a * other, self.b * other, self.eps)
        if not isinstance(other, ExtElt):
            return NotImplemented
        return ExtElt(self.a * other.a + self.eps * self.b * other.b,
                      self.a * other.b + self.b * other.a, self.eps)

    __rmul__ = __mul__

    def conj(self):
        return ExtElt(self.a, -self.b, self.eps)

    def norm(self):
        return self.a * self.a - self.eps * self.b * self.b

    def trace(self):
        return 2 * self.a

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in E")
        return ExtElt(self.a / n, -self.b / n, self.eps)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExtElt(self.a / other, self.b / other, self.eps)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ExtElt(1, 0, self.eps)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ExtElt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self):
        return self.b == 0

    def val(self, p):
        if not self:
            raise ZeroArgument("valuation of 0")
        vs = [val(c, p) for c in (self.a, self.b) if c]
        return min(vs)

    def reduce_mod(self, k, p):
        return ExtElt(reduce_mod(self.a, k, p), reduce_mod(self.b, k, p), self.eps)

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        sign = "-" if self.b < 0 else "+"
        coeff = "" if abs(self.b) == 1 else "%s*" % abs(self.b)
        return "(%s%s%sw)" % (self.a, sign, coeff)


def conj(x):
    return x.conj() if isinstance(x, ExtElt) else x


# -- matrices (lists of rows) ---------------------------------------------

def mat(rows):
    return [list(r) for r in rows]


def identity(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if len(A[0]) != len(B):
        raise DimensionMismatch("%dx%d times %dx%d" % (len(A), len(A[0]), len(B), len(B[0])))
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), 0 * A[i][0])
             for j in range(len(B[0]))] for i in range(len(A))]


def mat_vec(A, v):
    return [sum((A[i][k] * v[k] for k in range(len(v))), 0 * A[i][0]) for i in range(len(A))]


def mat_add(A, B):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(A, c):
    return [[x * c for x in r] for r in A]


def conj_transpose(A):
    return [[conj(A[i][j]) for i in range(len(A))] for j in range(len(A[0]))]


def transpose(A):
    return [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]


def _to_field(x):
    return x if isinstance(x, ExtElt) else Fraction(x)


def mat_det(A):
    n = len(A)
    M = [[_to_field(x) for x in r] for r in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return 0 * M[0][0]
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = M[c][c] * det
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] * inv
            if f != 0:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def mat_inv(A):
    n = len(A)
    M = [[_to_field(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [r[n:] for r in M]


def trace(A):
    return sum((A[i][i] for i in range(len(A))), 0 * A[0][0])


def charpoly(M):
    """Coefficients [c_0, ..., c_{n-1}, 1] of det(t I - M), ascending."""
    n = len(M)
    coeffs = [None] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[0 * M[0][0] for _ in range(n)] for _ in range(n)]
    for k in range(1, n + 1):
        # Faddeev-LeVerrier
        Mk = mat_mul(M, Mk)
        for i in range(n):
            Mk[i][i] = Mk[i][i] + coeffs[n - k + 1]
        AM = mat_mul(M, Mk)
        coeffs[n - k] = -trace(AM) / k
    return coeffs


def is_hermitian(x):
    n = len(x)
    return all(len(r) == n for r in x) and all(x[j][i] == conj(x[i][j]) for i in range(n) for j in range(n))


def herm_mat(rows):
    x = mat(rows)
    if not is_hermitian(x):
        raise ValueError("matrix is not Hermitian")
    return x


def hermitian_pair(x, v, w):
    if len(v) != len(x) or len(w) != len(x):
        raise DimensionMismatch("vector length does not match form rank")
    xw = mat_vec(x, w)
    return sum((conj(a) * b for a, b in zip(v, xw)), 0 * xw[0])


def unitary_membership(g, x):
    if len(g) != len(x):
        raise DimensionMismatch("rank mismatch")
    lhs = mat_mul(mat_mul(conj_transpose(g), x), g)
    return all(lhs[i][j] == x[i][j] for i in range(len(x)) for j in range(len(x)))


def is_integral_matrix(A, p):
    return all(is_integral(x, p) for r in A for x in r)
