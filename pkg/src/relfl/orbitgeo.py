"""Orbit invariants, regularity, transfer factors, matching and the n = 2
stable-class data for the relative endoscopic comparison."""

from dataclasses import dataclass
from fractions import Fraction

from .localfield import (
    ExtElt,
    conj,
    conj_transpose,
    charpoly,
    eta,
    is_hermitian,
    mat_det,
    mat_inv,
    mat_mul,
    mat_vec,
    val,
)


class NotRational(ValueError):
    pass


class SingularFrame(ZeroDivisionError):
    pass


class IrregularInvariants(ValueError):
    pass


class UnsupportedClassType(ValueError):
    pass


@dataclass(frozen=True)
class JRElement:
    A: tuple
    b: tuple
    c: tuple
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(Fraction(x) for x in r) for r in self.A))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))
        object.__setattr__(self, "c", tuple(Fraction(x) for x in self.c))
        object.__setattr__(self, "d", Fraction(self.d))

    @property
    def n(self):
        return len(self.A)

    def full(self):
        n = self.n
        rows = [list(self.A[i]) + [self.b[i]] for i in range(n)]
        rows.append(list(self.c) + [self.d])
        return rows

    @classmethod
    def from_full(cls, X):
        n = len(X) - 1
        return cls([r[:n] for r in X[:n]], [X[i][n] for i in range(n)], X[n][:n], X[n][n])

    def conjugate(self, h):
        """Ad(h) on the GL_n block: (hAh^-1, hb, ch^-1, d)."""
        hi = mat_inv(h)
        A = mat_mul(mat_mul(h, [list(r) for r in self.A]), hi)
        b = mat_vec(h, list(self.b))
        c = [sum(self.c[k] * hi[k][j] for k in range(self.n)) for j in range(self.n)]
        return JRElement(A, b, c, self.d)


@dataclass(frozen=True)
class HermJRElement:
    """Y = [[y, w], [<w, ->, d]] for the standard form on E^n."""
    A: tuple
    b: tuple
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(r) for r in self.A))
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "d", Fraction(self.d))
        if not is_hermitian([list(r) for r in self.A]):
            raise ValueError("y block is not Hermitian")

    @property
    def n(self):
        return len(self.A)

    def c(self):
        return tuple(conj(x) for x in self.b)

    def full(self):
        n = self.n
        rows = [list(self.A[i]) + [self.b[i]] for i in range(n)]
        rows.append(list(self.c()) + [self.d])
        return rows


@dataclass(frozen=True)
class Invariants:
    a: tuple
    b: tuple
    d: Fraction

    def as_tuple(self):
        return tuple(self.a) + tuple(self.b) + (self.d,)

    def z_regular_invariants(self):
        """(a_i / a_1^i, b_j / (a_1^j b_0), d / a_1)."""
        a1 = self.a[0]
        if a1 == 0 or not self.b or self.b[0] == 0:
            raise IrregularInvariants("trace or b_0 vanishes")
        return (tuple(x / a1 ** (i + 1) for i, x in enumerate(self.a)),
                tuple(x / (a1 ** j * self.b[0]) for j, x in enumerate(self.b)),
                self.d / a1)

    def as_dict(self):
        return {"a": [str(x) for x in self.a], "b": [str(x) for x in self.b], "d": str(self.d)}


def _as_rational(x):
    if isinstance(x, ExtElt):
        if x.b != 0:
            raise NotRational("%r is not in F" % (x,))
        return x.a
    return Fraction(x)


def _moments(A, b, c, count):
    out = []
    v = list(b)
    for _ in range(count):
        out.append(sum((ci * vi for ci, vi in zip(c, v)), 0 * v[0]))
        v = mat_vec(A, v)
    return out


def invariants_jr(X):
    A = [list(r) for r in X.A]
    n = len(A)
    cp = charpoly(A)
    a = [(-1) ** i * cp[n - i] for i in range(1, n + 1)]
    c = X.c() if isinstance(X, HermJRElement) else X.c
    b = _moments(A, list(X.b), list(c), n)
    return Invariants(tuple(_as_rational(x) for x in a), tuple(_as_rational(x) for x in b), X.d)


def moment_matrix(X):
    c = X.c() if isinstance(X, HermJRElement) else X.c
    m = _moments([list(r) for r in X.A], list(X.b), list(c), 2 * X.n - 1)
    return [[m[i + j] for j in range(X.n)] for i in range(X.n)]


def is_regular_ss(X):
    return mat_det(moment_matrix(X)) != 0


def is_z_regular(X):
    return is_regular_ss(X) and sum(X.A[i][i] for i in range(X.n)) != 0 and X.d != 0


def frame_det(X):
    full = X.full()
    m = len(full)
    v = [Fraction(0)] * (m - 1) + [Fraction(1)]
    cols = []
    for _ in range(m):
        cols.append(v)
        v = mat_vec(full, v)
    return mat_det([[cols[j][i] for j in range(m)] for i in range(m)])


def transfer_factor_omega(X, p):
    det = frame_det(X)
    if det == 0:
        raise SingularFrame("frame determinant vanishes")
    return eta(det, p)


def match_jr(X, Y):
    return invariants_jr(X) == invariants_jr(Y)


def section_from_invariants(inv):
    """X with companion block, b = e_n and c read off from the moments."""
    n = len(inv.a)
    A = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        A[k][0] = (-1) ** k * Fraction(inv.a[k])
    for i in range(n - 1):
        A[i][i + 1] = Fraction(1)
    b = [Fraction(0)] * (n - 1) + [Fraction(1)]
    # A^j e_n = e_{n-j} for j < n
    c = [Fraction(inv.b[n - 1 - k]) for k in range(n)]
    X = JRElement(A, b, c, inv.d)
    if not is_regular_ss(X):
        raise IrregularInvariants("moment matrix is singular")
    return X


# -- contraction and stable classes ---------------------------------------

def tau(X, form1=None, form2=None):
    """Adjoint with <X w2, w1>_1 = <w2, X^tau w1>_2."""
    Xs = conj_transpose(X)
    if form1 is not None:
        Xs = mat_mul(Xs, form1)
    if form2 is not None:
        Xs = mat_mul(mat_inv(form2), Xs)
    return Xs


def contraction_r(X, side=1, form1=None, form2=None):
    Xt = tau(X, form1, form2)
    out = mat_mul(X, Xt) if side == 1 else mat_mul(Xt, X)
    form = form1 if side == 1 else form2
    check = out if form is None else mat_mul(form, out)
    if not is_hermitian(check):
        raise AssertionError("contraction is not self-adjoint")
    return out


def split_roots(y):
    """Distinct eigenvalues (alpha > beta) of a 2x2 Hermitian y when they lie in F."""
    if len(y) != 2:
        raise UnsupportedClassType("stable classes are only implemented for n = 2")
    cp = charpoly(y)
    c0, c1 = _as_rational(cp[0]), _as_rational(cp[1])
    disc = c1 * c1 - 4 * c0
    r = _rational_sqrt(disc)
    if r is None or r == 0:
        raise UnsupportedClassType("characteristic polynomial is not split with distinct roots")
    return (-c1 + r) / 2, (-c1 - r) / 2


def _rational_sqrt(x):
    if x < 0:
        return None
    n, d = _isqrt_exact(x.numerator), _isqrt_exact(x.denominator)
    if n is None or d is None:
        return None
    return Fraction(n, d)


def _isqrt_exact(n):
    from math import isqrt
    r = isqrt(n)
    return r if r * r == n else None


def eigenvector(y, lam):
    """Kernel vector of the rank-one matrix y - lam."""
    a, b = y[0][0] - lam, y[0][1]
    if a != 0 or b != 0:
        return [b, -a]
    c, d = y[1][0], y[1][1] - lam
    if c != 0 or d != 0:
        return [-d, c]
    raise UnsupportedClassType("y - lam vanishes; y is not regular")


def eigenline_class(y, alpha, p, form=None):
    """eta-class of <v, v> for an alpha-eigenvector v."""
    v = eigenvector(y, alpha)
    Fv = v if form is None else mat_vec(form, v)
    pair = sum((conj(x) * y_ for x, y_ in zip(v, Fv)), 0 * v[0])
    return eta(_as_rational(pair), p)


def _odd_norm_frame(cfg):
    """(z1, z2) in O_E with Nm z1 + Nm z2 of odd valuation, smallest first."""
    p, eps = cfg.p, cfg.epsilon
    cands = [ExtElt(a, b, eps) for s in range(0, 2 * p) for a in range(s + 1) for b in (s - a,)]
    for z2 in cands:
        T = 1 + z2.norm()
        if T != 0 and val(T, p) % 2 == 1:
            return ExtElt(1, 0, eps), z2
    raise UnsupportedClassType("no odd-norm frame found")


def twist_frame(cfg):
    """Columns u1 = (z1, z2), u2 = (-conj z2, conj z1), both of norm T, v(T) odd."""
    z1, z2 = _odd_norm_frame(cfg)
    U = [[z1, -z2.conj()], [z2, z1.conj()]]
    return U, z1.norm() + z2.norm()


def stable_class_reps(y, cfg):
    """The two rational classes inside the stable class of y, with relative labels."""
    alpha, beta = split_roots(y)
    base = eigenline_class(y, alpha, cfg.p)
    U, T = twist_frame(cfg)
    eps = cfg.epsilon
    zero = ExtElt(0, 0, eps)
    D = [[ExtElt(alpha, 0, eps), zero], [zero, ExtElt(beta, 0, eps)]]
    if base == 1:
        # eigenvectors become the columns of U, of non-norm length T
        other = [[x / T for x in r] for r in mat_mul(mat_mul(U, D), conj_transpose(U))]
    else:
        other = D
    return [(y, 1), (other, -1)]


def kappa_sign(base, other, cfg, datum=(1, 1)):
    if tuple(datum) != (1, 1):
        raise UnsupportedClassType("only the (1, 1) endoscopic datum is implemented")
    a1, _ = split_roots(base)
    a2, b2 = split_roots(other)
    if a1 != a2 and a1 != b2:
        raise UnsupportedClassType("inputs are not stably conjugate")
    return eigenline_class(base, a1, cfg.p) * eigenline_class(other, a1, cfg.p)
