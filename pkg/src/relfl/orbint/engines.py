"""Orbital integrals as exact lattice counts (maximal compacts have volume 1)."""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..heckealg import HeckeElt
from ..lattice import (
    O_E,
    O_F,
    enumerate_position,
    enumerate_selfdual,
    enumerate_window,
    lattice_from_generators,
    relative_position,
    smith_exponents,
)
from ..localfield import (
    ExtElt,
    conj_transpose,
    mat_det,
    mat_inv,
    mat_mul,
    val,
)
from ..orbitgeo import (
    eigenline_class,
    is_regular_ss,
    split_roots,
    twist_frame,
)


class BoundaryContribution(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class IrregularElement(ValueError):
    pass


class NoncompactCentralizer(ValueError):
    pass


LATTICE_INDICATOR = "lattice_indicator"
HECKE = "hecke"
SPHERICAL_CONV = "spherical_conv"


@dataclass(frozen=True)
class TestFn:
    __test__ = False  # not a pytest class

    kind: str
    hecke: HeckeElt = None

    @classmethod
    def indicator(cls):
        return cls(LATTICE_INDICATOR)

    @classmethod
    def of_hecke(cls, h):
        return cls(HECKE, h)

    @classmethod
    def conv_unit(cls, h):
        """phi * 1_0 on the Hermitian symmetric space."""
        return cls(SPHERICAL_CONV, h)


def _int(x, p):
    return x == 0 or val(x, p) >= 0


def _on_shell(lat, M):
    return lat.min_entry_val() <= -M or lat.max_cover() >= M


def hecke_value(h, g, p):
    """Value of a bi-K-invariant function at an invertible matrix g."""
    coeff = h.terms.get(smith_exponents(g, p))
    if coeff is None:
        return Fraction(0)
    return coeff.eval_q(p)


def _gl_member(X, lat, p):
    if not _int(X.d, p) or not lat.contains(list(X.b)):
        return False
    for col in lat.columns():
        if not _int(sum(ci * x for ci, x in zip(X.c, col)), p):
            return False
    return lat.stable_under([list(r) for r in X.A])


def _block_conj(X, B):
    """diag(B, 1)^-1 X diag(B, 1) for a full (n+1)-square matrix X."""
    n = len(B)
    Bi = mat_inv(B)
    big = [[B[i][j] if i < n and j < n else Fraction(int(i == j)) for j in range(n + 1)] for i in range(n + 1)]
    bigi = [[Bi[i][j] if i < n and j < n else Fraction(int(i == j)) for j in range(n + 1)] for i in range(n + 1)]
    return mat_mul(mat_mul(bigi, X), big)


def orb_gl_eta(f, X, cfg, M, eta_on=True):
    """Sum over lattices L = hO^n in the window of f(Ad(h)^-1 X) (-1)^{v(det h)}.

    For the lattice indicator X is a JRElement; for a Hecke function X is a full
    invertible (n+1)-square matrix and f must be an F-side element of rank n+1.
    """
    p = cfg.p
    if f.kind == LATTICE_INDICATOR:
        if not is_regular_ss(X):
            raise IrregularElement("X is not regular semisimple")
        n = X.n
        value = lambda lat: 1 if _gl_member(X, lat, p) else 0
    elif f.kind == HECKE:
        n = len(X) - 1
        if f.hecke.side != "F" or f.hecke.rank != n + 1:
            raise ValueError("expected an F-side Hecke element of rank %d" % (n + 1))
        value = lambda lat: hecke_value(f.hecke, _block_conj(X, [list(r) for r in lat.basis]), p)
    else:
        raise ValueError("unsupported test function %r" % (f.kind,))
    total = Fraction(0)
    for lat in enumerate_window(O_F, n, M, cfg):
        v = value(lat)
        if v:
            if _on_shell(lat, M):
                raise BoundaryContribution("lattice on the window shell contributes", total)
            total += -v if (eta_on and sum(lat.diag) % 2) else v
    return total


def _herm_member(Y, lat, p):
    if not _int(Y.d, p) or not lat.contains(list(Y.b)):
        return False
    return lat.stable_under([list(r) for r in Y.A])


def identity_form(n, cfg):
    one, zero = cfg.ext(1), cfg.ext(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def orb_unitary(f, Y, cfg, M):
    """Sum over self-dual lattices (standard form) of f at the transported Y."""
    p = cfg.p
    if f.kind != LATTICE_INDICATOR:
        raise ValueError("orb_unitary takes the Hermitian lattice indicator")
    if not is_regular_ss(Y):
        raise IrregularElement("Y is not regular semisimple")
    total = 0
    for lat in enumerate_selfdual(Y.n, identity_form(Y.n, cfg), M, cfg):
        if _herm_member(Y, lat, p):
            if _on_shell(lat, M):
                raise BoundaryContribution("self-dual lattice on the window shell contributes", total)
            total += 1
    return Fraction(total)


@lru_cache(maxsize=None)
def _position_list(n, lam, cfg):
    return tuple(enumerate_position(O_E, n, lam, cfg))


def _in_unit_ball(G, p):
    if any(not _int(x, p) for r in G for x in r):
        return False
    d = mat_det(G)
    return d != 0 and val(d, p) == 0


def eval_spherical_conv(phi, y, cfg):
    """(phi * 1_0)(y) = sum over cosets hK with (h^-1) * y in X_n(O)."""
    p = cfg.p
    if phi.side != "E":
        raise ValueError("phi must be an E-side Hecke element")
    y = [[cfg.ext(0) + x for x in r] for r in y]
    if mat_det(y) == 0:
        raise ValueError("y is singular")
    total = Fraction(0)
    for lam, c in phi.terms.items():
        count = 0
        for lat in _position_list(phi.rank, lam, cfg):
            Bi = mat_inv([list(r) for r in lat.basis])
            G = mat_mul(mat_mul(Bi, y), conj_transpose(Bi))
            if _in_unit_ball(G, p):
                count += 1
        total += c.eval_q(p) * count
    return total


def _selfduals(n, cfg, M):
    return enumerate_selfdual(n, identity_form(n, cfg), M, cfg)


def _image(X, lat):
    return lattice_from_generators(lat.ring, [_mv(X, col) for col in lat.columns()])


def _mv(A, v):
    return [sum((A[i][k] * v[k] for k in range(len(v))), 0 * v[0]) for i in range(len(A))]


def r_shriek(X, cfg, M, phi=None):
    """Pushforward along the contraction evaluated at y = X X^*.

    With ``phi`` omitted the test function is the indicator of End(O_E^n), so the
    value is #{self-dual L : X L integral}; otherwise it is
    sum_L phi(Cartan position of X L).
    """
    p = cfg.p
    total = Fraction(0)
    for lat in _selfduals(len(X), cfg, M):
        img = _image(X, lat)
        if phi is None:
            v = 1 if img.min_entry_val() >= 0 else 0
        else:
            c = phi.terms.get(relative_position(img))
            v = c.eval_q(p) if c is not None else 0
        if v:
            if _on_shell(lat, M):
                raise BoundaryContribution("self-dual lattice on the window shell contributes", total)
            total += v
    return total


def relative_orbital_direct(X, cfg, M):
    """#{(L1, L2) self-dual : X L2 inside L1} for f = 1_End(O_E^n)."""
    _check_compact(X, cfg)
    lats = list(_selfduals(len(X), cfg, M))
    images = [(lat, _image(X, lat)) for lat in lats]
    total = 0
    for l1 in lats:
        for l2, img in images:
            if l1.contains_lattice(img):
                if _on_shell(l1, M) or _on_shell(l2, M):
                    raise BoundaryContribution("pair on the window shell contributes", total)
                total += 1
    return Fraction(total)


def _check_compact(X, cfg):
    n = len(X)
    if mat_det(X) == 0:
        raise IrregularElement("X is not invertible")
    if n == 2:
        y = mat_mul(X, conj_transpose(X))
        try:
            split_roots(y)
        except Exception as exc:
            raise NoncompactCentralizer(str(exc)) from None


def _sublattices_between(outer, inner, index):
    """Lattices L with inner inside L inside outer and [outer : L] = p^index (O_E-length)."""
    ring = outer.ring
    n = outer.n
    B = [list(r) for r in outer.basis]
    for diag in itertools.product(range(index + 1), repeat=n):
        if sum(diag) != index:
            continue
        slots = [(i, j) for j in range(n) for i in range(j)]
        choices = [ring.digits(0, diag[i]) for i, _ in slots]
        for combo in itertools.product(*choices):
            H = [[ring.zero()] * n for _ in range(n)]
            for i in range(n):
                H[i][i] = ring.elt(Fraction(ring.p) ** diag[i])
            for (i, j), x in zip(slots, combo):
                H[i][j] = x
            sub = lattice_from_generators(ring, _cols(mat_mul(B, H)))
            if sub.contains_lattice(inner):
                yield sub


def _cols(A):
    return [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]


def relative_orbital(X, cfg, M):
    """Orbital integral of r_!(1_End) at y = X X^*: sum over self-dual L1 of
    #{L inside L1 : L self-dual for the form y^-1}."""
    _check_compact(X, cfg)
    p = cfg.p
    n = len(X)
    y = mat_mul(X, conj_transpose(X))
    yinv = mat_inv(y)
    index = val(mat_det(X), p)
    if index < 0:
        return Fraction(0)
    total = 0
    for l1 in _selfduals(n, cfg, M):
        inner = _image(y, l1)
        if not l1.contains_lattice(inner):
            continue
        for sub in _sublattices_between(l1, inner, index):
            if _selfdual_for(sub, yinv, p):
                if _on_shell(l1, M):
                    raise BoundaryContribution("self-dual lattice on the window shell contributes", total)
                total += 1
    return Fraction(total)


def _selfdual_for(lat, form, p):
    B = [list(r) for r in lat.basis]
    return _in_unit_ball(mat_mul(mat_mul(conj_transpose(B), form), B), p)


# -- stable classes --------------------------------------------------------

def norm_sum_vector(c, cfg, length=2, bound=None):
    """A vector r in E^length (length 1 or 2) with sum Nm(r_i) = c, or None.

    Searches r with a common denominator equal to that of c."""
    c = Fraction(c)
    eps = cfg.epsilon
    D = c.denominator
    target = c.numerator * D
    if target <= 0:
        return None
    if bound is None:
        bound = math.isqrt(target) + 1 if eps < 0 else 40
    table = {}
    for x in range(bound + 1):
        for y in range(bound + 1):
            table.setdefault(x * x - eps * y * y, (x, y))

    def elt(xy):
        return ExtElt(Fraction(xy[0], D), Fraction(xy[1], D), eps)

    if length == 1:
        hit = table.get(target)
        return None if hit is None else [elt(hit)]
    for n1 in sorted(table):
        if target - n1 in table:
            return [elt(table[n1]), elt(table[target - n1])]
    return None


def norm_preimage(c, cfg, bound=None):
    v = norm_sum_vector(c, cfg, length=1, bound=bound)
    return None if v is None else v[0]


def class_partner(X, cfg):
    """X' with X' X'^* stably conjugate to X X^* but in the other rational class."""
    y = mat_mul(X, conj_transpose(X))
    alpha, beta = split_roots(y)
    s = eigenline_class(y, alpha, cfg.p)
    return class_representative(alpha, beta, -s, cfg)


def class_representative(alpha, beta, sign, cfg):
    """X with X X^* having eigenvalues alpha, beta and eigenline class ``sign``."""
    eps = cfg.epsilon
    if sign == 1:
        U, T = [[cfg.ext(1), cfg.ext(0)], [cfg.ext(0), cfg.ext(1)]], Fraction(1)
    else:
        U, T = twist_frame(cfg)
    mu = norm_preimage(Fraction(beta) / Fraction(alpha), cfg)
    r1 = norm_sum_vector(Fraction(alpha) / T, cfg)
    if mu is None or r1 is None:
        raise NoncompactCentralizer("no representative found for alpha=%s beta=%s" % (alpha, beta))
    r2 = [mu * (-r1[1].conj()), mu * r1[0].conj()]
    R = [r1, r2]
    return [[x + 0 * ExtElt(0, 0, eps) for x in r] for r in mat_mul(U, R)]


def kappa_orbital(X, cfg, M, orbital=relative_orbital):
    """RO(delta) - RO(delta') over the two rational classes of the stable class."""
    other = class_partner(X, cfg)
    return orbital(X, cfg, M) - orbital(other, cfg, M)


# -- split model E = F x F, G = GL_1 x GL_2, H = GL_1 --------------------

def split_value(f, g, p):
    """f = (psi, phi) with psi on GL_1 and phi on GL_2, at g = (g1, g2)."""
    psi, phi = f
    c1 = psi.terms.get((val(g[0], p),))
    if c1 is None:
        return Fraction(0)
    c2 = phi.terms.get(smith_exponents(g[1], p))
    if c2 is None:
        return Fraction(0)
    return c1.eval_q(p) * c2.eval_q(p)


def _iota_inv_times(a, g, p):
    """iota(p^a)^-1 g with iota(t) = (t, diag(t, 1))."""
    s = Fraction(p) ** (-a)
    return (s * g[0], [[s * x for x in g[1][0]], list(g[1][1])])


def _times_iota(g, b, p):
    s = Fraction(p) ** b
    return (g[0] * s, [[g[1][0][0] * s, g[1][0][1]], [g[1][1][0] * s, g[1][1][1]]])


def _gmul(g, h):
    return (g[0] * h[0], mat_mul(g[1], h[1]))


def split_theta(g):
    """theta(g) = J g^-t J with J = diag(w_1, 1) = 1 on GL_2 and t -> 1/t on GL_1."""
    return (1 / g[0], [list(r) for r in zip(*mat_inv(g[1]))])


def _hecke_at(h, g, p):
    c = h.terms.get(smith_exponents(g, p))
    return Fraction(0) if c is None else c.eval_q(p)


def twisted_orbital_split(f1, f2, delta1, delta2, cfg, M, R):
    """sum over k in G/K and a, b in Z of f1(iota(p^a)^-1 delta1 k) f2(iota(p^b)^-1 delta2 theta(k))."""
    p = cfg.p
    total = Fraction(0)
    rng = range(-R, R + 1)
    for lat in enumerate_window(O_F, 2, M, cfg):
        B = [list(r) for r in lat.basis]
        Bt = split_theta((Fraction(1), B))[1]
        # GL_2 factors do not depend on t
        m1, m2 = (1, mat_mul(delta1[1], B)), (1, mat_mul(delta2[1], Bt))
        g1 = {a: _hecke_at(f1[1], _iota_inv_times(a, m1, p)[1], p) for a in rng}
        if not any(g1.values()):
            continue
        g2 = {b: _hecke_at(f2[1], _iota_inv_times(b, m2, p)[1], p) for b in rng}
        if not any(g2.values()):
            continue
        for t in rng:
            pt = Fraction(p) ** t
            s1 = {a: g1[a] * _hecke_at(f1[0], [[delta1[0] * pt / Fraction(p) ** a]], p) for a in rng if g1[a]}
            s2 = {b: g2[b] * _hecke_at(f2[0], [[delta2[0] / pt / Fraction(p) ** b]], p) for b in rng if g2[b]}
            x1, x2 = sum(s1.values()), sum(s2.values())
            if not (any(s1.values()) and any(s2.values())):
                continue
            if abs(t) == R or _on_shell(lat, M) or s1.get(-R) or s1.get(R) or s2.get(-R) or s2.get(R):
                raise BoundaryContribution("split twisted sum reaches the window edge", total)
            total += x1 * x2
    return total


def linear_orbital_split(f, gamma, cfg, R):
    """sum over a, b in Z of f(iota(p^a)^-1 gamma iota(p^b))."""
    p = cfg.p
    total = Fraction(0)
    for a in range(-R, R + 1):
        left = _iota_inv_times(a, gamma, p)
        for b in range(-R, R + 1):
            v = split_value(f, _times_iota(left, b, p), p)
            if v:
                if abs(a) == R or abs(b) == R:
                    raise BoundaryContribution("split linear sum reaches the window edge", total)
                total += v
    return total
