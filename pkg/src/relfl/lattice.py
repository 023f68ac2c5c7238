"""O_F- and O_E-lattices in a bounded window, stored by upper-triangular
Hermite normal form bases (columns are the basis vectors)."""

import itertools
from fractions import Fraction
from functools import lru_cache

from .localfield import (
    ExtElt,
    conj_transpose,
    mat_det,
    mat_inv,
    mat_mul,
    reduce_mod,
    val,
)

O_F = "O_F"
O_E = "O_E"

MAX_RANK = 3
MAX_WINDOW = 4
# rank-one windows are a single chain; cheap at any size
MAX_WINDOW_RANK1 = 16


class GuardExceeded(ValueError):
    pass


class WindowOverflow(ValueError):
    pass


class Ring:
    """Arithmetic of O_F or O_E at a fixed prime."""

    def __init__(self, kind, cfg):
        if kind not in (O_F, O_E):
            raise ValueError("unknown ring %r" % (kind,))
        self.kind = kind
        self.cfg = cfg
        self.p = cfg.p

    def __eq__(self, other):
        return isinstance(other, Ring) and self.kind == other.kind and self.cfg == other.cfg

    def __hash__(self):
        return hash((self.kind, self.cfg))

    def __repr__(self):
        return "Ring(%s, p=%d)" % (self.kind, self.p)

    @property
    def is_ext(self):
        return self.kind == O_E

    def elt(self, x):
        if self.is_ext:
            if isinstance(x, ExtElt):
                return x
            return ExtElt(x, 0, self.cfg.epsilon)
        if isinstance(x, ExtElt):
            if x.b != 0:
                raise ValueError("%r is not in F" % (x,))
            return x.a
        return Fraction(x)

    def zero(self):
        return self.elt(0)

    def one(self):
        return self.elt(1)

    def reduce(self, x, k):
        if self.is_ext:
            return x.reduce_mod(k, self.p)
        return reduce_mod(x, k, self.p)

    def digits(self, lo, k):
        """Representatives of p^lo O / p^k O (empty if k <= lo gives one zero)."""
        if k <= lo:
            return [self.zero()]
        scale = Fraction(self.p) ** lo
        m = self.p ** (k - lo)
        if self.is_ext:
            return [ExtElt(a * scale, b * scale, self.cfg.epsilon) for a in range(m) for b in range(m)]
        return [a * scale for a in range(m)]

    def residue_size(self):
        return self.p ** 2 if self.is_ext else self.p


def _ring_for(ring, cfg):
    return ring if isinstance(ring, Ring) else Ring(ring, cfg)


class LatticeRep:
    """Lattice spanned by the columns of an upper-triangular HNF basis."""

    __slots__ = ("ring", "n", "basis", "diag", "_inv", "_key")

    def __init__(self, ring, basis, diag):
        self.ring = ring
        self.n = len(basis)
        self.basis = tuple(tuple(r) for r in basis)
        self.diag = tuple(diag)
        self._inv = None
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (self.ring.kind, self.basis)
        return self._key

    def __eq__(self, other):
        return isinstance(other, LatticeRep) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "LatticeRep(%s, %r)" % (self.ring.kind, [list(r) for r in self.basis])

    def columns(self):
        return [[self.basis[i][j] for i in range(self.n)] for j in range(self.n)]

    def coords(self, v):
        """Solve basis * x = v by back substitution."""
        n = self.n
        x = [None] * n
        for i in range(n - 1, -1, -1):
            s = v[i]
            for j in range(i + 1, n):
                s = s - self.basis[i][j] * x[j]
            x[i] = s / self.basis[i][i]
        return x

    def contains(self, v):
        p = self.ring.p
        return all(c == 0 or val(c, p) >= 0 for c in self.coords(v))

    def contains_lattice(self, other):
        return all(self.contains(col) for col in other.columns())

    def stable_under(self, A):
        return all(self.contains(_mv(A, col)) for col in self.columns())

    def scaled(self, k):
        return lattice_from_generators(self.ring, [[x * Fraction(self.ring.p) ** k for x in col] for col in self.columns()])

    def min_entry_val(self):
        p = self.ring.p
        return min(val(x, p) for r in self.basis for x in r if x != 0)

    def max_cover(self):
        """Least k with p^k O^n contained in the lattice."""
        if self._inv is None:
            self._inv = mat_inv([list(r) for r in self.basis])
        p = self.ring.p
        return max(-val(x, p) for r in self._inv for x in r if x != 0)

    def in_window(self, M):
        return self.min_entry_val() >= -M and self.max_cover() <= M

    def as_int_rows(self):
        return [[str(x) for x in r] for r in self.basis]


def _mv(A, v):
    return [sum((A[i][k] * v[k] for k in range(len(v))), 0 * v[0]) for i in range(len(A))]


def lattice_from_generators(ring, gens, cfg=None):
    """HNF of the O-span of the given column vectors (must have full rank)."""
    ring = _ring_for(ring, cfg)
    p = ring.p
    cols = [[ring.elt(x) for x in g] for g in gens]
    cols = [c for c in cols if any(x != 0 for x in c)]
    if not cols:
        raise ValueError("no nonzero generators")
    n = len(cols[0])
    basis_cols = [None] * n
    diag = [None] * n
    for i in range(n - 1, -1, -1):
        live = [c for c in cols if c[i] != 0]
        if not live:
            raise ValueError("generators do not span a full-rank lattice")
        chosen = min(live, key=lambda c: val(c[i], p))
        a = val(chosen[i], p)
        unit = chosen[i] / ring.elt(Fraction(p) ** a)
        piv = [x / unit for x in chosen]
        rest = []
        for c in cols:
            if c is chosen:
                continue
            f = c[i] / piv[i]
            c = [x - f * y for x, y in zip(c, piv)]
            if any(x != 0 for x in c):
                rest.append(c)
        cols = rest
        basis_cols[i] = piv
        diag[i] = a
    # reduce entries above the diagonal against the rows' pivots
    for j in range(n):
        col = basis_cols[j]
        for i in range(j - 1, -1, -1):
            r = ring.reduce(col[i], diag[i])
            if r != col[i]:
                k = (col[i] - r) / basis_cols[i][i]
                col = [x - k * y for x, y in zip(col, basis_cols[i])]
                col[i] = r
        basis_cols[j] = col
    basis = [[basis_cols[j][i] for j in range(n)] for i in range(n)]
    return LatticeRep(ring, basis, diag)


def standard_lattice(ring, n, cfg=None):
    ring = _ring_for(ring, cfg)
    one, zero = ring.one(), ring.zero()
    return LatticeRep(ring, [[one if i == j else zero for j in range(n)] for i in range(n)], [0] * n)


def _check_guard(n, M):
    cap = MAX_WINDOW_RANK1 if n == 1 else MAX_WINDOW
    if n > MAX_RANK or M > cap:
        raise GuardExceeded("rank %d / window %d exceeds guard (%d, %d)" % (n, M, MAX_RANK, cap))


def _hnf_stream(ring, n, lo, hi, diag_ok=None):
    """All HNF lattices with entries in p^lo O containing p^hi O^n."""
    p = ring.p
    for diag in itertools.product(range(lo, hi + 1), repeat=n):
        if diag_ok is not None and not diag_ok(diag):
            continue
        slots = [(i, j) for j in range(n) for i in range(j)]
        choices = [ring.digits(lo, diag[i]) for i, _ in slots]
        dvals = [ring.elt(Fraction(p) ** a) for a in diag]
        for combo in itertools.product(*choices):
            B = [[ring.zero()] * n for _ in range(n)]
            for i in range(n):
                B[i][i] = dvals[i]
            for (i, j), x in zip(slots, combo):
                B[i][j] = x
            lat = LatticeRep(ring, B, diag)
            if lat.max_cover() <= hi:
                yield lat


def enumerate_window(ring, n, M, cfg=None):
    ring = _ring_for(ring, cfg)
    _check_guard(n, M)
    return _hnf_stream(ring, n, -M, M)


def relative_position(lat):
    return smith_exponents(lat.basis, lat.ring.p)


def smith_exponents(B, p):
    """Elementary-divisor valuations of an invertible matrix, weakly decreasing."""
    if len(B) == 2:
        det = B[0][0] * B[1][1] - B[0][1] * B[1][0]
        if det == 0:
            raise ValueError("singular basis")
        lo = min(val(x, p) for r in B for x in r if x != 0)
        return (val(det, p) - lo, lo)
    M = [list(r) for r in B]
    n = len(M)
    out = []
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if M[i][j] != 0:
                    v = val(M[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            raise ValueError("singular basis")
        v, i, j = best
        M[k], M[i] = M[i], M[k]
        for r in M:
            r[k], r[j] = r[j], r[k]
        piv = M[k][k]
        for i in range(k + 1, n):
            if M[i][k] != 0:
                f = M[i][k] / piv
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
        for j in range(k + 1, n):
            if M[k][j] != 0:
                f = M[k][j] / piv
                for r in M:
                    r[j] = r[j] - f * r[k]
        out.append(v)
    return tuple(sorted(out, reverse=True))


def enumerate_position(ring, n, lam, cfg=None):
    ring = _ring_for(ring, cfg)
    lam = tuple(lam)
    if len(lam) != n or any(lam[i] < lam[i + 1] for i in range(n - 1)):
        raise ValueError("position must be weakly decreasing of length n")
    _check_guard(n, max(abs(lam[0]), abs(lam[-1])))
    total = sum(lam)
    for lat in _hnf_stream(ring, n, lam[-1], lam[0], lambda d: sum(d) == total):
        if relative_position(lat) == lam:
            yield lat


def index_valuation(lat):
    return sum(lat.diag)


def dual_lattice(lat, form, M=None):
    """{v : <v, w> in O for all w in lat} for <v, w> = v^* form w."""
    BtF = mat_mul(conj_transpose([list(r) for r in lat.basis]), form)
    dual = lattice_from_generators(lat.ring, _cols(mat_inv(BtF)))
    if M is not None and not dual.in_window(M):
        raise WindowOverflow("dual lattice leaves the window of size %d" % M)
    return dual


def _cols(A):
    return [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]


def is_selfdual(lat, form):
    """Gram matrix B^* form B integral with unit determinant."""
    p = lat.ring.p
    B = [list(r) for r in lat.basis]
    G = mat_mul(mat_mul(conj_transpose(B), form), B)
    if any(x != 0 and val(x, p) < 0 for r in G for x in r):
        return False
    d = mat_det(G)
    return d != 0 and val(d, p) == 0


def enumerate_selfdual(n, form, M, cfg):
    return iter(_selfdual_cached(n, _freeze(form), M, cfg))


def _freeze(form):
    return tuple(tuple(r) for r in form)


@lru_cache(maxsize=64)
def _selfdual_cached(n, form, M, cfg):
    return tuple(selfdual_stream(n, [list(r) for r in form], -M, M, cfg))


def selfdual_stream(n, form, lo, hi, cfg, diag_ok=None):
    """Self-dual HNF lattices with entries in p^lo O containing p^hi O^n.

    Columns are chosen left to right; a partial basis is dropped as soon as a
    pairing between chosen columns is non-integral.
    """
    _check_guard(n, max(abs(lo), abs(hi)))
    ring = Ring(O_E, cfg)
    p = cfg.p
    dv = val(mat_det(form), p)
    if dv % 2:
        return
    target = -dv // 2

    def pair(u, v):
        return sum((u[i].conj() * form[i][k] * v[k] for i in range(n) for k in range(n) if form[i][k] != 0),
                   ring.zero())

    def integral(x):
        return x == 0 or val(x, p) >= 0

    for diag in itertools.product(range(lo, hi + 1), repeat=n):
        if sum(diag) != target or (diag_ok is not None and not diag_ok(diag)):
            continue
        dvals = [ring.elt(Fraction(p) ** a) for a in diag]

        def extend(cols):
            j = len(cols)
            if j == n:
                B = [[cols[c][r] for c in range(n)] for r in range(n)]
                lat = LatticeRep(ring, B, diag)
                if lat.max_cover() <= hi:
                    yield lat
                return
            for combo in itertools.product(*[ring.digits(lo, diag[i]) for i in range(j)]):
                col = list(combo) + [dvals[j]] + [ring.zero()] * (n - j - 1)
                if not integral(pair(col, col)):
                    continue
                if all(integral(pair(c, col)) for c in cols):
                    yield from extend(cols + [col])

        yield from extend([])


def shell(lats, M):
    """Lattices that touch the boundary of the window of size M."""
    return [lat for lat in lats if lat.min_entry_val() == -M or lat.max_cover() == M]
