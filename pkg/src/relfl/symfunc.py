"""Symmetric Laurent polynomials in the orbit-sum basis, Hall-Littlewood
polynomials and the substitution maps used on the Satake side."""

from functools import lru_cache
from itertools import permutations

from .exactcore import ONE, ZERO, RatFunc


class BadShape(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class NotInSpan(ArithmeticError):
    pass


def is_dominant(lam):
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def _check_dominant(lam, n):
    lam = tuple(int(x) for x in lam)
    if len(lam) != n or not is_dominant(lam):
        raise BadShape("expected a weakly decreasing vector of length %d, got %r" % (n, lam))
    return lam


@lru_cache(maxsize=None)
def orbit(lam):
    """Distinct permutations of an exponent vector, sorted."""
    return tuple(sorted(set(permutations(lam))))


def partitions(d, n, max_part=None):
    """Partitions of d with at most n parts, padded with zeros to length n,
    in decreasing lexicographic order."""
    if max_part is None:
        max_part = d
    if n == 0:
        return [()] if d == 0 else []
    if d == 0:
        return [(0,) * n]
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, n - 1, first):
            out.append((first,) + rest)
    return out


class SymLaurentPoly:
    """``sum c_lam m_lam`` over dominant ``lam`` in ``Z^rank``."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        self.rank = rank
        clean = {}
        for lam, c in (terms or {}).items():
            lam = tuple(lam)
            if len(lam) != rank or not is_dominant(lam):
                raise BadShape("key %r is not dominant of length %d" % (lam, rank))
            c = RatFunc.coerce(c)
            if c:
                clean[lam] = c
        self.terms = clean

    @classmethod
    def one(cls, rank):
        return cls(rank, {(0,) * rank: ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, ZERO) + c
        return SymLaurentPoly(self.rank, out)

    def __neg__(self):
        return SymLaurentPoly(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = RatFunc.coerce(c)
        return SymLaurentPoly(self.rank, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymLaurentPoly):
            return self.scale(other)
        if other.rank != self.rank:
            raise BadShape("rank mismatch")
        out = {}
        for lam, c in self.terms.items():
            for mu, d in other.terms.items():
                cd = c * d
                for nu, mult in _orbit_product(lam, mu).items():
                    out[nu] = out.get(nu, ZERO) + cd * mult
        return SymLaurentPoly(self.rank, out)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, SymLaurentPoly) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def monomials(self):
        """Full expansion ``{exponent: coeff}``."""
        out = {}
        for lam, c in self.terms.items():
            for e in orbit(lam):
                out[e] = c
        return out

    @classmethod
    def from_monomials(cls, rank, mons, check=True):
        if check:
            for e, c in mons.items():
                for x in orbit(tuple(sorted(e, reverse=True))):
                    if mons.get(x, ZERO) != c:
                        raise NotSymmetric("coefficient of %r differs from that of %r" % (x, e))
        return cls(rank, {e: c for e, c in mons.items() if is_dominant(e)})

    def degrees(self):
        return {sum(lam) for lam in self.terms}

    def shift(self, k):
        """Multiply by ``(Z_1 ... Z_n)**k``."""
        return SymLaurentPoly(self.rank, {tuple(x + k for x in lam): c for lam, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self):
        body = " + ".join("(%s)*m%s" % (c, list(lam)) for lam, c in self.sorted_terms())
        return "SymLaurentPoly[%d](%s)" % (self.rank, body or "0")


@lru_cache(maxsize=None)
def _orbit_product(lam, mu):
    out = {}
    om = orbit(mu)
    for a in orbit(lam):
        for b in om:
            nu = tuple(x + y for x, y in zip(a, b))
            if is_dominant(nu):
                out[nu] = out.get(nu, 0) + 1
    return out


def monomial_sym(lam, n):
    lam = _check_dominant(lam, n)
    return SymLaurentPoly(n, {lam: ONE})


# -- Hall-Littlewood polynomials ------------------------------------------

def _mul_int(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _divide_linear(p, i, j):
    """Exact quotient of p by (x_i - x_j)."""
    out = {}
    for e, c in p.items():
        a = e[i]
        base = list(e)
        for k in range(a):
            base[i] = a - 1 - k
            base[j] = e[j] + k
            key = tuple(base)
            out[key] = out.get(key, 0) + c
    out = {e: c for e, c in out.items() if c}
    # remainder p|_{x_i = x_j} must vanish
    rem = {}
    for e, c in p.items():
        f = list(e)
        f[j] += f[i]
        f[i] = 0
        key = tuple(f)
        rem[key] = rem.get(key, 0) + c
    if any(rem.values()):
        raise ArithmeticError("not divisible by x_%d - x_%d" % (i, j))
    return out


def _int_poly_div(a, b):
    """Exact division of integer polynomials (ascending lists); b[0] = 1."""
    a = list(a)
    out = [0] * max(len(a) - len(b) + 1, 0)
    # b has constant term 1, divide from the bottom
    for k in range(len(out)):
        c = a[k]
        out[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact division in Z[t]")
    return out


@lru_cache(maxsize=None)
def hall_littlewood_generic(lam):
    """Coefficients of P_lam(x; t) in the m-basis as integer polynomials in t.

    Returns ``{mu: (c_0, c_1, ...)}`` with ``lam`` of length n (entries >= 0).
    """
    n = len(lam)
    # x^lam * prod_{i<j} (x_i - t x_j); exponents carry t-degree in slot n
    base = {tuple(lam) + (0,): 1}
    for i in range(n):
        for j in range(i + 1, n):
            ei = [0] * (n + 1)
            ei[i] = 1
            ej = [0] * (n + 1)
            ej[j] = 1
            ej[n] = 1
            base = _mul_int(base, {tuple(ei): 1, tuple(ej): -1})
    anti = {}
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        for e, c in base.items():
            f = [0] * (n + 1)
            for k in range(n):
                f[perm[k]] = e[k]
            f[n] = e[n]
            key = tuple(f)
            anti[key] = anti.get(key, 0) + sign * c
    anti = {e: c for e, c in anti.items() if c}
    for i in range(n):
        for j in range(i + 1, n):
            anti = _divide_linear(anti, i, j)
    coeffs = {}
    for e, c in anti.items():
        x = e[:n]
        if is_dominant(x):
            poly = coeffs.setdefault(x, {})
            poly[e[n]] = poly.get(e[n], 0) + c
    dense = {}
    for mu, poly in coeffs.items():
        top = max(poly)
        dense[mu] = [poly.get(k, 0) for k in range(top + 1)]
    lead = dense[tuple(lam)]
    out = {}
    for mu, poly in dense.items():
        q = _int_poly_div(poly, lead)
        while q and not q[-1]:
            q.pop()
        if q:
            out[mu] = tuple(q)
    return out


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _subst_t(poly, t_powers):
    acc = ZERO
    for k, c in enumerate(poly):
        if c:
            acc = acc + t_powers[k] * c
    return acc


def _powers(t, k):
    out = [ONE]
    for _ in range(k):
        out.append(out[-1] * t)
    return out


def hall_littlewood(lam, n, t):
    """P_lam(x_1..x_n; t) in the orbit-sum basis; ``lam`` may be negative,
    in which case the result is the det-twist of the shifted polynomial."""
    lam = tuple(int(x) for x in lam)
    if len(lam) < n:
        lam = lam + (0,) * (n - len(lam))
    lam = _check_dominant(lam, n)
    k = min(lam)
    gen = hall_littlewood_generic(tuple(x - k for x in lam))
    t = RatFunc.coerce(t)
    tp = _powers(t, max(len(p) for p in gen.values()))
    poly = SymLaurentPoly(n, {mu: _subst_t(c, tp) for mu, c in gen.items()})
    return poly.shift(k) if k else poly


def expand_in_hall_littlewood(p, t, shift=None):
    """Coefficients ``{lam: c}`` with ``p = sum c P_lam(.; t)``.

    ``shift`` is the power of the determinant used to clear negative exponents;
    if omitted it is computed from the support of ``p``.
    """
    if p.is_zero():
        return {}
    if shift is None:
        shift = max(0, -min(min(lam) for lam in p.terms))
    work = dict(p.shift(shift).terms)
    if any(min(lam) < 0 for lam in work):
        raise NotInSpan("shift %d does not clear negative exponents" % shift)
    t = RatFunc.coerce(t)
    out = {}
    while work:
        lam = max(work)
        c = work.pop(lam)
        hl = hall_littlewood(lam, p.rank, t)
        if hl.terms.get(lam) != ONE:
            raise NotInSpan("Hall-Littlewood polynomial not monic at %r" % (lam,))
        for mu, d in hl.terms.items():
            if mu == lam:
                continue
            if mu > lam:
                raise NotInSpan("triangularity violated at %r" % (mu,))
            v = work.get(mu, ZERO) - c * d
            if v:
                work[mu] = v
            else:
                work.pop(mu, None)
        out[tuple(x - shift for x in lam)] = c
    return out


def from_hall_littlewood(coeffs, n, t):
    acc = SymLaurentPoly(n)
    for lam, c in coeffs.items():
        acc = acc + hall_littlewood(lam, n, t).scale(c)
    return acc


# -- substitutions --------------------------------------------------------

class TensorSym:
    """Element of a tensor product of symmetric Laurent polynomial rings,
    stored as ``{(lam_1, ..., lam_g): coeff}`` with each ``lam_i`` dominant."""

    __slots__ = ("ranks", "terms")

    def __init__(self, ranks, terms=None):
        self.ranks = tuple(ranks)
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(tuple(k) for k in key)
            c = RatFunc.coerce(c)
            if c:
                clean[key] = c
        self.terms = clean

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return TensorSym(self.ranks, out)

    def __mul__(self, other):
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                factors = [_orbit_product(a, b) for a, b in zip(k1, k2)]
                c = c1 * c2
                for combo, mult in _combine(factors):
                    out[combo] = out.get(combo, ZERO) + c * mult
        return TensorSym(self.ranks, out)

    def __eq__(self, other):
        return isinstance(other, TensorSym) and self.ranks == other.ranks and self.terms == other.terms

    def __repr__(self):
        return "TensorSym%r(%s)" % (self.ranks, ", ".join("%s: %s" % kv for kv in sorted(self.terms.items())))


def _combine(factors):
    combos = [((), 1)]
    for f in factors:
        combos = [(c + (nu,), m * k) for c, m in combos for nu, k in f.items()]
    return combos


def substitute_scaled(p, subs, ranks):
    """Apply ``Z_i -> scalar_i * (group g_i variable j_i) ** power_i``.

    ``subs`` is a list indexed by i of tuples ``(scalar, group, index, power)``;
    ``ranks`` gives the size of each target group.  The image is returned as a
    :class:`TensorSym`; group-wise symmetry is checked.
    """
    if len(subs) != p.rank:
        raise BadShape("substitution table has %d entries for rank %d" % (len(subs), p.rank))
    ranks = tuple(ranks)
    scalars = [RatFunc.coerce(s) for s, _, _, _ in subs]
    cache = [{} for _ in subs]

    def spow(i, e):
        if e not in cache[i]:
            cache[i][e] = scalars[i] ** e
        return cache[i][e]

    image = {}
    for e, c in p.monomials().items():
        coeff = c
        target = [[0] * r for r in ranks]
        for i, (_, g, j, pw) in enumerate(subs):
            if e[i]:
                coeff = coeff * spow(i, e[i])
                target[g][j] += pw * e[i]
        key = tuple(tuple(x) for x in target)
        image[key] = image.get(key, ZERO) + coeff
    image = {k: c for k, c in image.items() if c}
    for key, c in image.items():
        dom = tuple(tuple(sorted(k, reverse=True)) for k in key)
        if image.get(dom, ZERO) != c:
            raise NotSymmetric("image is not S_a x S_b symmetric at %r" % (key,))
    return TensorSym(ranks, {k: c for k, c in image.items() if all(is_dominant(x) for x in k)})


def tensor_to_sym(ts):
    """Single-group TensorSym as a SymLaurentPoly."""
    if len(ts.ranks) != 1:
        raise BadShape("expected one tensor factor")
    return SymLaurentPoly(ts.ranks[0], {k[0]: c for k, c in ts.terms.items()})


def expand_tensor_in_hall_littlewood(ts, ts_t):
    """Factor-wise HL expansion of a TensorSym; ``ts_t`` lists the t per factor.

    Returns ``{(lam_1, ..., lam_g): coeff}``.
    """
    # peel factors one at a time: group by all but the first factor
    groups = {}
    for key, c in ts.terms.items():
        groups.setdefault(key[1:], {})[key[0]] = c
    out = {}
    for rest, first_terms in groups.items():
        exp0 = expand_in_hall_littlewood(SymLaurentPoly(ts.ranks[0], first_terms), ts_t[0])
        for lam, c in exp0.items():
            out[(lam,) + rest] = out.get((lam,) + rest, ZERO) + c
    out = {k: c for k, c in out.items() if c}
    if len(ts.ranks) == 1:
        return out
    # now expand the remaining factors with the first index fixed
    result = {}
    by_first = {}
    for key, c in out.items():
        by_first.setdefault(key[0], {})[key[1:]] = c
    for lam, rest_terms in by_first.items():
        sub = expand_tensor_in_hall_littlewood(TensorSym(ts.ranks[1:], rest_terms), ts_t[1:])
        for key, c in sub.items():
            result[(lam,) + key] = result.get((lam,) + key, ZERO) + c
    return {k: c for k, c in result.items() if c}
