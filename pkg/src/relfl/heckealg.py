"""Spherical Hecke algebras of GL_n over F and E through the Satake transform,
with the base-change and parabolic-descent morphisms."""

from functools import lru_cache

from .exactcore import ONE, ZERO, RatFunc
from .report import OrbReport
from .symfunc import (
    SymLaurentPoly,
    TensorSym,
    _check_dominant,
    expand_in_hall_littlewood,
    expand_tensor_in_hall_littlewood,
    hall_littlewood,
    monomial_sym,
    partitions,
    substitute_scaled,
    tensor_to_sym,
)

F_SIDE = "F"
E_SIDE = "E"
# exponent of u in the residue cardinality of each side
_Q_EXP = {F_SIDE: 2, E_SIDE: 4}


class SideMismatch(ValueError):
    pass


def rho_pairing(lam):
    """<lam, 2 rho> = sum lam_i (n + 1 - 2i)."""
    n = len(lam)
    return sum(x * (n + 1 - 2 * (i + 1)) for i, x in enumerate(lam))


def _check_side(side):
    if side not in _Q_EXP:
        raise ValueError("side must be 'F' or 'E', got %r" % (side,))
    return side


def hl_parameter(side):
    return RatFunc.u_pow(-_Q_EXP[side])


def satake_prefactor(lam, side):
    return RatFunc.u_pow(_Q_EXP[side] // 2 * rho_pairing(lam))


class HeckeElt:
    __slots__ = ("rank", "side", "terms")

    def __init__(self, rank, side, terms=None):
        self.rank = rank
        self.side = _check_side(side)
        clean = {}
        for lam, c in (terms or {}).items():
            lam = _check_dominant(lam, rank)
            c = RatFunc.coerce(c)
            if c:
                clean[lam] = clean.get(lam, ZERO) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def indicator(cls, lam, side, rank=None):
        lam = tuple(lam)
        if rank is not None and len(lam) < rank:
            lam = lam + (0,) * (rank - len(lam))
        return cls(len(lam), side, {lam: ONE})

    @classmethod
    def unit(cls, rank, side):
        return cls(rank, side, {(0,) * rank: ONE})

    def _same(self, other):
        if self.side != other.side or self.rank != other.rank:
            raise SideMismatch("%s/%d vs %s/%d" % (self.side, self.rank, other.side, other.rank))

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return HeckeElt(self.rank, self.side, out)

    def __neg__(self):
        return HeckeElt(self.rank, self.side, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = RatFunc.coerce(c)
        return HeckeElt(self.rank, self.side, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, HeckeElt) and self.rank == other.rank
                and self.side == other.side and self.terms == other.terms)

    def __hash__(self):
        return hash((self.rank, self.side, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def as_dict(self):
        return {
            "side": self.side,
            "rank": self.rank,
            "terms": [{"lambda": list(k), "coeff": c.render()} for k, c in sorted(self.terms.items(), reverse=True)],
        }

    def render(self):
        return " + ".join("(%s)*1%s" % (c, list(k)) for k, c in sorted(self.terms.items(), reverse=True)) or "0"

    def __repr__(self):
        return "HeckeElt[%s,%d](%s)" % (self.side, self.rank, self.render())


@lru_cache(maxsize=None)
def _satake_indicator(lam, side):
    hl = hall_littlewood(lam, len(lam), hl_parameter(side))
    return hl.scale(satake_prefactor(lam, side))


def satake(h):
    acc = SymLaurentPoly(h.rank)
    for lam, c in h.terms.items():
        acc = acc + _satake_indicator(lam, h.side).scale(c)
    return acc


def satake_inv(p, side, rank=None):
    rank = p.rank if rank is None else rank
    if rank != p.rank:
        raise SideMismatch("polynomial rank %d differs from requested %d" % (p.rank, rank))
    coeffs = expand_in_hall_littlewood(p, hl_parameter(side))
    return HeckeElt(rank, side, {lam: c / satake_prefactor(lam, side) for lam, c in coeffs.items()})


def convolve(a, b):
    a._same(b)
    return satake_inv(satake(a) * satake(b), a.side, a.rank)


def bc_morphism(h):
    if h.side != E_SIDE:
        raise SideMismatch("base change takes an E-side element")
    subs = [(ONE, 0, i, 2) for i in range(h.rank)]
    image = tensor_to_sym(substitute_scaled(satake(h), subs, (h.rank,)))
    return satake_inv(image, F_SIDE, h.rank)


class HeckeTensor:
    """Element of H(GL_a) (x) H(GL_b), stored as ``{(lam, mu): coeff}``."""

    __slots__ = ("ranks", "side", "terms")

    def __init__(self, ranks, side, terms=None):
        self.ranks = tuple(ranks)
        self.side = side
        self.terms = {tuple(tuple(x) for x in k): RatFunc.coerce(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def outer(cls, x, y):
        return cls((x.rank, y.rank), x.side,
                   {(l1, l2): c1 * c2 for l1, c1 in x.terms.items() for l2, c2 in y.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return HeckeTensor(self.ranks, self.side, {k: c for k, c in out.items() if c})

    def __eq__(self, other):
        return (isinstance(other, HeckeTensor) and self.ranks == other.ranks
                and self.side == other.side and self.terms == other.terms)

    def satake(self):
        terms = {}
        for key, c in self.terms.items():
            combos = [((), c)]
            for lam in key:
                poly = _satake_indicator(lam, self.side)
                combos = [(k + (mu,), v * d) for k, v in combos for mu, d in poly.terms.items()]
            for k, v in combos:
                terms[k] = terms.get(k, ZERO) + v
        return TensorSym(self.ranks, terms)

    def convolve(self, other):
        out = HeckeTensor(self.ranks, self.side)
        for (l1, l2), c in self.terms.items():
            for (m1, m2), d in other.terms.items():
                x = convolve(HeckeElt.indicator(l1, self.side), HeckeElt.indicator(m1, self.side))
                y = convolve(HeckeElt.indicator(l2, self.side), HeckeElt.indicator(m2, self.side))
                out = out + HeckeTensor.outer(x, y.scale(c * d))
        return out

    def render(self):
        return " + ".join("(%s)*1%s(x)1%s" % (c, list(k[0]), list(k[1]))
                          for k, c in sorted(self.terms.items(), reverse=True)) or "0"

    def __repr__(self):
        return "HeckeTensor[%s,%r](%s)" % (self.side, self.ranks, self.render())


def xi_substitution(n, a, b):
    """Z_i -> q^{-b} X_i (i <= a), Z_i -> q^{-a} Y_{i-a}, with q = u^2."""
    subs = [(RatFunc.u_pow(-2 * b), 0, i, 1) for i in range(a)]
    subs += [(RatFunc.u_pow(-2 * a), 1, i, 1) for i in range(b)]
    return subs


def xi_ab(h, a, b, check=False):
    if h.side != E_SIDE:
        raise SideMismatch("xi takes an E-side element")
    if a < 1 or b < 1 or a + b != h.rank:
        raise ValueError("need a, b >= 1 with a + b = %d" % h.rank)
    image = substitute_scaled(satake(h), xi_substitution(h.rank, a, b), (a, b))
    t = hl_parameter(E_SIDE)
    coeffs = expand_tensor_in_hall_littlewood(image, (t, t))
    out = HeckeTensor((a, b), E_SIDE, {
        (lam, mu): c / (satake_prefactor(lam, E_SIDE) * satake_prefactor(mu, E_SIDE))
        for (lam, mu), c in coeffs.items()
    })
    if check and out.satake() != image:
        raise AssertionError("Satake square does not commute for xi_(%d,%d)" % (a, b))
    return out


def unit_ball_sum(d, n):
    return HeckeElt(n, E_SIDE, {lam: ONE for lam in partitions(d, n)})


def verify_sft_special(n, d):
    lhs = satake(unit_ball_sum(d, n))
    rhs = SymLaurentPoly(n)
    for lam in _all_dominant_of_weight(d, n):
        rhs = rhs + monomial_sym(lam, n)
    rhs = rhs.scale(RatFunc.u_pow(2 * d * (n - 1)))
    return OrbReport.compare("sft_special", {"n": n, "d": d}, _render_poly(lhs), _render_poly(rhs))


def _all_dominant_of_weight(d, n):
    # brute force over bounded boxes; independent of symfunc.partitions
    out = []

    def rec(prefix, remaining, cap):
        if len(prefix) == n:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for x in range(min(cap, remaining), -1, -1):
            rec(prefix + [x], remaining - x, x)

    rec([], d, d)
    return out


def _render_poly(p):
    return "; ".join("%s:%s" % (list(k), c.render()) for k, c in p.sorted_terms()) or "0"


def verify_xi_identity(n, a, b, d):
    lhs = xi_ab(unit_ball_sum(d, n), a, b)
    rhs = HeckeTensor((a, b), E_SIDE)
    for da in range(d + 1):
        rhs = rhs + HeckeTensor.outer(unit_ball_sum(da, a), unit_ball_sum(d - da, b))
    return OrbReport.compare("xi_identity", {"n": n, "a": a, "b": b, "d": d}, lhs.render(), rhs.render())
