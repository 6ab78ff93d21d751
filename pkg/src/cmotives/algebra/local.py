"""Residue fields and z-adic expansions at places of F_q(t)."""
from __future__ import annotations

import functools
import math

from ..errors import InvalidInput, PrecisionTooLow
from .ff import GF, default_field
from .ffactor import roots
from .places import Place
from .poly import Poly, PolyRing
from .ratfunc import RatFunc
from .series import Series
from .tower import canonical_embedding


class ResidueField:
    """F_v = F_q[t]/(p_v) realised inside an absolute field K ⊇ F_q.

    `zeta` is the least root of p_v in K unless given; reduction sends t to
    zeta.  `emb` overrides the embedding F_q -> K.  At infinity the residue
    field is F_q and t^(-1) is sent to 0.
    """

    def __init__(self, v: Place, K: GF | None = None, emb=None, zeta=None):
        Fq = v.Fq
        self.v = v
        if K is None:
            K = default_field(Fq.p, Fq.degree * v.degree)
        if K.degree % (Fq.degree * v.degree):
            raise InvalidInput("working field does not contain the residue field")
        self.K = K
        self.emb = emb or canonical_embedding(Fq, K)
        if v.is_infinite:
            self.zeta = None
        elif zeta is not None:
            self.zeta = zeta
        else:
            pv = Poly(PolyRing(K, "t"), [self.emb(c) for c in v.poly.c])
            self.zeta = roots(pv)[0]

    def reduce_poly(self, f: Poly, emb=None):
        """Image of a polynomial in t; emb maps its coefficients into K."""
        emb = emb or self.emb
        if self.v.is_infinite:
            raise InvalidInput("polynomials do not reduce at infinity")
        acc = self.K.zero
        for c in reversed(f.c):
            acc = acc * self.zeta + emb(c)
        return acc

    def reduce(self, x: RatFunc, emb=None):
        """Reduction of a v-integral rational function."""
        if self.v.valuation(x) < 0:
            raise InvalidInput("element is not integral at the place")
        if self.v.is_infinite:
            emb = emb or self.emb
            d = x.num.degree()
            if d < x.den.degree():
                return self.K.zero
            return emb(x.num.lc()) / emb(x.den.lc())
        num = self.reduce_poly(x.num, emb)
        den = self.reduce_poly(x.den, emb)
        if not den:
            # common factor p_v: cancel before reducing
            k = self.v.valuation_poly(x.den)
            pv = self.v.poly_over(x.den.ring)
            num = self.reduce_poly(x.num // pv ** k, emb)
            den = self.reduce_poly(x.den // pv ** k, emb)
        return num / den

    def reduce_poly_x(self, f: Poly):
        """Reduce a polynomial over Q coefficientwise to K[x]."""
        return Poly(PolyRing(self.K, f.ring.var), [self.reduce(c) for c in f.c])


@functools.lru_cache(maxsize=None)
def residue_field(v: Place, K: GF | None = None) -> ResidueField:
    return ResidueField(v, K)


def working_degree(v: Place, e: int) -> int:
    """[K : F_q] for the least field containing F_{q^e} and F_v."""
    return math.lcm(v.degree, e)


def uniformizer_lift(res: ResidueField, prec: int) -> Series:
    """The series s(z) in K[[z]] with p_v(s) = z and s = zeta mod z.

    At infinity z = 1/t and the expansion of t is the Laurent series 1/z.
    """
    K = res.K
    if res.v.is_infinite:
        return Series(K, -1, [K.one], prec - 1)
    pv = Poly(PolyRing(K, "t"), [res.emb(c) for c in res.v.poly.c])
    dpv = pv.derivative()
    d0 = dpv(res.zeta)
    if not d0:
        raise InvalidInput("place polynomial is inseparable")
    inv_d0 = d0.inverse()
    z = Series(K, 1, [K.one], prec)
    s = Series(K, 0, [res.zeta], prec)
    # Newton iteration with the constant derivative at zeta (linear convergence)
    for _ in range(prec):
        err = _eval_series(pv, s, prec) - z
        if err.val >= prec:
            break
        s = s - err * inv_d0
    if (_eval_series(pv, s, prec) - z).val < prec:
        raise PrecisionTooLow("uniformizer lift did not converge")
    return s


def _eval_series(f: Poly, s: Series, prec: int) -> Series:
    K = s.field
    acc = Series(K, 0, [], prec)
    for c in reversed(f.c):
        acc = acc * s + Series(K, 0, [c], prec)
    return acc


class Expander:
    """Maps L(t) into K((z)) given an embedding L -> K and the lift of t."""

    def __init__(self, res: ResidueField, emb_L, prec: int):
        self.res = res
        self.emb_L = emb_L
        self.prec = prec
        self._lifts = {}

    def lift_t(self, prec: int) -> Series:
        if prec not in self._lifts:
            self._lifts[prec] = uniformizer_lift(self.res, prec)
        return self._lifts[prec]

    def poly(self, f: Poly, prec: int | None = None) -> Series:
        prec = self.prec if prec is None else prec
        K = self.res.K
        s = self.lift_t(prec)
        acc = Series(K, 0, [], prec)
        for c in reversed(f.c):
            acc = acc * s + Series(K, 0, [self.emb_L(c)], prec)
        return acc

    def __call__(self, x: RatFunc, prec: int | None = None) -> Series:
        """z-adic expansion of x to absolute precision prec."""
        prec = self.prec if prec is None else prec
        v = self.res.v
        if v.is_infinite:
            # work with t^-1 = z exactly: x = z^(dn - dd) * rev(num)/rev(den)
            K = self.res.K
            dn, dd = x.num.degree(), x.den.degree()
            shift = dd - dn
            rel = prec - shift
            num = Series(K, 0, [self.emb_L(c) for c in reversed(x.num.c)], max(rel, 1))
            den = Series(K, 0, [self.emb_L(c) for c in reversed(x.den.c)], max(rel, 1))
            q = num / den
            return Series(K, q.val + shift, q.coeffs, q.prec + shift)
        # dividing by a denominator of z-order kd costs 2*kd digits
        kd = v.valuation_poly(x.den) if x.den.degree() > 0 else 0
        num = self.poly(x.num, prec + 2 * kd)
        den = self.poly(x.den, prec + 2 * kd)
        out = num / den
        if out.prec < prec:
            raise PrecisionTooLow("expansion lost precision")
        return out.truncate(prec)


class _Lifter:
    """Inverse of F_q[t]_{<d} -> F_v, a -> a(zeta), by F_p-linear algebra."""

    def __init__(self, res: ResidueField):
        import numpy as np
        from .fplinalg import Solver
        Fq = res.v.Fq
        self.res = res
        self.fq_basis = [Fq.from_vector([int(i == j) for i in range(Fq.degree)])
                         for j in range(Fq.degree)]
        cols = []
        zp = res.K.one
        for _ in range(res.v.degree):
            for b in self.fq_basis:
                cols.append((res.emb(b) * zp).vector())
            zp = zp * res.zeta
        self.solver = Solver(np.array(cols, dtype=np.int64).T, Fq.p)

    def __call__(self, y) -> Poly:
        import numpy as np
        Fq = self.res.v.Fq
        sol = self.solver.solve(np.array(y.vector(), dtype=np.int64))
        if sol is None:
            raise InvalidInput("element is not in the residue field")
        a = Fq.degree
        coeffs = [Fq.from_vector(sol[i * a:(i + 1) * a]) for i in range(self.res.v.degree)]
        return Poly(PolyRing(Fq, "t"), coeffs)


def lift_residue(res: ResidueField, y) -> Poly:
    """The polynomial a in F_q[t] of degree < deg v with a(zeta) = y."""
    lifter = getattr(res, "_lifter", None)
    if lifter is None:
        lifter = _Lifter(res)
        res._lifter = lifter
    return lifter(y)
