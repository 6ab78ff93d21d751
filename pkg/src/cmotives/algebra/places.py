"""Places of F_q(t), valuations and Newton slopes."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from ..errors import InvalidInput
from .ff import GF
from .ffactor import is_irreducible_ff
from .poly import Poly, PolyRing
from .ratfunc import RatFunc
from .tower import canonical_embedding


class Place:
    """A closed point of P^1 over F_q: a monic irreducible p(t), or infinity."""

    __slots__ = ("poly", "Fq")

    def __init__(self, poly: Poly | None, Fq: GF | None = None, check: bool = True):
        self.poly = poly
        self.Fq = Fq if poly is None else poly.ring.base
        if poly is not None and check:
            if not poly.is_monic() or not is_irreducible_ff(poly):
                raise InvalidInput(f"place polynomial {poly} is not monic irreducible")

    @classmethod
    def infinity(cls, Fq: GF) -> "Place":
        return cls(None, Fq)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree()

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        if self.poly is None or other.poly is None:
            return self.poly is None and other.poly is None
        return self.poly == other.poly

    def __hash__(self):
        return hash(None if self.poly is None else self.poly.c)

    def __repr__(self):
        return "infinity" if self.poly is None else f"({self.poly})"

    def label(self) -> str:
        from .printing import to_str
        return "infinity" if self.poly is None else to_str(self.poly)

    def sort_key(self):
        if self.poly is None:
            return (10 ** 9,)
        return (self.degree, tuple(c.v for c in reversed(self.poly.c)))

    def poly_over(self, ring: PolyRing) -> Poly:
        """p_v mapped into a polynomial ring over an extension of F_q."""
        base = ring.base
        if base == self.Fq:
            return Poly(ring, self.poly.c)
        emb = canonical_embedding(self.Fq, base)
        return Poly(ring, [emb(c) for c in self.poly.c])

    # -- valuations -------------------------------------------------------
    def valuation_poly(self, f: Poly) -> int:
        if not f:
            raise InvalidInput("valuation of zero")
        if self.poly is None:
            return -f.degree()
        pv = self.poly_over(f.ring)
        k = 0
        while True:
            q, r = f.divmod(pv)
            if r:
                return k
            f = q
            k += 1

    def valuation(self, f) -> int:
        """Exact valuation of a nonzero rational function (or polynomial)."""
        if isinstance(f, RatFunc):
            if not f:
                raise InvalidInput("valuation of zero")
            if self.poly is None:
                return f.den.degree() - f.num.degree()
            return self.valuation_poly(f.num) - self.valuation_poly(f.den)
        if isinstance(f, Poly):
            return self.valuation_poly(f)
        raise InvalidInput(f"cannot take valuation of {type(f).__name__}")


def valuation(f, v: Place) -> int:
    return v.valuation(f)


def parse_place(text: str, Fq: GF) -> Place:
    from .parse import parse_expr
    text = text.strip()
    if text.lower() in ("infinity", "inf", "oo"):
        return Place.infinity(Fq)
    R = PolyRing(Fq, "t")
    f = parse_expr(text, {"t": R.gen}, lambda n: R(n))
    if not isinstance(f, Poly):
        f = R(f)
    return Place(f.monic())


def places_of_degree(Fq: GF, d: int):
    """All finite places of degree d in canonical order."""
    R = PolyRing(Fq, "t")
    els = list(Fq.elements())
    for coeffs in itertools.product(els, repeat=d):
        f = Poly(R, list(reversed(coeffs)) + [Fq.one])
        if is_irreducible_ff(f):
            yield Place(f, check=False)


def iter_places(Fq: GF, max_degree: int = 4):
    for d in range(1, max_degree + 1):
        yield from places_of_degree(Fq, d)


def support(f: RatFunc) -> list:
    """Finite places where a nonzero rational function has nonzero valuation."""
    from .ffactor import factor_over_finite_field
    out = []
    for part in (f.num, f.den):
        if part.degree() > 0:
            _, facs = factor_over_finite_field(part)
            out.extend(Place(g, check=False) for g, _ in facs)
    uniq = []
    for pl in out:
        if pl not in uniq:
            uniq.append(pl)
    return sorted(uniq, key=Place.sort_key)


def newton_slopes(f: Poly, v: Place) -> list:
    """Valuations of the roots of a monic f over Q at v, with multiplicity.

    The orientation is fixed by slope(x - c) = v(c).  Roots equal to zero are
    reported as math.inf entries at the end.
    """
    if not f or not f.is_monic():
        raise InvalidInput("newton_slopes needs a monic polynomial")
    n = f.degree()
    pts = [(i, v.valuation(c)) for i, c in enumerate(f.c) if c]
    zero_roots = pts[0][0]
    out = []
    # lower convex hull from the first nonzero coefficient to (n, 0)
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y1 - y2, x2 - x1)
        out.extend([s] * (x2 - x1))
    out.sort()
    out.extend([math.inf] * zero_roots)
    assert len(out) == n
    return out
