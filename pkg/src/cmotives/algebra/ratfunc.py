"""Rational functions K(t) in reduced form with monic denominator."""
from __future__ import annotations

from .poly import Poly, PolyRing, poly_gcd


class FracField:
    """Fraction field of a univariate polynomial ring over a field."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.base = ring.base
        self.var = ring.var
        self.zero = RatFunc(self, ring.zero, ring.one)
        self.one = RatFunc(self, ring.one, ring.one)
        self.gen = RatFunc(self, ring.gen, ring.one)

    def __eq__(self, other):
        return isinstance(other, FracField) and other.ring == self.ring

    def __hash__(self):
        return hash(("Frac", self.ring))

    def __repr__(self):
        return f"Frac({self.ring!r})"

    def __call__(self, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            if x.field is self or x.field == self:
                return x
            raise TypeError(f"cannot coerce {x.field} element into {self}")
        if isinstance(x, Poly):
            if x.ring is self.ring or x.ring == self.ring:
                return RatFunc(self, x, self.ring.one)
            if x.is_constant():
                return self(x.constant()) if x else self.zero
            raise TypeError(f"cannot coerce polynomial over {x.ring} into {self}")
        return RatFunc(self, self.ring(x), self.ring.one)

    def frac(self, num, den) -> "RatFunc":
        num, den = self.ring(num), self.ring(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        return _reduced(self, num, den)


def _reduced(field, num: Poly, den: Poly) -> "RatFunc":
    if not num:
        return field.zero
    if den.degree() > 0:
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num = num // g
            den = den // g
    lc = den.lc()
    if lc != field.base.one:
        inv = lc.inverse()
        num = num.scale(inv)
        den = den.scale(inv)
    return RatFunc(field, num, den)


class RatFunc:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: FracField, num: Poly, den: Poly):
        self.field = field
        self.num = num
        self.den = den

    @property
    def parent(self):
        return self.field

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.den.degree() == 0 and self.num.is_one()

    def is_polynomial(self):
        return self.den.degree() == 0

    def is_constant(self):
        return self.den.degree() == 0 and self.num.degree() <= 0

    def constant(self):
        return self.num.constant()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        try:
            return self == self.field(other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((self.num.c, self.den.c))

    def __repr__(self):
        from .printing import to_str
        return to_str(self)

    def _lift(self, other):
        if isinstance(other, RatFunc) and (other.field is self.field or other.field == self.field):
            return other
        return self.field(other)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except Exception:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den.degree() == 0 and o.den.degree() == 0:
            return RatFunc(self.field, self.num + o.num, self.den)
        if self.den == o.den:
            return _reduced(self.field, self.num + o.num, self.den)
        return _reduced(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except Exception:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = self._lift(other)
        except Exception:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        try:
            o = self._lift(other)
        except Exception:
            return NotImplemented
        if not self.num or not o.num:
            return self.field.zero
        if self.den.degree() == 0 and o.den.degree() == 0:
            return RatFunc(self.field, self.num * o.num, self.den)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        g1 = poly_gcd(n1, d2)
        if g1.degree() > 0:
            n1, d2 = n1 // g1, d2 // g1
        g2 = poly_gcd(n2, d1)
        if g2.degree() > 0:
            n2, d1 = n2 // g2, d1 // g2
        return _reduced(self.field, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return _reduced(self.field, self.den, self.num)

    def __truediv__(self, other):
        try:
            o = self._lift(other)
        except Exception:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = self._lift(other)
        except Exception:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.field, self.num ** e, self.den ** e)

    def map_coeffs(self, fn, field: FracField | None = None) -> "RatFunc":
        """Apply a field homomorphism coefficientwise."""
        field = field or self.field
        num = self.num.map_coeffs(fn, field.ring)
        den = self.den.map_coeffs(fn, field.ring)
        return _reduced(field, num, den)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def degree(self) -> int:
        """deg num - deg den (negative of the valuation at infinity)."""
        return self.num.degree() - self.den.degree()
