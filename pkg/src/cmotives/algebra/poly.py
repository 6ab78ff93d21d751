"""Dense univariate polynomials over an arbitrary coefficient field or ring.

Coefficient rings only need `zero`, `one` and `__call__` (coercion of ints
and of their own elements); elements need the arithmetic operators.  Over a
finite field the hot loops run on raw integer codes.
"""
from __future__ import annotations

from .ff import GF, FFElement


class PolyRing:
    """R[var] for a coefficient ring R."""

    def __init__(self, base, var: str = "x"):
        self.base = base
        self.var = var
        self.zero = Poly(self, ())
        self.one = Poly(self, (base.one,))
        self.gen = Poly(self, (base.zero, base.one))

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.var == self.var and other.base == self.base

    def __hash__(self):
        return hash(("PolyRing", self.var, self.base))

    def __repr__(self):
        return f"{self.base!r}[{self.var}]"

    def __call__(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring == self:
                return x if x.ring is self else Poly(self, x.c)
            return Poly(self, (self.base(x),))
        if isinstance(x, (list, tuple)):
            return self.from_coeffs(x)
        return Poly(self, (self.base(x),))

    def from_coeffs(self, coeffs) -> "Poly":
        b = self.base
        return Poly(self, tuple(b(c) for c in coeffs))

    def monomial(self, k: int, c=None) -> "Poly":
        b = self.base
        c = b.one if c is None else b(c)
        return Poly(self, (b.zero,) * k + (c,))

    @property
    def is_finite_field(self):
        return isinstance(self.base, GF)


def _trimmed(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


class Poly:
    __slots__ = ("ring", "c")

    def __init__(self, ring: PolyRing, coeffs):
        self.ring = ring
        self.c = _trimmed(coeffs)

    # -- basic accessors ---------------------------------------------------
    @property
    def parent(self):
        return self.ring

    @property
    def base(self):
        return self.ring.base

    def degree(self) -> int:
        return len(self.c) - 1

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        if 0 <= i < len(self.c):
            return self.c[i]
        return self.ring.base.zero

    def lc(self):
        return self.c[-1] if self.c else self.ring.base.zero

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_constant(self):
        return len(self.c) <= 1

    def is_one(self):
        return len(self.c) == 1 and self.c[0] == self.ring.base.one

    def is_monic(self):
        return bool(self.c) and self.c[-1] == self.ring.base.one

    def constant(self):
        return self[0]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c and (self.ring is other.ring or self.ring == other.ring)
        if isinstance(other, int) or hasattr(other, "parent"):
            try:
                return self == self.ring(other)
            except Exception:
                return False
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        from .printing import to_str
        return to_str(self)

    # -- ring operations ---------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly) and (other.ring is self.ring or other.ring == self.ring):
            return other
        return self.ring(other)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except Exception:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, [-x for x in self.c])

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
        return o - self

    def __mul__(self, other):
        if not isinstance(other, Poly) or not (other.ring is self.ring or other.ring == self.ring):
            try:
                s = self.ring.base(other)
            except Exception:
                return NotImplemented
            return Poly(self.ring, [x * s for x in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return self.ring.zero
        base = self.ring.base
        if isinstance(base, GF):
            return Poly(self.ring, _ff_mul(base, a, b))
        out = [base.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, s):
        return Poly(self.ring, [x * s for x in self.c])

    def shift(self, k: int):
        """Multiply by var^k."""
        if not self.c:
            return self
        return Poly(self.ring, (self.ring.base.zero,) * k + self.c)

    def divmod(self, other):
        o = self._lift(other)
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        base = self.ring.base
        if isinstance(base, GF):
            q, r = _ff_divmod(base, self.c, o.c)
            return Poly(self.ring, q), Poly(self.ring, r)
        a = list(self.c)
        db = len(o.c) - 1
        if len(a) <= db:
            return self.ring.zero, self
        inv = o.c[-1].inverse() if hasattr(o.c[-1], "inverse") else base.one / o.c[-1]
        q = [base.zero] * (len(a) - db)
        bc = o.c
        for i in range(len(a) - 1, db - 1, -1):
            ai = a[i]
            if not ai:
                continue
            c = ai * inv
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = a[i - db + j] - c * bc[j]
        return Poly(self.ring, q), Poly(self.ring, a[:db])

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __truediv__(self, other):
        if isinstance(other, Poly):
            q, r = self.divmod(other)
            if r:
                raise ArithmeticError("inexact polynomial division")
            return q
        s = self.ring.base(other)
        inv = s.inverse() if hasattr(s, "inverse") else self.ring.base.one / s
        return self.scale(inv)

    def exact_div(self, other):
        return self / other

    def divides(self, other) -> bool:
        return not (other % self)

    def monic(self):
        if not self.c or self.c[-1] == self.ring.base.one:
            return self
        lc = self.c[-1]
        inv = lc.inverse() if hasattr(lc, "inverse") else self.ring.base.one / lc
        return self.scale(inv)

    def derivative(self):
        return Poly(self.ring, [self.c[i] * i for i in range(1, len(self.c))])

    def __call__(self, x):
        """Horner evaluation; x may live in any algebra over the coefficients.

        A constant polynomial returns its coefficient unchanged."""
        if not self.c:
            return self.ring.base.zero
        acc = self.c[-1]
        for coef in reversed(self.c[:-1]):
            acc = acc * x + coef
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = self.ring.zero
        for coef in reversed(self.c):
            acc = acc * other + coef
        return acc

    def map_coeffs(self, fn, ring: PolyRing | None = None) -> "Poly":
        ring = ring or self.ring
        return Poly(ring, [fn(x) for x in self.c])

    def reverse(self, n: int | None = None) -> "Poly":
        n = self.degree() if n is None else n
        c = list(self.c) + [self.ring.base.zero] * (n + 1 - len(self.c))
        return Poly(self.ring, c[: n + 1][::-1])

    def truncate(self, n: int) -> "Poly":
        return Poly(self.ring, self.c[:n])

    def coeffs(self, n: int | None = None) -> list:
        if n is None:
            return list(self.c)
        z = self.ring.base.zero
        return list(self.c) + [z] * (n - len(self.c))

    def valuation(self) -> int:
        """Order of vanishing at var = 0 (infinite for zero is rejected)."""
        for i, x in enumerate(self.c):
            if x:
                return i
        raise ValueError("valuation of the zero polynomial")

    def pow_mod(self, e: int, m: "Poly") -> "Poly":
        result = self.ring.one
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result


# -- finite-field fast paths ------------------------------------------------

def _ff_mul(F: GF, a, b):
    av = [x.v for x in a]
    bv = [y.v for y in b]
    add, mul = F.add, F.mul
    out = [0] * (len(av) + len(bv) - 1)
    if F.degree == 1:
        p = F.p
        for i, x in enumerate(av):
            if x:
                for j, y in enumerate(bv):
                    out[i + j] += x * y
        return [FFElement(F, v % p) for v in out]
    for i, x in enumerate(av):
        if not x:
            continue
        for j, y in enumerate(bv):
            if y:
                out[i + j] = add(out[i + j], mul(x, y))
    return [FFElement(F, v) for v in out]


def _ff_divmod(F: GF, a, b):
    av = [x.v for x in a]
    bv = [y.v for y in b]
    db = len(bv) - 1
    if len(av) <= db:
        return [], a
    add, mul, neg = F.add, F.mul, F.neg
    inv = F.inv(bv[-1])
    q = [0] * (len(av) - db)
    for i in range(len(av) - 1, db - 1, -1):
        ai = av[i]
        if not ai:
            continue
        c = mul(ai, inv)
        q[i - db] = c
        nc = neg(c)
        for j in range(db + 1):
            if bv[j]:
                av[i - db + j] = add(av[i - db + j], mul(nc, bv[j]))
    return [FFElement(F, v) for v in q], [FFElement(F, v) for v in av[:db]]


# -- gcd-type algorithms over a field ----------------------------------------

def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with g = s*a + t*b monic."""
    R = a.ring
    r0, r1 = a, b
    s0, s1 = R.one, R.zero
    t0, t1 = R.zero, R.one
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    lc = r0.lc()
    inv = lc.inverse() if hasattr(lc, "inverse") else R.base.one / lc
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return a.ring.zero
    return (a * (b // poly_gcd(a, b))).monic()


def poly_inverse_mod(a: Poly, m: Poly) -> Poly:
    g, s, _ = poly_xgcd(a % m, m)
    if not g.is_one():
        raise ZeroDivisionError("polynomial not invertible modulo m")
    return s % m


def poly_prod(polys, ring: PolyRing) -> Poly:
    out = ring.one
    for f in polys:
        out = out * f
    return out
