"""Truncated Laurent series in z over a finite field, with absolute precision.

A series is known modulo z^prec.  It stores the coefficients of
z^val, ..., z^(prec-1); `val` is the exact order whenever the series is
nonzero at the known precision.
"""
from __future__ import annotations

from ..errors import PrecisionTooLow

DEFAULT_PRECISION = 20


class SeriesRing:
    """Container for the base field and a default precision."""

    def __init__(self, field, prec: int = DEFAULT_PRECISION):
        self.field = field
        self.prec = prec
        self.zero = Series(field, 0, [], prec)
        self.one = Series(field, 0, [field.one], prec)
        self.gen = Series(field, 1, [field.one], prec)

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and other.field == self.field and other.prec == self.prec

    def __hash__(self):
        return hash(("Series", self.field, self.prec))

    def __call__(self, x) -> "Series":
        if isinstance(x, Series):
            return x
        return Series(self.field, 0, [self.field(x)], self.prec)

    def from_coeffs(self, coeffs, val: int = 0, prec: int | None = None) -> "Series":
        return Series(self.field, val, [self.field(c) for c in coeffs], self.prec if prec is None else prec)


class Series:
    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field, val: int, coeffs, prec: int):
        coeffs = list(coeffs[: max(prec - val, 0)])
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        if i == len(coeffs):
            val, coeffs = prec, []
        else:
            val, coeffs = val + i, coeffs[i:]
        self.field = field
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    # -- basic -------------------------------------------------------------
    @property
    def parent(self):
        return SeriesRing(self.field, self.prec)

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, k: int):
        if k >= self.prec:
            raise PrecisionTooLow(f"coefficient z^{k} beyond precision {self.prec}")
        if k < self.val or k - self.val >= len(self.coeffs):
            return self.field.zero
        return self.coeffs[k - self.val]

    def order(self) -> int:
        """Exact order; raises if the series is zero at the known precision."""
        if not self.coeffs:
            raise PrecisionTooLow(f"series vanishes to precision {self.prec}; order undecidable")
        return self.val

    def truncate(self, prec: int) -> "Series":
        return Series(self.field, self.val, self.coeffs, min(prec, self.prec))

    def coeff_list(self, start: int = 0) -> list:
        """Coefficients of z^start .. z^(prec-1)."""
        return [self.coefficient(k) for k in range(start, self.prec)]

    def __eq__(self, other):
        if isinstance(other, Series):
            prec = min(self.prec, other.prec)
            return all(self.coefficient(k) == other.coefficient(k)
                       for k in range(min(self.val, other.val, prec), prec))
        try:
            return self == Series(self.field, 0, [self.field(other)], self.prec)
        except Exception:
            return NotImplemented

    def __hash__(self):
        raise TypeError("truncated series are not hashable")

    def __repr__(self):
        from .printing import to_str
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                s = to_str(c)
                e = self.val + k
                mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
                if "+" in s[1:] or " - " in s:
                    s = f"({s})"
                terms.append(s if not mono else (mono if s == "1" else f"{s}*{mono}"))
        return (" + ".join(terms) or "0") + f" + O(z^{self.prec})"

    # -- arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Series):
            return other
        return Series(self.field, 0, [self.field(other)], self.prec)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except Exception:
            return NotImplemented
        prec = min(self.prec, o.prec)
        lo = min(self.val, o.val)
        if lo >= prec:
            return Series(self.field, prec, [], prec)
        out = []
        for k in range(lo, prec):
            a = self.coeffs[k - self.val] if 0 <= k - self.val < len(self.coeffs) else None
            b = o.coeffs[k - o.val] if 0 <= k - o.val < len(o.coeffs) else None
            if a is None:
                out.append(b if b is not None else self.field.zero)
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        return Series(self.field, lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.field, self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except Exception:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            try:
                c = self.field(other)
            except Exception:
                return NotImplemented
            if not c:
                return Series(self.field, self.prec, [], self.prec)
            return Series(self.field, self.val, [x * c for x in self.coeffs], self.prec)
        o = other
        prec = min(self.val + o.prec, o.val + self.prec)
        val = self.val + o.val
        n = prec - val
        if n <= 0 or not self.coeffs or not o.coeffs:
            return Series(self.field, prec, [], prec)
        a, b = self.coeffs[:n], o.coeffs[:n]
        F = self.field
        zero = F.zero
        out = [zero] * n
        for i, x in enumerate(a):
            if not x:
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] = out[i + j] + x * y
        return Series(F, val, out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        if not self.coeffs:
            raise PrecisionTooLow("inverse of a series that vanishes to the known precision")
        rel = self.prec - self.val
        a = self.coeffs
        inv0 = a[0].inverse()
        out = [inv0]
        for k in range(1, rel):
            s = self.field.zero
            for j in range(1, min(k, len(a) - 1) + 1):
                if a[j]:
                    s = s + a[j] * out[k - j]
            out.append(-s * inv0)
        return Series(self.field, -self.val, out, rel - self.val)

    def __truediv__(self, other):
        if not isinstance(other, Series):
            c = self.field(other)
            return self * c.inverse()
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Series(self.field, 0, [self.field.one], self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def map_coeffs(self, fn, field=None) -> "Series":
        return Series(field or self.field, self.val, [fn(c) for c in self.coeffs], self.prec)

    def frobenius(self, k: int = 1) -> "Series":
        """Apply x -> x^(p^k) to every coefficient (z is fixed)."""
        return self.map_coeffs(lambda c: c.frobenius(k))

    def is_integral(self) -> bool:
        return self.val >= 0

    def is_unit(self) -> bool:
        return bool(self.coeffs) and self.val == 0


def series_const(field, c, prec: int) -> Series:
    return Series(field, 0, [field(c)], prec)


def series_gen(field, prec: int) -> Series:
    return Series(field, 1, [field.one], prec)
