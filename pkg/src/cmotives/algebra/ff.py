"""Finite fields F_{p^n} given by an explicit defining polynomial over F_p.

Elements are stored as integers encoding their coordinate vector in the
power basis 1, g, ..., g^{n-1} (base-p digits, lowest first).  Small fields
use discrete log / Zech tables; larger fields fall back to polynomial
arithmetic (carry-less integer arithmetic when p = 2).
"""
from __future__ import annotations

import functools
import random as _random

import numpy as np
from sympy import factorint

from ..errors import InvalidInput

TABLE_LIMIT = 1 << 16


# ---------------------------------------------------------------------------
# dense polynomials over F_p as lists of ints, lowest degree first
# ---------------------------------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def fp_divmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    if len(a) <= db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def fp_mod(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def fp_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def fp_powmod(a, e, m, p):
    result = [1]
    base = fp_mod(a, m, p)
    while e:
        if e & 1:
            result = fp_mod(fp_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = fp_mod(fp_mul(base, base, p), m, p)
    return result


def fp_is_irreducible(f, p):
    """Rabin's test for a monic polynomial over F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    powers = []
    for i in range(1, n + 1):
        h = fp_powmod(h, p, f, p)
        powers.append(h)
    if fp_sub(powers[n - 1], x, p):
        return False
    for ell in factorint(n):
        k = n // ell
        if len(fp_gcd(f, fp_sub(powers[k - 1], x, p), p)) != 1:
            return False
    return True


def fp_has_no_small_factor(f, p) -> bool:
    """Ben-Or test: no irreducible factor of degree <= n/2 (early exit)."""
    n = len(f) - 1
    x = [0, 1]
    h = x
    for _ in range(1, n // 2 + 1):
        h = fp_powmod(h, p, f, p)
        if len(fp_gcd(f, fp_sub(h, x, p), p)) != 1:
            return False
    return True


def _int_to_poly(v, p, n):
    out = []
    for _ in range(n):
        v, d = divmod(v, p)
        out.append(d)
    return out


@functools.lru_cache(maxsize=None)
def least_irreducible(p: int, n: int) -> tuple:
    """Least monic irreducible of degree n over F_p in the base-p ordering."""
    for code in range(p ** n):
        f = _int_to_poly(code, p, n) + [1]
        if f[0] == 0 and n > 1:
            continue
        if fp_has_no_small_factor(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class GF:
    """The field F_p[g]/(f) for a monic irreducible f of degree n."""

    def __init__(self, p: int, modulus=None, degree: int | None = None, check: bool = True):
        if modulus is None:
            if degree is None:
                degree = 1
            modulus = least_irreducible(p, degree)
        modulus = tuple(int(c) % p for c in modulus)
        if not modulus or modulus[-1] != 1:
            raise InvalidInput(f"defining polynomial must be monic, got {modulus}")
        if check and not fp_is_irreducible(list(modulus), p):
            raise InvalidInput(f"defining polynomial {modulus} is reducible over F_{p}")
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = p ** self.degree
        self._pows = [p ** i for i in range(self.degree + 1)]
        self._log = self._exp = self._zech = None
        self._mod_int = None
        self._slot = (self.degree * (p - 1) ** 2).bit_length() + 1
        self._tail = [(j, c) for j, c in enumerate(modulus[:-1]) if c]
        if p == 2:
            self._mod_int = sum(1 << i for i, c in enumerate(modulus) if c)
        if self.degree > 1 and self.order <= TABLE_LIMIT:
            self._build_tables()
        self.zero = FFElement(self, 0)
        self.one = FFElement(self, 1)
        self.gen = FFElement(self, p) if self.degree > 1 else self.one

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p and other.modulus == self.modulus

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    @property
    def characteristic(self):
        return self.p

    def is_prime_field(self):
        return self.degree == 1

    # -- element construction ---------------------------------------------
    def __call__(self, x) -> "FFElement":
        if isinstance(x, FFElement):
            if x.field is self or x.field == self:
                return x if x.field is self else FFElement(self, x.v)
            raise InvalidInput(f"cannot coerce {x.field} element into {self}")
        if isinstance(x, (int, np.integer)):
            return FFElement(self, int(x) % self.p)
        raise InvalidInput(f"cannot coerce {x!r} into {self}")

    def from_vector(self, coeffs) -> "FFElement":
        v = 0
        for i, c in enumerate(coeffs):
            v += (int(c) % self.p) * self._pows[i]
        return FFElement(self, v)

    def from_int(self, v: int) -> "FFElement":
        return FFElement(self, v)

    def elements(self):
        for v in range(self.order):
            yield FFElement(self, v)

    def random_element(self, rng: _random.Random) -> "FFElement":
        return FFElement(self, rng.randrange(self.order))

    # -- raw arithmetic on integer codes ----------------------------------
    def _build_tables(self):
        q1 = self.order - 1
        g = self._find_primitive()
        exp = [0] * (2 * q1)
        log = [-1] * self.order
        x = 1
        for k in range(q1):
            exp[k] = x
            log[x] = k
            x = self._mul_slow(x, g)
        for k in range(q1, 2 * q1):
            exp[k] = exp[k - q1]
        self._exp, self._log = exp, log
        if self.p != 2:
            zech = [-1] * q1
            for k in range(q1):
                s = self._add_slow(1, exp[k])
                zech[k] = log[s] if s else -1
            self._zech = zech

    def _find_primitive(self):
        q1 = self.order - 1
        primes = list(factorint(q1))
        for c in range(2, self.order):
            if all(self._pow_slow(c, q1 // ell) != 1 for ell in primes):
                return c
        return 1

    def _digits(self, v):
        p, out = self.p, []
        for _ in range(self.degree):
            v, d = divmod(v, p)
            out.append(d)
        return out

    def _undigits(self, ds):
        v = 0
        for i in range(len(ds) - 1, -1, -1):
            v = v * self.p + ds[i]
        return v

    def _add_slow(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % p for x, y in zip(da, db)])

    def _mul_slow(self, a, b):
        if self.degree == 1:
            return a * b % self.p
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
            m, n = self._mod_int, self.degree
            for i in range(r.bit_length() - 1, n - 1, -1):
                if (r >> i) & 1:
                    r ^= m << (i - n)
            return r
        return self._mul_kronecker(a, b)

    def _mul_kronecker(self, a, b):
        # pack base-p digits into wide slots, multiply as integers, unpack
        p, n, w = self.p, self.degree, self._slot
        mask = (1 << w) - 1
        A = B = 0
        for i, d in enumerate(self._digits(a)):
            if d:
                A |= d << (w * i)
        for i, d in enumerate(self._digits(b)):
            if d:
                B |= d << (w * i)
        C = A * B
        prod = []
        while C:
            prod.append((C & mask) % p)
            C >>= w
        # reduce with the sparse tail of the monic modulus
        tail = self._tail
        for i in range(len(prod) - 1, n - 1, -1):
            c = prod[i]
            if c:
                base = i - n
                for j, m in tail:
                    prod[base + j] = (prod[base + j] - c * m) % p
        return self._undigits(prod[:n] + [0] * (n - min(len(prod), n)))

    def _pow_slow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            e >>= 1
            if e:
                a = self._mul_slow(a, a)
        return r

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._zech is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            la, lb = self._log[a], self._log[b]
            q1 = self.order - 1
            z = self._zech[(lb - la) % q1]
            if z < 0:
                return 0
            return self._exp[(la + z) % q1]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.degree == 1:
            return self.p - a
        return self._undigits([(-d) % self.p for d in self._digits(a)])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.degree == 1:
            return a * b % self.p
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.degree == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self._pow_slow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        q1 = self.order - 1
        if self.degree == 1:
            return pow(a, e % q1, self.p)
        if self._log is not None:
            return self._exp[(self._log[a] * e) % q1]
        e %= q1
        return self._pow_slow(a, e)

    # -- F_p-linear structure ----------------------------------------------
    def to_vector(self, x: "FFElement") -> list:
        return self._digits(x.v)

    def mul_matrix(self, x: "FFElement") -> np.ndarray:
        """Matrix (over F_p) of y -> x*y in the power basis (columns = images)."""
        n = self.degree
        m = np.zeros((n, n), dtype=np.int64)
        col = x.v
        g = self.gen.v if n > 1 else 1
        for j in range(n):
            m[:, j] = self._digits(col)
            col = self.mul(col, g)
        return m

    @functools.cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Matrix of y -> y^p over F_p."""
        n = self.degree
        m = np.zeros((n, n), dtype=np.int64)
        if n == 1:
            m[0, 0] = 1
            return m
        gp = self.pow(self.gen.v, self.p)
        col = 1
        for j in range(n):
            m[:, j] = self._digits(col)
            col = self.mul(col, gp)
        return m


class FFElement:
    """An element of a GF instance."""

    __slots__ = ("field", "v")

    def __init__(self, field: GF, v: int):
        self.field = field
        self.v = v

    @property
    def parent(self):
        return self.field

    def _coerce(self, other):
        if isinstance(other, FFElement):
            if other.field is not self.field and other.field != self.field:
                raise InvalidInput(f"field mismatch: {self.field} vs {other.field}")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FFElement(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.field, self.field.neg(self.v))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        return FFElement(f, f.add(self.v, f.neg(o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        return FFElement(f, f.add(o, f.neg(self.v)))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FFElement(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        return FFElement(f, f.mul(self.v, f.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        return FFElement(f, f.mul(o, f.inv(self.v)))

    def inverse(self):
        return FFElement(self.field, self.field.inv(self.v))

    def __pow__(self, e: int):
        return FFElement(self.field, self.field.pow(self.v, e))

    def frobenius(self, k: int = 1):
        """x -> x^(p^k)."""
        f = self.field
        k %= f.degree
        if k == 0 or self.v == 0:
            return self
        return FFElement(f, f.pow(self.v, f.p ** k))

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.v == other.v and (other.field is self.field or other.field == self.field)
        if isinstance(other, int):
            return self.v == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.order, self.v))

    def __bool__(self):
        return self.v != 0

    def is_zero(self):
        return self.v == 0

    def is_one(self):
        return self.v == 1

    def __repr__(self):
        from .printing import ff_to_str
        return ff_to_str(self)

    def vector(self):
        return self.field._digits(self.v)

    def multiplicative_order(self) -> int:
        if self.v == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        f = self.field
        n = f.order - 1
        for ell, k in factorint(n).items():
            for _ in range(k):
                if f.pow(self.v, n // ell) == 1:
                    n //= ell
                else:
                    break
        return n


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> GF:
    return GF(p, (0, 1))


@functools.lru_cache(maxsize=None)
def default_field(p: int, n: int) -> GF:
    """F_{p^n} with the least lexicographic defining polynomial (cached)."""
    return GF(p, least_irreducible(p, n), check=False)
