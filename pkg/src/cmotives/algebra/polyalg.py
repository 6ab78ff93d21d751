"""Companion matrices, resultants and minimal polynomials of powers and products."""
from __future__ import annotations

from ..errors import InvalidInput, ReducibleInput
from .funcfactor import factor_over_function_field
from .matrix import Matrix
from .poly import Poly


def companion(h: Poly) -> Matrix:
    """Companion matrix of a monic h; its characteristic polynomial is h."""
    if not h.is_monic() or h.degree() < 1:
        raise InvalidInput("companion matrix needs a monic polynomial of positive degree")
    K = h.ring.base
    n = h.degree()
    rows = [[K.zero] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = K.one
    for i in range(n):
        rows[i][n - 1] = -h.c[i]
    return Matrix(K, rows, n)


def resultant(f: Poly, g: Poly):
    """Res(f, g) as the determinant of the Sylvester matrix."""
    R = f.ring.base
    m, n = f.degree(), g.degree()
    if m < 0 or n < 0:
        return R.zero
    if m == 0 and n == 0:
        return R.one
    size = m + n
    rows = []
    fc = list(reversed(f.c))
    gc = list(reversed(g.c))
    for i in range(n):
        rows.append([R.zero] * i + fc + [R.zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([R.zero] * i + gc + [R.zero] * (size - i - n - 1))
    return Matrix(R, rows, size).det()


def single_factor(f: Poly) -> Poly:
    """The unique monic irreducible factor of a prime power f."""
    _, facs = factor_over_function_field(f)
    if len(facs) != 1:
        raise ReducibleInput(f"expected a power of one irreducible, got {len(facs)} factors")
    return facs[0][0]


def power_charpoly(h: Poly, k: int) -> Poly:
    """Product of (x - a^k) over the roots a of h."""
    return (companion(h) ** k).charpoly(h.ring.var)


def power_min_poly(h: Poly, k: int) -> Poly:
    """Minimal polynomial of a^k over Q, given the minimal polynomial h of a."""
    if k < 1:
        raise InvalidInput("power_min_poly needs k >= 1")
    if k == 1:
        return h
    return single_factor(power_charpoly(h, k))


def product_charpoly(h1: Poly, h2: Poly, invert_second: bool = False) -> Poly:
    """Product of (x - a*b) (or x - a/b) over roots a of h1 and b of h2."""
    C1 = companion(h1)
    C2 = companion(h2)
    if invert_second:
        C2 = C2.inverse()
    return C1.kron(C2).charpoly(h1.ring.var)
