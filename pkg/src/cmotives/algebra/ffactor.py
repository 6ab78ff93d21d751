"""Factorization of univariate polynomials over finite fields.

Squarefree decomposition, distinct-degree factorization and Cantor-Zassenhaus
equal-degree splitting (trace map in characteristic 2).
"""
from __future__ import annotations

import random

from ..errors import InvalidInput
from .ff import GF
from .poly import Poly, poly_gcd


def _sort_key(f: Poly):
    return (f.degree(), tuple(c.v for c in reversed(f.c)))


def pth_root_poly(f: Poly) -> Poly:
    """g with g^p = f, assuming f is a polynomial in x^p (finite field)."""
    F = f.ring.base
    p = F.p
    e = F.degree - 1  # a -> a^(p^(n-1)) inverts Frobenius
    out = []
    for i in range(0, len(f.c), p):
        out.append(f.c[i].frobenius(e))
    return Poly(f.ring, out)


def squarefree_decomposition(f: Poly) -> list:
    """List of (g_i, i) with f = lc * prod g_i^i, g_i squarefree and coprime."""
    if not f:
        raise InvalidInput("squarefree decomposition of zero")
    f = f.monic()
    F = f.ring.base
    p = F.p
    out = {}

    def rec(f, mult):
        if f.degree() < 1:
            return
        d = f.derivative()
        if not d:
            rec(pth_root_poly(f), mult * p)
            return
        c = poly_gcd(f, d)
        w = f // c
        i = 1
        while w.degree() > 0:
            y = poly_gcd(w, c)
            z = w // y
            if z.degree() > 0:
                out[i * mult] = out.get(i * mult, f.ring.one) * z
            i += 1
            w = y
            c = c // y
        if c.degree() > 0:
            rec(pth_root_poly(c), mult * p)

    rec(f, 1)
    return sorted(((g, m) for m, g in out.items()), key=lambda gm: gm[1])


def distinct_degree(f: Poly) -> list:
    """For squarefree monic f, list of (product of all degree-d factors, d)."""
    F = f.ring.base
    Q = F.order
    x = f.ring.gen
    out = []
    h = x
    d = 0
    while f.degree() >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(Q, f)
        g = poly_gcd(f, h - x)
        if g.degree() > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree() > 0:
        out.append((f, f.degree()))
    return out


def equal_degree(f: Poly, d: int, rng: random.Random) -> list:
    """Split a squarefree monic product of degree-d irreducibles."""
    n = f.degree()
    if n == d:
        return [f]
    F = f.ring.base
    Q = F.order
    R = f.ring
    while True:
        a = Poly(R, [F.random_element(rng) for _ in range(n)])
        if a.degree() < 1:
            continue
        if F.p == 2:
            # trace from F_{Q^d} down to F_2
            k = F.degree * d
            b = a % f
            acc = b
            for _ in range(k - 1):
                b = (b * b) % f
                acc = acc + b
        else:
            acc = a.pow_mod((Q ** d - 1) // 2, f) - R.one
        g = poly_gcd(f, acc)
        if 0 < g.degree() < n:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def factor_over_finite_field(f: Poly, seed: int = 0):
    """Return (lc, [(g, m), ...]) with monic irreducible g in canonical order."""
    if not isinstance(f.ring.base, GF):
        raise InvalidInput("factor_over_finite_field needs a finite coefficient field")
    if not f:
        raise InvalidInput("cannot factor the zero polynomial")
    lc = f.lc()
    rng = random.Random(seed)
    factors = []
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                factors.append((irr.monic(), m))
    factors.sort(key=lambda gm: (_sort_key(gm[0]), gm[1]))
    return lc, factors


def is_irreducible_ff(f: Poly) -> bool:
    """Rabin test over the coefficient field."""
    n = f.degree()
    if n < 1:
        return False
    if n == 1:
        return True
    from sympy import factorint
    F = f.ring.base
    Q = F.order
    f = f.monic()
    x = f.ring.gen
    pw = [None]
    h = x
    for _ in range(n):
        h = h.pow_mod(Q, f)
        pw.append(h)
    if (pw[n] - x) % f:
        return False
    for ell in factorint(n):
        if poly_gcd(f, pw[n // ell] - x).degree() > 0:
            return False
    return True


def roots(f: Poly, seed: int = 0) -> list:
    """All distinct roots in the coefficient field, sorted by integer code."""
    if not f:
        raise InvalidInput("roots of the zero polynomial")
    F = f.ring.base
    f = f.monic()
    x = f.ring.gen
    g = poly_gcd(f, x.pow_mod(F.order, f) - x) if f.degree() > 0 else f
    if g.degree() < 1:
        return []
    rng = random.Random(seed)
    # g is squarefree with linear factors only
    lin = equal_degree(g, 1, rng)
    return sorted((-h.c[0] for h in lin), key=lambda a: a.v)
