"""Factorization of polynomials in x over the rational function field F_q(t).

Separable squarefree parts are handled by specialising t to a point ζ of
some F_{q^k} where the specialisation stays squarefree, factoring there,
lifting the factors (t - ζ)-adically and recombining by trial division.
Purely inseparable parts (f' = 0) are reduced to f = g(x^p).
"""
from __future__ import annotations

import itertools

from ..errors import InvalidInput
from .ff import FFElement, default_field
from .ffactor import factor_over_finite_field
from .poly import Poly, PolyRing, poly_gcd, poly_lcm, poly_xgcd
from .ratfunc import FracField, RatFunc
from .tower import canonical_embedding


def _Q_parts(f: Poly):
    Q = f.ring.base
    if not isinstance(Q, FracField):
        raise InvalidInput("expected a polynomial over a rational function field")
    return Q, Q.ring, Q.base


def _canon_key(g: Poly):
    return (g.degree(), tuple((tuple(x.v for x in c.num.c), tuple(x.v for x in c.den.c))
                              for c in reversed(g.c)))


def _merge(a: list, b: list) -> list:
    out = {}
    order = []
    for g, m in a + b:
        key = g.c
        if key not in out:
            out[key] = [g, 0]
            order.append(key)
        out[key][1] += m
    return [(out[k][0], out[k][1]) for k in order]


def _is_pth_power_poly(f: Poly, p: int) -> bool:
    return all(not c for i, c in enumerate(f.c) if i % p)


def _pth_root_poly(f: Poly, p: int) -> Poly:
    F = f.ring.base
    e = F.degree - 1
    return Poly(f.ring, [f.c[i].frobenius(e) for i in range(0, len(f.c), p)])


def _pth_root_coeff(c: RatFunc, p: int):
    if _is_pth_power_poly(c.num, p) and _is_pth_power_poly(c.den, p):
        Q = c.field
        return RatFunc(Q, _pth_root_poly(c.num, p), _pth_root_poly(c.den, p))
    return None


def factor_over_function_field(f: Poly):
    """Return (lc, [(g, m), ...]) with g monic irreducible over F_q(t)."""
    if not f:
        raise InvalidInput("cannot factor the zero polynomial")
    lc = f.lc()
    facs = _factor_monic(f.monic())
    facs.sort(key=lambda gm: (_canon_key(gm[0]), gm[1]))
    return lc, facs


def _factor_monic(F: Poly) -> list:
    n = F.degree()
    if n <= 0:
        return []
    if n == 1:
        return [(F, 1)]
    Q, Rt, Fq = _Q_parts(F)
    p = Fq.p
    d = F.derivative()
    if not d:
        G = Poly(F.ring, [F.c[i] for i in range(0, len(F.c), p)])
        out = []
        for g, m in _factor_monic(G):
            roots = [_pth_root_coeff(c, p) for c in g.c]
            if all(r is not None for r in roots):
                out = _merge(out, [(Poly(F.ring, roots), m * p)])
            else:
                xp = F.ring.monomial(p)
                out = _merge(out, [(g.compose(xp), m)])
        return out
    g = poly_gcd(F, d)
    if g.degree() == 0:
        return [(h, 1) for h in _factor_separable(F)]
    return _merge(_factor_monic(g), _factor_monic(F // g))


# ---------------------------------------------------------------------------
# separable squarefree case
# ---------------------------------------------------------------------------

def _integral_model(F: Poly):
    """(D, coefficient list over F_q[t]) with D^n F(x/D) monic integral."""
    Q, Rt, _ = _Q_parts(F)
    n = F.degree()
    D = Rt.one
    for c in F.c:
        D = poly_lcm(D, c.den)
    coeffs = []
    for i, c in enumerate(F.c):
        # a_i D^(n-i)
        coeffs.append((c * Q(D ** (n - i))).num)
    return D, coeffs


def _undo_model(G: list, D: Poly, ring: PolyRing) -> Poly:
    """D^(-m) G(D x) for G given as F_q[t] coefficients, monic of degree m."""
    Q = ring.base
    m = len(G) - 1
    out = []
    for j, c in enumerate(G):
        out.append(Q(c) / Q(D ** (m - j)))
    return Poly(ring, out)


def _specialise(coeffs, zeta, emb, Kx):
    vals = []
    for c in coeffs:
        acc = Kx.base.zero
        for a in reversed(c.c):
            acc = acc * zeta + emb(a)
        vals.append(acc)
    return Poly(Kx, vals)


def _find_specialisation(coeffs, Fq):
    n = len(coeffs) - 1
    for k in itertools.count(1):
        K = Fq if k == 1 else default_field(Fq.p, Fq.degree * k)
        emb = canonical_embedding(Fq, K)
        Kx = PolyRing(K, "x")
        for zeta in K.elements():
            fz = _specialise(coeffs, zeta, emb, Kx)
            if fz.degree() == n and poly_gcd(fz, fz.derivative()).degree() == 0:
                return K, emb, zeta, fz


def _taylor_shift(c: Poly, zeta: FFElement, emb, K, prec: int) -> list:
    """Coefficients in s of c(zeta + s), truncated to s^prec."""
    a = [emb(x) for x in c.c]
    # repeated synthetic division by (t - zeta)
    out = []
    while a and len(out) < prec:
        q = [K.zero] * (len(a) - 1)
        acc = K.zero
        for i in range(len(a) - 1, -1, -1):
            acc = acc * zeta + a[i]
            if i > 0:
                q[i - 1] = acc
        out.append(acc)
        a = q
    return out + [K.zero] * (prec - len(out))


class _Biv:
    """Polynomial in x whose coefficients are series in s, stored by s-degree."""

    def __init__(self, layers: list, Kx: PolyRing):
        self.layers = layers  # layers[k] is a poly in x over K
        self.Kx = Kx

    def mul(self, other: "_Biv", prec: int) -> "_Biv":
        out = [self.Kx.zero] * prec
        for i, a in enumerate(self.layers[:prec]):
            if not a:
                continue
            for j, b in enumerate(other.layers[: prec - i]):
                if b:
                    out[i + j] = out[i + j] + a * b
        return _Biv(out, self.Kx)


def _hensel_split(F: _Biv, g0: Poly, h0: Poly, prec: int):
    """Lift F ≡ g0 h0 (mod s) to F ≡ G H (mod s^prec), G, H monic in x."""
    Kx = F.Kx
    _, sig, tau = poly_xgcd(g0, h0)
    G = [g0] + [Kx.zero] * (prec - 1)
    H = [h0] + [Kx.zero] * (prec - 1)
    for k in range(1, prec):
        e = F.layers[k]
        for i in range(1, k):
            if G[i] and H[k - i]:
                e = e - G[i] * H[k - i]
        if not e:
            continue
        dg = (e * tau) % g0
        dh = (e - dg * h0) // g0
        G[k] = dg
        H[k] = dh
    return _Biv(G, Kx), _Biv(H, Kx)


def _factor_separable(F: Poly) -> list:
    Q, Rt, Fq = _Q_parts(F)
    n = F.degree()
    D, coeffs = _integral_model(F)
    K, emb, zeta, fz = _find_specialisation(coeffs, Fq)
    _, local = factor_over_finite_field(fz)
    if len(local) == 1:
        return [F]
    hmax = max(c.degree() for c in coeffs)
    prec = n * max(hmax, 0) + 1
    Kx = PolyRing(K, "x")
    layers = [Kx.zero] * prec
    shifted = [_taylor_shift(c, zeta, emb, K, prec) for c in coeffs]
    for k in range(prec):
        layers[k] = Poly(Kx, [shifted[i][k] for i in range(n + 1)])
    Fb = _Biv(layers, Kx)
    # split off one local factor at a time
    lifted = []
    rest = Fb
    locals_ = [g for g, _ in local]
    for i, g in enumerate(locals_[:-1]):
        h0 = Kx.one
        for g2 in locals_[i + 1:]:
            h0 = h0 * g2
        G, rest = _hensel_split(rest, g, h0, prec)
        lifted.append(G)
    lifted.append(rest)
    found = []
    remaining = list(range(len(lifted)))
    target = coeffs
    t_minus_zeta = PolyRing(K, "t").from_coeffs([-zeta, K.one])
    size = 1
    while 2 * size <= len(remaining):
        hit = None
        for S in itertools.combinations(remaining, size):
            cand = _candidate(lifted, S, prec, t_minus_zeta, emb, Rt)
            if cand is None:
                continue
            quo = _trial_divide(target, cand)
            if quo is not None:
                hit = (S, cand, quo)
                break
        if hit is None:
            size += 1
            continue
        S, cand, quo = hit
        found.append(cand)
        remaining = [i for i in remaining if i not in S]
        target = quo
    found.append(target)
    return [_undo_model(G, D, F.ring) for G in found]


def _candidate(lifted, S, prec, t_minus_zeta, emb, Rt):
    prod = lifted[S[0]]
    for i in S[1:]:
        prod = prod.mul(lifted[i], prec)
    m = prod.layers[0].degree()
    Kt = t_minus_zeta.ring
    out = []
    for j in range(m + 1):
        acc = Kt.zero
        for k in range(prec - 1, -1, -1):
            acc = acc * t_minus_zeta + Kt(prod.layers[k][j])
        coeffs = []
        for c in acc.c:
            pre = emb.preimage(c)
            if pre is None:
                return None
            coeffs.append(pre)
        out.append(Poly(Rt, coeffs))
    return out


def _trial_divide(num: list, den: list):
    """Exact division of monic polynomials with F_q[t] coefficients (lists)."""
    a = list(num)
    db = len(den) - 1
    if len(a) - 1 < db:
        return None
    q = [None] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] = a[i - db + j] - c * den[j]
    if any(x for x in a[:db]):
        return None
    return q


# ---------------------------------------------------------------------------
# brute-force oracle (small degrees only)
# ---------------------------------------------------------------------------

def _monic_divisors(f: Poly):
    _, facs = factor_over_finite_field(f)
    opts = [[g ** k for k in range(m + 1)] for g, m in facs]
    for combo in itertools.product(*opts):
        d = f.ring.one
        for x in combo:
            d = d * x
        yield d


def factor_bruteforce(f: Poly) -> list:
    """Independent factorization for degree <= 4 by exhaustive search.

    Works on the monic integral model, where roots are polynomials in t that
    divide the constant term; quadratic factors of a quartic are found from
    divisors of the coefficients.  Used only as a test oracle.
    """
    Q, Rt, Fq = _Q_parts(f)
    if f.degree() > 4:
        raise InvalidInput("brute-force oracle limited to degree <= 4")
    F = f.monic()
    D, coeffs = _integral_model(F)
    units = [u for u in Fq.elements() if u]
    found = []
    target = coeffs
    while len(target) - 1 >= 2:
        n = len(target) - 1
        # roots of the monic integral model are polynomials of degree <= B
        B = max((-(-target[n - i].degree() // i) for i in range(1, n + 1) if target[n - i]),
                default=0)
        hit = None
        if not target[0]:
            hit = [Rt.zero, Rt.one]
        if hit is None:
            for dvs in _monic_divisors(target[0].monic()):
                if dvs.degree() > B:
                    continue
                for u in units:
                    cand = [-dvs.scale(u), Rt.one]
                    if _trial_divide(target, cand) is not None:
                        hit = cand
                        break
                if hit:
                    break
        if hit is None and n == 4:
            # (x^2 + b x + c)(x^2 + b' x + c'): c c' = a0, b' = a3 - b and
            # b is a root of y^2 - a3 y + (a2 - c - c'), hence divides it
            a0, a2, a3 = target[0], target[2], target[3]
            for dvs in _monic_divisors(a0.monic()):
                if dvs.degree() > 2 * B:
                    continue
                for u in units:
                    c = dvs.scale(u)
                    k = a2 - c - a0 // c
                    if k:
                        bs = [d.scale(w) for d in _monic_divisors(k.monic()) for w in units]
                    else:
                        bs = [Rt.zero, a3]
                    for bb in bs:
                        cand = [c, bb, Rt.one]
                        if _trial_divide(target, cand) is not None:
                            hit = cand
                            break
                    if hit:
                        break
                if hit:
                    break
        if hit is None:
            break
        found.append(hit)
        target = _trial_divide(target, hit)
    found.append(target)
    res = [(_undo_model(G, D, F.ring), 1) for G in found if len(G) > 1]
    merged = _merge([], res)
    merged.sort(key=lambda gm: (_canon_key(gm[0]), gm[1]))
    return merged
