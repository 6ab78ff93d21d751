"""Weil pairs (alpha, n), their equivalence and Honda-Tate classes of motives.

A pair (alpha, n) is stored as (h, n) with h the minimal polynomial of alpha
over Q = F_q(t).  Two pairs are equivalent when alpha^(m l) = beta^(n l) for
some l >= 1 and some choice of conjugates.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra.funcfactor import factor_over_function_field
from .algebra.places import Place, newton_slopes, support
from .algebra.poly import Poly, PolyRing, poly_gcd, poly_lcm
from .algebra.polyalg import companion, power_min_poly
from .algebra.printing import to_str
from .errors import InvalidInput, NotSemisimple, ReducibleInput, WeilViolation
from .isogeny import factor_q, is_semisimple
from .motive import Motive, char_data


def _is_irreducible(h: Poly) -> bool:
    if h.degree() < 1:
        return False
    _, facs = factor_over_function_field(h)
    return len(facs) == 1 and facs[0][1] == 1


@dataclass(frozen=True)
class WeilPair:
    h: Poly
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput("n must be a positive integer")
        if not self.h.is_monic():
            raise InvalidInput("h must be monic")

    def to_json(self) -> dict:
        return {"h": to_str(self.h), "n": self.n}


def weil_pair(h: Poly, n: int) -> WeilPair:
    """A pair after checking that h is irreducible."""
    if not _is_irreducible(h):
        raise ReducibleInput(f"{to_str(h)} is not irreducible over F_q(t)")
    return WeilPair(h, n)


# ---------------------------------------------------------------------------
# places and slopes
# ---------------------------------------------------------------------------

def coefficient_places(h: Poly) -> list:
    """Places where some nonzero coefficient of h has nonzero valuation (with infinity)."""
    Fq = h.ring.base.base
    out = []
    for c in h.c:
        if c:
            for v in support(c):
                if v not in out:
                    out.append(v)
    out.sort(key=Place.sort_key)
    out.append(Place.infinity(Fq))
    return out


def slope_profile(h: Poly, v: Place) -> tuple:
    """Distribution of the root valuations at v: sorted (slope, proportion) pairs."""
    slopes = newton_slopes(h, v)
    n = len(slopes)
    counts = {}
    for s in slopes:
        counts[s] = counts.get(s, 0) + 1
    return tuple(sorted((Fraction(s), Fraction(c, n)) for s, c in counts.items()))


@dataclass(frozen=True)
class ClassKey:
    """Per place, the distribution of v(alpha)/n over the conjugates of alpha.

    Places where every slope vanishes are omitted, so the key does not depend
    on the list of characteristic places.
    """
    slopes: tuple  # ((place label, ((slope/n, proportion), ...)), ...)

    def label(self) -> str:
        parts = []
        for lab, prof in self.slopes:
            body = ",".join(f"{s}:{w}" for s, w in prof)
            parts.append(f"{lab}[{body}]")
        return ";".join(parts) or "unit"

    def slug(self) -> str:
        """Filesystem-safe bucket name."""
        return hashlib.sha256(self.label().encode()).hexdigest()[:16]


def class_key(pair: WeilPair) -> ClassKey:
    h, n = pair.h, pair.n
    if not h.c[0]:
        raise InvalidInput("alpha = 0 is not a Weil number")
    entries = []
    for v in coefficient_places(h):
        prof = slope_profile(h, v)
        if all(s == 0 for s, _ in prof):
            continue
        norm = tuple((s / n, w) for s, w in prof)
        lab = "infinity" if v.is_infinite else to_str(v.poly)
        entries.append((lab, norm))
    return ClassKey(tuple(entries))


def is_weil(h: Poly, n: int, places) -> bool:
    """v(alpha) = 0 at every place v outside `places` (infinity counts as listed
    only when included)."""
    if not _is_irreducible(h):
        raise ReducibleInput(f"{to_str(h)} is not irreducible over F_q(t)")
    if not h.c[0]:
        return False
    places = list(places)
    for v in coefficient_places(h):
        if v in places:
            continue
        if any(c and v.valuation(c) < 0 for c in h.c):
            return False
        if v.valuation(h.c[0]) != 0:
            return False
    return True


def weil_pair_of(M: Motive) -> list:
    """[(WeilPair(h, e), multiplicity of h in chi)] over the irreducible factors h of mu."""
    cd = char_data(M)
    places = M.chardata.all_places
    out = []
    chi = cd.chi
    for h, _ in factor_q(cd.mu):
        mult = 0
        g = chi
        while True:
            q, rem = g.divmod(h)
            if rem:
                break
            g, mult = q, mult + 1
        if not is_weil(h, M.tower.e, places):
            raise WeilViolation(f"{to_str(h)} is not a Weil polynomial for the characteristic places")
        out.append((WeilPair(h, M.tower.e), mult))
    return out


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

def _ratio_charpoly(p1: WeilPair, p2: WeilPair) -> Poly:
    """Characteristic polynomial of alpha^(n2) / beta^(n1) over all conjugates."""
    A = companion(p1.h) ** p2.n
    B = companion(p2.h).inverse() ** p1.n
    return A.kron(B).charpoly("x")


def _constant_part(U: Poly) -> Poly:
    """gcd over F_q of the t^j-coefficients of U after clearing denominators.

    Its roots are exactly the roots of U lying in the algebraic closure of F_q.
    """
    Q = U.ring.base
    Rq = Q.ring
    Fq = Rq.base
    den = Rq.one
    for c in U.c:
        den = poly_lcm(den, c.den)
    cleared = [(c.num * (den // c.den)) if c else Rq.zero for c in U.c]
    Fx = PolyRing(Fq, "x")
    width = max(c.degree() for c in cleared if c) + 1
    G = None
    for j in range(width):
        Uj = Poly(Fx, [c.c[j] if c and j < len(c.c) else Fq.zero for c in cleared])
        if Uj:
            G = Uj if G is None else poly_gcd(G, Uj)
    return G.monic()


def pairs_equivalent(p1: WeilPair, p2: WeilPair) -> bool:
    """(alpha, n1) ~ (beta, n2): some ratio alpha^(n2) / beta^(n1) is a root of unity."""
    if class_key(p1) != class_key(p2):
        return False
    if power_min_poly(p1.h, p2.n) == power_min_poly(p2.h, p1.n):
        return True
    G = _constant_part(_ratio_charpoly(p1, p2))
    # a nonzero constant root is a root of unity
    k = 0
    while not G.c[k]:
        k += 1
    return G.degree() > k


def exponent_bound(p1: WeilPair, p2: WeilPair) -> int:
    """E = lcm_{d <= D} (q^d - 1) with D = deg h1 * deg h2."""
    q = p1.h.ring.base.base.order
    D = p1.h.degree() * p2.h.degree()
    E = 1
    for d in range(1, D + 1):
        E = math.lcm(E, q ** d - 1)
    return E


def pairs_equivalent_by_exponent(p1: WeilPair, p2: WeilPair) -> bool:
    """Reference test: power_min_poly(h1, n2 E) == power_min_poly(h2, n1 E).

    Coefficients grow like q^D; only for small cases.
    """
    if class_key(p1) != class_key(p2):
        return False
    E = exponent_bound(p1, p2)
    return power_min_poly(p1.h, p2.n * E) == power_min_poly(p2.h, p1.n * E)


# ---------------------------------------------------------------------------
# classes of motives
# ---------------------------------------------------------------------------

@dataclass
class HTClass:
    pair: WeilPair
    multiplicity: int
    key: ClassKey

    def to_json(self) -> dict:
        return {"h": to_str(self.pair.h), "n": self.pair.n, "multiplicity": self.multiplicity}


@dataclass
class HondaTateClass:
    classes: list
    witnesses: list

    @property
    def slope_key(self) -> str:
        return "|".join(sorted(c.key.label() for c in self.classes))

    def to_json(self) -> dict:
        return {"slope_key": self.slope_key,
                "pairs": [c.to_json() for c in self.classes],
                "witnesses": list(self.witnesses)}


def _group(pairs_with_mult) -> list:
    out = []
    for pair, mult in pairs_with_mult:
        for c in out:
            if pairs_equivalent(c.pair, pair):
                c.multiplicity += mult
                break
        else:
            out.append(HTClass(pair, mult, class_key(pair)))
    out.sort(key=lambda c: (c.key.label(), to_str(c.pair.h), c.pair.n))
    return out


def honda_tate_class(M: Motive, witness: str | None = None) -> HondaTateClass:
    ss, _ = is_semisimple(M)
    if not ss:
        raise NotSemisimple("Honda-Tate classes are defined for semisimple motives")
    return HondaTateClass(_group(weil_pair_of(M)), [witness] if witness else [])


def classes_equal(c1: HondaTateClass, c2: HondaTateClass) -> bool:
    """Equality of the multisets of classes."""
    if len(c1.classes) != len(c2.classes):
        return False
    used = [False] * len(c2.classes)
    for a in c1.classes:
        for j, b in enumerate(c2.classes):
            if not used[j] and a.multiplicity == b.multiplicity and pairs_equivalent(a.pair, b.pair):
                used[j] = True
                break
        else:
            return False
    return True


def adjust(pair: WeilPair, N: int) -> WeilPair:
    """The pair (alpha^(N/n), N), equivalent to (alpha, n)."""
    if N % pair.n:
        raise InvalidInput("N must be a multiple of n")
    return WeilPair(power_min_poly(pair.h, N // pair.n), N)


def class_product(p1: WeilPair, p2: WeilPair) -> list:
    """Classes of (alpha' beta', N) over the conjugate pairs, N = lcm(n1, n2).

    Returns [(WeilPair, multiplicity)], merged up to equivalence.
    """
    N = math.lcm(p1.n, p2.n)
    a, b = adjust(p1, N), adjust(p2, N)
    U = companion(a.h).kron(companion(b.h)).charpoly("x")
    _, facs = factor_over_function_field(U)
    return [(c.pair, c.multiplicity) for c in _group([(WeilPair(g, N), m) for g, m in facs])]
