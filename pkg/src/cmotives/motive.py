"""Motives over F_{q^e} for C = P^1: tau-matrices over A_L and their Frobenius.

A motive of rank r is an r x r matrix T over A_L = L[t][1/prod p_i] whose
determinant is supported on the characteristic places.  The Frobenius is
Pi = T sigma(T) ... sigma^(e-1)(T), where sigma raises L-coefficients to the
q-th power and fixes t.
"""
from __future__ import annotations

import functools
import hashlib
import json
from dataclasses import dataclass

from .algebra.ff import FFElement
from .algebra.ffactor import factor_over_finite_field
from .algebra.matrix import Matrix
from .algebra.parse import parse_expr
from .algebra.places import Place
from .algebra.poly import Poly, PolyRing
from .algebra.printing import to_str
from .algebra.ratfunc import FracField, RatFunc
from .algebra.tower import FieldTower
from .errors import (ChardataMismatch, DescentFailure, ForbiddenZeroLocus, InvalidInput,
                     NonInvertibleTau, ParseError, TowerMismatch)

MODES = ("ii-prime", "ii", "relaxed")


# ---------------------------------------------------------------------------
# rings attached to a tower
# ---------------------------------------------------------------------------

class Rings:
    """F_q[t], Q = F_q(t), L[t], L(t) and the maps between them."""

    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.Fq, self.L = tower.Fq, tower.L
        self.Rq = PolyRing(self.Fq, "t")
        self.Q = FracField(self.Rq)
        self.Qx = PolyRing(self.Q, "x")
        self.RL = PolyRing(self.L, "t")
        self.KL = FracField(self.RL)
        self.KLx = PolyRing(self.KL, "x")

    # F_q -> L on polynomials and rational functions
    def embed_poly(self, f: Poly) -> Poly:
        emb = self.tower.fq_to_L
        return Poly(self.RL, [emb(c) for c in f.c])

    def embed(self, x: RatFunc) -> RatFunc:
        """Q -> L(t); a field map keeps the fraction reduced."""
        return RatFunc(self.KL, self.embed_poly(x.num), self.embed_poly(x.den))

    def descend_poly(self, f: Poly) -> Poly | None:
        out = []
        for c in f.c:
            y = self.tower.fq_to_L.preimage(c)
            if y is None:
                return None
            out.append(y)
        return Poly(self.Rq, out)

    def descend(self, x: RatFunc) -> RatFunc | None:
        """L(t) -> Q when all coefficients lie in F_q, else None."""
        num = self.descend_poly(x.num)
        den = self.descend_poly(x.den) if num is not None else None
        if den is None:
            return None
        return RatFunc(self.Q, num, den)

    def sigma(self, x: RatFunc, k: int = 1) -> RatFunc:
        k %= self.tower.e
        if k == 0:
            return x
        a = self.tower.a * k
        return RatFunc(self.KL, x.num.map_coeffs(lambda c: c.frobenius(a)),
                       x.den.map_coeffs(lambda c: c.frobenius(a)))

    def sigma_matrix(self, A: Matrix, k: int = 1) -> Matrix:
        return A.map(lambda x: self.sigma(x, k))

    def element(self, text: str) -> RatFunc:
        """Parse an element string of L(t) (generator g of L, variable t)."""
        symbols = {"t": self.KL.gen}
        if self.L.degree > 1:
            symbols["g"] = self.KL(self.L.gen)
        return parse_expr(text, symbols, lambda n: self.KL(n))

    def field_element(self, text: str) -> FFElement:
        symbols = {"g": self.L.gen} if self.L.degree > 1 else {}
        return self.L(parse_expr(text, symbols, lambda n: self.L(n)))

    def place(self, text: str) -> Place:
        """Parse a place; coefficients are written in L and must lie in F_q."""
        if text.strip().lower() in ("infinity", "inf", "oo"):
            return Place.infinity(self.Fq)
        f = self.element(text)
        if not isinstance(f, RatFunc) or not f.is_polynomial() or f.num.degree() < 1:
            raise InvalidInput(f"place {text!r} is not a nonconstant polynomial in t")
        g = self.descend_poly(f.num)
        if g is None:
            raise InvalidInput(f"place {text!r} has coefficients outside F_q")
        return Place(g.monic())

    def place_str(self, v: Place) -> str:
        return "infinity" if v.is_infinite else to_str(self.embed_poly(v.poly))

    def place_over_L(self, v: Place) -> Poly:
        return self.embed_poly(v.poly)


@functools.lru_cache(maxsize=None)
def rings(tower: FieldTower) -> Rings:
    return Rings(tower)


# ---------------------------------------------------------------------------
# characteristic data
# ---------------------------------------------------------------------------

class CharacteristicData:
    """Finite characteristic places nu_i with section points theta_i in L.

    Infinity is always the last characteristic place and carries no section.
    """

    def __init__(self, tower: FieldTower, places=(), thetas=()):
        places, thetas = list(places), list(thetas)
        if len(places) != len(thetas):
            raise InvalidInput("every finite characteristic place needs a section point")
        R = rings(tower)
        for i, (v, th) in enumerate(zip(places, thetas)):
            if v.is_infinite:
                raise InvalidInput("infinity is implicit and must not be listed with a section")
            if v.Fq != tower.Fq:
                raise InvalidInput(f"place {v} is not defined over the tower's F_q")
            if th.field != tower.L:
                raise InvalidInput("section points must lie in L")
            if R.place_over_L(v)(th):
                raise InvalidInput(f"theta is not a root of {R.place_str(v)} in L")
            if v in places[:i]:
                raise InvalidInput("characteristic places must be pairwise distinct")
        self.tower = tower
        self.places = tuple(places)
        self.thetas = tuple(thetas)

    @property
    def all_places(self) -> list:
        return list(self.places) + [Place.infinity(self.tower.Fq)]

    @property
    def n(self) -> int:
        return len(self.places) + 1

    def key(self):
        return (self.tower.key(), tuple(v.poly.c for v in self.places), tuple(th.v for th in self.thetas))

    def __eq__(self, other):
        return isinstance(other, CharacteristicData) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        R = rings(self.tower)
        parts = [f"({R.place_str(v)}, theta={to_str(th)})" for v, th in zip(self.places, self.thetas)]
        return "CharacteristicData(" + ", ".join(parts + ["infinity"]) + ")"

    def contains(self, v: Place) -> bool:
        return v.is_infinite or v in self.places

    def conjugates(self, i: int) -> list:
        """theta_i, theta_i^q, ... (the distinct roots of p_i in L)."""
        th = self.thetas[i]
        out = [th]
        x = self.tower.sigma(th)
        while x != th:
            out.append(x)
            x = self.tower.sigma(x)
        return out

    def denominator_L(self) -> Poly:
        """prod p_i as a polynomial over L."""
        R = rings(self.tower)
        out = R.RL.one
        for v in self.places:
            out = out * R.place_over_L(v)
        return out

    def denominator_q(self) -> Poly:
        R = rings(self.tower)
        out = R.Rq.one
        for v in self.places:
            out = out * v.poly
        return out

    def base_change(self, new_tower: FieldTower) -> "CharacteristicData":
        emb = self.tower.embedding_to(new_tower)
        places = [Place(v.poly, check=False) for v in self.places]
        return CharacteristicData(new_tower, places, [emb(th) for th in self.thetas])


# ---------------------------------------------------------------------------
# motives
# ---------------------------------------------------------------------------

def _divides_power(den: Poly, base: Poly) -> bool:
    """Whether every irreducible factor of den divides base."""
    from .algebra.poly import poly_gcd
    while den.degree() > 0:
        g = poly_gcd(den, base)
        if g.degree() == 0:
            return False
        den = den // g
    return True


def validate_matrix(chardata: CharacteristicData, T: Matrix, mode: str = "ii-prime") -> dict:
    """Check T against the characteristic data; return a report or raise."""
    if mode not in MODES:
        raise InvalidInput(f"unknown validation mode {mode!r}")
    R = rings(chardata.tower)
    if not T.is_square():
        raise InvalidInput("tau-matrix must be square")
    P = chardata.denominator_L()
    for x in T.entries():
        if x and not _divides_power(x.den, P):
            raise InvalidInput(f"entry {to_str(x)} has a pole outside the characteristic places")
    d = T.det() if T.nrows else R.KL.one
    if not d:
        raise NonInvertibleTau("det T = 0")
    k = [[0] * len(chardata.conjugates(i)) for i in range(len(chardata.places))]
    index = {}
    for i in range(len(chardata.places)):
        for j, th in enumerate(chardata.conjugates(i)):
            index[th.v] = (i, j)
    offending, factors = [], []
    for part, sign in ((d.num, 1), (d.den, -1)):
        if part.degree() < 1:
            continue
        _, facs = factor_over_finite_field(part)
        for g, m in facs:
            factors.append({"poly": to_str(g), "multiplicity": sign * m})
            if g.degree() == 1 and (-g.c[0]).v in index:
                i, j = index[(-g.c[0]).v]
                k[i][j] += sign * m
            else:
                offending.append(to_str(g))
    if offending:
        raise ForbiddenZeroLocus(f"det T vanishes or has poles outside the characteristic places: "
                                 f"{', '.join(offending)}", offending=offending)
    if mode in ("ii", "ii-prime") and any(x < 0 for row in k for x in row):
        raise ForbiddenZeroLocus("det T has poles at characteristic places; only the relaxed mode "
                                 "allows this", offending=[f["poly"] for f in factors if f["multiplicity"] < 0])
    if mode == "ii-prime":
        bad = [to_str(R.RL.gen - R.RL(th)) for i, row in enumerate(k)
               for j, th in enumerate(chardata.conjugates(i)) if j > 0 and row[j]]
        if bad:
            raise ForbiddenZeroLocus("det T vanishes on Frobenius conjugates of the sections "
                                     f"({', '.join(bad)}); use mode 'ii'", offending=bad)
    factors.sort(key=lambda f: (f["multiplicity"] < 0, f["poly"]))
    return {
        "valid": True,
        "mode": mode,
        "rank": T.nrows,
        "det": to_str(d),
        "unit": to_str(d.num.lc()),
        "k": [row[0] for row in k],
        "k_conjugates": k,
        "det_factors": factors,
    }


@dataclass(frozen=True)
class FrobeniusMatrix:
    matrix: Matrix
    e: int


@dataclass(frozen=True)
class CharData:
    chi: Poly
    mu: Poly


class Motive:
    """A motive given by its tau-matrix; immutable after construction."""

    def __init__(self, chardata: CharacteristicData, T: Matrix, mode: str = "ii-prime",
                 check: bool = True, name: str | None = None):
        R = rings(chardata.tower)
        if T.ring != R.KL:
            raise InvalidInput("tau-matrix must have entries in L(t)")
        self.chardata = chardata
        self.tower = chardata.tower
        self.T = T
        self.mode = mode
        self.name = name
        self._cache = {}
        if check:
            self._cache["report"] = validate_matrix(chardata, T, mode)

    @property
    def rank(self) -> int:
        return self.T.nrows

    @property
    def rings(self) -> Rings:
        return rings(self.tower)

    @property
    def relaxed(self) -> bool:
        return self.mode == "relaxed"

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Motive{label} rank={self.rank} q={self.tower.q} e={self.tower.e} T={self.T!r}>"

    def __eq__(self, other):
        return (isinstance(other, Motive) and self.chardata == other.chardata
                and self.T == other.T and self.mode == other.mode)

    def __hash__(self):
        return hash((self.chardata, self.T))

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]


def build(chardata: CharacteristicData, T: Matrix, mode: str = "ii-prime", name=None) -> Motive:
    """Construct a motive, falling back to the relaxed mode when `mode` fails."""
    try:
        return Motive(chardata, T, mode, name=name)
    except ForbiddenZeroLocus:
        if mode == "relaxed":
            raise
        return Motive(chardata, T, "relaxed", name=name)


def validate(M: Motive, mode: str | None = None) -> dict:
    if mode is None:
        return M.cached("report", lambda: validate_matrix(M.chardata, M.T, M.mode))
    return validate_matrix(M.chardata, M.T, mode)


def _weaker(m1: str, m2: str) -> str:
    return MODES[max(MODES.index(m1), MODES.index(m2))]


def check_compatible(M: Motive, N: Motive):
    if M.tower != N.tower:
        raise TowerMismatch(f"motives live over different towers ({M.tower} vs {N.tower})")
    if M.chardata != N.chardata:
        raise ChardataMismatch("motives have different characteristic data")


# ---------------------------------------------------------------------------
# Frobenius and characteristic data
# ---------------------------------------------------------------------------

def frobenius(M: Motive) -> FrobeniusMatrix:
    def compute():
        R = M.rings
        Pi = M.T
        for k in range(1, M.tower.e):
            Pi = Pi * R.sigma_matrix(M.T, k)
        return FrobeniusMatrix(Pi, M.tower.e)
    return M.cached("frobenius", compute)


def descend_poly_x(M: Motive, f: Poly) -> Poly:
    """Map a polynomial in x over L(t) with sigma-fixed coefficients to Q[x]."""
    R = M.rings
    out = []
    for c in f.c:
        y = R.descend(c)
        if y is None:
            raise DescentFailure(f"coefficient {to_str(c)} is not fixed by sigma")
        out.append(y)
    return Poly(R.Qx, out)


def char_data(M: Motive) -> CharData:
    def compute():
        Pi = frobenius(M).matrix
        chi = descend_poly_x(M, Pi.charpoly("x"))
        mu = descend_poly_x(M, Pi.minpoly("x")) if M.rank else chi
        return CharData(chi, mu)
    return M.cached("chardata", compute)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def tensor(M: Motive, N: Motive) -> Motive:
    check_compatible(M, N)
    return build(M.chardata, M.T.kron(N.T), _weaker(M.mode, N.mode))


def direct_sum(M: Motive, N: Motive) -> Motive:
    check_compatible(M, N)
    return build(M.chardata, M.T.block_diag(N.T), _weaker(M.mode, N.mode))


def dual(M: Motive) -> Motive:
    if M.rank == 0:
        return M
    return build(M.chardata, M.T.inverse().transpose(), M.mode)


def internal_hom(M: Motive, N: Motive) -> Motive:
    return tensor(dual(M), N)


def exterior_power(M: Motive, i: int) -> Motive:
    if i < 0:
        raise InvalidInput("exterior power index must be >= 0")
    R = M.rings
    if i > M.rank:
        return Motive(M.chardata, Matrix(R.KL, [], 0), M.mode)
    return build(M.chardata, M.T.compound(i), M.mode)


def unit_motive(chardata: CharacteristicData, r: int = 1) -> Motive:
    return Motive(chardata, Matrix.identity(rings(chardata.tower).KL, r), name="unit")


def base_change(M: Motive, m: int) -> Motive:
    """The motive over F_{q^(em)} with the same tau-matrix."""
    if m < 1:
        raise InvalidInput("base change degree must be >= 1")
    if m == 1:
        return M
    new_tower = M.tower.extension(m)
    emb = M.tower.embedding_to(new_tower)
    R2 = rings(new_tower)

    def lift(x: RatFunc) -> RatFunc:
        return RatFunc(R2.KL, Poly(R2.RL, [emb(c) for c in x.num.c]),
                       Poly(R2.RL, [emb(c) for c in x.den.c]))

    cd = M.chardata.base_change(new_tower)
    return Motive(cd, M.T.map(lift, R2.KL), M.mode,
                  name=f"{M.name}@{m}" if M.name else None)


def embed_matrix(M: Motive, A: Matrix, new_tower: FieldTower) -> Matrix:
    """Map a matrix over L(t) into the L(t) of an extension tower."""
    emb = M.tower.embedding_to(new_tower)
    R2 = rings(new_tower)
    return A.map(lambda x: RatFunc(R2.KL, Poly(R2.RL, [emb(c) for c in x.num.c]),
                                   Poly(R2.RL, [emb(c) for c in x.den.c])), R2.KL)


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------

def motive_from_json(doc: dict, name: str | None = None) -> Motive:
    try:
        q = int(doc["q"])
        e = int(doc.get("e", 1))
        tower = FieldTower.from_defs(q, e, doc.get("field_defs"))
        R = rings(tower)
        places, thetas = [], []
        seen_inf = False
        for item in doc.get("characteristic", []):
            v = R.place(str(item["place"]))
            if v.is_infinite:
                seen_inf = True
                continue
            if "theta" not in item:
                raise InvalidInput(f"characteristic place {item['place']} needs a theta")
            places.append(v)
            thetas.append(R.field_element(str(item["theta"])))
        if doc.get("characteristic") and not seen_inf:
            raise InvalidInput("infinity must be listed among the characteristic places")
        cd = CharacteristicData(tower, places, thetas)
        rows = doc["tau"]
        r = int(doc.get("rank", len(rows)))
        if len(rows) != r or any(len(row) != r for row in rows):
            raise InvalidInput(f"tau must be a {r} x {r} matrix")
        T = Matrix(R.KL, [[R.KL(R.element(str(x))) for x in row] for row in rows], r)
        mode = doc.get("mode", "ii-prime")
        if mode not in MODES:
            raise InvalidInput(f"unknown mode {mode!r}")
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed motive document: {exc!r}") from exc
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in motive document: {exc}") from exc
    return Motive(cd, T, mode, name=name or doc.get("name"))


def motive_to_json(M: Motive) -> dict:
    R = M.rings
    chars = [{"place": R.place_str(v), "theta": to_str(th)}
             for v, th in zip(M.chardata.places, M.chardata.thetas)]
    chars.append({"place": "infinity"})
    return {
        "q": M.tower.q,
        "e": M.tower.e,
        "field_defs": M.tower.field_defs(),
        "characteristic": chars,
        "rank": M.rank,
        "tau": [[to_str(x) for x in row] for row in M.T.rows],
        "mode": M.mode,
    }


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def motive_hash(M: Motive) -> str:
    return hashlib.sha256(canonical_json(motive_to_json(M)).encode()).hexdigest()


def load_motive(path) -> Motive:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise InvalidInput(f"{path}: motive document must be a JSON object")
    return motive_from_json(doc)
