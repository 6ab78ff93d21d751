"""Field towers F_p ⊆ F_q ⊆ L = F_{q^e} and embeddings between finite fields."""
from __future__ import annotations

import functools

import numpy as np

from ..errors import InvalidInput
from .ff import GF, FFElement, default_field, least_irreducible, prime_field
from .ffactor import roots
from .fplinalg import Solver
from .poly import Poly, PolyRing


class Embedding:
    """Field homomorphism src -> dst determined by the image of src.gen.

    The image is the least root (by integer code) of src's defining
    polynomial in dst, which makes the choice deterministic.  A field with
    the same defining polynomial as dst maps by the identity.
    """

    def __init__(self, src: GF, dst: GF, image: FFElement | None = None):
        if dst.degree % src.degree:
            raise InvalidInput(f"{src} does not embed in {dst}")
        self.src, self.dst = src, dst
        if image is None:
            if src.degree == 1:
                image = dst.one
            elif src.modulus == dst.modulus:
                image = dst.gen
            else:
                f = Poly(PolyRing(dst, "x"), [dst(c) for c in src.modulus])
                rs = roots(f)
                if not rs:
                    raise InvalidInput(f"no root of {src.modulus} in {dst}")
                image = rs[0]
        self.image = image
        # images of the power basis of src
        self._basis = [dst.one]
        for _ in range(1, src.degree):
            self._basis.append(self._basis[-1] * image)
        self._cache = {}
        self._solver = None

    def __call__(self, x: FFElement) -> FFElement:
        if x.field is not self.src and x.field != self.src:
            raise InvalidInput(f"element of {x.field} passed to embedding from {self.src}")
        v = x.v
        out = self._cache.get(v)
        if out is None:
            out = self.dst.zero
            for c, b in zip(x.vector(), self._basis):
                if c:
                    out = out + b * c
            if len(self._cache) < 4096:
                self._cache[v] = out
        return out

    def _linear_solver(self):
        if self._solver is None:
            cols = np.array([b.vector() for b in self._basis], dtype=np.int64).T
            self._solver = Solver(cols, self.src.p)
        return self._solver

    def preimage(self, y: FFElement):
        """Element x with self(x) = y, or None when y is outside the image."""
        key = ("pre", y.v)
        if key in self._cache:
            return self._cache[key]
        sol = self._linear_solver().solve(np.array(y.vector(), dtype=np.int64))
        out = None if sol is None else self.src.from_vector(sol)
        if len(self._cache) < 8192:
            self._cache[key] = out
        return out

    def compose(self, other: "Embedding") -> "Embedding":
        """self ∘ other."""
        return Embedding(other.src, self.dst, self(other.image))


@functools.lru_cache(maxsize=None)
def canonical_embedding(src: GF, dst: GF) -> Embedding:
    return Embedding(src, dst)


def _poly_from_string(s: str, p: int):
    from .parse import parse_expr
    R = PolyRing(prime_field(p), "g")
    f = parse_expr(s, {"g": R.gen}, lambda n: R(n))
    return tuple(c.v for c in f.c)


class FieldTower:
    """F_p ⊆ F_q ⊆ L with q = p^a, [L : F_q] = e.

    Both F_q and L are stored as absolute extensions of F_p; the embedding
    F_q -> L is canonical (least root).  sigma is the q-power Frobenius of L.
    """

    def __init__(self, p: int, a: int, e: int, fq_modulus=None, l_modulus=None):
        if a < 1 or e < 1:
            raise InvalidInput("tower degrees must be positive")
        self.p, self.a, self.e = p, a, e
        self.q = p ** a
        self.Fq = GF(p, fq_modulus) if fq_modulus is not None else default_field(p, a)
        if self.Fq.degree != a:
            raise InvalidInput("F_q defining polynomial has the wrong degree")
        self.L = GF(p, l_modulus) if l_modulus is not None else default_field(p, a * e)
        if self.L.degree != a * e:
            raise InvalidInput("L defining polynomial has the wrong degree")
        self.fq_to_L = Embedding(self.Fq, self.L)
        self._coord_solver = None

    # -- identity ---------------------------------------------------------
    def key(self):
        return (self.p, self.a, self.e, self.Fq.modulus, self.L.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FieldTower(q={self.q}, e={self.e})"

    @classmethod
    def from_defs(cls, q: int, e: int, field_defs: dict | None = None) -> "FieldTower":
        from sympy import factorint
        fac = factorint(q)
        if len(fac) != 1:
            raise InvalidInput(f"q = {q} is not a prime power")
        (p, a), = fac.items()
        field_defs = field_defs or {}
        fq = field_defs.get("Fq")
        lm = field_defs.get("L")
        fq = _poly_from_string(fq, p) if fq else None
        lm = _poly_from_string(lm, p) if lm else None
        return cls(p, a, e, fq, lm)

    def field_defs(self) -> dict:
        from .printing import to_str
        R = PolyRing(prime_field(self.p), "g")
        out = {"L": to_str(Poly(R, [R.base(c) for c in self.L.modulus]))}
        if self.a > 1:
            out["Fq"] = to_str(Poly(R, [R.base(c) for c in self.Fq.modulus]))
        return out

    def is_default(self) -> bool:
        return (self.L.modulus == least_irreducible(self.p, self.a * self.e)
                and self.Fq.modulus == least_irreducible(self.p, self.a))

    # -- Frobenius and subfield ------------------------------------------
    def sigma(self, x: FFElement, k: int = 1) -> FFElement:
        """q^k-power Frobenius on L."""
        return x.frobenius(self.a * k)

    def in_Fq(self, x: FFElement) -> bool:
        return self.sigma(x) == x

    def to_Fq(self, x: FFElement) -> FFElement:
        y = self.fq_to_L.preimage(x)
        if y is None:
            raise ValueError("element of L is not in F_q")
        return y

    def fq_coords(self, x: FFElement) -> list:
        """Coordinates of x in L over F_q w.r.t. the basis 1, g, ..., g^(e-1)."""
        if self.e == 1:
            return [self.to_Fq(x)]
        if self._coord_solver is None:
            cols = []
            gp = self.L.one
            fq_basis = [self.fq_to_L(self.Fq.from_vector([int(i == j) for i in range(self.a)]))
                        for j in range(self.a)]
            for _ in range(self.e):
                for b in fq_basis:
                    cols.append((b * gp).vector())
                gp = gp * self.L.gen
            self._coord_solver = Solver(np.array(cols, dtype=np.int64).T, self.p)
        sol = self._coord_solver.solve(np.array(x.vector(), dtype=np.int64))
        out = []
        for j in range(self.e):
            out.append(self.Fq.from_vector(sol[j * self.a:(j + 1) * self.a]))
        return out

    def extension(self, m: int) -> "FieldTower":
        """Tower over F_{q^{em}} with the deterministic default defining polynomial."""
        if m == 1:
            return self
        return FieldTower(self.p, self.a, self.e * m, self.Fq.modulus,
                          least_irreducible(self.p, self.a * self.e * m))

    def embedding_to(self, other: "FieldTower") -> Embedding:
        """Embedding of L into other.L compatible with the F_q embeddings."""
        emb = Embedding(self.L, other.L)
        if emb(self.fq_to_L.image) != other.fq_to_L.image:
            # choose a root compatible with the F_q structure
            f = Poly(PolyRing(other.L, "x"), [other.L(c) for c in self.L.modulus])
            for r in roots(f):
                cand = Embedding(self.L, other.L, r)
                if cand(self.fq_to_L.image) == other.fq_to_L.image:
                    return cand
            raise InvalidInput("no compatible embedding between towers")
        return emb
