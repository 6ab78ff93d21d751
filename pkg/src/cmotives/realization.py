"""Crystalline and etale realizations at a place of F_q(t), and the zeta function.

Fix a place v of degree d with uniformizer z (p_v(t) at finite v, 1/t at
infinity) and the field K = F_{q^lcm(d,e)}.  The component of
L ⊗ F_q[[z]] at a root zeta of p_v in K is K[[z]], with t -> s(z) where
p_v(s) = z and s(0) = zeta.  On that component tau^d acts as
y -> B Frob^d(y) with B the image of T sigma(T) ... sigma^(d-1)(T).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra.ff import GF, FFElement, default_field
from .algebra.fplinalg import Solver, kernel_mod_p, matpow_mod_p, rank_mod_p
from .algebra.local import Expander, ResidueField, lift_residue
from .algebra.matrix import Matrix
from .algebra.places import Place
from .algebra.poly import Poly, PolyRing, poly_gcd
from .algebra.printing import ff_to_str, to_str
from .algebra.ratfunc import RatFunc
from .algebra.series import Series
from .algebra.tower import canonical_embedding
from .errors import ExtensionCapExceeded, InvalidInput, PrecisionTooLow
from .motive import Motive, descend_poly_x, exterior_power, frobenius

DEFAULT_CAP = 256
DEFAULT_PRECISION = 12


# ---------------------------------------------------------------------------
# truncated matrix series: a list of N coefficient matrices (lists of rows)
# ---------------------------------------------------------------------------

def _mat_mul(A, B, zero):
    n, m = len(A), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = A[i]
        out_row = []
        for j in range(m):
            acc = zero
            for k, a in enumerate(row):
                if a:
                    b = B[k][j]
                    if b:
                        acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def _mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _zeros(K, r, c):
    return [[K.zero] * c for _ in range(r)]


def _sm_mul(A, B, K, N):
    r, c = len(A[0]), len(B[0][0]) if B[0] else 0
    out = []
    for k in range(N):
        acc = _zeros(K, r, c)
        for i in range(k + 1):
            acc = _mat_add(acc, _mat_mul(A[i], B[k - i], K.zero))
        out.append(acc)
    return out


def _sm_map(A, fn):
    return [[[fn(x) for x in row] for row in layer] for layer in A]


def _sm_is_identity(A) -> bool:
    for k, layer in enumerate(A):
        for i, row in enumerate(layer):
            for j, x in enumerate(row):
                if x != (1 if (k == 0 and i == j) else 0):
                    return False
    return True


def _sm_is_zero(A) -> bool:
    return all(not x for layer in A for row in layer for x in row)


def _sm_inverse(A, K, N):
    A0inv = Matrix(K, A[0], len(A[0])).inverse().rows
    out = [A0inv]
    for k in range(1, N):
        acc = _zeros(K, len(A0inv), len(A0inv))
        for i in range(1, k + 1):
            acc = _mat_add(acc, _mat_mul(A[i], out[k - i], K.zero))
        out.append([[-x for x in row] for row in _mat_mul(A0inv, acc, K.zero)])
    return out


def _sm_solve_left(X, G, K, N):
    """F with X F = G for X invertible mod z."""
    X0inv = Matrix(K, X[0], len(X[0])).inverse().rows
    out = []
    for k in range(N):
        acc = G[k]
        for i in range(1, k + 1):
            acc = _mat_add(acc, [[-x for x in row] for row in _mat_mul(X[i], out[k - i], K.zero)])
        out.append(_mat_mul(X0inv, acc, K.zero))
    return out


def _series_matrix_to_sm(S, K, N):
    r, c = len(S), len(S[0]) if S else 0
    out = []
    for k in range(N):
        out.append([[S[i][j].coefficient(k) for j in range(c)] for i in range(r)])
    return out


def _sm_entry_series(A, i, j, K, N) -> Series:
    return Series(K, 0, [A[k][i][j] for k in range(N)], N)


def series_det(S) -> Series:
    """Determinant of a square matrix of Laurent series (Laplace expansion)."""
    n = len(S)
    if n == 1:
        return S[0][0]
    if n == 0:
        raise InvalidInput("determinant of an empty series matrix")
    acc = None
    for j in range(n):
        if not S[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in S[1:]]
        term = S[0][j] * series_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return S[0][0] * S[1][0]  # a zero series at the available precision
    return acc


def _series_mat_mul(A, B):
    n, m, l = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for k in range(1, l):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def _series_str(s: Series, var: str = "w") -> dict:
    return {"valuation": s.val if s.coeffs else None, "precision": s.prec,
            "coefficients": [ff_to_str(c, var) for c in s.coeffs]}


def _field_json(K: GF) -> dict:
    return {"p": K.p, "degree": K.degree, "modulus": list(K.modulus), "generator": "w"}


# ---------------------------------------------------------------------------
# local data at a place
# ---------------------------------------------------------------------------

class LocalData:
    """Working field, embeddings and the component root zeta for (M, v)."""

    def __init__(self, M: Motive, v: Place):
        tower = M.tower
        if v.Fq != tower.Fq:
            raise InvalidInput("place is not defined over the motive's F_q")
        self.M = M
        self.v = v
        self.tower = tower
        self.a = tower.a
        self.p = tower.p
        self.d = 1 if v.is_infinite else v.degree
        self.e = tower.e
        self.K = default_field(self.p, self.a * math.lcm(self.d, self.e))
        self.emb_L = canonical_embedding(tower.L, self.K)
        self.emb_Fq = self.emb_L.compose(tower.fq_to_L)
        self.res = ResidueField(v, self.K, emb=self.emb_Fq)
        self.zeta = self.res.zeta
        self._expanders = {}

    def component_root(self, j: int):
        """zeta^(q^j); the components are indexed by j mod d."""
        if self.zeta is None:
            return None
        return self.zeta.frobenius(self.a * j)

    def expander(self, j: int, prec: int) -> Expander:
        key = (j % self.d, prec)
        if key not in self._expanders:
            res = ResidueField(self.v, self.K, emb=self.emb_Fq, zeta=self.component_root(j))
            self._expanders[key] = Expander(res, self.emb_L, prec)
        return self._expanders[key]

    def expand(self, x: RatFunc, prec: int, j: int = 0) -> Series:
        if not x:
            return Series(self.K, prec, [], prec)
        return self.expander(j, prec)(x, prec)

    def expand_matrix(self, A: Matrix, prec: int, j: int = 0) -> list:
        return [[self.expand(x, prec, j) for x in row] for row in A.rows]

    def tau_power(self, prec: int, j: int = 0) -> list:
        """B = image of T sigma(T) ... sigma^(d-1)(T) at component j (series matrix)."""
        R = self.M.rings
        B = None
        for k in range(self.d):
            Ek = self.expand_matrix(R.sigma_matrix(self.M.T, k), prec, j)
            B = Ek if B is None else _series_mat_mul(B, Ek)
        return B


def _min_prec(S) -> int:
    return min(x.prec for row in S for x in row)


# ---------------------------------------------------------------------------
# crystalline realization
# ---------------------------------------------------------------------------

@dataclass
class LocalCrystal:
    place: Place
    place_label: str
    precision: int
    field: GF
    zeta: FFElement | None
    component: int
    matrix: list
    etale: bool
    det_order: int | None

    def to_json(self) -> dict:
        return {
            "place": self.place_label,
            "precision": self.precision,
            "working_field": _field_json(self.field),
            "component": self.component,
            "zeta": None if self.zeta is None else ff_to_str(self.zeta, "w"),
            "tau_red": [[_series_str(x) for x in row] for row in self.matrix],
            "etale": self.etale,
            "det_order": self.det_order,
        }


def crystalline(M: Motive, v: Place, N: int = DEFAULT_PRECISION, component: int = 0) -> LocalCrystal:
    """tau^(deg v) on the component of the v-adic completion at zeta^(q^component)."""
    if N < 1:
        raise InvalidInput("precision must be >= 1")
    loc = LocalData(M, v)
    r = M.rank
    if r == 0:
        return LocalCrystal(v, M.rings.place_str(v), N, loc.K, loc.zeta, component, [], True, 0)
    # poles cost precision in products; widen until N digits survive
    slack = 0
    while True:
        B = loc.tau_power(N + slack, component)
        if _min_prec(B) >= N:
            break
        slack = 2 * slack + 2
        if slack > 64 * (N + 1):
            raise PrecisionTooLow("could not reach the requested precision")
    B = [[x.truncate(N) for x in row] for row in B]
    det = series_det(B)
    det_order = det.val if det.coeffs else None
    integral = all(x.val >= 0 for row in B for x in row)
    etale = integral and det_order == 0
    return LocalCrystal(v, M.rings.place_str(v), N, loc.K, loc.component_root(component),
                        component, B, etale, det_order)


def _principal_minor_sums(S) -> list:
    """e_k(S) for k = 0..n: the sums of principal k x k minors."""
    import itertools
    n = len(S)
    K = S[0][0].field
    prec = _min_prec(S)
    out = [Series(K, 0, [K.one], prec)]
    for k in range(1, n + 1):
        acc = None
        for idx in itertools.combinations(range(n), k):
            m = series_det([[S[i][j] for j in idx] for i in idx])
            acc = m if acc is None else acc + m
        out.append(acc)
    return out


def crystal_components_agree(M: Motive, v: Place, N: int = DEFAULT_PRECISION) -> bool:
    """Spot-check that two components give isomorphic crystals.

    With kappa = e / gcd(d, e) the kappa-fold product B Frob^d(B) ... is
    linear over K, and its characteristic polynomial at the next component is
    the q-Frobenius image of the one at the first.
    """
    if M.rank == 0:
        return True
    loc = LocalData(M, v)
    if loc.d == 1:
        return True
    kappa = loc.e // math.gcd(loc.d, loc.e)
    polys = []
    for j in (0, 1):
        B = crystalline(M, v, N, j).matrix
        P = B
        for i in range(1, kappa):
            P = _series_mat_mul(P, [[x.frobenius(loc.a * loc.d * i) for x in row] for row in B])
        polys.append(_principal_minor_sums(P))
    return all(s1 == s0.frobenius(loc.a) for s0, s1 in zip(polys[0], polys[1]))


# ---------------------------------------------------------------------------
# Tate module
# ---------------------------------------------------------------------------

@dataclass
class TateLattice:
    place: Place
    place_label: str
    precision: int
    rank: int
    m: int
    field: GF
    zeta: FFElement | None
    basis: list            # N layers of r x r matrices over field; columns are the basis
    frob: list             # N layers of r x r matrices with entries in F_v
    frob_residue: list     # r x r lists of N polynomials in t of degree < deg v
    tau: list              # B over field, N layers
    galois_check: bool
    extra: dict = field(default_factory=dict)

    def frob_series(self, i: int, j: int) -> Series:
        return _sm_entry_series(self.frob, i, j, self.field, self.precision)

    def basis_vector(self, j: int) -> list:
        return [[layer[i][j] for i in range(self.rank)] for layer in self.basis]

    def to_json(self, tower=None) -> dict:
        def poly_str(f):
            if tower is not None:
                f = Poly(PolyRing(tower.L, "t"), [tower.fq_to_L(c) for c in f.c])
            return to_str(f)
        return {
            "place": self.place_label,
            "precision": self.precision,
            "rank": self.rank,
            "m": self.m,
            "working_field": _field_json(self.field),
            "zeta": None if self.zeta is None else ff_to_str(self.zeta, "w"),
            "basis": [[[ff_to_str(layer[i][j], "w") for layer in self.basis]
                       for i in range(self.rank)] for j in range(self.rank)],
            "frob": [[[poly_str(c) for c in self.frob_residue[i][j]] for j in range(self.rank)]
                     for i in range(self.rank)],
            "galois_check": self.galois_check,
        }


def _order_dimension(loc: LocalData, Bsm, N: int, cap: int, multiple: int) -> int:
    """Least D = [K' : F_q] (a multiple of lcm(d, e) and of `multiple`) over which
    the invariants are defined mod z^N."""
    K, d, e, a = loc.K, loc.d, loc.e, loc.a
    kappa = e // math.gcd(d, e)
    Bk = Bsm
    for i in range(1, kappa):
        Bk = _sm_mul(Bk, _sm_map(Bsm, lambda x, i=i: x.frobenius(a * d * i)), K, N)
    base = d * kappa
    P = Bk
    j = 1
    while not _sm_is_identity(P):
        j += 1
        if base * j > cap * e:
            raise ExtensionCapExceeded(f"invariants need m > {cap}", cap=cap)
        P = _sm_mul(P, Bk, K, N)
    D = math.lcm(base * j, multiple)
    if D > cap * e:
        raise ExtensionCapExceeded(f"invariants need m = {D // e} > {cap}", cap=cap)
    return D


def tate_degree(M: Motive, v: Place, N: int = DEFAULT_PRECISION, cap: int = DEFAULT_CAP) -> int:
    """[K' : F_q] of the field carrying the invariants mod z^N (no field is built)."""
    if M.chardata.contains(v):
        raise InvalidInput("the Tate module needs a place outside the characteristic places")
    loc = LocalData(M, v)
    if M.rank == 0:
        return loc.K.degree // loc.a
    Bsm = _series_matrix_to_sm(loc.tau_power(N), loc.K, N)
    return _order_dimension(loc, Bsm, N, cap, 1)


def tate_module(M: Motive, v: Place, N: int = DEFAULT_PRECISION, cap: int = DEFAULT_CAP,
                multiple: int = 1) -> TateLattice:
    """Basis of the tau-invariants of the v-adic completion mod z^N, with Frob_L.

    `multiple` forces [K' : F_q] to be a multiple of it (used to compare
    two lattices over one field).
    """
    if N < 1:
        raise InvalidInput("precision must be >= 1")
    if M.chardata.contains(v):
        raise InvalidInput("the Tate module needs a place outside the characteristic places")
    loc = LocalData(M, v)
    r = M.rank
    label = M.rings.place_str(v)
    if r == 0:
        return TateLattice(v, label, N, 0, 1, loc.K, loc.zeta, [], [], [], [], True)
    K, p, a, d, e = loc.K, loc.p, loc.a, loc.d, loc.e
    Bser = loc.tau_power(N)
    Bsm = _series_matrix_to_sm(Bser, K, N)
    D = _order_dimension(loc, Bsm, N, cap, multiple)
    Kp = default_field(p, a * D)
    to_Kp = canonical_embedding(K, Kp)
    zeta = None if loc.zeta is None else to_Kp(loc.zeta)
    emb_Fq = to_Kp.compose(loc.emb_Fq)
    B = _sm_map(Bsm, to_Kp)
    n = Kp.degree

    # layer 0: kernel of y -> y - B0 Frob^d(y), linearized over F_p
    Frd = matpow_mod_p(Kp.frobenius_matrix, a * d, p)
    L0 = np.zeros((r * n, r * n), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            blk = (-(Kp.mul_matrix(B[0][i][j]) @ Frd)) % p
            if i == j:
                blk = (blk + np.eye(n, dtype=np.int64)) % p
            L0[i * n:(i + 1) * n, j * n:(j + 1) * n] = blk

    def to_vec(ys):
        return np.concatenate([np.array(y.vector(), dtype=np.int64) for y in ys])

    def from_vec(x):
        return [Kp.from_vector([int(c) for c in x[i * n:(i + 1) * n]]) for i in range(r)]

    ker = kernel_mod_p(L0, p)
    if ker.shape[0] != r * a * d:
        raise ArithmeticError(f"layer-0 solution space has F_p-dimension {ker.shape[0]}, "
                              f"expected {r * a * d}")
    # F_v = F_q(zeta) inside K'
    fq_basis = [emb_Fq(loc.tower.Fq.from_vector([int(i == j) for i in range(a)])) for j in range(a)]
    zp, omegas = Kp.one, []
    for _ in range(d):
        omegas.extend(b * zp for b in fq_basis)
        if zeta is not None:
            zp = zp * zeta
    chosen, span = [], np.zeros((0, r * n), dtype=np.int64)
    for row in ker:
        y = from_vec(row)
        cand = np.array([to_vec([w * c for c in y]) for w in omegas], dtype=np.int64)
        trial = np.concatenate([span, cand])
        if rank_mod_p(trial, p) == span.shape[0] + len(omegas):
            chosen.append(y)
            span = trial
            if len(chosen) == r:
                break
    if len(chosen) < r:
        raise ArithmeticError("layer-0 solutions do not span a free module of full rank")

    # higher layers: y_k - B0 Frob^d(y_k) = sum_{i>=1} B_i Frob^d(y_{k-i})
    solver = Solver(L0, p)
    cols = [[y] for y in chosen]
    frob_cols = [[[c.frobenius(a * d) for c in y]] for y in chosen]
    for k in range(1, N):
        for col, fcol in zip(cols, frob_cols):
            rhs = [Kp.zero] * r
            for i in range(1, k + 1):
                Bi, fy = B[i], fcol[k - i]
                for s in range(r):
                    for t_ in range(r):
                        if Bi[s][t_] and fy[t_]:
                            rhs[s] = rhs[s] + Bi[s][t_] * fy[t_]
            sol = solver.solve(to_vec(rhs))
            if sol is None:
                raise ArithmeticError(f"layer {k} does not lift")
            yk = from_vec(sol)
            col.append(yk)
            fcol.append([c.frobenius(a * d) for c in yk])
    X = [[[cols[j][k][i] for j in range(r)] for i in range(r)] for k in range(N)]

    # Frob_L by walking the components: x_{zeta^(1/q)} = Frob^-1(T_zeta^-1 x_zeta)
    Tinv = M.T.inverse()
    cur = X
    for j in range(e):
        Tj = _sm_map(_series_matrix_to_sm(loc.expand_matrix(Tinv, N, -j), K, N), to_Kp)
        cur = _sm_map(_sm_mul(Tj, cur, Kp, N), lambda x: x.frobenius(-a))
    G = _sm_map(cur, lambda x: x.frobenius(a * e))
    F = _sm_solve_left(X, G, Kp, N)
    for layer in F:
        for row in layer:
            for c in row:
                if c.frobenius(a * d) != c:
                    raise ArithmeticError("Galois matrix has coefficients outside F_v")

    # chi(F^-1) = 0 mod z^N
    chi = _chi(M)
    Finv = _sm_inverse(F, Kp, N)
    acc = None
    for c in reversed(chi.c):
        cs = loc.expand(M.rings.embed(c), N)
        cm = [[[to_Kp(cs.coefficient(k)) if i == j else Kp.zero for j in range(r)]
               for i in range(r)] for k in range(N)]
        acc = cm if acc is None else _sm_add(_sm_mul(acc, Finv, Kp, N), cm)
    galois_check = _sm_is_zero(acc)

    res_p = ResidueField(v, Kp, emb=emb_Fq, zeta=zeta)
    if v.is_infinite:
        frob_res = [[[Poly(PolyRing(loc.tower.Fq, "t"), [emb_Fq.preimage(F[k][i][j])])
                      for k in range(N)] for j in range(r)] for i in range(r)]
    else:
        frob_res = [[[lift_residue(res_p, F[k][i][j]) for k in range(N)] for j in range(r)]
                    for i in range(r)]
    return TateLattice(v, label, N, r, D // e, Kp, zeta, X, F, frob_res, B, galois_check)


def _sm_add(A, B):
    return [_mat_add(x, y) for x, y in zip(A, B)]


def _chi(M: Motive) -> Poly:
    from .motive import char_data
    return char_data(M).chi


def check_fixed_points(TL: TateLattice) -> bool:
    """Every basis vector y satisfies y = B Frob^d(y) mod z^N."""
    if TL.rank == 0:
        return True
    K, N = TL.field, TL.precision
    d = 1 if TL.place.is_infinite else TL.place.degree
    a = TL.place.Fq.degree
    rhs = _sm_mul(TL.tau, _sm_map(TL.basis, lambda x: x.frobenius(a * d)), K, N)
    return all(x == y for L1, L2 in zip(rhs, TL.basis) for r1, r2 in zip(L1, L2)
               for x, y in zip(r1, r2))


def basis_is_free(TL: TateLattice) -> bool:
    """The basis matrix is invertible mod z (so it spans a free module of rank r)."""
    if TL.rank == 0:
        return True
    X0 = Matrix(TL.field, TL.basis[0], TL.rank)
    return bool(X0.det())


def etale_cohomology(M: Motive, v: Place, i: int, N: int = DEFAULT_PRECISION,
                     cap: int = DEFAULT_CAP) -> TateLattice:
    """Tate module of the i-th exterior power."""
    return tate_module(exterior_power(M, i), v, N, cap)


def tate_map(f: Matrix, M: Motive, M2: Motive, v: Place, N: int = DEFAULT_PRECISION,
             cap: int = DEFAULT_CAP) -> dict:
    """Matrix of the map induced by f: M -> M2 on Tate lattices at v.

    Returns the matrix A over F_v[[z]]/z^N with f X_M = X_M2 A, the z-order of
    det A and the z-order of det f at v, which agree when f is a quasi-isogeny.
    """
    TM = tate_module(M, v, N, cap)
    TN = tate_module(M2, v, N, cap)
    D = math.lcm(TM.field.degree, TN.field.degree) // M.tower.a
    if TM.field.degree != TN.field.degree:
        TM = tate_module(M, v, N, cap, multiple=D)
        TN = tate_module(M2, v, N, cap, multiple=D)
    loc = LocalData(M, v)
    Kp = TM.field
    to_Kp = canonical_embedding(loc.K, Kp)
    fsm = _sm_map(_series_matrix_to_sm(loc.expand_matrix(f, N), loc.K, N), to_Kp)
    image = _sm_mul(fsm, TM.basis, Kp, N)
    if M2.rank != M.rank:
        raise InvalidInput("tate_map compares motives of equal rank")
    A = _sm_solve_left(TN.basis, image, Kp, N)
    r = M.rank
    detA = series_det([[_sm_entry_series(A, i, j, Kp, N) for j in range(r)] for i in range(r)])
    detf = series_det(loc.expand_matrix(f, N))
    return {
        "matrix": A,
        "det_order": detA.val if detA.coeffs else None,
        "expected_order": detf.val if detf.coeffs else None,
        "injective": bool(detA.coeffs),
    }


# ---------------------------------------------------------------------------
# zeta function
# ---------------------------------------------------------------------------

@dataclass
class Zeta:
    num: Poly
    den: Poly

    def to_json(self) -> dict:
        return {"num": to_str(self.num, ascending=True), "den": to_str(self.den, ascending=True)}

    def __eq__(self, other):
        return isinstance(other, Zeta) and self.num * other.den == other.num * self.den

    def __mul__(self, other: "Zeta") -> "Zeta":
        return _reduced(self.num * other.num, self.den * other.den)


def _reduced(num: Poly, den: Poly) -> Zeta:
    g = poly_gcd(num, den)
    num, den = num // g, den // g
    c = den.c[0].inverse()
    return Zeta(num.scale(c), den.scale(c))


def zeta(M: Motive, drop_h0: bool = False) -> Zeta:
    """prod_{i=0..r} det(1 - u Lambda^i Pi)^((-1)^(i+1)), reduced, constant term 1."""
    R = M.rings
    Qu = PolyRing(R.Q, "u")
    Pi = frobenius(M).matrix
    num, den = Qu.one, Qu.one
    for i in range(0 if not drop_h0 else 1, M.rank + 1):
        A = Pi.compound(i)
        chi = descend_poly_x(M, A.charpoly("x"))
        rev = Poly(Qu, list(reversed(chi.c)))
        if i % 2:
            num = num * rev
        else:
            den = den * rev
    return _reduced(num, den)
