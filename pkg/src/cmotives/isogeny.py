"""Morphisms between motives, semisimplicity, quasi-isogeny and Hecke modifications.

A morphism f: M -> M' is an r' x r matrix over A_L with f T = T' sigma(f).
Writing f = sum_j g^j F_j with F_j over Q = F_q(t) turns this semilinear
equation into a Q-linear system, whose kernel is QHom(M, M') exactly.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .algebra.ffactor import factor_over_finite_field, roots
from .algebra.funcfactor import factor_over_function_field
from .algebra.local import lift_residue, residue_field
from .algebra.matrix import Matrix
from .algebra.places import Place
from .algebra.poly import Poly, poly_gcd, poly_inverse_mod, poly_lcm, poly_xgcd
from .algebra.printing import to_str
from .algebra.ratfunc import RatFunc
from .errors import (BadAuxiliaryPlace, BoundExhausted, InvalidInput, NotSemisimple,
                     NotTauStable, PrecisionTooLow, SeparabilityViolation)
from .motive import Motive, Rings, build, char_data, check_compatible, frobenius

DEFAULT_DEGREE_CAP = 64
DEFAULT_BUDGET = 200


# ---------------------------------------------------------------------------
# Q-coordinates of elements of L(t)
# ---------------------------------------------------------------------------

def q_coords(R: Rings, x: RatFunc) -> list:
    """Coordinates of x in L(t) = L ⊗ Q with respect to 1, g, ..., g^(e-1)."""
    tower = R.tower
    e = tower.e
    if not x:
        return [R.Q.zero] * e
    den = x.den
    num = x.num
    if den.degree() > 0 and e > 1:
        # multiply through by the conjugates of the denominator to reach F_q[t]
        conj = R.RL.one
        for k in range(1, e):
            conj = conj * den.map_coeffs(lambda c, k=k: tower.sigma(c, k))
        num = num * conj
        den = den * conj
    den_q = R.descend_poly(den)
    if den_q is None:
        raise ArithmeticError("norm of a denominator is not defined over F_q")
    parts = [[] for _ in range(e)]
    for c in num.c:
        for j, y in enumerate(tower.fq_coords(c)):
            parts[j].append(y)
    return [R.Q.frac(Poly(R.Rq, parts[j]), den_q) for j in range(e)]


def _from_coords(R: Rings, coords: list) -> RatFunc:
    out = R.KL.zero
    gp = R.L.one
    for c in coords:
        if c:
            out = out + R.embed(c) * R.KL(gp)
        gp = gp * R.L.gen
    return out


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

@dataclass
class HomSpace:
    source: Motive
    target: Motive
    basis: list
    dim: int
    certificate: dict = field(default_factory=dict)
    coords: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "dimension": self.dim,
            "basis": [[[to_str(x) for x in row] for row in f.rows] for f in self.basis],
            "certificate": self.certificate,
        }


def intertwines(f: Matrix, M: Motive, N: Motive) -> bool:
    """Whether f T_M = T_N sigma(f)."""
    R = M.rings
    return f * M.T == N.T * R.sigma_matrix(f)


def _hom_system(M: Motive, N: Motive):
    """Q-matrix of f -> f T_M - T_N sigma(f) on the unknowns (j, a, b)."""
    R = M.rings
    e = M.tower.e
    r, s = M.rank, N.rank
    KL = R.KL
    unknowns = [(j, a, b) for j in range(e) for a in range(s) for b in range(r)]
    gpow = [R.L.one]
    for _ in range(1, e):
        gpow.append(gpow[-1] * R.L.gen)
    columns = []
    for j, a, b in unknowns:
        c = KL(gpow[j])
        sc = KL(M.tower.sigma(gpow[j]))
        # f = c E_ab:  (f T)[a][:] = c T[b][:],  (T' sigma f)[:][b] = sigma(c) T'[:][a]
        img = [[KL.zero] * r for _ in range(s)]
        for k in range(r):
            if M.T[b, k]:
                img[a][k] = img[a][k] + c * M.T[b, k]
        for i in range(s):
            if N.T[i, a]:
                img[i][b] = img[i][b] - N.T[i, a] * sc
        col = []
        for i in range(s):
            for k in range(r):
                col.extend(q_coords(R, img[i][k]))
        columns.append(col)
    nrows = len(columns[0]) if columns else 0
    rows = [[columns[u][i] for u in range(len(columns))] for i in range(nrows)]
    return unknowns, Matrix(R.Q, rows, len(unknowns))


def _vector_to_matrix(M: Motive, N: Motive, unknowns, vec) -> Matrix:
    R = M.rings
    e = M.tower.e
    r, s = M.rank, N.rank
    coords = {}
    for (j, a, b), x in zip(unknowns, vec):
        coords.setdefault((a, b), [R.Q.zero] * e)[j] = x
    rows = [[_from_coords(R, coords.get((a, b), [])) for b in range(r)] for a in range(s)]
    return Matrix(R.KL, rows, r)


def _clear_denominators(R: Rings, vec: list) -> list:
    """Scale a Q-vector to polynomial entries with trivial content."""
    den = R.Rq.one
    for x in vec:
        if x:
            den = poly_lcm(den, x.den)
    polys = [(x * R.Q(den)).num if x else R.Rq.zero for x in vec]
    g = R.Rq.zero
    for f in polys:
        if f:
            g = poly_gcd(g, f) if g else f.monic()
    if g and g.degree() > 0:
        polys = [f // g for f in polys]
    return [R.Q(f) for f in polys]


def hom_space(M: Motive, N: Motive, bounds: tuple | None = None) -> HomSpace:
    """QHom(M, N) with an A_L-integral basis.

    `bounds` = (D, K) caps the t-degree of basis entries (default 64); K is
    recorded but unused since basis entries are cleared to polynomials.
    """
    check_compatible(M, N)
    cap = DEFAULT_DEGREE_CAP if bounds is None else int(bounds[0])
    R = M.rings
    if M.rank == 0 or N.rank == 0:
        return HomSpace(M, N, [], 0, {"method": "exact-kernel-over-Q", "degree_cap": cap, "max_degree": 0})
    unknowns, A = _hom_system(M, N)
    kernel = A.kernel()
    basis, coords = [], []
    max_deg = 0
    for vec in kernel:
        vec = _clear_denominators(R, vec)
        f = _vector_to_matrix(M, N, unknowns, vec)
        for x in f.entries():
            if x:
                max_deg = max(max_deg, x.num.degree())
        if not intertwines(f, M, N):
            raise ArithmeticError("hom solver produced a non-morphism")
        basis.append(f)
        coords.append(vec)
    if max_deg > cap:
        raise BoundExhausted(f"Hom basis needs t-degree {max_deg} > cap {cap}",
                             degree=max_deg, cap=cap)
    cert = {
        "method": "exact-kernel-over-Q",
        "degree_cap": cap,
        "max_degree": max_deg,
        "unknowns": len(unknowns),
        "equations": A.nrows,
    }
    if bounds is not None and len(bounds) > 1:
        cert["pole_cap"] = int(bounds[1])
    return HomSpace(M, N, basis, len(basis), cert, coords)


def matrix_q_coords(M: Motive, N: Motive, f: Matrix) -> list:
    R = M.rings
    out = []
    for a in range(N.rank):
        for b in range(M.rank):
            out.append(q_coords(R, f[a, b]))
    # reorder to the unknown order (j, a, b)
    e = M.tower.e
    vec = []
    for j in range(e):
        for idx in range(N.rank * M.rank):
            vec.append(out[idx][j])
    return vec


def in_hom_span(hs: HomSpace, f: Matrix) -> bool:
    """Whether f lies in the Q-span of the Hom basis."""
    R = hs.source.rings
    target = matrix_q_coords(hs.source, hs.target, f)
    if not hs.coords:
        return all(not x for x in target)
    cols = Matrix(R.Q, [list(row) for row in zip(*hs.coords)], len(hs.coords))
    return cols.solve(target) is not None


# ---------------------------------------------------------------------------
# factorization data and the dimension formula
# ---------------------------------------------------------------------------

def factor_q(f: Poly) -> list:
    return factor_over_function_field(f)[1]


def _multiplicities(chi: Poly, factors: list) -> list:
    out = []
    for P in factors:
        m, g = 0, chi
        while True:
            q, rem = g.divmod(P)
            if rem:
                break
            g, m = q, m + 1
        out.append(m)
    return out


def is_semisimple(M: Motive):
    """(mu squarefree, factorization of mu)."""
    mu = char_data(M).mu
    facs = factor_q(mu)
    return all(m == 1 for _, m in facs), facs


def end_dim_formula(M: Motive) -> int:
    """sum over irreducible P | chi of m_P^2 deg P."""
    chi = char_data(M).chi
    return sum(m * m * P.degree() for P, m in factor_q(chi))


def qhom_dim_formula(M: Motive, N: Motive, v: Place) -> int:
    """sum_mu m_mu m'_mu deg mu over the Q_v-irreducible factors mu.

    The local factors are read from the factorization of the product of the
    distinct global factors modulo v (Hensel blocks).
    """
    check_compatible(M, N)
    if M.chardata.contains(v):
        raise BadAuxiliaryPlace("auxiliary place lies in the characteristic places")
    for X in (M, N):
        ok, _ = is_semisimple(X)
        if not ok:
            raise NotSemisimple("dimension formula needs semisimple Frobenius")
    chi1, chi2 = char_data(M).chi, char_data(N).chi
    globs = []
    for P, _ in factor_q(chi1) + factor_q(chi2):
        if P not in globs:
            globs.append(P)
    for P in globs:
        if not P.derivative():
            raise SeparabilityViolation(f"factor {to_str(P)} is inseparable")
    m1 = _multiplicities(chi1, globs)
    m2 = _multiplicities(chi2, globs)
    res = residue_field(v)
    reduced = []
    for P in globs:
        if any(c and v.valuation(c) < 0 for c in P.c):
            raise BadAuxiliaryPlace(f"{to_str(P)} is not integral at {v.label()}")
        reduced.append(res.reduce_poly_x(P))
    S = reduced[0]
    for g in reduced[1:]:
        S = S * g
    if not S or S.degree() != sum(P.degree() for P in globs):
        raise BadAuxiliaryPlace("reduction drops degree")
    _, local = factor_over_finite_field(S)
    if any(m > 1 for _, m in local):
        raise BadAuxiliaryPlace(f"product of factors is not squarefree modulo {v.label()}")
    total = 0
    for phi, _ in local:
        owner = next(i for i, g in enumerate(reduced) if not (g % phi))
        total += m1[owner] * m2[owner] * phi.degree()
    return total


def admissible_places(M: Motive, N: Motive, count: int, max_degree: int = 4) -> list:
    """First `count` places where qhom_dim_formula applies."""
    from .algebra.places import iter_places
    out = []
    for v in iter_places(M.tower.Fq, max_degree):
        if M.chardata.contains(v):
            continue
        try:
            qhom_dim_formula(M, N, v)
        except BadAuxiliaryPlace:
            continue
        out.append(v)
        if len(out) == count:
            break
    return out


# ---------------------------------------------------------------------------
# quasi-isogeny
# ---------------------------------------------------------------------------

@dataclass
class IsogenyResult:
    status: str
    witness: Matrix | None = None
    reason: str = ""
    seed: int = 0
    tries: int = 0

    def to_json(self) -> dict:
        out = {"status": self.status, "reason": self.reason, "seed": self.seed, "tries": self.tries}
        if self.witness is not None:
            out["witness"] = [[to_str(x) for x in row] for row in self.witness.rows]
        return out


def find_invertible(hs: HomSpace, seed: int = 0, budget: int = DEFAULT_BUDGET):
    """Basis sweep, then seeded random F_q[t]-combinations (degree < 2)."""
    tries = 0
    for f in hs.basis:
        tries += 1
        if f.is_square() and f.det():
            return f, tries
    if not hs.basis or not hs.basis[0].is_square():
        return None, tries
    R = hs.source.rings
    rng = random.Random(seed)
    elems = list(R.Fq.elements())
    for _ in range(budget):
        tries += 1
        f = None
        for b in hs.basis:
            c = R.embed(R.Q(Poly(R.Rq, [rng.choice(elems) for _ in range(2)])))
            term = b * c
            f = term if f is None else f + term
        if f.det():
            return f, tries
    return None, tries


def is_quasi_isogenous(M: Motive, N: Motive, seed: int = 0, budget: int = DEFAULT_BUDGET) -> IsogenyResult:
    check_compatible(M, N)
    if M.rank != N.rank:
        return IsogenyResult("No", reason="rank mismatch", seed=seed)
    chi1, chi2 = char_data(M).chi, char_data(N).chi
    if chi1 != chi2:
        # conjugate Frobenii have equal characteristic polynomials
        return IsogenyResult("No", reason="chi mismatch", seed=seed)
    ss = is_semisimple(M)[0] and is_semisimple(N)[0]
    try:
        hs = hom_space(M, N)
    except BoundExhausted as exc:
        return IsogenyResult("Unknown", reason=str(exc), seed=seed)
    f, tries = find_invertible(hs, seed, budget)
    if f is not None:
        return IsogenyResult("Yes", witness=f, reason="invertible morphism found", seed=seed, tries=tries)
    if ss:
        raise ArithmeticError("semisimple motives with equal chi but no invertible morphism found")
    return IsogenyResult("Unknown", reason="no invertible morphism within the search budget",
                         seed=seed, tries=tries)


def pseudo_inverse(f: Matrix, M: Motive):
    """(f_check, a) with f_check f = a I and a = Norm(det f) in A."""
    R = M.rings
    d = f.det()
    if not d:
        raise InvalidInput("morphism is not invertible")
    conj = R.KL.one
    for k in range(1, M.tower.e):
        conj = conj * R.sigma(d, k)
    a = R.descend(d * conj)
    if a is None:
        raise ArithmeticError("norm of det f is not in Q")
    return f.adjugate() * conj, a


# ---------------------------------------------------------------------------
# endomorphism report
# ---------------------------------------------------------------------------

def endomorphism_report(M: Motive) -> dict:
    cd = char_data(M)
    ss, mu_facs = is_semisimple(M)
    hs = hom_space(M, M)
    dim = hs.dim
    r = M.rank
    h = cd.mu.degree()
    is_field = len(mu_facs) == 1 and mu_facs[0][1] == 1
    commutative = all(a * b == b * a for a, b in itertools.combinations(hs.basis, 2))
    report = {
        "rank": r,
        "h": h,
        "dim_E": dim,
        "semisimple": ss,
        "mu_factors": [{"poly": to_str(P), "multiplicity": m} for P, m in mu_facs],
        "F_is_field": is_field,
        "commutative": commutative,
        "cm": dim == r and commutative,
        "bounds_hold": r <= dim <= r * r,
        "extreme": "dim=r" if dim == r else ("dim=r^2" if dim == r * r else "none"),
        "certificate": hs.certificate,
    }
    if is_field:
        report["h_divides_r"] = r % h == 0
        report["dim_equals_r2_over_h"] = r % h == 0 and dim == r * r // h
    if ss:
        report["dim_formula"] = end_dim_formula(M)
    return report


# ---------------------------------------------------------------------------
# Hecke modification
# ---------------------------------------------------------------------------

def hermite_columns(A: list, ring) -> list:
    """Column Hermite form of a full-row-rank r x c matrix over K[t].

    Returns r x r lower triangular columns spanning the same module, with
    monic diagonal and off-diagonal entries reduced modulo the diagonal.
    """
    A = [list(row) for row in A]
    r = len(A)
    c = len(A[0])
    for i in range(r):
        for j in range(i + 1, c):
            b = A[i][j]
            if not b:
                continue
            a = A[i][i]
            if not a:
                for row in A:
                    row[i], row[j] = row[j], row[i]
                continue
            g, s, t = poly_xgcd(a, b)
            ag, bg = a // g, b // g
            for row in A:
                x, y = row[i], row[j]
                row[i] = s * x + t * y
                row[j] = ag * y - bg * x
        if not A[i][i]:
            raise InvalidInput("generators do not span a full-rank lattice")
        lc = A[i][i].lc()
        if lc != ring.base.one:
            inv = lc.inverse()
            for row in A:
                row[i] = row[i].scale(inv)
    for j in range(r, c):
        if any(A[i][j] for i in range(r)):
            raise ArithmeticError("Hermite reduction left a nonzero column")
    for i in range(r):
        for j in range(i):
            qt = A[i][j] // A[i][i]
            if qt:
                for row in A:
                    row[j] = row[j] - qt * row[i]
    return [row[:r] for row in A]


@dataclass
class HeckeResult:
    motive: Motive
    witness: Matrix
    index: int
    place: Place


def _order_mod(f: Poly, pv: Poly, N: int) -> int:
    """v-order of f, capped at N."""
    k = 0
    while k < N and f:
        q, rem = f.divmod(pv)
        if rem:
            return k
        f, k = q, k + 1
    return N


def hecke_modify(M: Motive, v: Place, U: Matrix, N: int = 20) -> HeckeResult:
    """Replace the lattice at v by the span of U's columns (known mod p_v^N).

    Returns M' and the inclusion P: M' -> M, which satisfies P T' = T sigma(P)
    and is invertible away from v.
    """
    if v.is_infinite or M.chardata.contains(v):
        raise InvalidInput("Hecke modification needs a finite place outside the characteristic places")
    R = M.rings
    r = M.rank
    if U.nrows != r or U.ncols < r:
        raise InvalidInput(f"U must have {r} rows and at least {r} columns")
    pv = R.place_over_L(v)
    entries = []
    for x in U.entries():
        x = R.KL(x)
        if not x.is_polynomial() and _order_mod(x.den, pv, 1):
            raise InvalidInput("U is not integral at v")
        entries.append(x)
    # represent U by polynomials: denominators prime to p_v are units at v
    mod = pv ** N
    polys = []
    for x in entries:
        if x.is_polynomial():
            polys.append(x.num % mod)
        else:
            polys.append((x.num * poly_inverse_mod(x.den, mod)) % mod)
    rows = [polys[i * U.ncols:(i + 1) * U.ncols] for i in range(r)]
    k = N
    for cols in itertools.combinations(range(U.ncols), r):
        minor = Matrix(R.RL, [[rows[i][j] for j in cols] for i in range(r)], r).det() % mod
        k = min(k, _order_mod(minor, pv, N))
    if k >= N:
        raise PrecisionTooLow(f"sublattice index not determined at precision {N}")
    pk = pv ** k
    gens = [row + [pk if i == j else R.RL.zero for j in range(r)] for i, row in enumerate(rows)]
    H = hermite_columns(gens, R.RL)
    P = Matrix(R.KL, [[R.KL(x) for x in row] for row in H], r)
    Tp = P.inverse() * M.T * R.sigma_matrix(P)
    for x in Tp.entries():
        if x and _order_mod(x.den, pv, 1):
            raise NotTauStable(f"sublattice is not tau-stable at {R.place_str(v)}")
    Mp = build(M.chardata, Tp, M.mode, name=f"{M.name}~" if M.name else None)
    if not intertwines(P, Mp, M):
        raise ArithmeticError("Hecke witness does not intertwine")
    return HeckeResult(Mp, P, k, v)


def stable_sublattice(M: Motive, v: Place):
    """Generators of (Pi - a) M + p_v M for a root a of chi mod v, or None.

    Pi commutes with tau, so this sublattice is tau-stable; it is proper
    because Pi - a is singular modulo v.
    """
    R = M.rings
    res = residue_field(v)
    chi = char_data(M).chi
    if any(c and v.valuation(c) < 0 for c in chi.c):
        return None
    rts = roots(res.reduce_poly_x(chi))
    if not rts:
        return None
    a = R.embed(R.Q(lift_residue(res, rts[0])))
    Pi = frobenius(M).matrix
    r = M.rank
    D = R.RL.one
    for x in Pi.entries():
        if x:
            D = poly_lcm(D, x.den)
    B = (Pi - Matrix.scalar(R.KL, r, a)) * R.KL(D)
    pv = R.KL(R.place_over_L(v))
    rows = [list(B.rows[i]) + [pv if i == j else R.KL.zero for j in range(r)] for i in range(r)]
    return Matrix(R.KL, rows, 2 * r)
