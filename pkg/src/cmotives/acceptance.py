"""The acceptance suite: ten end-to-end checks with time limits.

Each check returns a CheckResult; `run_all` prints one line per check.
`quick=True` shrinks the example counts (not the tolerances) for `selftest --quick`.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass

from .algebra.funcfactor import factor_bruteforce, factor_over_function_field
from .algebra.places import Place, iter_places, newton_slopes
from .algebra.poly import Poly
from .algebra.polyalg import power_charpoly
from .corpus import (carlitz, conjugate, drinfeld2, honda_tate_corpus, random_motive,
                     random_non_semisimple, random_unimodular, unipotent, unit)
from .errors import ExtensionCapExceeded, NotTauStable, PrecisionTooLow
from .hondatate import (adjust, class_key, classes_equal, honda_tate_class, pairs_equivalent,
                        pairs_equivalent_by_exponent, weil_pair_of)
from .isogeny import (admissible_places, end_dim_formula, endomorphism_report, hecke_modify,
                      hom_space, intertwines, is_quasi_isogenous, is_semisimple,
                      pseudo_inverse, qhom_dim_formula, stable_sublattice)
from .motive import base_change, char_data, direct_sum, frobenius
from .realization import (check_fixed_points, basis_is_free, tate_degree, tate_module, zeta)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: str

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return (f"[{tag}] criterion {self.number}: {self.name} "
                f"({self.seconds:.1f}s, limit {self.limit:.0f}s) {self.detail}")


def _timed(number, name, limit, fn, *args):
    t0 = time.time()
    ok, detail = fn(*args)
    dt = time.time() - t0
    if ok and dt > limit:
        ok, detail = False, detail + f"; exceeded time limit {limit:.0f}s"
    return CheckResult(number, name, ok, dt, limit, detail)


# ---------------------------------------------------------------------------
# 1. descent
# ---------------------------------------------------------------------------

def _random_shapes(count: int, rng: random.Random):
    shapes = []
    for _ in range(count):
        q = rng.choice([2, 3, 4])
        e = rng.choice([1, 2, 3])
        r = rng.choice([1, 2, 3]) if q < 4 else rng.choice([1, 2])
        shapes.append((q, e, r))
    return shapes


def check_descent(quick=False):
    rng = random.Random(1)
    count = 15 if quick else 50
    bad = []
    for q, e, r in _random_shapes(count, rng):
        M = random_motive(q, e, r, rng)
        R = M.rings
        Pi = frobenius(M).matrix
        for poly in (Pi.charpoly("x"), Pi.minpoly("x")):
            if any(R.sigma(c) != c for c in poly.c):
                bad.append(M.name)
        char_data(M)  # descends or raises
    return not bad, f"{count} motives, {len(bad)} with non-fixed coefficients"


# ---------------------------------------------------------------------------
# 2. Tate conjecture
# ---------------------------------------------------------------------------

def _semisimple_pairs(count: int, rng: random.Random):
    pairs = []
    while len(pairs) < count:
        q = rng.choice([2, 3])
        e = rng.choice([1, 1, 2])
        r = rng.choice([1, 2])
        M = random_motive(q, e, r, rng, k_max=1, max_degree=2)
        if not is_semisimple(M)[0]:
            continue
        kind = len(pairs) % 4
        if kind == 0:
            N = M
        elif kind == 1:
            N = conjugate(M, random_unimodular(M.tower, r, rng, steps=1))
        elif kind == 2:
            N = direct_sum(M, carlitz(q, e)) if r == 1 else random_motive(q, e, r, rng, 1, 2)
        else:
            N = random_motive(q, e, r, rng, k_max=1, max_degree=2)
        if not is_semisimple(N)[0]:
            continue
        pairs.append((M, N))
    return pairs


def check_tate_conjecture(quick=False):
    rng = random.Random(2)
    pairs = _semisimple_pairs(4 if quick else 10, rng)
    lines = []
    ok = True
    for M, N in pairs:
        places = admissible_places(M, N, 2)
        if len(places) < 2:
            ok = False
            lines.append("fewer than 2 admissible places")
            continue
        dim = hom_space(M, N).dim
        vals = [qhom_dim_formula(M, N, v) for v in places]
        if any(x != dim for x in vals):
            ok = False
        lines.append(f"{dim}:{vals}")
    return ok, f"{len(pairs)} pairs, dims/formulas " + " ".join(lines)


# ---------------------------------------------------------------------------
# 3. Galois action on Tate modules
# ---------------------------------------------------------------------------

GALOIS_BIT_BUDGET = 180


def _cheap_places(M, count, N, max_degree=2):
    """Places outside the characteristic data whose working field stays small."""
    out = []
    p, a = M.tower.p, M.tower.a
    for v in iter_places(M.tower.Fq, max_degree):
        if M.chardata.contains(v):
            continue
        try:
            D = tate_degree(M, v, N)
        except ExtensionCapExceeded:
            continue
        if a * D * math.log2(p) <= GALOIS_BIT_BUDGET:
            out.append(v)
        if len(out) == count:
            break
    return out


def check_galois(quick=False):
    N = 12
    C = carlitz(3)
    motives = [C, carlitz(3, power=2), carlitz(3, c="-1"), carlitz(4), carlitz(3, e=2),
               direct_sum(C, carlitz(3, power=2)), unipotent(3)]
    if quick:
        motives = motives[:5]
    ok = True
    notes = []
    # exact value for Carlitz at (t - 1)
    TL = tate_module(C, C.rings.place("t - 1"), N)
    K = TL.field
    exact = [TL.frob[k][0][0] == K((-1) ** k) for k in range(N)]
    if not all(exact):
        ok = False
    notes.append(f"Carlitz (t-1) Frob=(1+z)^-1 exact: {all(exact)}")
    for M in motives:
        places = _cheap_places(M, 3, N)
        if len(places) < 3:
            ok = False
        for v in places:
            TL = tate_module(M, v, N)
            good = TL.galois_check and check_fixed_points(TL) and basis_is_free(TL) and TL.rank == M.rank
            ok = ok and good
        notes.append(f"{M.name or 'sum'}@{','.join(M.rings.place_str(v) for v in places)}")
    return ok, "; ".join(notes)


# ---------------------------------------------------------------------------
# 4. quasi-isogeny via Hecke modification
# ---------------------------------------------------------------------------

def check_hecke(quick=False):
    rng = random.Random(4)
    motives = [carlitz(3), drinfeld2(3, "1"), drinfeld2(2, "1"), carlitz(3, e=2),
               carlitz(2, c="1", power=2), drinfeld2(3, "-1")]
    if quick:
        motives = motives[:5]
    ok = True
    notes = []
    for M in motives:
        cands = [v for v in iter_places(M.tower.Fq, 4) if not M.chardata.contains(v)]
        rng.shuffle(cands)
        done = False
        for v in cands:
            U = stable_sublattice(M, v)
            if U is None:
                continue
            try:
                H = hecke_modify(M, v, U)
            except (NotTauStable, PrecisionTooLow):
                continue
            Mp, P = H.motive, H.witness
            good = char_data(Mp).chi == char_data(M).chi and intertwines(P, Mp, M)
            res = is_quasi_isogenous(M, Mp, seed=0)
            good = good and res.status == "Yes" and intertwines(res.witness, M, Mp)
            fc, a = pseudo_inverse(P, Mp)
            I = P.identity(P.ring, M.rank)
            good = good and fc * P == I.map(lambda x: x * Mp.rings.embed(a))
            fc2, a2 = pseudo_inverse(res.witness, M)
            good = good and fc2 * res.witness == I.map(lambda x: x * M.rings.embed(a2))
            ok = ok and good
            notes.append(f"{M.name or 'sum'}@{M.rings.place_str(v)}:{'ok' if good else 'bad'}")
            done = True
            break
        if not done:
            ok = False
            notes.append(f"{M.name}: no admissible place")
    return ok, "; ".join(notes)


# ---------------------------------------------------------------------------
# 5-6. semisimplicity and endomorphism numerology
# ---------------------------------------------------------------------------

def mixed_corpus(rng: random.Random, quick=False) -> list:
    C = carlitz(3)
    out = [unipotent(3), C, drinfeld2(3, "1"), unit(3, r=2), direct_sum(C, C),
           direct_sum(C, unit(3)), random_non_semisimple(3, rng), random_non_semisimple(2, rng),
           random_motive(2, 1, 2, rng), random_motive(3, 2, 1, rng), random_motive(2, 2, 2, rng)]
    return out[:10] if quick else out


def check_semisimplicity(quick=False):
    rng = random.Random(5)
    corpus = mixed_corpus(rng, quick)
    ok = True
    notes = []
    n_unip = 0
    for M in corpus:
        ss, facs = is_semisimple(M)
        dim = hom_space(M, M).dim
        formula = end_dim_formula(M)
        if ss != (dim == formula):
            ok = False
        if not ss:
            n_unip += 1
        notes.append(f"{'ss' if ss else 'nss'}:{dim}/{formula}")
    ok = ok and n_unip >= 1
    return ok, f"{len(corpus)} motives " + " ".join(notes)


def check_numerology(quick=False):
    rng = random.Random(5)
    corpus = mixed_corpus(rng, quick) + honda_tate_corpus(3)
    ok = True
    n_field = 0
    for M in corpus:
        rep = endomorphism_report(M)
        if not rep["bounds_hold"]:
            ok = False
        if rep["F_is_field"]:
            n_field += 1
            if not (rep["h_divides_r"] and rep["dim_equals_r2_over_h"]):
                ok = False
    return ok, f"{len(corpus)} motives, {n_field} with F a field"


# ---------------------------------------------------------------------------
# 7. semisimplification after p-power base change
# ---------------------------------------------------------------------------

def check_semisimplification(quick=False):
    rng = random.Random(7)
    U = unipotent(3)
    ok = not is_semisimple(U)[0] and is_semisimple(base_change(U, 3))[0]
    notes = [f"unipotent@3:{ok}"]
    count = 3 if quick else 5
    for i in range(count):
        q = [3, 2][i % 2]
        M = random_non_semisimple(q, rng)
        p = M.tower.p
        found = None
        m = p
        while m <= p * p * M.rank:
            if is_semisimple(base_change(M, m))[0]:
                found = m
                break
            m *= p
        if is_semisimple(M)[0] or found is None:
            ok = False
        notes.append(f"q={q}:m={found}")
    return ok, " ".join(notes)


# ---------------------------------------------------------------------------
# 8. Honda-Tate injectivity
# ---------------------------------------------------------------------------

BASE_CHANGE_DEGREES = (1, 2, 3, 4, 6)


def _isogenous_over_closure(M, N) -> bool:
    for l in BASE_CHANGE_DEGREES:
        if is_quasi_isogenous(base_change(M, l), base_change(N, l)).status == "Yes":
            return True
    return False


def check_honda_tate(quick=False):
    corpus = honda_tate_corpus(3)
    if quick:
        corpus = corpus[:5]
    classes = [honda_tate_class(M) for M in corpus]
    ok = True
    agree = 0
    for i, j in itertools.combinations(range(len(corpus)), 2):
        same = classes_equal(classes[i], classes[j])
        iso = _isogenous_over_closure(corpus[i], corpus[j])
        if same == iso:
            agree += 1
        else:
            ok = False
    # equivalence relation on pairs, with ClassKey invariance and the exponent oracle
    pairs = []
    for M in corpus:
        for pr, _ in weil_pair_of(M):
            pairs.extend([pr, adjust(pr, 2), adjust(pr, 3)])
    n = len(pairs)
    E = [[pairs_equivalent(a, b) for b in pairs] for a in pairs]
    refl = all(E[i][i] for i in range(n))
    symm = all(E[i][j] == E[j][i] for i in range(n) for j in range(n))
    trans = all(E[i][k] for i in range(n) for j in range(n) for k in range(n) if E[i][j] and E[j][k])
    keys = all(class_key(pairs[i]) == class_key(pairs[j]) for i in range(n) for j in range(n) if E[i][j])
    oracle = all(E[i][j] == pairs_equivalent_by_exponent(pairs[i], pairs[j])
                 for i in range(n) for j in range(n)
                 if pairs[i].h.degree() == 1 and pairs[j].h.degree() == 1)
    ok = ok and refl and symm and trans and keys and oracle and n >= 15
    return ok, (f"{len(corpus)} motives, {agree} agreeing pairs; {n} Weil pairs: reflexive={refl} "
                f"symmetric={symm} transitive={trans} key-invariant={keys} oracle={oracle}")


# ---------------------------------------------------------------------------
# 9. zeta
# ---------------------------------------------------------------------------

def _zeta_sum_examples():
    C, U, D = carlitz(3), unit(3), drinfeld2(3, "1")
    T2, tw, Dm = carlitz(3, power=2), carlitz(3, c="-1"), drinfeld2(3, "-1")
    return [(C, U), (C, C), (C, D), (U, U), (D, tw), (C, T2), (U, D), (C, tw), (T2, U), (D, Dm)]


def _zeta_coefficients_in_Q(M) -> bool:
    """Each factor det(1 - u Lambda^i Pi) has sigma-fixed coefficients over L(t)."""
    R = M.rings
    Pi = frobenius(M).matrix
    for i in range(M.rank + 1):
        chi = Pi.compound(i).charpoly("x")
        if any(R.sigma(c) != c for c in chi.c):
            return False
    return True


def check_zeta(quick=False):
    C = carlitz(3)
    z = zeta(C).to_json()
    exact = z == {"num": "1 - t*u", "den": "1 - u"}
    examples = _zeta_sum_examples()
    if quick:
        examples = examples[:4]
    mult = 0
    inQ = True
    for M, N in examples:
        S = direct_sum(M, N)
        if zeta(S) == zeta(M) * zeta(N):
            mult += 1
        inQ = inQ and _zeta_coefficients_in_Q(S)
    ok = exact and mult == len(examples) and inQ
    return ok, (f"Carlitz zeta exact: {exact} {z}; multiplicative on {mult}/{len(examples)} "
                f"direct sums; coefficients in Q: {inQ}")


# ---------------------------------------------------------------------------
# 10. oracle cross-checks
# ---------------------------------------------------------------------------

def corpus_polynomials(quick=False) -> list:
    rng = random.Random(5)
    motives = mixed_corpus(rng, quick) + honda_tate_corpus(3)
    polys = []
    for M in motives:
        cd = char_data(M)
        polys += [cd.chi, cd.mu]
        for k in (2, 3):
            if cd.mu.degree() >= 1:
                polys.append(power_charpoly(cd.mu, k))
    by_q = {}
    for f in polys:
        by_q.setdefault(f.ring, []).append(f)
    for ring, fs in by_q.items():
        for f, g in itertools.combinations(fs[:8], 2):
            polys.append(f * g)
    out = []
    for f in polys:
        if 1 <= f.degree() <= 4 and not any(f == g for g in out):
            out.append(f)
    return out


def check_oracles(quick=False):
    polys = corpus_polynomials(quick)
    agree = 0
    for f in polys:
        lc, facs = factor_over_function_field(f)
        prod = f.ring(lc)
        for g, m in facs:
            prod = prod * g ** m
        if prod == f and facs == factor_bruteforce(f):
            agree += 1
    rng = random.Random(10)
    from .algebra.ff import default_field
    from .algebra.poly import PolyRing
    from .algebra.ratfunc import FracField
    Fq = default_field(3, 1)
    Rt = PolyRing(Fq, "t")
    Q = FracField(Rt)
    Qx = PolyRing(Q, "x")
    places = [Place.infinity(Fq)] + list(iter_places(Fq, 2))
    slopes_ok = 0
    for _ in range(10):
        while True:
            num = Poly(Rt, [Fq.random_element(rng) for _ in range(rng.randint(1, 4))])
            den = Poly(Rt, [Fq.random_element(rng) for _ in range(rng.randint(1, 3))])
            if num and den:
                break
        c = Q.frac(num, den)
        v = rng.choice(places)
        if newton_slopes(Qx.gen - Qx(c), v) == [v.valuation(c)]:
            slopes_ok += 1
    ok = agree == len(polys) and slopes_ok == 10
    return ok, f"factorization agrees on {agree}/{len(polys)} polynomials; slopes of x - c: {slopes_ok}/10"


CHECKS = [
    (1, "descent of chi and mu", 60, check_descent),
    (2, "Hom dimension equals the local formula", 300, check_tate_conjecture),
    (3, "Galois action on Tate modules", 120, check_galois),
    (4, "quasi-isogeny from Hecke modification", 180, check_hecke),
    (5, "semisimplicity equivalence", 180, check_semisimplicity),
    (6, "endomorphism numerology", 180, check_numerology),
    (7, "semisimplification by p-power base change", 120, check_semisimplification),
    (8, "Honda-Tate injectivity", 300, check_honda_tate),
    (9, "zeta function", 60, check_zeta),
    (10, "oracle cross-checks", 300, check_oracles),
]


def run_check(number: int, quick=False) -> CheckResult:
    for num, name, limit, fn in CHECKS:
        if num == number:
            return _timed(num, name, limit, fn, quick)
    raise KeyError(number)


def run_all(quick=False, out=print) -> list:
    results = []
    for num, _, _, _ in CHECKS:
        res = run_check(num, quick)
        out(res.line())
        results.append(res)
    return results
