from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from cmotives.algebra.ff import GF, default_field, fp_is_irreducible, least_irreducible
from cmotives.algebra.ffactor import factor_over_finite_field, is_irreducible_ff, roots
from cmotives.algebra.funcfactor import factor_bruteforce, factor_over_function_field
from cmotives.algebra.places import Place, iter_places, newton_slopes, parse_place, support
from cmotives.algebra.poly import Poly, PolyRing, poly_gcd, poly_xgcd
from cmotives.algebra.printing import to_str
from cmotives.corpus import carlitz
from cmotives.errors import InvalidInput

from conftest import qel, qpoly

FIELDS = [(2, 1), (3, 1), (2, 4), (3, 2), (5, 1), (2, 8)]


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,n", FIELDS)
def test_default_field_modulus_is_irreducible(p, n):
    F = default_field(p, n)
    assert F.order == p ** n
    assert fp_is_irreducible(list(F.modulus), p)
    poly = sympy.Poly(list(reversed(F.modulus)), sympy.Symbol("g"), modulus=p)
    assert poly.is_irreducible


@pytest.mark.parametrize("p,n", [(2, 3), (3, 5), (5, 4), (3, 12)])
def test_least_irreducible_is_lexicographically_least(p, n):
    g = sympy.Symbol("g")
    f = least_irreducible(p, n)
    assert sympy.Poly(list(reversed(f)), g, modulus=p).is_irreducible
    # every smaller monic candidate (in the same integer encoding) is reducible
    code = sum(c * p ** i for i, c in enumerate(f[:-1]))
    for smaller in range(max(0, code - 30), code):
        coeffs = [(smaller // p ** i) % p for i in range(n)] + [1]
        assert not sympy.Poly(list(reversed(coeffs)), g, modulus=p).is_irreducible


def test_rejects_reducible_modulus():
    with pytest.raises(InvalidInput):
        GF(2, (1, 0, 1))


def _elements(F):
    return st.integers(min_value=0, max_value=F.order - 1).map(F.from_int)


@pytest.mark.parametrize("p,n", FIELDS)
def test_field_axioms(p, n):
    F = default_field(p, n)

    @given(_elements(F), _elements(F), _elements(F))
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a - a == F.zero
        if a:
            assert a * a.inverse() == F.one
        assert (a + b) ** p == a ** p + b ** p
    check()


def test_large_odd_field_multiplication_matches_schoolbook():
    F = default_field(3, 40)
    rng = random.Random(0)
    for _ in range(20):
        a, b = F.random_element(rng), F.random_element(rng)
        va, vb = a.vector(), b.vector()
        prod = [0] * (2 * F.degree - 1)
        for i, x in enumerate(va):
            for j, y in enumerate(vb):
                prod[i + j] += x * y
        g = sympy.Symbol("g")
        mod = sympy.Poly(list(reversed(F.modulus)), g, modulus=3)
        rem = sympy.Poly(list(reversed(prod)), g, modulus=3).rem(mod)
        expect = [int(c) % 3 for c in reversed(rem.all_coeffs())]
        expect += [0] * (F.degree - len(expect))
        assert (a * b).vector() == expect


@pytest.mark.parametrize("p,n", [(2, 4), (3, 2), (5, 1)])
def test_multiplicative_order_divides_group_order(p, n):
    F = default_field(p, n)
    for x in F.elements():
        if x:
            k = x.multiplicative_order()
            assert (F.order - 1) % k == 0 and x ** k == F.one


# ---------------------------------------------------------------------------
# polynomials over finite fields
# ---------------------------------------------------------------------------

def _fpoly(F, coeffs):
    return Poly(PolyRing(F, "x"), [F(c) for c in coeffs])


def test_factor_x2_plus_1_over_f2():
    F = default_field(2, 1)
    _, facs = factor_over_finite_field(_fpoly(F, [1, 0, 1]))
    assert [(to_str(g), m) for g, m in facs] == [("x + 1", 2)]


def test_factor_x_over_f3():
    F = default_field(3, 1)
    _, facs = factor_over_finite_field(_fpoly(F, [0, 1]))
    assert [(to_str(g), m) for g, m in facs] == [("x", 1)]


def test_x4_x_1_irreducible_over_f2():
    F = default_field(2, 1)
    f = _fpoly(F, [1, 1, 0, 0, 1])
    _, facs = factor_over_finite_field(f)
    assert len(facs) == 1 and facs[0][0].degree() == 4
    # oracle: no factor of degree <= 2 by exhaustive division
    R = f.ring
    for d in (1, 2):
        for code in range(2 ** d):
            g = Poly(R, [F((code >> i) & 1) for i in range(d)] + [F.one])
            assert f % g


@given(st.lists(st.integers(0, 2), min_size=2, max_size=8), st.integers(0, 2 ** 16))
def test_finite_field_factorization_matches_sympy(coeffs, seed):
    coeffs = coeffs + [1]
    F = default_field(3, 1)
    f = _fpoly(F, coeffs)
    lc, facs = factor_over_finite_field(f, seed=seed)
    x = sympy.Symbol("x")
    _, ref = sympy.Poly(list(reversed(coeffs)), x, modulus=3).factor_list()
    got = sorted((tuple(int(c.v) for c in g.c), m) for g, m in facs)
    expect = sorted((tuple(int(c) % 3 for c in reversed(g.monic().all_coeffs())), m) for g, m in ref)
    assert got == expect


def test_roots_over_f4():
    F = default_field(2, 2)
    # x^2 + x + 1 splits over F_4
    rts = roots(_fpoly(F, [1, 1, 1]))
    assert len(rts) == 2
    for r in rts:
        assert r * r + r + F.one == F.zero


@given(st.lists(st.integers(0, 4), min_size=1, max_size=6),
       st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_xgcd_bezout(a, b):
    F = default_field(5, 1)
    f, g = _fpoly(F, a), _fpoly(F, b)
    if not f or not g:
        return
    d, s, t = poly_xgcd(f, g)
    assert s * f + t * g == d
    assert d == poly_gcd(f, g)
    assert not (f % d) and not (g % d)


def test_rabin_irreducibility_agrees_with_factorization():
    F = default_field(2, 1)
    R = PolyRing(F, "x")
    for code in range(2 ** 6):
        f = Poly(R, [F((code >> i) & 1) for i in range(6)] + [F.one])
        _, facs = factor_over_finite_field(f)
        assert is_irreducible_ff(f) == (len(facs) == 1 and facs[0][1] == 1)


# ---------------------------------------------------------------------------
# polynomials over F_q(t)
# ---------------------------------------------------------------------------

C3 = carlitz(3)


def _factor_strs(f):
    _, facs = factor_over_function_field(f)
    return [(to_str(g), m) for g, m in facs]


def test_difference_of_squares():
    assert sorted(_factor_strs(qpoly(C3, "x^2 - t^2"))) == [("x + t", 1), ("x - t", 1)]


def test_x2_minus_t_irreducible_over_f3t():
    f = qpoly(C3, "x^2 - t")
    assert _factor_strs(f) == [("x^2 - t", 1)]
    assert factor_bruteforce(f) == factor_over_function_field(f)[1]


def test_repeated_factor():
    assert _factor_strs(qpoly(C3, "(x - t)^2")) == [("x - t", 2)]


def test_rational_coefficients_are_handled():
    f = qpoly(C3, "(x - 1/t) * (x^2 + t*x + 1/(t+1))")
    facs = _factor_strs(f)
    assert ("x - 1/t", 1) in facs and len(facs) == 2


def test_inseparable_polynomial_in_characteristic_2():
    C2 = carlitz(2)
    f = qpoly(C2, "x^2 - t")
    assert _factor_strs(f) == [("x^2 + t", 1)]
    assert _factor_strs(qpoly(C2, "x^2 + t^2")) == [("x + t", 2)]


@given(st.integers(0, 2 ** 20))
def test_factorization_matches_bruteforce_on_products(seed):
    rng = random.Random(seed)
    F = C3.tower.Fq
    Rq = C3.rings.Rq
    Qx = C3.rings.Qx
    Q = C3.rings.Q

    def rand_q():
        num = Poly(Rq, [F.random_element(rng) for _ in range(rng.randint(1, 3))])
        return Q(num) if num else Q.one

    f = Qx.one
    for _ in range(rng.randint(1, 2)):
        g = Qx.monomial(rng.randint(1, 2)) + Poly(Qx, [rand_q() for _ in range(2)])
        f = f * g.monic()
    if f.degree() > 4:
        return
    lc, facs = factor_over_function_field(f)
    prod = Qx(lc)
    for g, m in facs:
        prod = prod * g ** m
    assert prod == f
    assert facs == factor_bruteforce(f)


# ---------------------------------------------------------------------------
# places and valuations
# ---------------------------------------------------------------------------

def test_valuations():
    Fq = C3.tower.Fq
    t = qel(C3, "t")
    assert parse_place("t", Fq).valuation(t) == 1
    assert Place.infinity(Fq).valuation(t) == -1
    assert parse_place("t^2 + 1", Fq).valuation(qel(C3, "(t^2 + 1)/t")) == 1


def test_place_must_be_irreducible():
    with pytest.raises(InvalidInput):
        parse_place("t^2 - 1", C3.tower.Fq)


def test_places_of_degree_two_over_f3():
    labels = [to_str(v.poly) for v in iter_places(C3.tower.Fq, 2) if v.degree == 2]
    assert labels == ["t^2 + 1", "t^2 + t - 1", "t^2 - t - 1"]
    # (q^2 - q) / 2 monic irreducible quadratics
    assert len(labels) == (9 - 3) // 2


def test_support_and_product_formula():
    x = qel(C3, "(t^2 + 1)^2 * (t - 1) / t^3")
    places = support(x)
    assert [to_str(v.poly) for v in places] == [to_str(parse_place(s, C3.tower.Fq).poly)
                                                for s in ("t", "t + 2", "t^2 + 1")]
    total = sum(v.degree * v.valuation(x) for v in places)
    total += Place.infinity(C3.tower.Fq).valuation(x)
    assert total == 0


def test_newton_slopes_small_cases():
    Fq = C3.tower.Fq
    v0, v1 = parse_place("t", Fq), parse_place("t - 1", Fq)
    assert newton_slopes(qpoly(C3, "x - t"), v0) == [1]
    assert newton_slopes(qpoly(C3, "x - t"), v1) == [0]
    # lower hull through (0, 1) and (2, 0); the point (1, 1) lies above it
    assert newton_slopes(qpoly(C3, "x^2 - t*x + t"), v0) == [Fraction(1, 2)] * 2


@given(st.integers(0, 2 ** 20))
def test_newton_slopes_of_products_are_root_valuations(seed):
    rng = random.Random(seed)
    F = C3.tower.Fq
    R = C3.rings
    places = [Place.infinity(F)] + list(iter_places(F, 2))
    v = rng.choice(places)
    roots_ = []
    for _ in range(rng.randint(1, 3)):
        num = Poly(R.Rq, [F.random_element(rng) for _ in range(rng.randint(1, 3))])
        den = Poly(R.Rq, [F.random_element(rng) for _ in range(rng.randint(1, 2))])
        if num and den:
            roots_.append(R.Q.frac(num, den))
    if not roots_:
        return
    f = R.Qx.one
    for c in roots_:
        f = f * (R.Qx.gen - R.Qx(c))
    assert newton_slopes(f, v) == sorted(v.valuation(c) for c in roots_)
