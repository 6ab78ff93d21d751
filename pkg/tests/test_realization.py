from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from cmotives.algebra.matrix import Matrix
from cmotives.algebra.printing import to_str
from cmotives.corpus import carlitz, drinfeld2, from_rows, random_motive, tower, unit
from cmotives.errors import InvalidInput
from cmotives.isogeny import hecke_modify
from cmotives.motive import CharacteristicData, direct_sum, frobenius, validate
from cmotives.realization import (Zeta, basis_is_free, check_fixed_points, crystal_components_agree,
                                  crystalline, etale_cohomology, tate_degree, tate_map, tate_module,
                                  zeta)

N = 8
C = carlitz(3)
R = C.rings


def _coeffs(series_matrix_layers, K, n=N):
    return [series_matrix_layers[k][0][0] for k in range(n)]


def _expect(K, ints):
    return [K(c) for c in ints]


# ---------------------------------------------------------------------------
# crystalline realization
# ---------------------------------------------------------------------------

def test_crystal_of_carlitz_at_t_minus_1():
    cr = crystalline(C, R.place("t - 1"), N)
    s = cr.matrix[0][0]
    assert s.coeff_list() == _expect(cr.field, [1, 1] + [0] * (N - 2))
    assert cr.etale and cr.det_order == 0


def test_crystal_of_carlitz_at_characteristic_place():
    cr = crystalline(C, R.place("t"), N)
    assert cr.matrix[0][0].val == 1 and cr.matrix[0][0].coefficient(1) == cr.field.one
    assert not cr.etale and cr.det_order == 1


def test_crystal_of_carlitz_at_infinity_has_a_pole():
    cr = crystalline(C, R.place("infinity"), N)
    assert cr.matrix[0][0].val == -1 and not cr.etale


@pytest.mark.parametrize("place", ["t - 1", "t^2 + 1", "infinity"])
def test_crystal_of_unit_motive(place):
    cr = crystalline(unit(3), R.place(place), N)
    assert cr.etale and cr.matrix[0][0] == 1


def test_det_order_counts_zeros_on_the_chosen_component():
    # L = F_9, place t^2 + 1 of degree 2, T = t - theta: a zero on one
    # component only, so det tau^2 has z-order 1 on component 0
    tw = tower(3, 2)
    L = tw.L
    theta = [x for x in L.elements() if x * x + L.one == L.zero][0]
    R2 = carlitz(3, e=2).rings
    v = R2.place("t^2 + 1")
    M = from_rows(CharacteristicData(tw, [v], [theta]), [[f"t - ({to_str(theta)})"]])
    assert validate(M)["k_conjugates"] == [[1, 0]]
    cr = crystalline(M, v, N)
    assert cr.det_order == 1 and not cr.etale


def test_components_agree_for_rank_two_at_degree_two_place():
    assert crystal_components_agree(drinfeld2(3, "1"), R.place("t^2 + 1"), 6)
    assert crystal_components_agree(carlitz(3, e=2), R.place("t^2 + 1"), 6)


# ---------------------------------------------------------------------------
# Tate modules
# ---------------------------------------------------------------------------

def test_tate_module_of_carlitz_at_t_minus_1():
    TL = tate_module(C, R.place("t - 1"), N)
    assert TL.rank == 1 and TL.galois_check
    # Frob = (1 + z)^-1
    assert _coeffs(TL.frob, TL.field) == _expect(TL.field, [(-1) ** k for k in range(N)])
    assert check_fixed_points(TL) and basis_is_free(TL)


def test_tate_module_of_unit_is_trivial():
    TL = tate_module(unit(3), R.place("t^2 + 1"), N)
    assert _coeffs(TL.frob, TL.field) == _expect(TL.field, [1] + [0] * (N - 1))


def test_tate_module_of_carlitz_over_f9():
    M = carlitz(3, e=2)
    TL = tate_module(M, M.rings.place("t - 1"), N)
    # (1 + z)^-2 = sum (k + 1) (-z)^k
    assert _coeffs(TL.frob, TL.field) == _expect(TL.field, [(k + 1) * (-1) ** k for k in range(N)])


def test_tate_module_rejects_characteristic_place():
    with pytest.raises(InvalidInput):
        tate_module(C, R.place("t"), N)


def test_etale_cohomology_degrees():
    CC = direct_sum(C, C)
    v = R.place("t - 1")
    H0 = etale_cohomology(CC, v, 0, N)
    assert H0.rank == 1 and _coeffs(H0.frob, H0.field) == _expect(H0.field, [1] + [0] * (N - 1))
    H2 = etale_cohomology(CC, v, 2, N)
    assert H2.rank == 1
    assert _coeffs(H2.frob, H2.field) == _expect(H2.field, [(k + 1) * (-1) ** k for k in range(N)])
    assert etale_cohomology(CC, v, 3, N).rank == 0
    assert etale_cohomology(CC, v, 1, N).rank == 2


def test_tate_module_of_rank_two_at_several_places():
    D = drinfeld2(3, "1")
    for place in ("t + 1",):
        TL = tate_module(D, R.place(place), N)
        assert TL.rank == 2 and TL.galois_check
        assert check_fixed_points(TL) and basis_is_free(TL)


@settings(max_examples=6)
@given(st.integers(0, 2 ** 20))
def test_galois_identity_on_random_motives(seed):
    rng = random.Random(seed)
    M = random_motive(2, rng.choice([1, 2]), rng.choice([1, 2]), rng, k_max=1, max_degree=2)
    v = M.rings.place("t + 1")
    if tate_degree(M, v, N) > 64:
        return
    TL = tate_module(M, v, N)
    assert TL.rank == M.rank and TL.galois_check and check_fixed_points(TL)


def test_tate_map_of_scalar_hecke_witness():
    v = R.place("t - 1")
    H = hecke_modify(C, v, Matrix(R.KL, [[R.element("t - 1")]], 1))
    out = tate_map(H.witness, H.motive, C, v, 6)
    assert out["injective"] and out["det_order"] == out["expected_order"] == 1
    away = tate_map(H.witness, H.motive, C, R.place("t + 1"), 6)
    assert away["det_order"] == away["expected_order"] == 0


def test_tate_json_is_deterministic():
    a = tate_module(C, R.place("t - 1"), 4).to_json(C.tower)
    b = tate_module(C, R.place("t - 1"), 4).to_json(C.tower)
    assert a == b and a["frob"] == [[["1", "-1", "1", "-1"]]]


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------

def test_zeta_of_carlitz():
    assert zeta(C).to_json() == {"num": "1 - t*u", "den": "1 - u"}
    assert zeta(C, drop_h0=True).to_json() == {"num": "1 - t*u", "den": "1"}


def test_zeta_of_unit_is_one():
    assert zeta(unit(3)).to_json() == {"num": "1", "den": "1"}


def test_zeta_of_carlitz_squared():
    CC = direct_sum(C, C)
    z = zeta(CC).to_json()
    # (1 - t u)^2 / ((1 - u)(1 - t^2 u)), expanded over F_3
    assert z == {"num": "1 + t*u + t^2*u^2", "den": "1 + (-t^2 - 1)*u + t^2*u^2"}


def test_zeta_is_not_multiplicative_over_direct_sums():
    # the degree-0 factor enters once for M + N but twice in the product
    U = unit(3)
    assert zeta(direct_sum(C, U)) != zeta(C) * zeta(U)
    assert zeta(direct_sum(C, U), drop_h0=True) != zeta(C, drop_h0=True) * zeta(U, drop_h0=True)


@settings(max_examples=10)
@given(st.integers(0, 2 ** 20))
def test_zeta_coefficients_are_sigma_fixed(seed):
    rng = random.Random(seed)
    M = random_motive(3, rng.choice([1, 2, 3]), rng.choice([1, 2]), rng)
    assert isinstance(zeta(M), Zeta)
    Rm = M.rings
    Pi = frobenius(M).matrix
    for i in range(M.rank + 1):
        chi = Pi.compound(i).charpoly("x")
        assert all(Rm.sigma(c) == c for c in chi.c)
