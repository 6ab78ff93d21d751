from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, strategies as st

from cmotives.algebra.polyalg import power_charpoly, product_charpoly
from cmotives.algebra.printing import to_str
from cmotives.corpus import carlitz, chardata_at, from_rows, random_motive, tower, unipotent, unit
from cmotives.errors import (ChardataMismatch, ForbiddenZeroLocus, InvalidInput, NonInvertibleTau,
                             ParseError, TowerMismatch)
from cmotives.motive import (base_change, char_data, direct_sum, dual, exterior_power, frobenius,
                             internal_hom, load_motive, motive_from_json, motive_hash, motive_to_json,
                             tensor, validate)

from conftest import DATA, qpoly

motive_params = st.tuples(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2 ** 20))


def _random(params):
    q, e, r, seed = params
    return random_motive(q, e, r, random.Random(seed))


def _entries(A):
    return [[to_str(x) for x in row] for row in A.rows]


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_carlitz_is_valid_with_k_one():
    rep = validate(carlitz(3))
    assert rep["valid"] and rep["k"] == [1]


def test_zero_outside_characteristic_places_is_rejected():
    cd = chardata_at(tower(3))
    with pytest.raises(ForbiddenZeroLocus) as err:
        from_rows(cd, [["t - 1"]])
    assert err.value.details["offending"] == ["t - 1"]


def test_unit_motive_has_all_k_zero():
    rep = validate(unit(3, r=2))
    assert rep["k"] == [0]


def test_singular_matrix_is_rejected():
    cd = chardata_at(tower(3))
    with pytest.raises(NonInvertibleTau):
        from_rows(cd, [["t", "t"], ["1", "1"]])


def test_pole_outside_characteristic_places_is_rejected():
    cd = chardata_at(tower(3))
    with pytest.raises(InvalidInput):
        from_rows(cd, [["1/(t - 1)"]])


def test_modes_differ_on_conjugate_sections():
    # theta = g in F_9 is not fixed by sigma; t - g^3 vanishes on a conjugate section
    from cmotives.motive import CharacteristicData
    tw = tower(3, 2)
    R = carlitz(3, e=2).rings
    v = R.place("t^2 + 1")
    roots = [x for x in tw.L.elements() if x * x + tw.L.one == tw.L.zero]
    th = roots[0]
    cd = CharacteristicData(tw, [v], [th])
    conj = to_str(th.frobenius(1))
    M_ii = from_rows(cd, [[f"t - ({conj})"]], mode="ii")
    assert validate(M_ii)["k_conjugates"] == [[0, 1]]
    with pytest.raises(ForbiddenZeroLocus):
        validate(M_ii, mode="ii-prime")
    # construction helpers fall back to the relaxed mode
    assert from_rows(cd, [[f"t - ({conj})"]], mode="ii-prime").mode == "relaxed"


def test_relaxed_mode_allows_poles_at_characteristic_places():
    cd = chardata_at(tower(3))
    M = from_rows(cd, [["1/t"]], mode="relaxed")
    assert validate(M)["k"] == [-1]
    for mode in ("ii", "ii-prime"):
        with pytest.raises(ForbiddenZeroLocus):
            validate(M, mode=mode)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def test_tensor_of_carlitz():
    C = carlitz(3)
    T = tensor(C, C)
    assert T.rank == 1 and _entries(T.T) == [["t^2"]]


def test_dual_of_carlitz_is_flagged():
    D = dual(carlitz(3))
    assert _entries(D.T) == [["1/t"]]
    assert D.relaxed


def test_top_exterior_power_is_determinant():
    M = random_motive(3, 1, 3, random.Random(3))
    top = exterior_power(M, 3)
    assert top.rank == 1 and top.T.rows[0][0] == M.T.det()
    assert exterior_power(M, 4).rank == 0


def test_internal_hom_is_dual_tensor():
    C, U = carlitz(3), unit(3)
    assert internal_hom(C, U).T == tensor(dual(C), U).T


def test_mismatched_chardata_is_rejected():
    C = carlitz(3)
    other = from_rows(chardata_at(tower(3), place="t - 1", theta="1"), [["t - 1"]])
    with pytest.raises(ChardataMismatch):
        direct_sum(C, other)
    with pytest.raises(TowerMismatch):
        direct_sum(C, carlitz(3, e=2))


@given(motive_params, motive_params)
def test_direct_sum_and_tensor_characteristic_polynomials(s1, s2):
    q, e = s1[0], s1[1]
    M = _random(s1)
    N = _random((q, e, 1 + s2[2] % 2, s2[3]))
    chi_M, chi_N = char_data(M).chi, char_data(N).chi
    assert char_data(direct_sum(M, N)).chi == chi_M * chi_N
    # roots of the tensor product are the pairwise products of roots
    assert char_data(tensor(M, N)).chi == product_charpoly(chi_M, chi_N)


@given(motive_params)
def test_top_exterior_power_chi_is_x_minus_det(params):
    M = _random(params)
    top = exterior_power(M, M.rank)
    assert char_data(top).chi == _descend_det_x(M)


def _descend_det_x(M):
    R = M.rings
    return R.Qx.gen - R.Qx(R.descend(frobenius(M).matrix.det()))


# ---------------------------------------------------------------------------
# Frobenius and characteristic data
# ---------------------------------------------------------------------------

def test_frobenius_examples():
    assert _entries(frobenius(carlitz(3)).matrix) == [["t"]]
    assert _entries(frobenius(base_change(carlitz(3), 2)).matrix) == [["t^2"]]


def test_frobenius_of_twisted_carlitz_over_f9():
    M = carlitz(3, e=2, c="g")
    R = M.rings
    g = R.L.gen
    expect = R.KL(g ** (1 + 3)) * R.KL.gen ** 2
    assert frobenius(M).matrix.rows[0][0] == expect
    # oracle: g^(1+q) is the norm of g, which lies in F_3
    assert R.tower.in_Fq(g ** 4)


def test_char_data_examples():
    cd = char_data(carlitz(3))
    assert to_str(cd.chi) == to_str(cd.mu) == "x - t"
    assert to_str(char_data(carlitz(3, e=2)).chi) == "x - t^2"


def test_unipotent_char_data():
    M = from_rows(chardata_at(tower(3)), [["1", "t"], ["0", "1"]], mode="relaxed")
    cd = char_data(M)
    assert to_str(cd.chi) == to_str(cd.mu) == "x^2 + x + 1"  # (x - 1)^2 over F_3
    assert cd.chi == qpoly(M, "(x - 1)^2")


@given(motive_params)
def test_frobenius_intertwines_tau(params):
    M = _random(params)
    Pi = frobenius(M).matrix
    assert Pi * M.T == M.T * M.rings.sigma_matrix(Pi)


@given(motive_params)
def test_chi_and_mu_descend_and_annihilate(params):
    M = _random(params)
    R = M.rings
    Pi = frobenius(M).matrix
    cd = char_data(M)
    for f in (Pi.charpoly("x"), Pi.minpoly("x")):
        assert all(R.sigma(c) == c for c in f.c)
    assert not (cd.chi % cd.mu)
    mu_L = cd.mu.map_coeffs(R.embed, R.KLx)
    assert Pi.evaluate_poly(mu_L).is_zero()


# ---------------------------------------------------------------------------
# base change
# ---------------------------------------------------------------------------

def test_base_change_by_one_is_identity():
    C = carlitz(3)
    assert base_change(C, 1) is C


def test_unipotent_frobenius_after_base_change_by_p():
    M = unipotent(3, b="t")
    assert frobenius(base_change(M, 3)).matrix.is_identity()


@given(motive_params, st.integers(2, 3))
def test_base_change_frobenius_is_power(params, m):
    q, e, r, seed = params
    M = random_motive(q, 1, min(r, 2), random.Random(seed))
    B = base_change(M, m)
    chi_B = char_data(B).chi
    expect = power_charpoly(char_data(M).chi, m)
    assert to_str(chi_B) == to_str(expect)


# ---------------------------------------------------------------------------
# documents
# ---------------------------------------------------------------------------

def test_json_round_trip_and_hash():
    M = random_motive(4, 2, 2, random.Random(5))
    doc = motive_to_json(M)
    M2 = motive_from_json(json.loads(json.dumps(doc)))
    assert M2.T == M.T and M2.tower == M.tower
    assert motive_hash(M2) == motive_hash(M)


def test_load_sample_file():
    M = load_motive(DATA / "carlitz.json")
    assert to_str(char_data(M).chi) == "x - t"


@pytest.mark.parametrize("doc,err", [
    ({"q": 6, "tau": [["t"]], "characteristic": []}, InvalidInput),
    ({"q": 3, "tau": [["t", "1"]], "characteristic": []}, InvalidInput),
    ({"q": 3, "tau": [["t +"]], "characteristic": []}, ParseError),
    ({"q": 3, "tau": [["t"]], "characteristic": [{"place": "t", "theta": "0"}]}, InvalidInput),
])
def test_malformed_documents(doc, err):
    with pytest.raises(err):
        motive_from_json(doc)
