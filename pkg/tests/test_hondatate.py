from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from cmotives.algebra.printing import to_str
from cmotives.corpus import carlitz, drinfeld2, honda_tate_corpus, unipotent, unit
from cmotives.errors import NotSemisimple, ReducibleInput
from cmotives.hondatate import (adjust, class_key, class_product, classes_equal,
                                honda_tate_class, is_weil, pairs_equivalent,
                                pairs_equivalent_by_exponent, weil_pair, weil_pair_of)
from cmotives.isogeny import is_quasi_isogenous
from cmotives.motive import base_change, direct_sum

from conftest import qpoly

C = carlitz(3)
R = C.rings


def pair(text, n=1, M=C):
    return weil_pair(qpoly(M, text), n)


def _pairs(M):
    return [(to_str(p.h), p.n, m) for p, m in weil_pair_of(M)]


# ---------------------------------------------------------------------------
# Weil numbers
# ---------------------------------------------------------------------------

def test_is_weil_examples():
    v0, v1, inf = R.place("t"), R.place("t - 1"), R.place("infinity")
    assert is_weil(qpoly(C, "x - t"), 1, [v0, inf])
    assert not is_weil(qpoly(C, "x - t"), 1, [v1, inf])
    assert is_weil(qpoly(C, "x - (t - 1)/t"), 1, [v0, v1, inf])
    # (t - 1)/t is a unit at infinity, so infinity need not be listed
    assert is_weil(qpoly(C, "x - (t - 1)/t"), 1, [v0, v1])


def test_weil_pair_requires_irreducible():
    with pytest.raises(ReducibleInput):
        pair("x^2 - t^2")


def test_weil_pairs_of_motives():
    assert _pairs(C) == [("x - t", 1, 1)]
    assert _pairs(carlitz(3, e=2)) == [("x - t^2", 2, 1)]
    assert sorted(_pairs(direct_sum(C, unit(3)))) == [("x - 1", 1, 1), ("x - t", 1, 1)]


def test_weil_pairs_exist_on_corpus():
    for M in honda_tate_corpus(3) + honda_tate_corpus(2):
        assert weil_pair_of(M)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

def test_equivalence_examples():
    a = pair("x - t")
    assert pairs_equivalent(a, a)
    assert pairs_equivalent(a, pair("x - t^2", 2))
    assert not pairs_equivalent(a, pair("x - (t + 1)"))


def test_twist_by_root_of_unity_is_equivalent():
    a, b = pair("x - t"), pair("x + t")
    assert pairs_equivalent(a, b) and pairs_equivalent_by_exponent(a, b)
    assert not pairs_equivalent(a, pair("x + t^2"))


def test_quadratic_pair_equivalent_to_linear_one():
    # alpha^2 = t, so (alpha, 1) ~ (t, 2)
    assert pairs_equivalent(pair("x^2 - t"), pair("x - t", 2))


def test_class_key_labels():
    assert class_key(pair("x - t")).label() == "t[1:1];infinity[-1:1]"
    assert class_key(pair("x - 1")).label() == "unit"
    D = drinfeld2(3, "1")
    (p, _), = weil_pair_of(D)
    assert class_key(p).label() == "t[0:1/2,1:1/2];infinity[-1/2:1]"


def _corpus_pairs():
    out = []
    for M in honda_tate_corpus(3):
        for p, _ in weil_pair_of(M):
            out.extend([p, adjust(p, 2), adjust(p, 3)])
    return out


PAIRS = _corpus_pairs()
MATRIX = [[pairs_equivalent(a, b) for b in PAIRS] for a in PAIRS]


def test_corpus_has_enough_pairs():
    assert len(PAIRS) >= 15


@given(st.integers(0, len(PAIRS) - 1), st.integers(0, len(PAIRS) - 1), st.integers(0, len(PAIRS) - 1))
def test_equivalence_relation_axioms(i, j, k):
    E = MATRIX
    assert E[i][i]
    assert E[i][j] == E[j][i]
    if E[i][j] and E[j][k]:
        assert E[i][k]
    if E[i][j]:
        assert class_key(PAIRS[i]) == class_key(PAIRS[j])


def test_gcd_route_agrees_with_exponent_route_on_linear_pairs():
    lin = [p for p in PAIRS if p.h.degree() == 1]
    for a, b in itertools.product(lin, lin):
        assert pairs_equivalent(a, b) == pairs_equivalent_by_exponent(a, b)


def test_gcd_route_agrees_with_exponent_route_on_quadratic_pairs():
    D1, D2 = (weil_pair_of(drinfeld2(2, g))[0][0] for g in ("1", "0"))
    for a, b in [(D1, D1), (D1, D2), (D1, adjust(D1, 2))]:
        assert pairs_equivalent(a, b) == pairs_equivalent_by_exponent(a, b)


# ---------------------------------------------------------------------------
# classes of motives
# ---------------------------------------------------------------------------

def test_class_examples():
    assert classes_equal(honda_tate_class(C), honda_tate_class(base_change(C, 2)))
    assert not classes_equal(honda_tate_class(C), honda_tate_class(unit(3)))
    cc = honda_tate_class(direct_sum(C, C))
    assert len(cc.classes) == 1 and cc.classes[0].multiplicity == 2


def test_class_needs_semisimple_motive():
    with pytest.raises(NotSemisimple):
        honda_tate_class(unipotent(3, b="t"))


@pytest.mark.parametrize("m", [2, 3])
def test_base_change_coherence(m):
    for M in honda_tate_corpus(3):
        B = base_change(M, m)
        assert classes_equal(honda_tate_class(M), honda_tate_class(B))
        got = sorted((to_str(p.h), p.n) for p, _ in weil_pair_of(B))
        want = sorted((to_str(adjust(p, p.n * m).h), p.n * m) for p, _ in weil_pair_of(M))
        assert got == want


def test_class_equality_matches_isogeny_after_base_change():
    corpus = honda_tate_corpus(3)
    classes = [honda_tate_class(M) for M in corpus]
    for i, j in itertools.combinations(range(len(corpus)), 2):
        iso = any(is_quasi_isogenous(base_change(corpus[i], l), base_change(corpus[j], l)).status == "Yes"
                  for l in (1, 2, 3, 4, 6))
        assert classes_equal(classes[i], classes[j]) == iso


def test_class_json_record():
    doc = honda_tate_class(C, witness="abc").to_json()
    assert doc == {"slope_key": "t[1:1];infinity[-1:1]",
                   "pairs": [{"h": "x - t", "n": 1, "multiplicity": 1}], "witnesses": ["abc"]}


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def _product(a, b):
    return [(to_str(p.h), p.n, m) for p, m in class_product(a, b)]


def test_unit_class_is_neutral():
    assert _product(pair("x - t"), pair("x - 1")) == [("x - t", 1, 1)]


def test_product_of_carlitz_with_itself():
    assert _product(pair("x - t"), pair("x - t")) == [("x - t^2", 1, 1)]


def test_product_is_independent_of_representative():
    a = pair("x - t")
    b = adjust(a, 2)
    left = class_product(a, a)
    right = class_product(b, a)
    assert len(left) == len(right) == 1
    assert pairs_equivalent(left[0][0], right[0][0])
