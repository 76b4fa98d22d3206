from math import gcd
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burchkit import semigroup as sg
from burchkit.errors import InputError
from burchkit.semigroup import NumericalSemigroup, RelativeIdeal, rel_add, rel_colon


def brute_members(gens, limit):
    ok = [False] * (limit + 1)
    ok[0] = True
    for z in range(1, limit + 1):
        ok[z] = any(z >= a and ok[z - a] for a in gens)
    return ok


def test_two_three():
    H = NumericalSemigroup((2, 3))
    assert H.frobenius == 1 and H.gaps == [1]
    assert H.pf == [1] and H.symmetric
    assert H.apery(2) == [0, 3]


def test_example_9_10_61_62():
    H = NumericalSemigroup((9, 10, 61, 62))
    assert H.gens == (9, 10, 61, 62)
    assert H.pf == [51, 52, 53]
    prof = H.profile()
    assert prof["multiplicity"] == 9 and prof["embdim"] == 4 and not prof["minimal_multiplicity"]
    assert sg.surjection_criterion(H) == {"verdict": True, "via_pf": True, "via_colon": True}
    assert not sg.nearly_gorenstein(H)
    assert not sg.self_dual_check(H)


def test_one():
    H = NumericalSemigroup((1,))
    assert H.frobenius == -1 and H.gaps == [] and H.apery(1) == [0]
    assert H.symmetric
    assert H.canonical_ideal == H.as_ideal
    assert sg.self_dual_check(H)


def test_minimalizes_and_rejects():
    assert NumericalSemigroup((3, 5, 6, 8, 10)).gens == (3, 5)
    with pytest.raises(InputError):
        NumericalSemigroup((4, 6))
    with pytest.raises(InputError):
        NumericalSemigroup((0, 1))
    with pytest.raises(InputError):
        NumericalSemigroup((3, 5)).apery(4)


def test_apery_three_five():
    assert NumericalSemigroup((3, 5)).apery(3) == [0, 10, 5]


def test_four_five_six():
    H = NumericalSemigroup((4, 5, 6))
    assert H.gaps == [1, 2, 3, 7] and H.pf == [7]
    s = sg.surjection_criterion(H)
    assert s["verdict"] is False and s["via_colon"] is False


def test_three_four_five():
    H = NumericalSemigroup((3, 4, 5))
    assert H.profile()["minimal_multiplicity"]
    assert H.canonical_ideal.generators == [0, 1]
    assert sg.nearly_gorenstein(H)


def test_canonical_and_colon_identities():
    for gens in [(2, 3), (3, 4, 5), (4, 5, 6), (5, 7, 9), (9, 10, 61, 62)]:
        H = NumericalSemigroup(gens)
        K = H.canonical_ideal
        assert rel_colon(K, K) == H.as_ideal
        assert rel_add(H.as_ideal, H.maximal_ideal) == H.maximal_ideal


def test_two_m_minus_m_for_two_three():
    H = NumericalSemigroup((2, 3))
    M = H.maximal_ideal
    assert rel_colon(rel_add(M, M), M) == M


def test_self_dual_two_three():
    H = NumericalSemigroup((2, 3))
    dual = rel_colon(H.canonical_ideal, H.maximal_ideal)
    assert dual == H.maximal_ideal.translate(-2)


def test_relative_ideal_normalization():
    H = NumericalSemigroup((3, 5))
    # 5 = 2 + 3 and 7 = 2 + 5, so both are redundant
    I = RelativeIdeal.from_generators(H, [2, 5, 7])
    assert I.generators == [2]
    assert I == RelativeIdeal.from_generators(H, [2])
    J = RelativeIdeal.from_generators(H, [0, 4])
    assert J.generators == [0, 4]
    assert 1 not in J and 2 not in J and 4 in J and 7 in J


gens_strategy = st.lists(st.integers(2, 25), min_size=1, max_size=4).filter(lambda g: reduce(gcd, g) == 1)


@settings(max_examples=120, deadline=None)
@given(gens_strategy)
def test_against_brute_force(gens):
    H = NumericalSemigroup(gens)
    limit = H.frobenius + max(gens) + 5
    ok = brute_members(gens, limit)
    assert [z for z in range(limit + 1) if not ok[z]] == H.gaps
    pf = [f for f in H.gaps if all(ok[f + a] for a in H.gens)]
    assert H.pf == pf
    assert H.pf == H.pf_via_apery()


@settings(max_examples=80, deadline=None)
@given(gens_strategy, st.lists(st.integers(-10, 30), min_size=1, max_size=3),
       st.lists(st.integers(-10, 30), min_size=1, max_size=3))
def test_colon_by_brute_scan(gens, e1, e2):
    H = NumericalSemigroup(gens)
    I = H.ideal(e1)
    J = H.ideal(e2)
    C = rel_colon(I, J)
    lo, hi = min(e1) - max(e2) - H.frobenius - 5, max(e1) + H.frobenius + 5
    for z in range(lo, hi):
        expected = all((z + j) in I for j in range(min(e2), min(e2) + H.frobenius + max(H.gens) + 3) if j in J)
        assert (z in C) == expected
    KK = rel_colon(H.canonical_ideal, rel_colon(H.canonical_ideal, I))
    assert KK == I


def test_minimal_tuples_small():
    tuples = sg.minimal_tuples(2, 5)
    assert (2, 3) in tuples and (1,) in tuples and (2, 4) not in tuples and (3, 6) not in tuples
    for t in tuples:
        assert NumericalSemigroup(t).gens == t
