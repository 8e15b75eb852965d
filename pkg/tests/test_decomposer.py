import pytest
from hypothesis import given, settings, strategies as st

from fardiff.decomposer import (BK_TO_STANDARD, STANDARD_TO_BK, DecompositionFailure,
                                SignedDecomposition, base3_bijection, brute_force_decompositions,
                                decompose, enumerate_decompositions, evaluate, is_legal,
                                oracle_range, search_decomposition)
from fardiff.sequences import SequenceFamily, b_k_family, base3_family, fixture

FIB = SequenceFamily.skipponacci(1)


def test_2014_example():
    dec = decompose(2014, FIB)
    assert dec.terms == ((17, 1), (14, -1), (9, 1), (6, -1), (2, -1))
    assert dec.symbolic() == "+S17 -S14 +S9 -S6 -S2"
    assert dec.numeric() == "2584-610+55-13-2"
    assert dec.gaps() == [3, 5, 3, 4]


def test_zero_and_one():
    assert decompose(0, FIB).terms == ()
    assert decompose(0, FIB).symbolic() == "(empty)"
    assert decompose(1, FIB).terms == ((1, 1),)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=4), st.integers(min_value=-10 ** 12, max_value=10 ** 12))
def test_round_trip_and_legality(k, x):
    fam = SequenceFamily.skipponacci(k)
    dec = decompose(x, fam)
    assert evaluate(dec) == x
    assert is_legal(dec, fam.s, fam.d)
    assert decompose(-x, fam) == dec.negated()


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(1, 1), (2, 2), (3, 4), (2, 3), (4, 3), (5, 2)]),
       st.integers(min_value=-10 ** 9, max_value=10 ** 9))
def test_sd_round_trip(sd, x):
    fam = SequenceFamily.standard_sd(*sd)
    dec = decompose(x, fam)
    assert evaluate(dec) == x
    assert is_legal(dec, *sd)


def test_leading_term_sign_follows_x():
    for x in range(1, 300):
        assert decompose(x, FIB).terms[0][1] == 1
        assert decompose(-x, FIB).terms[0][1] == -1


def test_is_legal_rules():
    assert is_legal([(9, 1), (5, 1), (2, -1)], 4, 3)
    assert not is_legal([(9, 1), (6, 1)], 4, 3)
    assert not is_legal([(9, 1), (7, -1)], 4, 3)
    with pytest.raises(ValueError):
        is_legal([(3, 1), (5, 1)], 4, 3)


def test_parse_and_json_round_trip():
    dec = decompose(2014, FIB)
    assert SignedDecomposition.parse(dec.symbolic()).terms == dec.terms
    back = SignedDecomposition.from_dict(__import__("json").loads(dec.to_json()))
    assert back == dec and evaluate(back) == 2014
    with pytest.raises(ValueError):
        SignedDecomposition.parse("+X3")
    with pytest.raises(ValueError):
        SignedDecomposition(((3, 2),))


def test_enumeration_hits_every_value_once():
    fam = SequenceFamily.skipponacci(1)
    values = [v for v, _ in enumerate_decompositions(fam, 9)]
    bound = fam.r(9)
    inside = sorted(v for v in values if abs(v) <= bound)
    assert inside == list(range(-bound, bound + 1))


def test_brute_force_agrees_with_enumeration():
    fam = SequenceFamily.skipponacci(2)
    counts = {}
    for v, _ in enumerate_decompositions(fam, 10):
        counts[v] = counts.get(v, 0) + 1
    for x in range(-40, 41):
        assert len(brute_force_decompositions(x, fam, 10)) == counts.get(x, 0)


def test_oracle_range_for_identity_families():
    assert oracle_range(FIB, 12) == FIB.r(12)
    assert oracle_range(base3_family(), 5) == base3_family().r(5)


def test_explicit_family_without_identity_raises():
    fam = fixture("example5.1a")
    with pytest.raises(DecompositionFailure) as info:
        decompose(5, fam)
    assert info.value.index >= 1
    dec = search_decomposition(5, fam)
    assert evaluate(dec) == 5


def test_search_decomposition_reports_non_unique():
    fam = SequenceFamily.explicit([1, 2, 3, 4], 1, 1)
    with pytest.raises(DecompositionFailure):
        search_decomposition(3, fam, 4)


def test_base3_example_763():
    fam = base3_family()
    standard = decompose(763, fam)
    bk = base3_bijection(standard, STANDARD_TO_BK, 2, b_k_family(2))
    assert bk.terms == ((7, 1), (5, 1), (4, -1), (3, -1), (2, -1), (1, 1))
    assert evaluate(bk) == 763
    assert base3_bijection(bk, BK_TO_STANDARD, 2, fam).terms == standard.terms


@pytest.mark.parametrize("k", [1, 2, 3])
def test_base3_bijection_round_trip(k):
    fam, target = base3_family(), b_k_family(k)
    for x in range(-400, 401):
        dec = decompose(x, fam)
        bk = base3_bijection(dec, STANDARD_TO_BK, k, target)
        assert evaluate(bk) == x
        assert is_legal(bk, 1, 1)
        assert base3_bijection(bk, BK_TO_STANDARD, k, fam).terms == dec.terms


def test_base3_bijection_bad_arguments():
    dec = decompose(5, base3_family())
    with pytest.raises(ValueError):
        base3_bijection(dec, "sideways", 1)
    with pytest.raises(ValueError):
        base3_bijection(dec, STANDARD_TO_BK, -1)
