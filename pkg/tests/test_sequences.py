import threading

import pytest

from fardiff.sequences import (FIXTURES, Kind, SequenceFamily, b_k_family, check_interval_identity,
                               family_from_dict, fixture, interval, sd_terms, skipponacci_terms)


def test_skipponacci_small_cases():
    assert skipponacci_terms(0, 6) == [1, 2, 4, 8, 16, 32]
    assert skipponacci_terms(1, 8) == [1, 2, 3, 5, 8, 13, 21, 34]
    assert skipponacci_terms(2, 8) == [1, 2, 3, 4, 6, 9, 13, 19]


def test_fibonacci_index_of_2584():
    assert SequenceFamily.skipponacci(1).term(17) == 2584


def test_sd_terms_match_known_families():
    assert sd_terms(4, 3, 10) == skipponacci_terms(1, 10)
    assert sd_terms(2, 2, 6) == [1, 2, 4, 8, 16, 32]
    assert sd_terms(1, 1, 5) == [1, 3, 9, 27, 81]


@pytest.mark.parametrize("k", range(5))
def test_r_is_sum_of_every_sth_term(k):
    fam = SequenceFamily.skipponacci(k)
    s = fam.s
    for n in range(1, 60):
        assert fam.r(n) == sum(fam.term(i) for i in range(n, 0, -s))


def test_nonpositive_index_reads_zero():
    fam = SequenceFamily.skipponacci(1)
    assert fam.term(0) == fam.term(-3) == fam.r(0) == fam.r(-1) == 0


@pytest.mark.parametrize("family", [SequenceFamily.skipponacci(k) for k in range(4)]
                         + [SequenceFamily.standard_sd(s, d) for s, d in
                            [(1, 1), (2, 2), (3, 4), (2, 3), (4, 3), (5, 2)]])
def test_intervals_tile_positive_integers(family):
    for n in range(1, 40):
        assert check_interval_identity(family, n)
        lo, hi = interval(family, n)
        assert (lo, hi) == (family.r(n - 1) + 1, family.r(n))


def test_leading_index_bisects_partial_sums():
    fam = SequenceFamily.skipponacci(1)
    for x in range(1, 500):
        n = fam.leading_index(x)
        assert fam.r(n - 1) < x <= fam.r(n)
    assert fam.leading_index(10 ** 40) > 150


def test_leading_index_rejects_nonpositive():
    with pytest.raises(ValueError):
        SequenceFamily.skipponacci(1).leading_index(0)


def test_explicit_family_validation():
    with pytest.raises(ValueError):
        SequenceFamily.explicit([1, 1, 2])
    with pytest.raises(ValueError):
        SequenceFamily.explicit([0, 1])
    fam = SequenceFamily.explicit([1, 2, 5])
    assert not fam.extendable
    with pytest.raises(IndexError):
        fam.term(4)


def test_fixtures_extend_by_tripling():
    assert fixture("example5.1a").terms(5) == [2, 6, 9, 27, 81]
    assert fixture("example5.1b").terms(5) == [3, 4, 9, 27, 81]
    assert fixture("example5.1c").terms(6) == [1, 9, 12, 27, 81, 243]
    assert b_k_family(2).terms(5) == [1, 3, 18, 27, 81]
    assert fixture("b_k:3").terms(5) == [1, 3, 9, 54, 81]
    assert set(FIXTURES) >= {"example5.1a", "example5.1b", "example5.1c", "base3"}
    with pytest.raises(KeyError):
        fixture("nope")


def test_to_dict_round_trip():
    for fam in (SequenceFamily.skipponacci(2), SequenceFamily.standard_sd(3, 4),
                fixture("example5.1b"), b_k_family(1)):
        back = family_from_dict(fam.to_dict())
        assert back.kind is fam.kind
        assert back.terms(12) == fam.terms(12)
        assert (back.s, back.d) == (fam.s, fam.d)


def test_concurrent_growth_is_consistent():
    fam = SequenceFamily.skipponacci(1)
    results = []

    def work(n):
        results.append(fam.term(n))

    threads = [threading.Thread(target=work, args=(n,)) for n in range(200, 400, 7)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    ref = SequenceFamily.skipponacci(1)
    assert sorted(results) == sorted(ref.term(n) for n in range(200, 400, 7))
    assert fam.kind is Kind.SKIPPONACCI
