import math

import pytest

from fardiff.decomposer import decompose, enumerate_decompositions
from fardiff.gap_analysis import (CSV_COLUMNS, IntervalTooLarge, counting_gaps, empirical_gaps,
                                  fibonacci_gap_limit, gap_rows, gaps_to_csv, theoretical_gaps,
                                  two_branch_gap_limit)
from fardiff.sequences import SequenceFamily
from fardiff.spectral import largest_root

PHI = (1 + math.sqrt(5)) / 2


def test_2014_gaps():
    assert decompose(2014, SequenceFamily.skipponacci(1)).gaps() == [3, 5, 3, 4]


def test_single_summand_interval_has_no_gaps():
    e = empirical_gaps(1, 1)
    assert e.total == 0 and e.probs == {}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_counting_matches_enumeration(k):
    for n in range(1, 17):
        e, c = empirical_gaps(k, n), counting_gaps(k, n)
        assert e.by_start == c.by_start
        assert e.total == c.total


@pytest.mark.parametrize("k", [1, 2])
def test_support_and_normalization(k):
    c = counting_gaps(k, 40)
    assert all(c[j] == 0 for j in range(1, k + 2))
    assert sum(c.probs.values()) == pytest.approx(1, abs=1e-12)


def test_leading_counts():
    # N(+S_i) = R(i) - R(i-1) integers lead with +S_i
    fam = SequenceFamily.skipponacci(1)
    lead = {}
    for v, terms in enumerate_decompositions(fam, 12):
        if v > 0:
            lead[terms[0][0]] = lead.get(terms[0][0], 0) + 1
    for i in range(1, 13):
        assert lead[i] == fam.r(i) - fam.r(i - 1)


def test_parallel_enumeration_matches_serial():
    a = empirical_gaps(2, 20)
    b = empirical_gaps(2, 20, workers=3)
    assert a.by_start == b.by_start


def test_interval_too_large():
    with pytest.raises(IntervalTooLarge, match="counting_gaps"):
        empirical_gaps(1, 60)


@pytest.mark.parametrize("k", range(5))
def test_limit_distribution(k):
    t = theoretical_gaps(k, 60 * (k + 1))
    lam = largest_root(k)
    assert sum(t.probs.values()) == pytest.approx(1, abs=1e-10)
    assert all(t[j] == 0 for j in range(1, k + 2))
    for j in range(2 * k + 2, 2 * k + 12):
        assert t[j + 1] / t[j] == pytest.approx(1 / lam, rel=1e-12)
    # opposite-sign branch lies below the same-sign extrapolation
    j = k + 2
    if j < 2 * k + 2:
        assert t[j] < t[2 * k + 2] * lam ** (2 * k + 2 - j)


def test_fibonacci_limit():
    t = theoretical_gaps(1)
    for j in range(1, 20):
        assert t[j] == pytest.approx(fibonacci_gap_limit(j), abs=1e-12)
    assert t[3] / t[4] == pytest.approx(PHI / 2, rel=1e-12)


def test_counting_converges_towards_limit():
    t = theoretical_gaps(1)
    errs = [max(abs(counting_gaps(1, n)[j] - t[j]) for j in range(1, 13)) for n in (20, 40, 80, 160)]
    assert errs == sorted(errs, reverse=True)


def test_two_branch_form_is_not_normalized():
    total = sum(two_branch_gap_limit(1, j) for j in range(1, 200))
    assert abs(total - 1) > 0.1


def test_csv_layout():
    text = gaps_to_csv(gap_rows(1, 12, 5))
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 6
    assert lines[3].startswith("1,12,3,")
