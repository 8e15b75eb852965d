import math

import pytest

from fardiff.sequences import SequenceFamily
from fardiff.summand_stats import (CSV_COLUMNS, build_count_table, correlation, enumerated_histogram,
                                   gaussian_diagnostics, moments, summaries_to_csv,
                                   verify_generating_function)


def test_seed_row():
    t = build_count_table(1, 5)
    assert t.as_dict(1) == {(1, 0): 1}
    assert t(1, 1, 0) == 1 and t(1, 0, 1) == 0 and t(0, 1, 0) == 0


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_rows_match_enumeration(k):
    t = build_count_table(k, 14)
    for n in range(1, 15):
        assert t.as_dict(n) == dict(enumerated_histogram(k, n))


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_row_totals_are_interval_sizes(k):
    fam = SequenceFamily.skipponacci(k)
    t = build_count_table(k, 80)
    for n in range(1, 81):
        assert t.row_total(n) == fam.r(n) - fam.r(n - 1)


def test_generating_function_identity():
    for k in range(4):
        assert verify_generating_function(k, 40)


def test_generating_function_detects_corruption():
    t = build_count_table(1, 20)
    t.rows[12][2, 1] += 1
    res = verify_generating_function(1, 20, table=t)
    assert not res and res.offending[0] == 12


def test_degenerate_rows():
    t = build_count_table(1, 10)
    s = moments(t, 1)
    assert s.degenerate and s.mean == 1 and s.variance == 0
    assert math.isnan(s.skewness) and math.isnan(s.excess_kurtosis)


def test_moments_match_direct_computation():
    k, n = 1, 15
    t = build_count_table(k, n)
    hist = enumerated_histogram(k, n)
    total = sum(hist.values())
    for a, b in [(1, 0), (0, 1), (1, 1), (2, 1)]:
        vals = [(a * m + b * l, c) for (m, l), c in hist.items()]
        mean = sum(v * c for v, c in vals) / total
        var = sum((v - mean) ** 2 * c for v, c in vals) / total
        s = moments(t, n, a, b)
        assert s.mean == pytest.approx(mean, rel=1e-12)
        assert s.variance == pytest.approx(var, rel=1e-12)


def test_weights_validation():
    t = build_count_table(1, 5)
    with pytest.raises(ValueError):
        moments(t, 3, 0, 0)
    with pytest.raises(ValueError):
        moments(t, 3, -1, 1)


def test_sum_and_difference_correlation_is_bounded(table_k1):
    for n in (50, 150, 300):
        r = correlation(table_k1, n, (1, 1), (1, -1))
        assert -1 <= r <= 1


def test_diagnostics_and_csv(table_k1):
    d = gaussian_diagnostics(table_k1, 1, 0, range(100, 301, 10))
    assert d.mean_fit.slope == pytest.approx(0.1, abs=1e-8)
    assert len(d.corr_sum_diff) == len(d.summaries)
    text = summaries_to_csv(d.summaries[:2])
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1].startswith("100,1,0,")
    assert text.endswith("\n") and "\r" not in text


def test_mean_of_k_and_l_share_slope(table_k1):
    k300, l300 = moments(table_k1, 300, 1, 0), moments(table_k1, 300, 0, 1)
    k299, l299 = moments(table_k1, 299, 1, 0), moments(table_k1, 299, 0, 1)
    assert (k300.mean - k299.mean) == pytest.approx(l300.mean - l299.mean, abs=1e-9)
