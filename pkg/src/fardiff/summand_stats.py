"""Exact joint distribution of positive/negative summand counts.

``p[n][m][l]`` counts the integers in (R_k(n-1), R_k(n)] whose k-Skipponacci
far-difference decomposition has m positive and l negative summands.
"""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .decomposer import decompose
from .sequences import SequenceFamily


def _zeros(size: int) -> np.ndarray:
    out = np.empty((size, size), dtype=object)
    out.fill(0)
    return out


def _bound(n: int, k: int) -> int:
    # at most ceil(n / (k+2)) summands fit below index n
    return -(-n // (k + 2))


@dataclass
class CountTable:
    k: int
    n_max: int
    rows: list = field(repr=False)  # rows[n]: square object array indexed [m, l]

    def row(self, n: int) -> np.ndarray:
        if not 1 <= n <= self.n_max:
            raise IndexError(f"n={n} outside 1..{self.n_max}")
        return self.rows[n]

    def __call__(self, n: int, m: int, l: int) -> int:
        if n < 1 or n > self.n_max or m < 0 or l < 0:
            return 0
        r = self.rows[n]
        if m >= r.shape[0] or l >= r.shape[1]:
            return 0
        return r[m, l]

    def row_total(self, n: int) -> int:
        return int(self.row(n).sum())

    def total_summands(self, n: int) -> int:
        r = self.row(n)
        size = r.shape[0]
        idx = np.add.outer(np.arange(size), np.arange(size)).astype(object)
        return int((r * idx).sum())

    def gap_total(self, n: int) -> int:
        """Total number of gaps over the interval: summands minus integers."""
        return self.total_summands(n) - self.row_total(n)

    def as_dict(self, n: int) -> dict:
        r = self.row(n)
        return {(m, l): int(v) for (m, l), v in np.ndenumerate(r) if v}


def build_count_table(k: int, n_max: int) -> CountTable:
    """Fill p[n][m][l] = p[n-1][m][l] + p[n-2k-2][m-1][l] + p[n-k-2][l][m-1].

    Row 1 is seeded with p[1][1][0] = 1, the only triple the recurrence misses.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    s, d = 2 * k + 2, k + 2
    rows: list = [None] * (n_max + 1)
    seed = _zeros(2)
    seed[1, 0] = 1
    rows[1] = seed
    for n in range(2, n_max + 1):
        size = _bound(n, k) + 1
        cur = _zeros(size)
        prev = rows[n - 1]
        cur[:prev.shape[0], :prev.shape[1]] += prev
        if n - s >= 1:
            a = rows[n - s]
            cur[1:1 + a.shape[0], :a.shape[1]] += a
        if n - d >= 1:
            b = rows[n - d].T  # roles of m and l swap across an opposite-sign step
            cur[1:1 + b.shape[0], :b.shape[1]] += b
        rows[n] = cur
    return CountTable(k, n_max, rows)


def enumerated_histogram(k: int, n: int, family: Optional[SequenceFamily] = None) -> Counter:
    """(positive, negative) counts from decomposing every integer in (R(n-1), R(n)]."""
    family = family or SequenceFamily.skipponacci(k)
    hist: Counter = Counter()
    for x in range(family.r(n - 1) + 1, family.r(n) + 1):
        dec = decompose(x, family)
        hist[(dec.positive, dec.negative)] += 1
    return hist


# -- moments ---------------------------------------------------------------

@dataclass
class MomentSummary:
    n: int
    a: float
    b: float
    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float
    correlation_KL: float
    degenerate: bool = False

    def as_row(self) -> dict:
        return {
            "n": self.n, "a": self.a, "b": self.b, "mean": self.mean,
            "variance": self.variance, "skewness": self.skewness,
            "excess_kurtosis": self.excess_kurtosis, "corr_KL": self.correlation_KL,
        }


def _exact(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _exact_moments(row: np.ndarray, a: Fraction, b: Fraction):
    # integer power sums of y = q*(a*m + b*l), then exact central moments
    q = math.lcm(a.denominator, b.denominator)
    pa, pb = int(a * q), int(b * q)
    size = row.shape[0]
    m = np.arange(size).astype(object).reshape(-1, 1)
    l = np.arange(size).astype(object).reshape(1, -1)
    y = m * pa + l * pb
    sums = []
    acc = row.copy()
    for _ in range(5):
        sums.append(int(acc.sum()))
        acc = acc * y
    s0 = sums[0]
    e1, e2, e3, e4 = (Fraction(v, s0) for v in sums[1:])
    c2 = e2 - e1 ** 2
    c3 = e3 - 3 * e1 * e2 + 2 * e1 ** 3
    c4 = e4 - 4 * e1 * e3 + 6 * e1 ** 2 * e2 - 3 * e1 ** 4
    return s0, e1 / q, c2 / q ** 2, c3 / q ** 3, c4 / q ** 4


def _covariance(row: np.ndarray, u, v):
    size = row.shape[0]
    m = np.arange(size).astype(object).reshape(-1, 1)
    l = np.arange(size).astype(object).reshape(1, -1)
    total = int(row.sum())
    xu = u[0] * m + u[1] * l
    xv = v[0] * m + v[1] * l
    su = Fraction(sum((row * xu).ravel()))
    sv = Fraction(sum((row * xv).ravel()))
    suv = Fraction(sum((row * xu * xv).ravel()))
    return (suv - su * sv / total) / total


def correlation(table: CountTable, n: int, u=(1, 0), v=(0, 1)) -> float:
    """Pearson correlation of u.(m, l) and v.(m, l) over row n; nan if degenerate."""
    row = table.row(n)
    cuv = _covariance(row, u, v)
    cuu = _covariance(row, u, u)
    cvv = _covariance(row, v, v)
    if cuu == 0 or cvv == 0:
        return math.nan
    return float(cuv) / math.sqrt(float(cuu) * float(cvv))


def moments(table: CountTable, n: int, a: float = 1, b: float = 0) -> MomentSummary:
    """Mean, variance, skewness and excess kurtosis of a*K_n + b*L_n, plus Corr[K_n, L_n].

    Accumulation is exact; conversion to float happens only at the end. A
    point-mass row is flagged degenerate with nan shape statistics.
    """
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ValueError("weights must be non-negative and not both zero")
    fa, fb = _exact(a), _exact(b)
    _, mean, c2, c3, c4 = _exact_moments(table.row(n), fa, fb)
    if c2 == 0:
        skew = kurt = math.nan
        degenerate = True
    else:
        skew = float(c3) / float(c2) ** 1.5
        kurt = float(c4 / (c2 * c2)) - 3.0
        degenerate = False
    return MomentSummary(n=n, a=float(a), b=float(b), mean=float(mean), variance=float(c2),
                         skewness=skew, excess_kurtosis=kurt,
                         correlation_KL=correlation(table, n), degenerate=degenerate)


# -- generating function -------------------------------------------------------

@dataclass
class SeriesCheck:
    ok: bool
    offending: Optional[tuple] = None  # (n, m, l, expected, got) of the first mismatch
    form: str = "expanded"

    def __bool__(self):
        return self.ok


def _denominator_terms(k: int):
    # (coefficient, power of x, power of y, power of z)
    return [
        (1, 0, 0, 0), (-2, 0, 0, 1), (1, 0, 0, 2),
        (-1, 1, 0, 2 * k + 2), (-1, 0, 1, 2 * k + 2),
        (1, 1, 0, 2 * k + 3), (1, 0, 1, 2 * k + 3),
        (-1, 1, 1, 2 * k + 4), (1, 1, 1, 4 * k + 4),
    ]


def _numerator_terms(k: int):
    return [(1, 1, 0, 1), (-1, 1, 0, 2), (1, 1, 1, k + 3), (-1, 1, 1, 2 * k + 3)]


def _factored_denominator_terms(k: int):
    terms = [(1, 0, 0, 0), (-1, 0, 0, 1), (-1, 1, 0, 2 * k + 2), (-1, 0, 1, 2 * k + 2)]
    terms += [(-1, 1, 1, j) for j in range(2 * k + 4, 4 * k + 4)]
    return terms


def _factored_numerator_terms(k: int):
    return [(1, 1, 0, 1)] + [(1, 1, 1, j) for j in range(k + 3, 2 * k + 3)]


def _check_product(table: CountTable, n_max: int, den, num, form: str) -> SeriesCheck:
    for n in range(1, n_max + 1):
        size = _bound(n, table.k) + 3
        got = _zeros(size)
        for c, dm, dl, dz in den:
            src = n - dz
            if src < 1:
                continue
            r = table.row(src)
            got[dm:dm + r.shape[0], dl:dl + r.shape[1]] += c * r
        want = _zeros(size)
        for c, dm, dl, dz in num:
            if dz == n:
                want[dm, dl] += c
        if not (got == want).all():
            for (m, l), v in np.ndenumerate(got):
                if v != want[m, l]:
                    return SeriesCheck(False, (n, m, l, int(want[m, l]), int(v)), form)
    return SeriesCheck(True, None, form)


def verify_generating_function(k: int, n_max: int, table: Optional[CountTable] = None,
                               factored: bool = True) -> SeriesCheck:
    """Check denominator * sum p[n][m][l] x^m y^l z^n == numerator through z^n_max.

    Exact integer arithmetic on the truncated trivariate series. With
    ``factored`` the (1 - z)-reduced form is checked as well; the first failing
    form is reported.
    """
    if table is None:
        table = build_count_table(k, n_max)
    if table.n_max < n_max:
        raise ValueError("table shorter than n_max")
    res = _check_product(table, n_max, _denominator_terms(k), _numerator_terms(k), "expanded")
    if not res or not factored:
        return res
    return _check_product(table, n_max, _factored_denominator_terms(k),
                          _factored_numerator_terms(k), "factored")


# -- Gaussian diagnostics -------------------------------------------------------

@dataclass
class LinearFit:
    slope: float
    intercept: float
    n_points: int


@dataclass
class Diagnostics:
    summaries: list
    mean_fit: LinearFit
    variance_fit: LinearFit
    corr_sum_diff: list  # Corr[K+L, K-L] per n

    @property
    def skewness(self) -> list:
        return [s.skewness for s in self.summaries]

    @property
    def excess_kurtosis(self) -> list:
        return [s.excess_kurtosis for s in self.summaries]


def _fit(xs, ys) -> LinearFit:
    if len(xs) < 2:
        return LinearFit(math.nan, math.nan, len(xs))
    slope, intercept = np.polyfit(np.asarray(xs, float), np.asarray(ys, float), 1)
    return LinearFit(float(slope), float(intercept), len(xs))


def gaussian_diagnostics(table: CountTable, a: float, b: float,
                         n_list: Sequence[int]) -> Diagnostics:
    """Per-n moment summaries plus least-squares lines for mean and variance
    fitted on the upper half of ``n_list``."""
    n_list = sorted(n_list)
    summaries = [moments(table, n, a, b) for n in n_list]
    upper = summaries[len(summaries) // 2:]
    ns = [s.n for s in upper]
    mean_fit = _fit(ns, [s.mean for s in upper])
    var_fit = _fit(ns, [s.variance for s in upper])
    corr = [correlation(table, n, (1, 1), (1, -1)) for n in n_list]
    return Diagnostics(summaries, mean_fit, var_fit, corr)


CSV_COLUMNS = ["n", "a", "b", "mean", "variance", "skewness", "excess_kurtosis", "corr_KL"]


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def summaries_to_csv(summaries: Sequence[MomentSummary]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for s in summaries:
        row = s.as_row()
        w.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()
