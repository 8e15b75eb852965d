"""Distribution of index gaps between adjacent summands over (R_k(n-1), R_k(n)].

Three routes to the same quantity:

* ``empirical_gaps`` decomposes every integer in the interval and tallies;
* ``counting_gaps`` counts X_{i,i+j}(n) from partial sums R alone;
* ``theoretical_gaps`` is the n -> infinity limit.
"""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .decomposer import decompose
from .sequences import SequenceFamily
from .spectral import binet_coefficient, growth_constants, largest_root
from .summand_stats import build_count_table

MAX_ENUMERATION = 10 ** 7


class IntervalTooLarge(ValueError):
    pass


@dataclass
class GapDistribution:
    k: int
    n: Union[int, str]  # "limit" for the theoretical kind
    kind: str  # empirical | counting | theoretical
    probs: dict
    counts: dict = field(default_factory=dict)  # j -> sum_i X_{i,i+j}(n)
    total: Optional[int] = None  # Y(n)
    by_start: dict = field(default_factory=dict, repr=False)  # (i, j) -> X_{i,i+j}(n)

    def __getitem__(self, j: int) -> float:
        return self.probs.get(j, 0.0)


def _normalize(counts: dict, total: int) -> dict:
    if total == 0:
        return {}
    return {j: c / total for j, c in sorted(counts.items())}


def _tally(k: int, lo: int, hi: int) -> Counter:
    fam = SequenceFamily.skipponacci(k)
    by_start: Counter = Counter()
    for x in range(lo, hi + 1):
        idx = decompose(x, fam).indices
        for top, low in zip(idx, idx[1:]):
            by_start[(low, top - low)] += 1
    return by_start


def empirical_gaps(k: int, n: int, workers: int = 1,
                   max_size: int = MAX_ENUMERATION) -> GapDistribution:
    """Decompose every integer of the n-th interval and pool the gaps.

    The run-in below the smallest summand is not a gap. With ``workers > 1``
    the interval is split into contiguous chunks handled in separate
    processes; the merged tallies do not depend on the split.
    """
    fam = SequenceFamily.skipponacci(k)
    lo, hi = fam.r(n - 1) + 1, fam.r(n)
    if hi - lo + 1 > max_size:
        raise IntervalTooLarge(
            f"interval for n={n} has {hi - lo + 1} integers; use counting_gaps instead")
    if workers <= 1:
        by_start = _tally(k, lo, hi)
    else:
        size = hi - lo + 1
        cuts = [lo + size * w // workers for w in range(workers + 1)]
        by_start = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_tally, [k] * workers, cuts[:-1], [c - 1 for c in cuts[1:]])
            for part in parts:
                by_start.update(part)
    counts: Counter = Counter()
    for (_, j), c in by_start.items():
        counts[j] += c
    total = sum(counts.values())
    return GapDistribution(k, n, "empirical", _normalize(counts, total), dict(sorted(counts.items())),
                           total, dict(by_start))


def counting_gaps(k: int, n: int, table=None) -> GapDistribution:
    """Exact X_{i,i+j}(n) from partial sums, normalized by Y(n) from the count table.

    With N(i) = R(i) - R(i-1) integers whose decomposition leads with index i,
    a gap from i up to i+j (m = n - i - j + 1) occurs in

        X_{i,i+j}(n) = c_j * N(i) * (N(m) - N(m-1))

    integers: N(m) - N(m-1) counts the top parts ending exactly at i+j, N(i)
    counts the lower parts for either sign of S_i, and c_j is the number of
    sign relations the gap allows (2 for j >= 2k+2, 1 for k+2 <= j < 2k+2,
    0 otherwise).
    """
    if n < 1:
        raise ValueError("n must be positive")
    fam = SequenceFamily.skipponacci(k)
    s, d = 2 * k + 2, k + 2
    lead = [fam.r(i) - fam.r(i - 1) if i >= 1 else 0 for i in range(n + 1)]

    def nl(i):
        return lead[i] if i >= 1 else 0

    by_start = {}
    counts: Counter = Counter()
    for j in range(d, n):
        c_j = 2 if j >= s else 1
        for i in range(1, n - j + 1):
            m = n - i - j + 1
            x = c_j * nl(i) * (nl(m) - nl(m - 1))
            if x:
                by_start[(i, j)] = x
                counts[j] += x
    if table is None or table.n_max < n:
        table = build_count_table(k, n)
    total = table.gap_total(n)
    return GapDistribution(k, n, "counting", _normalize(counts, total), dict(sorted(counts.items())),
                           total, by_start)


def _limit_pieces(k: int):
    lam = largest_root(k)
    a1 = binet_coefficient(k)
    a11 = growth_constants(k, 1, 1).A_ab
    return lam, a1, a11


def theoretical_gaps(k: int, j_max: Optional[int] = None) -> GapDistribution:
    """Limit of P_n(j) as n -> infinity.

        P(j) = c_j * a_1 (lambda_1 - 1)^2 / (lambda_1 A_{1,1} (1 - lambda_1^(-2k-2))) * lambda_1^(-j)

    with c_j as in :func:`counting_gaps`; the values sum to one over j.
    """
    lam, a1, a11 = _limit_pieces(k)
    s, d = 2 * k + 2, k + 2
    j_max = j_max or 8 * k + 40
    pref = a1 * (lam - 1) ** 2 / (lam * a11 * (1 - lam ** (-s)))
    probs = {}
    for j in range(1, j_max + 1):
        c_j = 2 if j >= s else (1 if j >= d else 0)
        probs[j] = c_j * pref * lam ** (-j)
    return GapDistribution(k, "limit", "theoretical", probs)


def two_branch_gap_limit(k: int, j: int) -> float:
    """Closed form with prefactors lambda^(-3k-2) (k+2 <= j < 2k+2) and
    lambda^(-2k-2) (j >= 2k+2) over A_{1,1} (1 - lambda^(-2k-2))^2 (lambda - 1).

    Kept for comparison: it does not agree with :func:`theoretical_gaps`,
    with exact counts, or with the Fibonacci closed form, and it does not sum
    to one.
    """
    lam, a1, a11 = _limit_pieces(k)
    if j <= k + 1:
        return 0.0
    power = -3 * k - 2 if j < 2 * k + 2 else -2 * k - 2
    return a1 * lam ** power / (a11 * (1 - lam ** (-2 * k - 2)) ** 2 * (lam - 1)) * lam ** (-j)


def fibonacci_gap_limit(j: int) -> float:
    """Limiting gap probabilities for the Fibonacci (k = 1) case."""
    phi = (1 + math.sqrt(5)) / 2
    a1 = phi / math.sqrt(5)
    if j <= 2:
        return 0.0
    if j == 3:
        return 5 * a1 / (phi ** 2 * (phi ** 4 - 1))
    return 10 * a1 * phi / (phi ** 4 - 1) * phi ** (-j)


CSV_COLUMNS = ["k", "n", "j", "p_empirical", "p_counting", "p_theoretical"]


def _fmt(v) -> str:
    if v is None:
        return ""
    return format(v, ".12g") if isinstance(v, float) else str(v)


def gaps_to_csv(rows) -> str:
    """rows: iterable of dicts keyed by CSV_COLUMNS."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def gap_rows(k: int, n: int, j_max: int, empirical: bool = True, workers: int = 1) -> list:
    count = counting_gaps(k, n)
    theo = theoretical_gaps(k, j_max)
    emp = None
    if empirical:
        try:
            emp = empirical_gaps(k, n, workers=workers)
        except IntervalTooLarge:
            emp = None
    rows = []
    for j in range(1, j_max + 1):
        rows.append({
            "k": k, "n": n, "j": j,
            "p_empirical": emp[j] if emp is not None else None,
            "p_counting": count[j],
            "p_theoretical": theo[j],
        })
    return rows
