"""Dominant roots and growth constants.

Two polynomials matter here: x^(k+1) - x^k - 1, whose largest root lambda_1
drives S_n ~ a_1 lambda_1^n, and the weighted denominator

    D_w(z) = 1 - z - (w^a + w^b) z^(2k+2) - w^(a+b) * sum_{j=2k+4}^{4k+3} z^j,

whose root e_1(w) in (0, 1) gives the slopes of the mean (A) and variance (C)
of a*K_n + b*L_n.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import brentq

from .sequences import SequenceFamily

ROOT_TOL = 1e-13


def _refine(f, df, x0, lo, hi, steps=3):
    # a few Newton steps; keep the bracketed value if Newton leaves the bracket
    x = x0
    for _ in range(steps):
        slope = df(x)
        if slope == 0:
            break
        nxt = x - f(x) / slope
        if not lo <= nxt <= hi:
            break
        x = nxt
    return x


def _bracketed_root(f, df, lo, hi):
    x = brentq(f, lo, hi, xtol=ROOT_TOL / 10, rtol=4 * np.finfo(float).eps, maxiter=500)
    return _refine(f, df, x, lo, hi)


def largest_root(k: int) -> float:
    """Real root of x^(k+1) - x^k - 1 in (1, 2]."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return 2.0
    f = lambda x: x ** (k + 1) - x ** k - 1
    df = lambda x: (k + 1) * x ** k - k * x ** (k - 1)
    return _bracketed_root(f, df, 1.0, 2.0)


def binet_coefficient(k: int, tol: float = 1e-15, n_limit: int = 5000) -> float:
    """a_1 with S_n ~ a_1 lambda_1^n, read off S_n / lambda_1^n once it settles."""
    lam = largest_root(k)
    fam = SequenceFamily.skipponacci(k)
    log_lam = math.log(lam)
    prev = None
    for n in range(1, n_limit + 1):
        est = math.exp(math.log(fam.term(n)) - n * log_lam)
        if prev is not None and abs(est - prev) <= tol * est and n > 2 * k + 4:
            return est
        prev = est
    raise ArithmeticError(f"a_1 estimate for k={k} did not settle by n={n_limit}")


def _denominator(k: int, w: float, a: float, b: float):
    hi_js = range(2 * k + 4, 4 * k + 4)
    wa, wb, wab = w ** a, w ** b, w ** (a + b)

    def f(z):
        return 1 - z - (wa + wb) * z ** (2 * k + 2) - wab * sum(z ** j for j in hi_js)

    def df(z):
        return (-1 - (wa + wb) * (2 * k + 2) * z ** (2 * k + 1)
                - wab * sum(j * z ** (j - 1) for j in hi_js))
    return f, df


def denominator_root(k: int, w: float = 1.0, a: float = 1, b: float = 0) -> float:
    """e_1(w): the unique root in (0, 1) of the weighted denominator.

    The polynomial is strictly decreasing on (0, inf), positive at 0 and
    negative at 1 for w near 1, so the bracket always holds.
    """
    if not 0.9 <= w <= 1.1:
        raise ValueError("w must lie within 0.1 of 1")
    f, df = _denominator(k, w, a, b)
    return _bracketed_root(f, df, 0.0, 1.0)


def e1_derivative(k: int, w: float = 1.0, a: float = 1, b: float = 0, e1: float = None) -> float:
    """Closed-form e_1'(w) from implicit differentiation of the denominator."""
    e = denominator_root(k, w, a, b) if e1 is None else e1
    hi_js = range(2 * k + 4, 4 * k + 4)
    da = a * w ** (a - 1) if a else 0.0
    db = b * w ** (b - 1) if b else 0.0
    num = ((da + db) * e ** (2 * k + 2)
           + (a + b) * w ** (a + b - 1) * sum(e ** j for j in hi_js))
    den = (1 + (w ** a + w ** b) * (2 * k + 2) * e ** (2 * k + 1)
           + w ** (a + b) * sum(j * e ** (j - 1) for j in hi_js))
    return -num / den


def _h(k, w, a, b):
    # w * alpha_1'(w) / alpha_1(w) with alpha_1 = 1 / e_1
    e = denominator_root(k, w, a, b)
    return -w * e1_derivative(k, w, a, b, e1=e) / e


def _richardson_derivative(f, x, step):
    d1 = (f(x + step) - f(x - step)) / (2 * step)
    d2 = (f(x + step / 2) - f(x - step / 2)) / step
    return (4 * d2 - d1) / 3


@dataclass
class GrowthConstants:
    k: int
    a: float
    b: float
    lambda1: float
    a1: float
    e1: float
    e1_prime_at_1: float
    A_ab: float
    C_ab: float

    def to_json(self) -> str:
        return json.dumps({key: (float(format(v, ".12g")) if isinstance(v, float) else v)
                           for key, v in asdict(self).items()}, sort_keys=True)


def growth_constants(k: int, a: float = 1, b: float = 0, step: float = 1e-5) -> GrowthConstants:
    """Mean slope A = -e_1'(1)/e_1(1) and variance slope C = h'(1), h(w) = -w e_1'(w)/e_1(w).

    h'(1) comes from central differences at ``step`` and ``step/2`` combined
    by Richardson extrapolation.
    """
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ValueError("weights must be non-negative and not both zero")
    e1 = denominator_root(k, 1.0, a, b)
    de1 = e1_derivative(k, 1.0, a, b, e1=e1)
    A = -de1 / e1
    C = _richardson_derivative(lambda w: _h(k, w, a, b), 1.0, step)
    if A <= 0:
        raise ArithmeticError(f"mean slope {A} is not positive")
    if abs(C) < 1e-9:
        raise ArithmeticError(f"variance slope {C} vanishes; numerical fault")
    return GrowthConstants(k=k, a=float(a), b=float(b), lambda1=largest_root(k),
                           a1=binet_coefficient(k), e1=e1, e1_prime_at_1=de1, A_ab=A, C_ab=C)


# -- polynomial checks ---------------------------------------------------------

def poly_mul(p: list, q: list) -> list:
    """Product of integer coefficient lists (lowest degree first)."""
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def _poly(pairs, degree: int) -> list:
    """Coefficient list from (power, coefficient) pairs; repeated powers add up."""
    c = [0] * (degree + 1)
    for power, coef in pairs:
        c[power] += coef
    return c


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def denominator_poly(k: int) -> list:
    """1 - 2z + z^2 - 2z^(2k+2) + 2z^(2k+3) - z^(2k+4) + z^(4k+4), low degree first."""
    pairs = [(0, 1), (1, -2), (2, 1), (2 * k + 2, -2), (2 * k + 3, 2),
             (2 * k + 4, -1), (4 * k + 4, 1)]
    return _trim(_poly(pairs, 4 * k + 4))


def reduced_denominator_poly(k: int) -> list:
    """1 - z - 2z^(2k+2) - sum_{j=2k+4}^{4k+3} z^j, low degree first."""
    pairs = [(0, 1), (1, -1), (2 * k + 2, -2)] + [(j, -1) for j in range(2 * k + 4, 4 * k + 4)]
    return _trim(_poly(pairs, 4 * k + 3))


@dataclass
class DenominatorReport:
    k: int
    factorization_ok: bool
    root_at_one: bool
    e1: float
    min_other_modulus: float
    margin: float
    dominance_ok: bool

    @property
    def ok(self) -> bool:
        return self.factorization_ok and self.root_at_one and self.dominance_ok


def verify_denominator_polynomials(k: int, margin: float = 1e-6) -> DenominatorReport:
    """Factor check (z^(2k+2)-1)(z^(k+1)+z-1)(z^(k+1)-z+1) and root dominance of e_1.

    The factor product is compared coefficient-wise in exact integers. All
    other complex roots of the reduced denominator must exceed e_1 in modulus
    by more than ``margin``.
    """
    a = _poly([(2 * k + 2, 1), (0, -1)], 2 * k + 2)
    b = _poly([(k + 1, 1), (1, 1), (0, -1)], k + 1)
    c = _poly([(k + 1, 1), (1, -1), (0, 1)], k + 1)
    product = _trim(poly_mul(poly_mul(a, b), c))
    full = denominator_poly(k)
    factor_ok = product == full
    root_at_one = sum(full) == 0 and sum(product) == 0

    reduced = reduced_denominator_poly(k)
    roots = np.roots(reduced[::-1])
    e1 = denominator_root(k)
    others = [abs(r) for r in roots if abs(r - e1) > 1e-8]
    min_other = min(others) if others else math.inf
    return DenominatorReport(k=k, factorization_ok=factor_ok, root_at_one=root_at_one, e1=e1,
                          min_other_modulus=float(min_other), margin=float(min_other - e1),
                          dominance_ok=bool(min_other - e1 > margin))
