"""Signed (far-difference) decompositions: greedy construction, legality,
exhaustive enumeration and the base-3 / B_k rewriting."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .sequences import SequenceFamily, check_interval_identity, family_from_dict

Term = tuple[int, int]  # (index, sign)


class DecompositionFailure(ValueError):
    """The greedy step hit an index where a_n != R(n-1) + R(n-d) + 1."""

    def __init__(self, family, index, message=None):
        self.family = family
        self.index = index
        super().__init__(message or
                         f"interval identity fails at index {index} for {family!r}")


@dataclass(frozen=True)
class SignedDecomposition:
    terms: tuple[Term, ...]
    family: Optional[SequenceFamily] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(i), int(e)) for i, e in self.terms))
        for _, e in self.terms:
            if e not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {e}")

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def indices(self) -> list[int]:
        return [i for i, _ in self.terms]

    @property
    def positive(self) -> int:
        return sum(1 for _, e in self.terms if e > 0)

    @property
    def negative(self) -> int:
        return sum(1 for _, e in self.terms if e < 0)

    def gaps(self) -> list[int]:
        """Index differences between adjacent summands, top down."""
        return [a - b for (a, _), (b, _) in zip(self.terms, self.terms[1:])]

    def negated(self) -> "SignedDecomposition":
        return SignedDecomposition(tuple((i, -e) for i, e in self.terms), self.family)

    def symbolic(self) -> str:
        if not self.terms:
            return "(empty)"
        return " ".join(f"{'+' if e > 0 else '-'}S{i}" for i, e in self.terms)

    def numeric(self) -> str:
        if not self.terms:
            return "0"
        fam = self._require_family()
        parts = []
        for pos, (i, e) in enumerate(self.terms):
            v = fam.term(i)
            parts.append(f"{'-' if e < 0 else ('+' if pos else '')}{v}")
        return "".join(parts)

    def to_dict(self) -> dict:
        return {
            "family": self.family.to_dict() if self.family is not None else None,
            "terms": [{"index": i, "sign": e} for i, e in self.terms],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict, family: Optional[SequenceFamily] = None):
        if family is None and data.get("family"):
            family = family_from_dict(data["family"])
        return cls(tuple((t["index"], t["sign"]) for t in data["terms"]), family)

    @classmethod
    def parse(cls, text: str, family: Optional[SequenceFamily] = None):
        """Inverse of :meth:`symbolic`: ``"+S17 -S14"`` -> terms."""
        text = text.strip()
        if text in ("", "(empty)"):
            return cls((), family)
        terms = []
        for tok in text.split():
            if len(tok) < 3 or tok[0] not in "+-" or tok[1] != "S":
                raise ValueError(f"bad term {tok!r}")
            terms.append((int(tok[2:]), 1 if tok[0] == "+" else -1))
        return cls(tuple(terms), family)

    def _require_family(self) -> SequenceFamily:
        if self.family is None:
            raise ValueError("decomposition has no family attached")
        return self.family


def decompose(x: int, family: SequenceFamily) -> SignedDecomposition:
    """Unique far-difference decomposition of ``x`` over ``family``.

    Each step picks the index n with R(n-1) < |x| <= R(n), emits a_n and
    continues with |x| - a_n (same sign) or a_n - |x| (sign flipped).
    """
    if x == 0:
        return SignedDecomposition((), family)
    sign = 1 if x > 0 else -1
    rem = abs(x)
    out: list[Term] = []
    limit = None  # largest index the next summand may use
    last_sign = 0
    explicit_check = family.kind.value == "explicit"
    while rem:
        n = family.leading_index(rem)
        if explicit_check and not check_interval_identity(family, n):
            raise DecompositionFailure(family, n)
        if limit is not None:
            allowed = limit[0] if sign == last_sign else limit[1]
            if n > allowed:
                raise DecompositionFailure(
                    family, n, f"greedy step at index {n} breaks the gap rule for {family!r}")
        out.append((n, sign))
        a = family.term(n)
        last_sign = sign
        limit = (n - family.s, n - family.d)
        if rem >= a:
            rem -= a
        else:
            rem = a - rem
            sign = -sign
    return SignedDecomposition(tuple(out), family)


def evaluate(dec: SignedDecomposition, family: Optional[SequenceFamily] = None) -> int:
    fam = family or dec._require_family()
    return sum(e * fam.term(i) for i, e in dec.terms)


def is_legal(dec, s: int, d: int) -> bool:
    """Same-sign neighbours at least ``s`` apart, opposite-sign at least ``d``."""
    terms = dec.terms if isinstance(dec, SignedDecomposition) else tuple(dec)
    for (i, e), (j, f) in zip(terms, terms[1:]):
        if j >= i:
            raise ValueError(f"indices must be strictly decreasing, got {i} then {j}")
        if i - j < (s if e == f else d):
            return False
    if terms and terms[-1][0] < 1:
        raise ValueError("indices must be positive")
    return True


def enumerate_decompositions(family: SequenceFamily, index_bound: int
                             ) -> Iterator[tuple[int, tuple[Term, ...]]]:
    """Yield ``(value, terms)`` for every legal decomposition on indices 1..index_bound,
    including the empty one."""
    a = family.terms(index_bound)
    s, d = family.s, family.d

    def rec(value, prefix, same_max, opp_max, last):
        yield value, tuple(prefix)
        for sign in (1, -1):
            top = same_max if sign == last else opp_max
            for i in range(top, 0, -1):
                prefix.append((i, sign))
                yield from rec(value + sign * a[i - 1], prefix, i - s, i - d, sign)
                prefix.pop()

    yield from rec(0, [], index_bound, index_bound, 0)


def brute_force_decompositions(x: int, family: SequenceFamily,
                               index_bound: int) -> list[SignedDecomposition]:
    """All legal decompositions of ``x`` using indices 1..index_bound.

    Depth-first from the top index. A branch is cut when the remainder exceeds
    U(i - min(s, d)), where U(t) = max(U(t-1), a_t + U(t - min(s, d))) bounds
    the magnitude of every legal decomposition with top index <= t.
    """
    a = [0] + family.terms(index_bound)
    s, d = family.s, family.d
    step = min(s, d)
    reach = [0] * (index_bound + 1)
    for t in range(1, index_bound + 1):
        reach[t] = max(reach[t - 1], a[t] + (reach[t - step] if t > step else 0))
    found: list[SignedDecomposition] = []

    def r_at(i):
        return reach[i] if i > 0 else 0

    def rec(rem, prefix, same_max, opp_max, last):
        if rem == 0:
            found.append(SignedDecomposition(tuple(prefix), family))
        for sign in (1, -1):
            top = same_max if sign == last else opp_max
            for i in range(top, 0, -1):
                new = rem - sign * a[i]
                if abs(new) > r_at(i - step):
                    continue
                prefix.append((i, sign))
                rec(new, prefix, i - s, i - d, sign)
                prefix.pop()

    rec(x, [], index_bound, index_bound, 0)
    return found


def oracle_range(family: SequenceFamily, index_bound: int) -> int:
    """Largest X such that every |x| <= X is out of reach of any legal
    decomposition whose top index exceeds ``index_bound``.

    Families satisfying the interval identity tile Z+ with [a_n - R(n-d), R(n)],
    so X = R(index_bound). Otherwise the bound uses a_n - (a_1 + ... + a_{n-1}),
    which only works once the terms at least double (true for the 3^n tails of
    the (1,1) fixtures).
    """
    if all(check_interval_identity(family, n) for n in range(1, index_bound + 1)):
        return family.r(index_bound)
    best = None
    for n in range(index_bound + 1, index_bound + 6):
        low = family.term(n) - sum(family.terms(n - 1))
        best = low if best is None else min(best, low)
    return max(best - 1, 0)


# -- base 3 <-> B_k -----------------------------------------------------------

STANDARD_TO_BK = "standard_to_Bk"
BK_TO_STANDARD = "Bk_to_standard"


def base3_bijection(dec: SignedDecomposition, direction: str, shift_position: int,
                    family: Optional[SequenceFamily] = None) -> SignedDecomposition:
    """Rewrite between powers-of-three and B_k (the term 2*3^k at index k+1).

    ``shift_position`` is k, the exponent of the doubled term. Both directions
    resolve the special index k+1 with 2*3^j = 3^(j+1) - 3^j and carry any
    doubled coefficient upward until it cancels or lands on an empty index.
    """
    if direction not in (STANDARD_TO_BK, BK_TO_STANDARD):
        raise ValueError(f"unknown direction {direction!r}")
    if shift_position < 0:
        raise ValueError("shift_position must be non-negative")
    p = shift_position + 1
    coeff = {i: e for i, e in dec.terms}
    if len(coeff) != len(dec.terms):
        raise ValueError("repeated index")
    eps = coeff.pop(p, 0)
    special = 0
    if eps:
        if direction == STANDARD_TO_BK:
            # e*3^k = e*3^(k+1) - e*(2*3^k)
            special = -eps
        else:
            # e*(2*3^k) = e*3^(k+1) - e*3^k
            coeff[p] = -eps
        i = p + 1
        carry = eps
        while carry:
            c = coeff.get(i, 0) + carry
            if c in (2, -2):
                # 2*3^(i-1) = 3^i - 3^(i-1)
                coeff[i] = -c // 2
                carry = c // 2
            else:
                if c:
                    coeff[i] = c
                else:
                    coeff.pop(i, None)
                carry = 0
            i += 1
    if special:
        coeff[p] = special
    terms = tuple(sorted(((i, e) for i, e in coeff.items() if e), reverse=True))
    return SignedDecomposition(terms, family)


def search_decomposition(x: int, family: SequenceFamily,
                         index_bound: Optional[int] = None) -> SignedDecomposition:
    """Decomposition found by exhaustive search, for families where greedy fails.

    Without ``index_bound`` the smallest bound whose :func:`oracle_range`
    covers |x| is used, so no legal decomposition with a larger top index
    can exist. Raises if the search finds zero or several decompositions.
    """
    if index_bound is None:
        index_bound = 1
        while oracle_range(family, index_bound) < abs(x):
            index_bound += 1
    found = brute_force_decompositions(x, family, index_bound)
    if len(found) != 1:
        raise DecompositionFailure(
            family, index_bound,
            f"{x} has {len(found)} legal decompositions up to index {index_bound} in {family!r}")
    return found[0]
