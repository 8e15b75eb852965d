"""Far-difference bases: k-Skipponacci, standard (s, d) and explicit term lists.

All indexing is 1-based; any index <= 0 reads as the value 0.
"""
from __future__ import annotations

import bisect
import enum
import threading
from typing import Callable, Optional, Sequence


class Kind(enum.Enum):
    SKIPPONACCI = "skipponacci"
    STANDARD_SD = "sd"
    EXPLICIT = "explicit"


def _skipponacci_next(k: int) -> Callable[[list], int]:
    def step(t):
        n = len(t)  # index of the term being produced (t[0] is padding)
        if n <= k + 1:
            return n
        return t[n - 1] + t[n - 1 - k]
    return step


def _sd_next(s: int, d: int) -> Callable[[list], int]:
    lo, hi = min(s, d), max(s, d)

    def at(t, i):
        return t[i] if i > 0 else 0

    def step(t):
        n = len(t)
        if n <= lo:
            return n
        if n <= hi:
            if s < d:
                return at(t, n - 1) + at(t, n - s)
            return at(t, n - 1) + at(t, n - d) + 1
        return at(t, n - 1) + at(t, n - s) + at(t, n - d)
    return step


def triple_last(t: list) -> int:
    """Extension rule a_n = 3 a_{n-1}, used by the base-3 style fixtures."""
    return 3 * t[-1]


class SequenceFamily:
    """A decomposition basis with its legality parameters.

    ``s`` is the minimum index gap between same-sign neighbours, ``d`` the
    minimum gap between opposite-sign neighbours. Terms and the partial sums
    ``R(n) = a_n + a_{n-s} + a_{n-2s} + ...`` are cached and grown on demand;
    growth is serialized by a lock so concurrent readers see a consistent
    prefix.
    """

    def __init__(self, kind: Kind, s: int, d: int, step: Optional[Callable[[list], int]],
                 initial: Sequence[int] = (), params: Optional[dict] = None,
                 name: Optional[str] = None):
        if s < 1 or d < 1:
            raise ValueError("s and d must be positive")
        self.kind = kind
        self.s = s
        self.d = d
        self.params = dict(params or {})
        self.name = name
        self._step = step
        self._terms = [0]
        self._r = [0]
        self._lock = threading.Lock()
        for v in initial:
            self._append(int(v))

    # -- constructors -------------------------------------------------------
    @classmethod
    def skipponacci(cls, k: int) -> "SequenceFamily":
        if k < 0:
            raise ValueError("k must be non-negative")
        return cls(Kind.SKIPPONACCI, 2 * k + 2, k + 2, _skipponacci_next(k),
                   params={"k": k}, name=f"k={k}")

    @classmethod
    def standard_sd(cls, s: int, d: int) -> "SequenceFamily":
        return cls(Kind.STANDARD_SD, s, d, _sd_next(s, d),
                   params={"s": s, "d": d}, name=f"sd={s},{d}")

    @classmethod
    def explicit(cls, terms: Sequence[int], s: int = 1, d: int = 1,
                 extend: Optional[Callable[[list], int]] = None,
                 name: Optional[str] = None) -> "SequenceFamily":
        """Family from a given prefix; ``extend(terms)`` yields the next term.

        No check is made that the result has unique representations.
        """
        if any(t <= 0 for t in terms):
            raise ValueError("explicit terms must be positive")
        if any(b <= a for a, b in zip(terms, terms[1:])):
            raise ValueError("explicit terms must be strictly increasing")
        return cls(Kind.EXPLICIT, s, d, extend, initial=terms,
                   params={"terms": list(terms), "s": s, "d": d}, name=name)

    @property
    def k(self) -> Optional[int]:
        return self.params.get("k")

    # -- growth ---------------------------------------------------------------
    def _append(self, value: int) -> None:
        n = len(self._terms)
        if value <= self._terms[-1]:
            raise ValueError(f"term {n} = {value} does not increase")
        self._terms.append(value)
        self._r.append(value + (self._r[n - self.s] if n - self.s > 0 else 0))

    def ensure(self, n: int) -> None:
        """Make terms 1..n available."""
        if n < len(self._terms):
            return
        with self._lock:
            while len(self._terms) <= n:
                if self._step is None:
                    raise IndexError(
                        f"explicit family {self.name!r} has only {len(self._terms) - 1} terms")
                self._append(int(self._step(self._terms)))

    @property
    def size(self) -> int:
        """Number of terms computed so far."""
        return len(self._terms) - 1

    @property
    def extendable(self) -> bool:
        return self._step is not None

    def term(self, n: int) -> int:
        if n <= 0:
            return 0
        self.ensure(n)
        return self._terms[n]

    def terms(self, n_max: int) -> list[int]:
        self.ensure(n_max)
        return self._terms[1:n_max + 1]

    def r(self, n: int) -> int:
        if n <= 0:
            return 0
        self.ensure(n)
        return self._r[n]

    def leading_index(self, x: int) -> int:
        """Smallest n >= 1 with R(n) >= x, for x >= 1."""
        if x < 1:
            raise ValueError("x must be positive")
        while self._r[-1] < x:
            if not self.extendable:
                raise ValueError(f"{x} exceeds R({self.size}) of family {self.name!r}")
            self.ensure(2 * len(self._terms))
        return bisect.bisect_left(self._r, x, 1)

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value}
        if self.kind is Kind.SKIPPONACCI:
            out["k"] = self.params["k"]
        elif self.kind is Kind.STANDARD_SD:
            out.update(s=self.s, d=self.d)
        else:
            out.update(name=self.name, s=self.s, d=self.d, terms=self.terms(self.size))
        return out

    def __repr__(self):
        return f"SequenceFamily({self.name or self.kind.value}, s={self.s}, d={self.d})"


def skipponacci_terms(k: int, n_max: int) -> list[int]:
    """First ``n_max`` k-Skipponacci numbers S_1, ..., S_{n_max}."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return SequenceFamily.skipponacci(k).terms(n_max)


def sd_terms(s: int, d: int, n_max: int) -> list[int]:
    """First ``n_max`` terms of the standard (s, d) far-difference sequence."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return SequenceFamily.standard_sd(s, d).terms(n_max)


def r_sum(family: SequenceFamily, n: int) -> int:
    return family.r(n)


def check_interval_identity(family: SequenceFamily, n: int) -> bool:
    """a_n == R(n-1) + R(n-d) + 1, which makes the blocks [a_n - R(n-d), R(n)] tile Z+."""
    return family.term(n) == family.r(n - 1) + family.r(n - family.d) + 1


def interval(family: SequenceFamily, n: int) -> tuple[int, int]:
    """Closed block of integers whose decomposition leads with a_n."""
    return family.term(n) - family.r(n - family.d), family.r(n)


# -- named fixtures ---------------------------------------------------------

def base3_family() -> SequenceFamily:
    return SequenceFamily.explicit([1], 1, 1, triple_last, name="base3")


def b_k_family(k: int) -> SequenceFamily:
    """Powers of three with the term at index k+1 doubled."""
    if k < 1:
        raise ValueError("k must be positive")
    prefix = [3 ** i for i in range(k)] + [2 * 3 ** k]
    return SequenceFamily.explicit(prefix, 1, 1, _b_k_step(k), name=f"b_k:{k}")


def _b_k_step(k: int):
    def step(t):
        return 3 ** (len(t) - 1)
    return step


FIXTURES = {
    "example5.1a": lambda: SequenceFamily.explicit([2, 6, 9], 1, 1, triple_last, name="example5.1a"),
    "example5.1b": lambda: SequenceFamily.explicit([3, 4, 9], 1, 1, triple_last, name="example5.1b"),
    "example5.1c": lambda: SequenceFamily.explicit([1, 9, 12, 27], 1, 1, triple_last,
                                                   name="example5.1c"),
    "base3": base3_family,
}


def fixture(name: str) -> SequenceFamily:
    """Look up a named fixture: ``example5.1a``..``example5.1c``, ``base3``, ``b_k:<k>``."""
    if name.startswith("b_k:"):
        return b_k_family(int(name[4:]))
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}") from None


def family_from_dict(data: dict) -> SequenceFamily:
    kind = data["kind"]
    if kind == Kind.SKIPPONACCI.value:
        return SequenceFamily.skipponacci(int(data["k"]))
    if kind == Kind.STANDARD_SD.value:
        return SequenceFamily.standard_sd(int(data["s"]), int(data["d"]))
    if data.get("name"):
        try:
            return fixture(data["name"])
        except KeyError:
            pass
    return SequenceFamily.explicit(data["terms"], int(data["s"]), int(data["d"]),
                                   name=data.get("name"))
