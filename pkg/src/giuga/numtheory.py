"""Integer substrate: primality, factorization, totient and sieves.

Every value is a plain Python ``int`` (arbitrary precision); exact rationals
are :class:`fractions.Fraction`, which is always kept in lowest terms with a
positive denominator.
"""

from __future__ import annotations

import random
from array import array
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "DEFAULT_FACTOR_BUDGET",
    "ExactRational",
    "Factorization",
    "FactorizationBudgetExceeded",
    "FactorizationMismatch",
    "euler_phi",
    "factorize",
    "is_prime",
    "parse_natural",
    "primality_kind",
    "primes_between",
    "primes_up_to",
    "spf_table",
]

ExactRational = Fraction

DEFAULT_FACTOR_BUDGET = 2_000_000
"""Default number of rho iterations ``factorize`` may spend."""

# Strong-probable-prime bases that decide primality for every n < 2**64
# (Jaeschke / Sorenson-Webster: the first twelve primes suffice).
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_RANDOM_ROUNDS = 64
_WORD = 1 << 64

_SMALL_SPF_LIMIT = 1 << 22
_small_spf: array | None = None


def parse_natural(text: str) -> int:
    """Parse a non-negative decimal integer, rejecting signs and junk."""
    s = text.strip().replace("_", "")
    if not s.isdigit() or not s.isascii():
        raise ValueError(f"not a natural number: {text!r}")
    return int(s)


# -- sieves -----------------------------------------------------------------

def spf_table(limit: int) -> np.ndarray:
    """Smallest-prime-factor table ``t`` with ``t[n]`` the least prime dividing n.

    Entries 0 and 1 are 0. Memory is ``4 * (limit + 1)`` bytes for limits below
    2**32 and twice that above, so the practical ceiling is set by RAM.
    """
    if limit < 2:
        raise ValueError("spf_table needs limit >= 2")
    dtype = np.uint32 if limit < (1 << 32) else np.uint64
    try:
        t = np.zeros(limit + 1, dtype=dtype)
    except MemoryError as exc:
        raise MemoryError(
            f"cannot allocate smallest-prime-factor table for limit={limit} "
            f"({(limit + 1) * np.dtype(dtype).itemsize} bytes)"
        ) from exc
    for p in range(2, isqrt(limit) + 1):
        if t[p]:
            continue
        view = t[p * p :: p]
        view[view == 0] = p
    rest = np.flatnonzero(t == 0)
    t[rest] = rest.astype(dtype)
    t[:2] = 0
    return t


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_between(lo: int, hi: int, segment: int = 1 << 20) -> Iterator[int]:
    """Yield primes p with lo <= p < hi in increasing order (segmented sieve)."""
    lo = max(lo, 2)
    if hi <= lo:
        return
    base = primes_up_to(isqrt(hi - 1))
    start = lo
    while start < hi:
        stop = min(start + segment, hi)
        flags = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            flags[first - start :: p] = False
        for off in np.flatnonzero(flags):
            yield start + int(off)
        start = stop


def _small_table() -> array:
    # array.array indexing yields Python ints far faster than numpy scalars.
    global _small_spf
    if _small_spf is None:
        _small_spf = array("I", spf_table(_SMALL_SPF_LIMIT).tobytes())
    return _small_spf


_TRIAL_PRIMES = tuple(int(p) for p in primes_up_to(1000))


# -- primality --------------------------------------------------------------

def _strong_probable_prime(n: int, d: int, r: int, base: int) -> bool:
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Exact for n < 2**64 (fixed witness set). Above that, 64 strong-probable-prime
    rounds with random bases, so a composite slips through with probability at
    most 4**-64; :func:`primality_kind` reports which regime applied.
    """
    if n < 2:
        return False
    for p in _TRIAL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    d, r = n - 1, 0
    while not d & 1:
        d >>= 1
        r += 1
    if n < _WORD:
        return all(_strong_probable_prime(n, d, r, b) for b in _MR_BASES_64)
    # Seeded by n so repeated calls give the same answer.
    rng = random.Random(n)
    return all(
        _strong_probable_prime(n, d, r, rng.randrange(2, n - 1))
        for _ in range(_MR_RANDOM_ROUNDS)
    )


def primality_kind(n: int) -> str:
    """``"composite"``, ``"prime"`` (proven) or ``"probable-prime"``."""
    if not is_prime(n):
        return "composite"
    return "prime" if n < _WORD else "probable-prime"


# -- factorization ----------------------------------------------------------

class FactorizationMismatch(ValueError):
    """A supplied factorization does not multiply out to the stated value."""


@dataclass(frozen=True)
class Factorization:
    """Prime-power factorization as ``((p1, r1), (p2, r2), ...)``, p strictly increasing."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        last = 1
        for p, r in self.factors:
            if p <= last or r < 1:
                raise ValueError(f"malformed factorization: {self.factors!r}")
            last = p

    @classmethod
    def from_primes(cls, primes: Iterable[int]) -> "Factorization":
        """Build from a multiset of primes (any order, repeats allowed)."""
        counts: dict[int, int] = {}
        for p in primes:
            counts[p] = counts.get(p, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @property
    def value(self) -> int:
        return prod(p**r for p, r in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        """Number of distinct primes."""
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        """Number of primes counted with multiplicity."""
        return sum(r for _, r in self.factors)

    def is_squarefree(self) -> bool:
        return all(r == 1 for _, r in self.factors)

    def is_composite(self) -> bool:
        return self.big_omega >= 2

    def validate(self) -> None:
        """Raise ``ValueError`` unless every listed prime passes :func:`is_prime`."""
        for p, _ in self.factors:
            if not is_prime(p):
                raise ValueError(f"{p} is listed as a prime factor but is composite")

    def check_value(self, n: int) -> None:
        if self.value != n:
            raise FactorizationMismatch(f"factors multiply to {self.value}, not {n}")

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def to_json(self) -> list[list]:
        return [[str(p), r] for p, r in self.factors]

    @classmethod
    def from_json(cls, data: list) -> "Factorization":
        return cls(tuple((int(p), int(r)) for p, r in data))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(str(p) if r == 1 else f"{p}^{r}" for p, r in self.factors)


class FactorizationBudgetExceeded(RuntimeError):
    """Raised when ``factorize`` runs out of budget.

    ``partial`` holds the primes found so far, ``cofactors`` the unfactored
    remainder(s); their product times ``partial.value`` is the input.
    """

    def __init__(self, n: int, partial: Factorization, cofactors: list[int]):
        self.n = n
        self.partial = partial
        self.cofactors = cofactors
        super().__init__(
            f"factorization budget exhausted for {n}: "
            f"unfactored cofactor(s) {', '.join(map(str, cofactors))}"
        )


class _Budget:
    __slots__ = ("left",)

    def __init__(self, left: int):
        self.left = left


def _brent(n: int, budget: _Budget, rng: random.Random) -> int | None:
    """One nontrivial factor of odd composite n, or None when the budget dies."""
    while budget.left > 0:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget.left -= steps
                g = gcd(q, n)
                k += m
            r <<= 1
            if budget.left <= 0 and g == 1:
                return None
        if g == n:
            # Batch overshot; replay one step at a time from the saved point.
            while True:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                if g > 1:
                    break
        if g != n:
            return g
    return None


def _factor_small(n: int, out: list[int]) -> None:
    t = _small_table()
    while n > 1:
        p = t[n]
        out.append(p)
        n //= p


def factorize(n: int, effort_limit: int = DEFAULT_FACTOR_BUDGET) -> Factorization:
    """Complete prime factorization of n >= 1.

    Small primes are stripped by table lookup or trial division; remaining
    cofactors are split with Brent's variant of Pollard rho. ``effort_limit``
    caps the total rho iterations; running out raises
    :class:`FactorizationBudgetExceeded` instead of returning a wrong answer.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    found: list[int] = []
    if n <= _SMALL_SPF_LIMIT:
        _factor_small(n, found)
        return Factorization.from_primes(found)
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            found.append(p)
            n //= p
    if n == 1:
        return Factorization.from_primes(found)
    if n <= _SMALL_SPF_LIMIT:
        _factor_small(n, found)
        return Factorization.from_primes(found)

    budget = _Budget(effort_limit)
    rng = random.Random(n)
    stack = [n]
    stuck: list[int] = []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found.append(m)
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m, budget, rng)
        if d is None:
            stuck.append(m)
            for x in stack:
                if x > 1:
                    (found if is_prime(x) else stuck).append(x)
            break
        stack += [d, m // d]
    if stuck:
        raise FactorizationBudgetExceeded(
            prod(found) * prod(stuck), Factorization.from_primes(found), sorted(stuck)
        )
    return Factorization.from_primes(found)


def euler_phi(f: Factorization) -> int:
    """Euler's totient from a factorization; phi(1) = 1."""
    return prod(p ** (r - 1) * (p - 1) for p, r in f.factors)
