"""The four equivalent tests for Giuga numbers, plus the squarefree lemma.

A Giuga number is a composite n with ``p | (n/p - 1)`` for every prime
``p | n``. For composite n the following are equivalent:

``definition``  the per-prime divisibility above;
``index``       ``sum(1/p) - 1/n`` over ``p | n`` is a natural number;
``power_sum``   ``sum(j**phi(n) for j in 1..n-1) == -1 (mod n)``;
``bernoulli``   ``n * B_phi(n) == -1 (mod n)``.

Any two disagreeing on the same n means a bug, so :func:`check_all` raises
:class:`GiugaDisagreement` rather than voting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt, prod

import numpy as np

from .derivative import derive_factored
from .numtheory import DEFAULT_FACTOR_BUDGET, Factorization, euler_phi, factorize, is_prime

__all__ = [
    "BERNOULLI_MAX_INDEX",
    "DEFAULT_POWERSUM_LIMIT",
    "METHODS",
    "BernoulliValue",
    "GiugaCertificate",
    "GiugaDisagreement",
    "bernoulli_exact",
    "bernoulli_residue_exact",
    "bernoulli_residue_reduced",
    "check_all",
    "check_bernoulli",
    "check_definition",
    "check_index",
    "check_power_sum",
    "check_squarefree_lemma",
    "giuga_index_rational",
    "power_sum_residue",
    "staudt_clausen_primes",
]

METHODS = ("definition", "index", "power_sum", "bernoulli")
DEFAULT_POWERSUM_LIMIT = 10**6
BERNOULLI_MAX_INDEX = 1000


class GiugaDisagreement(AssertionError):
    """Two characterizations returned different verdicts for the same n."""

    def __init__(self, n: int, verdicts: dict):
        self.n = n
        self.verdicts = verdicts
        super().__init__(f"characterizations disagree for n={n}: {verdicts}")


@dataclass
class GiugaCertificate:
    n: int
    composite: bool
    squarefree: bool
    per_prime: list[tuple[int, int]]
    """``(p, (n // p - 1) % p)`` for each distinct prime p; all zero iff Giuga."""
    index_a: int | None = None
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def is_giuga(self) -> bool:
        return self.composite and all(res == 0 for _, res in self.per_prime)

    @property
    def methods_agreeing(self) -> frozenset[str]:
        return frozenset(m for m, v in self.verdicts.items() if v == self.is_giuga)

    def to_json(self) -> dict:
        return {
            "n": str(self.n),
            "is_giuga": self.is_giuga,
            "composite": self.composite,
            "squarefree": self.squarefree,
            "per_prime": [[str(p), str(r)] for p, r in self.per_prime],
            "index_a": None if self.index_a is None else str(self.index_a),
            "verdicts": dict(self.verdicts),
            "methods_agreeing": sorted(self.methods_agreeing),
        }


def _factors(n: int, factors: Factorization | None, budget: int) -> Factorization:
    if factors is None:
        return factorize(n, budget)
    factors.check_value(n)
    return factors


# -- i: definition ----------------------------------------------------------

def check_definition(
    n: int,
    factors: Factorization | None = None,
    effort_limit: int = DEFAULT_FACTOR_BUDGET,
) -> GiugaCertificate:
    """Certificate for the per-prime test ``p | n/p - 1``."""
    if n < 1:
        raise ValueError("check_definition needs n >= 1")
    f = _factors(n, factors, effort_limit)
    cert = GiugaCertificate(
        n=n,
        composite=f.is_composite(),
        squarefree=f.is_squarefree(),
        per_prime=[(p, (n // p - 1) % p) for p in f.primes],
    )
    cert.verdicts["definition"] = cert.is_giuga
    if cert.is_giuga:
        cert.index_a = check_index(n, f)
    return cert


# -- ii: rational index -----------------------------------------------------

def giuga_index_rational(f: Factorization) -> Fraction:
    """``sum(1/p) - 1/n`` over the distinct primes p of n = f.value, exactly.

    For squarefree n this is ``sum(1/p) - prod(1/p)``. The product form
    cannot be used on its own: n = 60 shares its primes with 30 and would
    score 1 without being a Giuga number. With 1/n, any p with p*p | n leaves
    a numerator of -1 (mod p), so non-squarefree n never give an integer.
    """
    n = f.value
    return Fraction(sum(n // p for p in f.primes) - 1, n)


def check_index(
    n: int,
    factors: Factorization | None = None,
    effort_limit: int = DEFAULT_FACTOR_BUDGET,
) -> int | None:
    """The Giuga index a when ``sum(1/p) - 1/n`` is an integer >= 1.

    Only a >= 1 counts; zero would need n prime, which is excluded anyway.
    """
    f = _factors(n, factors, effort_limit)
    if not f.is_composite():
        raise ValueError(f"check_index needs a composite n, got {n}")
    q = giuga_index_rational(f)
    if q.denominator == 1 and q >= 1:
        return int(q)
    return None


# -- iii: power sum ---------------------------------------------------------

_VECTOR_MAX_N = 1 << 31
_CHUNK = 1 << 20


def power_sum_residue(n: int, e: int) -> int:
    """``sum(j**e for j in range(1, n)) % n``.

    Vectorised square-and-multiply while n < 2**31 (products fit in int64),
    plain ``pow`` above that.
    """
    if n < _VECTOR_MAX_N:
        total = 0
        for lo in range(1, n, _CHUNK):
            base = np.arange(lo, min(lo + _CHUNK, n), dtype=np.int64)
            acc = np.ones_like(base)
            k = e
            while k:
                if k & 1:
                    acc = acc * base % n
                k >>= 1
                if k:
                    base = base * base % n
            total += int(acc.sum())
        return total % n
    return sum(pow(j, e, n) for j in range(1, n)) % n


def check_power_sum(
    n: int,
    limit: int = DEFAULT_POWERSUM_LIMIT,
    factors: Factorization | None = None,
) -> bool | None:
    """Power-sum test, or None when n > limit (the cost is Theta(n log phi))."""
    if n > limit:
        return None
    f = _factors(n, factors, DEFAULT_FACTOR_BUDGET)
    return power_sum_residue(n, euler_phi(f)) == n - 1


# -- iv: Bernoulli ----------------------------------------------------------

@dataclass(frozen=True)
class BernoulliValue:
    m: int
    value: Fraction


def staudt_clausen_primes(m: int) -> list[int]:
    """Primes p with ``(p - 1) | m`` for even m >= 2, ascending."""
    divs = set()
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            divs.update((d, m // d))
    return [d + 1 for d in sorted(divs) if is_prime(d + 1)]


@lru_cache(maxsize=None)
def _bernoulli_upto(m: int) -> tuple[Fraction, ...]:
    # B_1 = -1/2; odd indices above 1 vanish and are stored as 0.
    b = [Fraction(1), Fraction(-1, 2)]
    for k in range(2, m + 1):
        if k & 1:
            b.append(Fraction(0))
            continue
        s = sum(comb(k + 1, j) * b[j] for j in range(k) if b[j])
        b.append(-s / (k + 1))
    return tuple(b)


def bernoulli_exact(m: int) -> BernoulliValue:
    """Exact B_m for even 0 <= m <= 1000 from sum_{j<=m} C(m+1, j) B_j = 0.

    The denominator of every returned value is checked against the product
    of primes p with (p - 1) | m.
    """
    if m < 0 or m % 2 or m > BERNOULLI_MAX_INDEX:
        raise ValueError(f"bernoulli_exact supports even 0 <= m <= {BERNOULLI_MAX_INDEX}, got {m}")
    # Extend in steps so the cache holds a single growing table.
    top = max(m, 64)
    top = 1 << (top - 1).bit_length()
    value = _bernoulli_upto(min(top, BERNOULLI_MAX_INDEX))[m]
    if m >= 2:
        expected = prod(staudt_clausen_primes(m))
        if value.denominator != expected:
            raise ArithmeticError(
                f"B_{m} denominator {value.denominator} != von Staudt-Clausen {expected}"
            )
    return BernoulliValue(m, value)


def bernoulli_residue_reduced(n: int, m: int, f: Factorization) -> int:
    """``n * B_m mod n`` via von Staudt-Clausen, without computing B_m.

    Writing ``B_m = I - sum(1/p for (p-1) | m)``, the terms with p not
    dividing n vanish modulo n, leaving ``-sum(n // p)`` over the primes of n
    with ``(p - 1) | m``.
    """
    return -sum(n // p for p in f.primes if m % (p - 1) == 0) % n


def bernoulli_residue_exact(n: int, m: int) -> int:
    """``n * B_m mod n`` from the exact value of B_m (denominators cleared).

    The part of the denominator shared with n cancels against the factor n;
    what is left must be a unit mod n and is inverted.
    """
    b = bernoulli_exact(m).value
    g = gcd(b.denominator, n)
    h = b.denominator // g
    if gcd(h, n) != 1:
        raise ValueError(f"n*B_{m} is not n-integral for n={n}")
    return (n // g) * b.numerator * pow(h, -1, n) % n


def check_bernoulli(
    n: int,
    factors: Factorization | None = None,
    effort_limit: int = DEFAULT_FACTOR_BUDGET,
) -> bool:
    """Bernoulli test ``n * B_phi(n) == -1 (mod n)`` via the reduction above.

    Non-squarefree n return False at once: no solution can have a square factor.
    """
    f = _factors(n, factors, effort_limit)
    if not f.is_squarefree():
        return False
    return bernoulli_residue_reduced(n, euler_phi(f), f) == n - 1


# -- lemma and combined check -----------------------------------------------

def check_squarefree_lemma(n: int, factors: Factorization | None = None) -> bool:
    """False only if ``n' == 1 (mod n)`` while n has a square factor."""
    if n < 2:
        raise ValueError("check_squarefree_lemma needs n >= 2")
    f = _factors(n, factors, DEFAULT_FACTOR_BUDGET)
    if (derive_factored(f, n) - 1) % n:
        return True
    return f.is_squarefree()


def check_all(
    n: int,
    power_sum_limit: int = DEFAULT_POWERSUM_LIMIT,
    factors: Factorization | None = None,
    effort_limit: int = DEFAULT_FACTOR_BUDGET,
) -> GiugaCertificate:
    """Run every applicable characterization and demand they agree.

    The power-sum test is skipped above ``power_sum_limit``. For n that is
    not composite only the definition applies.
    """
    if n < 2:
        raise ValueError("check_all needs n >= 2")
    f = _factors(n, factors, effort_limit)
    cert = check_definition(n, f)
    if not cert.composite:
        return cert
    index = check_index(n, f)
    cert.verdicts["index"] = index is not None
    ps = check_power_sum(n, power_sum_limit, f)
    if ps is not None:
        cert.verdicts["power_sum"] = ps
    cert.verdicts["bernoulli"] = check_bernoulli(n, f)
    if len(set(cert.verdicts.values())) > 1:
        raise GiugaDisagreement(n, dict(cert.verdicts))
    if cert.is_giuga and cert.index_a != index:
        raise GiugaDisagreement(n, {"index_a": cert.index_a, "index": index})
    return cert
