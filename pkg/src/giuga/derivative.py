"""Arithmetic derivative and the linear form n' = a*n + 1."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .numtheory import (
    DEFAULT_FACTOR_BUDGET,
    Factorization,
    FactorizationMismatch,
    factorize,
    spf_table,
)

__all__ = [
    "DerivativeResult",
    "LinearForm",
    "derivative_table",
    "derive",
    "derive_factored",
    "linear_form",
    "linear_form_factored",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DerivativeResult:
    n: int
    derivative: int
    factorization: Factorization

    def to_json(self) -> dict:
        return {
            "n": str(self.n),
            "derivative": str(self.derivative),
            "factorization": self.factorization.to_json(),
        }


@dataclass(frozen=True)
class LinearForm:
    """Witness that ``n' == a * n + 1`` with ``a >= 1``."""

    n: int
    a: int


def derive_factored(f: Factorization, n: int) -> int:
    """n' from a known factorization of n: sum of r * (n // p).

    Only integer arithmetic is used, so this is exact at any size.
    """
    f.check_value(n)
    if n <= 1:
        return 0
    return sum(r * (n // p) for p, r in f.factors)


def derive(n: int, effort_limit: int = DEFAULT_FACTOR_BUDGET) -> DerivativeResult:
    """Arithmetic derivative of n >= 0. By convention 0' = 1' = 0."""
    if n < 0:
        raise ValueError("derivative is defined here for n >= 0 only")
    if n == 0:
        return DerivativeResult(0, 0, Factorization())
    f = factorize(n, effort_limit)
    return DerivativeResult(n, derive_factored(f, n), f)


def linear_form_factored(f: Factorization, n: int) -> LinearForm | None:
    """Like :func:`linear_form` but with the factorization supplied."""
    if n < 1:
        raise ValueError("linear_form needs n >= 1")
    d = derive_factored(f, n)
    a, rem = divmod(d - 1, n)
    if rem or a < 1:
        if rem == 0 and a == 0:
            log.debug("n=%d solves n' = 0*n + 1 (prime); a >= 1 required", n)
        return None
    return LinearForm(n, a)


def linear_form(n: int, effort_limit: int = DEFAULT_FACTOR_BUDGET) -> LinearForm | None:
    """Return ``a`` with ``n' = a*n + 1`` and ``a >= 1``, if any.

    Primes satisfy ``p' = 0*p + 1``; a = 0 is deliberately rejected so that
    solutions are exactly the Giuga numbers.
    """
    if n < 1:
        raise ValueError("linear_form needs n >= 1")
    return linear_form_factored(factorize(n, effort_limit), n)


def derivative_table(limit: int) -> np.ndarray:
    """Array ``d`` with ``d[n] = n'`` for 0 <= n <= limit.

    Uses the smallest-prime-factor recurrence ``(p*m)' = m + p*m'``. Every
    ``m = n // spf(n)`` is at most n/2, so the range is filled in dyadic
    blocks [2^k, 2^(k+1)), each one vectorised against earlier blocks.
    """
    t = spf_table(max(limit, 2))
    d = np.zeros(limit + 1, dtype=np.int64)
    lo = 2
    while lo <= limit:
        hi = min(2 * lo, limit + 1)
        n = np.arange(lo, hi, dtype=np.int64)
        p = t[lo:hi].astype(np.int64)
        m = n // p
        d[lo:hi] = m + p * d[m]
        lo = hi
    return d
