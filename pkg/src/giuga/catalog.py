"""The thirteen known Giuga numbers, shipped as a text file and re-verified.

File format, one entry per line (UTF-8)::

    <decimal>:<p1>,<p2>,...[:note]

Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, replace
from importlib import resources
from math import prod
from pathlib import Path

from .characterizations import check_bernoulli, check_definition, check_index
from .derivative import derive_factored
from .numtheory import (
    DEFAULT_FACTOR_BUDGET,
    Factorization,
    FactorizationBudgetExceeded,
    factorize,
    is_prime,
    primality_kind,
)

__all__ = [
    "CatalogEntry",
    "CatalogParseError",
    "CatalogVerificationError",
    "IrreconcilableEntry",
    "VerificationReport",
    "load_catalog",
    "parse_catalog",
    "reconcile_entry",
    "verify_catalog",
    "verify_entry",
]

log = logging.getLogger(__name__)

_CLAIMED = re.compile(r"\b(\d+)\s+factors\b")


class CatalogParseError(ValueError):
    pass


class IrreconcilableEntry(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    decimal_value: int
    listed_primes: tuple[int, ...]
    factor_count_claimed: int
    source_note: str = ""
    reconciliation: str | None = None

    def to_json(self) -> dict:
        return {
            "decimal_value": str(self.decimal_value),
            "listed_primes": [str(p) for p in self.listed_primes],
            "factor_count_claimed": self.factor_count_claimed,
            "source_note": self.source_note,
        }


def _parse_int(field: str, lineno: int) -> int:
    field = field.strip()
    if not field.isdigit():
        raise CatalogParseError(f"line {lineno}: expected a decimal integer, got {field!r}")
    return int(field)


def parse_catalog(text: str) -> list[CatalogEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(":", 2)
        if len(parts) < 2:
            raise CatalogParseError(f"line {lineno}: missing ':' separator")
        value = _parse_int(parts[0], lineno)
        primes = tuple(_parse_int(p, lineno) for p in parts[1].split(","))
        note = parts[2].strip() if len(parts) == 3 else ""
        m = _CLAIMED.search(note)
        claimed = int(m.group(1)) if m else len(primes)
        entries.append(CatalogEntry(value, primes, claimed, note))
    return entries


def load_catalog(path: str | Path | None = None) -> list[CatalogEntry]:
    """Entries as transcribed (not yet reconciled), ascending by value."""
    if path is None:
        text = resources.files("giuga").joinpath("data/known_giuga.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return sorted(parse_catalog(text), key=lambda e: e.decimal_value)


def reconcile_entry(e: CatalogEntry, effort_limit: int = DEFAULT_FACTOR_BUDGET) -> CatalogEntry:
    """Make the prime list multiply out to the decimal value, or raise.

    Listed numbers that are not prime or do not divide what is left of the
    value are dropped; the leftover cofactor is factored within the budget
    and its primes inserted. Any change is described in ``reconciliation``.
    """
    n = e.decimal_value
    if n < 2:
        raise IrreconcilableEntry(f"{n}: value must be >= 2")
    rest = n
    kept, dropped = [], []
    for p in e.listed_primes:
        if p > 1 and rest % p == 0 and is_prime(p):
            kept.append(p)
            rest //= p
        else:
            dropped.append(p)
    if rest == 1 and not dropped:
        return e
    try:
        f = factorize(rest, effort_limit)
    except FactorizationBudgetExceeded as exc:
        raise IrreconcilableEntry(
            f"{n}: cofactor {rest} could not be factored within budget"
        ) from exc
    inserted = [p for p, r in f.factors for _ in range(r)]
    notes = []
    if dropped:
        notes.append("dropped listed " + ", ".join(map(str, dropped))
                     + " (composite or not a divisor)")
    if rest > 1:
        notes.append(f"inserted {', '.join(map(str, inserted))} from cofactor {rest}")
    desc = "; ".join(notes)
    log.warning("catalog entry %d reconciled: %s", n, desc)
    return replace(e, listed_primes=tuple(sorted(kept + inserted)), reconciliation=desc)


@dataclass(frozen=True)
class VerificationReport:
    entry: CatalogEntry
    product_matches: bool
    all_prime: bool
    giuga_confirmed: bool
    derivative_is_n_plus_1: bool
    index_a: int | None
    reconciliation_applied: str | None
    probabilistic_primes: tuple[int, ...] = ()

    @property
    def factor_count(self) -> int:
        return len(self.entry.listed_primes)

    @property
    def passed(self) -> bool:
        return (
            self.product_matches
            and self.all_prime
            and self.giuga_confirmed
            and self.derivative_is_n_plus_1
            and self.index_a == 1
        )

    def to_json(self) -> dict:
        return {
            "entry": self.entry.to_json(),
            "factor_count": self.factor_count,
            "product_matches": self.product_matches,
            "all_prime": self.all_prime,
            "giuga_confirmed": self.giuga_confirmed,
            "derivative_is_n_plus_1": self.derivative_is_n_plus_1,
            "index_a": None if self.index_a is None else str(self.index_a),
            "reconciliation_applied": self.reconciliation_applied,
            "probabilistic_primes": [str(p) for p in self.probabilistic_primes],
            "passed": self.passed,
        }


class CatalogVerificationError(RuntimeError):
    def __init__(self, reports: list[VerificationReport]):
        self.reports = reports
        bad = [str(r.entry.decimal_value) for r in reports if not r.passed]
        super().__init__(f"catalog verification failed for: {', '.join(bad)}")


def verify_entry(e: CatalogEntry, effort_limit: int = DEFAULT_FACTOR_BUDGET) -> VerificationReport:
    r = reconcile_entry(e, effort_limit)
    n = r.decimal_value
    kinds = [primality_kind(p) for p in r.listed_primes]
    all_prime = "composite" not in kinds
    product_matches = prod(r.listed_primes) == n
    giuga = deriv_ok = False
    index_a = None
    if product_matches and all_prime:
        f = Factorization.from_primes(r.listed_primes)
        giuga = check_definition(n, f).is_giuga and check_bernoulli(n, f)
        index_a = check_index(n, f) if f.is_composite() else None
        deriv_ok = derive_factored(f, n) == n + 1
    return VerificationReport(
        entry=r,
        product_matches=product_matches,
        all_prime=all_prime,
        giuga_confirmed=giuga,
        derivative_is_n_plus_1=deriv_ok,
        index_a=index_a,
        reconciliation_applied=r.reconciliation,
        probabilistic_primes=tuple(
            p for p, k in zip(r.listed_primes, kinds) if k == "probable-prime"
        ),
    )


def verify_catalog(
    entries: list[CatalogEntry] | None = None,
    strict: bool = True,
    effort_limit: int = DEFAULT_FACTOR_BUDGET,
) -> list[VerificationReport]:
    """Reconcile and re-verify every entry.

    With ``strict`` (the default) any failing entry raises
    :class:`CatalogVerificationError`; the reports are attached to it.
    """
    if entries is None:
        entries = load_catalog()
    reports = [verify_entry(e, effort_limit) for e in entries]
    if strict and not all(r.passed for r in reports):
        raise CatalogVerificationError(reports)
    return reports
