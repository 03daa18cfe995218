"""Searching for solutions of n' = a*n + 1 (equivalently, Giuga numbers of index a).

Two engines:

* :func:`sieve_search` sweeps every n in [2, limit] with a segmented sieve
  that accumulates n' directly, one segment in memory at a time.
* :func:`tuple_search` enumerates increasing prime tuples p1 < ... < pk by
  depth-first branch and bound. With prefix product P and
  s = sum(P // p_i), the sum of reciprocals is s/P; the last prime is then
  forced to q = (P - 1) / (a*P - s) (:func:`last_prime_candidate`).

All pruning comparisons are done on integers (cross-multiplied rationals);
nothing is rounded.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, prod
from pathlib import Path
from typing import Callable, Iterable, Iterator

import numpy as np

from .characterizations import check_definition, giuga_index_rational
from .numtheory import (
    DEFAULT_FACTOR_BUDGET,
    Factorization,
    FactorizationBudgetExceeded,
    factorize,
    is_prime,
    primes_between,
    primes_up_to,
)

__all__ = [
    "CHECKPOINT_HEADER",
    "MAX_TUPLE_FACTORS",
    "SearchHit",
    "SearchReport",
    "SieveConfig",
    "TupleSearchConfig",
    "last_prime_candidate",
    "min_prime_count",
    "segment_derivatives",
    "sieve_search",
    "tuple_search",
]

MAX_TUPLE_FACTORS = 12
CHECKPOINT_HEADER = "giuga-checkpoint v1"


@dataclass(frozen=True, order=True)
class SearchHit:
    n: int
    a: int
    factorization: Factorization = field(compare=False)

    def to_json(self) -> dict:
        return {
            "n": str(self.n),
            "a": str(self.a),
            "factorization": self.factorization.to_json(),
        }


@dataclass
class SearchReport:
    hits: list[SearchHit]
    nodes_explored: int = 0
    nodes_pruned: int = 0
    elapsed: float = 0.0
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "hits": [h.to_json() for h in self.hits],
            "hit_count": len(self.hits),
            "nodes_explored": self.nodes_explored,
            "nodes_pruned": self.nodes_pruned,
            "complete": self.complete,
            "elapsed": self.elapsed,
        }


def _finish(hits: Iterable[SearchHit]) -> list[SearchHit]:
    return sorted(set(hits))


# -- derivative sieve ---------------------------------------------------------

@dataclass(frozen=True)
class SieveConfig:
    limit: int
    segment_size: int = 1 << 18
    index_a: int | None = None
    worker_count: int = 1

    def __post_init__(self) -> None:
        if self.limit < 2:
            raise ValueError("sieve limit must be >= 2")
        if self.segment_size < 2:
            raise ValueError("segment_size must be >= 2")
        if self.segment_size > self.limit:
            object.__setattr__(self, "segment_size", self.limit)
        if self.index_a is not None and self.index_a < 1:
            raise ValueError("index_a must be >= 1")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")


def segment_derivatives(lo: int, hi: int, primes: np.ndarray | None = None) -> np.ndarray:
    """n' for every n in [lo, hi) as an int64 array (lo >= 1).

    Each prime power p^k <= hi adds n/p to every multiple of p^k, so n ends up
    with sum(r_i * n/p_i) over the primes up to sqrt(hi). At most one prime
    factor q exceeds that; it is recovered as n / (product of removed primes)
    and contributes n/q, which equals that same product.
    """
    if primes is None:
        primes = primes_up_to(isqrt(max(hi - 1, 1)))
    size = hi - lo
    try:
        deriv = np.zeros(size, dtype=np.int64)
        removed = np.ones(size, dtype=np.int64)
    except MemoryError as exc:
        raise MemoryError(f"cannot allocate sieve segment of {size} entries") from exc
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        pk = p
        while pk < hi:
            start = -(-lo // pk) * pk
            if start < hi:
                step = pk // p
                count = (hi - 1 - start) // pk + 1
                first = start // p
                deriv[start - lo :: pk] += np.arange(first, first + count * step, step)
                removed[start - lo :: pk] *= p
            pk *= p
    n = np.arange(lo, hi, dtype=np.int64)
    big = n > removed
    deriv[big] += removed[big]
    return deriv


def _sieve_segment(lo: int, hi: int, index_a: int | None) -> list[tuple[int, int]]:
    d = segment_derivatives(lo, hi)
    n = np.arange(lo, hi, dtype=np.int64)
    mask = (d > 1) & ((d - 1) % n == 0)
    out = []
    for k in np.flatnonzero(mask):
        nk, dk = int(n[k]), int(d[k])
        a = (dk - 1) // nk
        if index_a is None or a == index_a:
            out.append((nk, a))
    return out


def _segments(cfg: SieveConfig) -> list[tuple[int, int]]:
    bounds = range(2, cfg.limit + 1, cfg.segment_size)
    return [(lo, min(lo + cfg.segment_size, cfg.limit + 1)) for lo in bounds]


def sieve_search(
    cfg: SieveConfig,
    on_hit: Callable[[SearchHit], None] | None = None,
) -> SearchReport:
    """Every composite n <= limit with n | (n' - 1) and quotient a >= 1.

    Hits are reported to ``on_hit`` in increasing order as their segment
    finishes. The result does not depend on segment size or worker count.
    """
    t0 = time.perf_counter()
    segs = _segments(cfg)
    hits: list[SearchHit] = []

    def consume(found: list[tuple[int, int]]) -> None:
        for n, a in found:
            hit = SearchHit(n, a, factorize(n))
            hits.append(hit)
            if on_hit is not None:
                on_hit(hit)

    if cfg.worker_count == 1:
        for lo, hi in segs:
            consume(_sieve_segment(lo, hi, cfg.index_a))
    else:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            los, his = zip(*segs)
            for found in pool.map(_sieve_segment, los, his, [cfg.index_a] * len(segs)):
                consume(found)
    return SearchReport(
        hits=_finish(hits),
        nodes_explored=cfg.limit - 1,
        nodes_pruned=0,
        elapsed=time.perf_counter() - t0,
    )


# -- prime tuples -------------------------------------------------------------

def _close(P: int, s: int, last: int, a: int) -> int | None:
    """Closed-form last prime for a prefix with product P and sum s/P."""
    D = a * P - s
    if D <= 0:
        return None
    q, r = divmod(P - 1, D)
    if r or q <= last or not is_prime(q):
        return None
    # Index of the completed tuple is (s*q + P - 1) / (P*q).
    if s * q + P - 1 != a * P * q:
        raise ArithmeticError("closed-form last prime failed its own check")
    return q


def last_prime_candidate(prefix: list[int] | tuple[int, ...], a: int) -> int | None:
    """The unique prime q > max(prefix) making prefix + [q] a Giuga tuple of index a.

    Returns None when no such prime exists.
    """
    if not prefix:
        raise ValueError("prefix must be non-empty")
    if any(x >= y for x, y in zip(prefix, prefix[1:])):
        raise ValueError("prefix must be strictly increasing")
    if not all(is_prime(p) for p in prefix):
        raise ValueError("prefix must contain primes only")
    if a < 1:
        raise ValueError("a must be >= 1")
    P = prod(prefix)
    s = sum(P // p for p in prefix)
    return _close(P, s, prefix[-1], a)


@dataclass(frozen=True)
class TupleSearchConfig:
    max_factors: int
    index_a: int = 1
    prefix_prime_bound: int | None = None
    worker_count: int = 1
    min_factors: int = 3
    closing: str = "divisors"
    """``"divisors"`` pairs the last two primes through a factorization of
    P*P - D; ``"enumerate"`` walks candidate primes for the second-to-last
    slot one at a time. Both find the same tuples."""
    factor_budget: int = DEFAULT_FACTOR_BUDGET

    def __post_init__(self) -> None:
        if not 3 <= self.min_factors <= self.max_factors <= MAX_TUPLE_FACTORS:
            raise ValueError(
                f"need 3 <= min_factors <= max_factors <= {MAX_TUPLE_FACTORS}"
            )
        if self.index_a < 1:
            raise ValueError("index_a must be >= 1")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.closing not in ("divisors", "enumerate"):
            raise ValueError(f"unknown closing strategy {self.closing!r}")


class _PrimeList:
    """Growable sorted list of primes, per process."""

    def __init__(self) -> None:
        self.top = 1 << 16
        self.arr = primes_up_to(self.top)

    def between(self, lo: int, hi: int) -> Iterator[int]:
        if hi > self.top and hi <= 1 << 27:
            while self.top < hi:
                self.top *= 2
            self.arr = primes_up_to(self.top)
        if hi <= self.top:
            i = bisect_left(self.arr, lo)
            j = bisect_left(self.arr, hi)
            return (int(p) for p in self.arr[i:j])
        return primes_between(lo, hi)


_PRIMES: _PrimeList | None = None


def _prime_list() -> _PrimeList:
    global _PRIMES
    if _PRIMES is None:
        _PRIMES = _PrimeList()
    return _PRIMES


def _divisors(f: Factorization) -> list[int]:
    divs = [1]
    for p, r in f.factors:
        divs = [d * p**e for d in divs for e in range(r + 1)]
    return divs


class _Walk:
    """Mutable state of one depth-first walk."""

    def __init__(self, cfg: TupleSearchConfig, k: int):
        self.cfg = cfg
        self.k = k
        self.a = cfg.index_a
        self.bound = cfg.prefix_prime_bound
        self.explored = 0
        self.pruned = 0
        self.complete = True
        self.tuples: list[tuple[int, ...]] = []

    def next_range(self, prefix: tuple[int, ...], P: int, s: int) -> tuple[int, int]:
        """Candidate interval [lo, hi) for the next prime after ``prefix``.

        lo keeps the running sum strictly below a (a proper prefix summing to
        a or more can never be completed); hi is pruning rule (a):
        s/P + r/p must exceed a for the r primes still to come.
        """
        D = self.a * P - s
        r = self.k - len(prefix)
        last = prefix[-1] if prefix else 1
        lo = max(last + 1, P // D + 1)
        hi = (r * P - 1) // D + 1
        if lo > last + 1:
            self.pruned += 1  # overshooting candidates skipped
        if self.bound is not None and hi > self.bound + 1:
            hi = self.bound + 1
            self.complete = False
        else:
            self.pruned += 1  # rule (a) cut the tail
        return lo, hi

    def children(self, prefix: tuple[int, ...], P: int, s: int) -> Iterator[tuple[int, ...]]:
        lo, hi = self.next_range(prefix, P, s)
        if lo >= hi:
            return
        for p in _prime_list().between(lo, hi):
            yield p

    def dfs(self, prefix: tuple[int, ...], P: int, s: int) -> None:
        self.explored += 1
        if len(prefix) == self.k - 2:
            if self.cfg.closing == "divisors":
                self.close_pair(prefix, P, s)
            else:
                self.close_enumerate(prefix, P, s)
            return
        for p in self.children(prefix, P, s):
            self.dfs(prefix + (p,), P * p, s * p + P)

    def emit(self, prefix: tuple[int, ...], p: int, P: int, s: int) -> None:
        self.explored += 1
        q = _close(P * p, s * p + P, p, self.a)
        if q is not None:
            self.tuples.append(prefix + (p, q))

    def close_enumerate(self, prefix: tuple[int, ...], P: int, s: int) -> None:
        for p in self.children(prefix, P, s):
            self.emit(prefix, p, P, s)

    def close_pair(self, prefix: tuple[int, ...], P: int, s: int) -> None:
        # With D = a*P - s, the last two primes p < q satisfy
        # (D*p - P) * (D*q - P) = P*P - D, so D*p - P runs over the
        # divisors u of P*P - D with u*u < P*P - D and u == -P (mod D).
        D = self.a * P - s
        M = P * P - D
        try:
            f = factorize(M, self.cfg.factor_budget)
        except FactorizationBudgetExceeded:
            self.close_enumerate(prefix, P, s)
            return
        last = prefix[-1]
        for u in sorted(_divisors(f)):
            if u * u >= M:
                break
            if (u + P) % D:
                continue
            p = (u + P) // D
            if p <= last:
                continue
            if self.bound is not None and p > self.bound:
                self.complete = False
                continue
            if is_prime(p):
                self.emit(prefix, p, P, s)


def _units(cfg: TupleSearchConfig) -> tuple[list[tuple[int, tuple[int, ...]]], _Walk]:
    """Work units: for each k, the prefixes of length min(2, k - 2).

    The walk that generated them is returned for its counters.
    """
    units = []
    root = _Walk(cfg, cfg.min_factors)
    for k in range(cfg.min_factors, cfg.max_factors + 1):
        w = _Walk(cfg, k)
        depth = min(2, k - 2)

        def expand(prefix: tuple[int, ...], P: int, s: int) -> None:
            if len(prefix) == depth:
                units.append((k, prefix))
                return
            w.explored += 1
            for p in w.children(prefix, P, s):
                expand(prefix + (p,), P * p, s * p + P)

        expand((), 1, 0)
        root.explored += w.explored
        root.pruned += w.pruned
        root.complete &= w.complete
    return units, root


def _run_unit(cfg: TupleSearchConfig, k: int, prefix: tuple[int, ...]):
    w = _Walk(cfg, k)
    P = prod(prefix)
    w.dfs(prefix, P, sum(P // p for p in prefix))
    return k, prefix, w.tuples, w.explored, w.pruned, w.complete


def _unit_key(cfg: TupleSearchConfig, k: int, prefix: tuple[int, ...]) -> str:
    return (
        f"k={k} a={cfg.index_a} bound={cfg.prefix_prime_bound} "
        f"unit={','.join(map(str, prefix))}"
    )


def _read_checkpoint(path: Path) -> dict[str, tuple[list[tuple[int, ...]], int, int, bool]]:
    done: dict[str, tuple[list[tuple[int, ...]], int, int, bool]] = {}
    if not path.exists():
        return done
    lines = path.read_text("utf-8").splitlines()
    if not lines or lines[0].strip() != CHECKPOINT_HEADER:
        raise ValueError(f"{path}: not a {CHECKPOINT_HEADER!r} file")
    for line in lines[1:]:
        if not line.strip() or line.startswith("#"):
            continue
        fields = dict(item.split("=", 1) for item in line.split())
        key = _unit_key_from_fields(fields)
        tuples = (
            []
            if fields["hits"] == "-"
            else [tuple(int(x) for x in h.split("*")) for h in fields["hits"].split(";")]
        )
        done[key] = (
            tuples,
            int(fields["explored"]),
            int(fields["pruned"]),
            fields.get("complete", "1") == "1",
        )
    return done


def _unit_key_from_fields(fields: dict[str, str]) -> str:
    return f"k={fields['k']} a={fields['a']} bound={fields['bound']} unit={fields['unit']}"


def _checkpoint_line(key: str, tuples, explored: int, pruned: int, complete: bool) -> str:
    hits = ";".join("*".join(map(str, t)) for t in tuples) or "-"
    return f"{key} explored={explored} pruned={pruned} complete={int(complete)} hits={hits}\n"


def tuple_search(
    cfg: TupleSearchConfig,
    on_hit: Callable[[SearchHit], None] | None = None,
    checkpoint: str | Path | None = None,
) -> SearchReport:
    """Giuga numbers of index ``cfg.index_a`` with 3..max_factors prime factors.

    Work is split into units by the first two primes; with a ``checkpoint``
    file, finished units are appended as they complete and skipped (their
    recorded hits reused) when the search is run again.
    """
    t0 = time.perf_counter()
    units, root = _units(cfg)
    explored, pruned, complete = root.explored, root.pruned, root.complete
    found: list[tuple[int, ...]] = []

    done = {}
    ck_file = None
    if checkpoint is not None:
        path = Path(checkpoint)
        done = _read_checkpoint(path)
        fresh = not path.exists()
        ck_file = path.open("a", encoding="utf-8")
        if fresh:
            ck_file.write(CHECKPOINT_HEADER + "\n")

    hits: list[SearchHit] = []

    def record(k, prefix, tuples, n_exp, n_pr, ok, from_checkpoint=False):
        nonlocal explored, pruned, complete
        explored += n_exp
        pruned += n_pr
        complete = complete and ok
        for t in tuples:
            found.append(t)
            hit = _verified_hit(t, cfg.index_a)
            hits.append(hit)
            if on_hit is not None:
                on_hit(hit)
        if ck_file is not None and not from_checkpoint:
            ck_file.write(_checkpoint_line(_unit_key(cfg, k, prefix), tuples, n_exp, n_pr, ok))
            ck_file.flush()

    todo = []
    for k, prefix in units:
        key = _unit_key(cfg, k, prefix)
        if key in done:
            record(k, prefix, *done[key], from_checkpoint=True)
        else:
            todo.append((k, prefix))

    try:
        if cfg.worker_count == 1:
            for k, prefix in todo:
                record(*_run_unit(cfg, k, prefix))
        elif todo:
            with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
                ks, prefixes = zip(*todo)
                for res in pool.map(_run_unit, [cfg] * len(todo), ks, prefixes):
                    record(*res)
    finally:
        if ck_file is not None:
            ck_file.close()

    return SearchReport(
        hits=_finish(hits),
        nodes_explored=explored,
        nodes_pruned=pruned,
        elapsed=time.perf_counter() - t0,
        complete=complete,
    )


def _verified_hit(primes: tuple[int, ...], a: int) -> SearchHit:
    f = Factorization.from_primes(primes)
    n = f.value
    cert = check_definition(n, f)
    if not cert.is_giuga or giuga_index_rational(f) != a:
        raise ArithmeticError(f"tuple search produced an invalid hit {primes}")
    return SearchHit(n, a, f)


# -- prime-count bound --------------------------------------------------------

_BOUND_SCALE_BITS = 256
MAX_BOUND_INDEX = 3


def min_prime_count(a: int, odd_only: bool = False) -> int:
    """Least k such that the reciprocals of the first k primes sum past a.

    A Giuga number of index a has sum(1/p) = a + 1/n > a over its prime
    factors, so it needs at least this many of them (a necessary condition,
    far from sharp). ``odd_only`` skips the prime 2, which gives the bound for
    odd Giuga numbers.

    Partial sums are tracked as exact lower/upper bounds scaled by 2**256 and
    resolved with :class:`fractions.Fraction` if they ever straddle a. Indices
    above 3 would need primes beyond 10**18 and are refused.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    if a > MAX_BOUND_INDEX:
        raise ValueError(f"min_prime_count is only feasible for a <= {MAX_BOUND_INDEX}")
    scale = 1 << _BOUND_SCALE_BITS
    target = a * scale
    low = high = 0
    taken: list[int] = []
    for p in primes_between(3 if odd_only else 2, 1 << 40):
        taken.append(p)
        low += scale // p
        high += -(-scale // p)
        if low > target:
            return len(taken)
        if high > target and sum(Fraction(1, q) for q in taken) > a:
            return len(taken)
    raise AssertionError("unreachable: prime reciprocals diverge")
