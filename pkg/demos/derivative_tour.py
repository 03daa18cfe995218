"""A short walk through the arithmetic derivative.

Run with ``python demos/derivative_tour.py``.
"""
from __future__ import annotations

from giuga import derivative_table, derive, linear_form

print("n' for small n:")
for n in range(1, 21):
    r = derive(n)
    print(f"  {n:>3}  {r.factorization!s:<12} {r.derivative}")

# primes are the points where the derivative is 1, and p^p is a fixed point
print("\nfixed points p^p:", [n for n in (4, 27, 3125) if derive(n).derivative == n])

# Leibniz on a pair picked at random
n, m = 360, 1001
lhs = derive(n * m).derivative
rhs = n * derive(m).derivative + m * derive(n).derivative
print(f"\n(360*1001)' = {lhs} and 360*1001' + 1001*360' = {rhs}")

# the table route and the per-number route agree
table = derivative_table(10_000)
assert all(int(table[k]) == derive(k).derivative for k in range(10_001))

print("\nsolutions of n' = a*n + 1 below 10^5:")
for k in range(2, 100_001):
    lf = linear_form(k)
    if lf:
        print(f"  {k} (a = {lf.a})")
