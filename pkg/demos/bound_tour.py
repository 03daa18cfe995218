"""How many distinct primes a solution of n' = a*n + 1 must have at least."""
from __future__ import annotations

from giuga import min_prime_count

for a in (1, 2, 3):
    print(f"a = {a}: at least {min_prime_count(a)} primes"
          + (f", {min_prime_count(a, odd_only=True)} if n is odd" if a < 3 else ""))
