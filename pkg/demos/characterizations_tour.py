"""Four ways to recognise a Giuga number, side by side."""
from __future__ import annotations

from giuga import check_all, factorize
from giuga.characterizations import bernoulli_exact, power_sum_residue
from giuga.numtheory import euler_phi

for n in (30, 36, 858, 1722, 1724, 66198):
    cert = check_all(n, power_sum_limit=100_000)
    verdict = "giuga" if cert.is_giuga else "not giuga"
    print(f"{n:>6}: {verdict:<10} methods run: {', '.join(sorted(cert.verdicts))}")

# the power sum route for 30, spelled out
phi = euler_phi(factorize(30))
print(f"\nsum of j^{phi} for j < 30, mod 30 = {power_sum_residue(30, phi)}")

# and the Bernoulli route, where the numbers are still small enough to print
b = bernoulli_exact(phi).value
print(f"B_{phi} = {b}, so 30 * B_{phi} = {30 * b}")
