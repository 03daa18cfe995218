"""Re-verify every known Giuga number shipped with the package."""
from __future__ import annotations

import logging

from giuga import verify_catalog

logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")

for report in verify_catalog():
    e = report.entry
    mark = "ok " if report.passed else "BAD"
    print(f"{mark} {len(e.listed_primes):>2} primes  {e.decimal_value}")
    if report.reconciliation_applied:
        print(f"    note: {report.reconciliation_applied}")
    if report.probabilistic_primes:
        print(f"    probable primes: {len(report.probabilistic_primes)}")
