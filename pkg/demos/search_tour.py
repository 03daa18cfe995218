"""Two independent searches that land on the same small Giuga numbers."""
from __future__ import annotations

from giuga import SieveConfig, TupleSearchConfig, sieve_search, tuple_search

sieve = sieve_search(SieveConfig(limit=10**6))
print(f"sieve to 10^6: {[h.n for h in sieve.hits]} ({sieve.elapsed:.2f}s)")

tuples = tuple_search(TupleSearchConfig(max_factors=7))
print(f"prime tuples, up to 7 factors ({tuples.elapsed:.2f}s, "
      f"{tuples.nodes_explored} nodes, {tuples.nodes_pruned} pruned):")
for h in tuples.hits:
    print(f"  {h.n} = {h.factorization}")

# index 2 has no solutions with few factors; the root is pruned at once
empty = tuple_search(TupleSearchConfig(max_factors=6, index_a=2))
print(f"index 2, up to 6 factors: {len(empty.hits)} hits, {empty.nodes_explored} nodes")
