"""Arithmetic derivative, Giuga numbers and the equation n' = a*n + 1."""

from .catalog import load_catalog, reconcile_entry, verify_catalog
from .characterizations import (
    GiugaCertificate,
    GiugaDisagreement,
    bernoulli_exact,
    check_all,
    check_bernoulli,
    check_definition,
    check_index,
    check_power_sum,
    check_squarefree_lemma,
)
from .derivative import derivative_table, derive, derive_factored, linear_form
from .numtheory import (
    ExactRational,
    Factorization,
    FactorizationBudgetExceeded,
    euler_phi,
    factorize,
    is_prime,
    spf_table,
)
from .search import (
    SearchReport,
    SieveConfig,
    TupleSearchConfig,
    last_prime_candidate,
    min_prime_count,
    sieve_search,
    tuple_search,
)

__version__ = "0.1.0"
