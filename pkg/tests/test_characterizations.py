import json
from fractions import Fraction
from math import prod

import pytest

from giuga.characterizations import (
    GiugaDisagreement,
    bernoulli_exact,
    bernoulli_residue_exact,
    bernoulli_residue_reduced,
    check_all,
    check_bernoulli,
    check_definition,
    check_index,
    check_power_sum,
    check_squarefree_lemma,
    giuga_index_rational,
    power_sum_residue,
    staudt_clausen_primes,
)
from giuga.numtheory import Factorization, euler_phi, factorize, is_prime


def akiyama_tanigawa(m):
    """B_m by the Akiyama-Tanigawa triangle (gives B_1 = +1/2; even m agree)."""
    a = [Fraction(0)] * (m + 1)
    for i in range(m + 1):
        a[i] = Fraction(1, i + 1)
        for j in range(i, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def brute_power_sum(n, e):
    return sum(pow(j, e, n) for j in range(1, n)) % n


# -- definition ---------------------------------------------------------------

def test_definition_30():
    cert = check_definition(30)
    assert cert.is_giuga
    assert cert.per_prime == [(2, 0), (3, 0), (5, 0)]
    assert cert.index_a == 1


def test_definition_6_fails_at_3():
    cert = check_definition(6)
    assert not cert.is_giuga
    assert cert.per_prime == [(2, 0), (3, 1)]
    assert cert.index_a is None


def test_definition_prime_and_one():
    assert not check_definition(7).is_giuga
    assert not check_definition(7).composite
    assert not check_definition(1).is_giuga


def test_definition_1722():
    assert check_definition(1722).is_giuga


def test_certificate_json():
    doc = check_all(30).to_json()
    assert doc["n"] == "30" and doc["is_giuga"] is True
    assert doc["per_prime"] == [["2", "0"], ["3", "0"], ["5", "0"]]
    assert doc["methods_agreeing"] == ["bernoulli", "definition", "index", "power_sum"]
    json.dumps(doc)


# -- index ----------------------------------------------------------------------

@pytest.mark.parametrize("n, a", [(30, 1), (4, None), (12, None), (858, 1)])
def test_index_examples(n, a):
    assert check_index(n) == a


def test_index_rational_values():
    assert giuga_index_rational(factorize(4)) == Fraction(1, 4)
    assert giuga_index_rational(factorize(12)) == Fraction(3, 4)
    f = factorize(30)
    assert giuga_index_rational(f) == sum(Fraction(1, p) for p in f.primes) - Fraction(1, 30)


def test_index_ignores_repeated_primes_correctly():
    # 60 and 30 share their primes; only 30 is a Giuga number
    assert check_index(30) == 1
    assert check_index(60) is None
    assert not check_definition(60).is_giuga


def test_index_equals_product_form_when_squarefree():
    for n in range(6, 2000):
        f = factorize(n)
        if f.is_squarefree() and f.is_composite():
            product_form = sum(Fraction(1, p) for p in f.primes) - Fraction(1, prod(f.primes))
            assert giuga_index_rational(f) == product_form


def test_index_requires_composite():
    with pytest.raises(ValueError):
        check_index(7)


# -- power sum -------------------------------------------------------------------

def test_power_sum_30():
    assert brute_power_sum(30, 8) == 29
    assert check_power_sum(30) is True


def test_power_sum_9():
    assert brute_power_sum(9, 6) != 8
    assert check_power_sum(9) is False


def test_power_sum_over_limit():
    assert check_power_sum(10**18, limit=10**7) is None


def test_power_sum_residue_matches_brute_force():
    for n in list(range(2, 400)) + [5003, 65536, 99991]:
        e = euler_phi(factorize(n))
        assert power_sum_residue(n, e) == brute_power_sum(n, e)
    assert power_sum_residue(1 << 20, 7) == brute_power_sum(1 << 20, 7)


# -- Bernoulli -------------------------------------------------------------------

@pytest.mark.parametrize(
    "m, value",
    [(0, Fraction(1)), (2, Fraction(1, 6)), (8, Fraction(-1, 30)), (12, Fraction(-691, 2730))],
)
def test_bernoulli_examples(m, value):
    assert bernoulli_exact(m).value == value


def test_bernoulli_matches_akiyama_tanigawa():
    for m in range(0, 122, 2):
        assert bernoulli_exact(m).value == akiyama_tanigawa(m)


def test_bernoulli_range_checked():
    for bad in (-2, 3, 1002):
        with pytest.raises(ValueError):
            bernoulli_exact(bad)


def test_von_staudt_clausen_identity():
    for m in range(2, 61, 2):
        b = bernoulli_exact(m).value
        assert (b + sum(Fraction(1, p) for p in staudt_clausen_primes(m))).denominator == 1
        assert b.denominator == prod(staudt_clausen_primes(m))


def test_staudt_clausen_primes():
    assert staudt_clausen_primes(8) == [2, 3, 5]
    assert staudt_clausen_primes(12) == [2, 3, 5, 7, 13]


@pytest.mark.parametrize("n, expected", [(30, True), (858, True), (15, False), (36, False)])
def test_bernoulli_examples_check(n, expected):
    assert check_bernoulli(n) is expected


def test_bernoulli_30_exactly():
    assert 30 * bernoulli_exact(8).value == -1
    assert bernoulli_residue_reduced(30, 8, factorize(30)) == 29


def test_reduction_matches_exact_for_matching_phi():
    checked = 0
    for n in range(4, 201):
        f = factorize(n)
        if not (f.is_composite() and f.is_squarefree()):
            continue
        m = euler_phi(f)
        if m <= 60:
            assert bernoulli_residue_reduced(n, m, f) == bernoulli_residue_exact(n, m)
            checked += 1
    assert checked > 20


# -- lemma and combined ----------------------------------------------------------

@pytest.mark.parametrize("n", [4, 8, 12, 30, 36, 1722, 2**10])
def test_squarefree_lemma_examples(n):
    assert check_squarefree_lemma(n)


def test_squarefree_lemma_small_sweep():
    assert all(check_squarefree_lemma(n) for n in range(2, 20000))


def test_check_all_examples():
    cert = check_all(30)
    assert cert.is_giuga and cert.methods_agreeing == {"definition", "index", "power_sum", "bernoulli"}
    cert = check_all(36)
    assert not cert.is_giuga and not cert.squarefree
    assert set(cert.verdicts.values()) == {False}
    cert = check_all(66198, power_sum_limit=1000)
    assert cert.is_giuga and "power_sum" not in cert.verdicts
    assert cert.methods_agreeing == {"definition", "index", "bernoulli"}
    cert = check_all(66198, power_sum_limit=10**5)
    assert cert.verdicts["power_sum"] is True


def test_check_all_prime_uses_definition_only():
    cert = check_all(31)
    assert not cert.is_giuga and cert.verdicts == {"definition": False}


def test_check_all_detects_disagreement(monkeypatch):
    import giuga.characterizations as ch

    monkeypatch.setattr(ch, "check_bernoulli", lambda n, f=None, effort_limit=0: True)
    with pytest.raises(GiugaDisagreement) as info:
        ch.check_all(15)
    assert info.value.verdicts["bernoulli"] is True


def test_characterizations_agree_small():
    for n in range(4, 3000):
        f = factorize(n)
        if not f.is_composite():
            continue
        d = check_definition(n, f).is_giuga
        assert d == (check_index(n, f) is not None)
        assert d == check_bernoulli(n, f)
        if n < 1000:
            assert d == check_power_sum(n, factors=f)


def test_catalog_prime_huge_bernoulli():
    primes = [2, 3, 11, 23, 31, 47059, 2217342227, 1729101023519,
              8491659218261819498490029296021, 58254480569119734123541298976556403]
    assert all(is_prime(p) for p in primes)
    f = Factorization.from_primes(primes)
    assert check_bernoulli(f.value, f)
    assert check_index(f.value, f) == 1
