import math

import pytest
import sympy
from hypothesis import given, strategies as st

from sevenvalent.grouparith import (DivisorConditionQuery, admissible_rsl, enumerate_primes_by_divisor_condition,
                                    heptic_root_exists, k_filter, named_order, order_formula,
                                    scan_prime_powers)
from sevenvalent.numtheory import FactoredInteger


def psl_plain(n, q):
    """Textbook integer formula, independent of the factored implementation."""
    num = q ** (n * (n - 1) // 2) * math.prod(q ** i - 1 for i in range(2, n + 1))
    return num // math.gcd(n, q - 1)


def psu_plain(n, q):
    num = q ** (n * (n - 1) // 2) * math.prod(q ** i - (-1) ** i for i in range(2, n + 1))
    return num // math.gcd(n, q + 1)


prime_powers = st.sampled_from([q for q in range(2, 600) if len(sympy.factorint(q)) == 1])


@given(prime_powers, st.sampled_from([2, 3, 4, 5]))
def test_psl_matches_plain_formula(q, n):
    if n == 2 and q < 4:
        return
    assert order_formula(f"PSL{n}", q).value == psl_plain(n, q)


@given(prime_powers, st.sampled_from([3, 4]))
def test_psu_matches_plain_formula(q, n):
    if n == 3 and q < 3:
        return
    assert order_formula(f"PSU{n}", q).value == psu_plain(n, q)


@given(prime_powers)
def test_psp4_matches_plain_formula(q):
    if q < 3:
        return
    plain = q ** 4 * (q ** 2 - 1) * (q ** 4 - 1) // math.gcd(2, q - 1)
    assert order_formula("O5", q).value == plain


def test_exceptional_families():
    assert order_formula("Sz", 8).value == 29120
    assert order_formula("G2", 3).value == 4245696
    assert order_formula("Ree", 27).value == 27 ** 3 * (27 ** 3 + 1) * 26
    with pytest.raises(ValueError):
        order_formula("Sz", 16)
    with pytest.raises(ValueError):
        order_formula("PSL2", 3)


@pytest.mark.parametrize("fam,q,text", [("PSL2", 13, "2^2*3*7*13"), ("PSU3", 5, "2^4*3^2*5^3*7"),
                                        ("PSL2", 49, "2^4*3*5^2*7^2")])
def test_printed_orders(fam, q, text):
    assert order_formula(fam, q) == FactoredInteger.parse(text)


def test_named_sporadics_and_alternating():
    assert named_order("J2").value == 604800
    assert named_order("M22").value == 443520
    assert named_order("A7").value == 2520
    assert named_order("A10").value == math.factorial(10) // 2


def test_divisor_condition_examples():
    D = FactoredInteger.parse("2*3^3*7^2")
    got = enumerate_primes_by_divisor_condition(DivisorConditionQuery(D, max_value=D.value, min_value=11))
    assert got == [13, 17, 19, 41, 43, 53, 97, 127, 293, 379, 881, 883]
    assert scan_prime_powers(2, 25, 4) == [2 ** 6, 2 ** 8, 2 ** 9, 2 ** 11, 2 ** 23]


def test_divisor_condition_brute_force_oracle():
    D = FactoredInteger.parse("2^3*3^2*5*7")
    qry = DivisorConditionQuery(D, max_value=3000)
    brute = [q for q in range(5, 3001) if sympy.isprime(q) and (D.value % (q + 1) == 0 or D.value % (q - 1) == 0)]
    assert enumerate_primes_by_divisor_condition(qry) == brute


def test_query_validation():
    with pytest.raises(ValueError):
        DivisorConditionQuery(FactoredInteger.parse("6"), shifts=(2,))
    with pytest.raises(ValueError):
        DivisorConditionQuery(FactoredInteger.parse("6"), min_value=10, max_value=5)


@pytest.mark.parametrize("m,expected", [(29, True), (43, True), (11, False), (7, True), (2, False)])
def test_heptic_root_exists(m, expected):
    brute = any(sum(pow(x, i, m) for i in range(7)) % m == 0 for x in range(m))
    assert heptic_root_exists(m) == expected == brute


def test_k_filter_examples():
    a7 = FactoredInteger.parse("2^3*3^2*5*7")
    psl13 = order_formula("PSL2", 13)
    assert k_filter(a7, "lemma31", 3, 5, 1)
    assert k_filter(psl13, "lemma31", 3, 13, 1)
    assert not k_filter(psl13, "lemma31", 3, 13, 2)
    assert (3, 5, 1) in admissible_rsl(a7, "lemma31")
    with pytest.raises(ValueError):
        k_filter(a7, "lemma31", 5, 3, 1)
