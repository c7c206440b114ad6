import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sevenvalent.numtheory import (FactoredInteger, divisors, factorize, is_prime, is_prime_power,
                                   prime_count, prime_power_decomposition, primes_up_to)


@given(st.integers(min_value=-10, max_value=10 ** 6))
def test_is_prime_small_matches_sympy(n):
    assert is_prime(n) == bool(sympy.isprime(n))


@pytest.mark.parametrize("n", [2 ** 61 - 1, 3215031751, 3825123056546413051,
                               318665857834031151167461, 10 ** 18 + 9, 10 ** 18 + 7])
def test_is_prime_large_and_pseudoprimes(n):
    assert is_prime(n) == bool(sympy.isprime(n))


@settings(max_examples=200)
@given(st.integers(min_value=1, max_value=10 ** 15))
def test_factorize_round_trip(n):
    f = factorize(n)
    assert math.prod(p ** e for p, e in f.items()) == n
    assert all(is_prime(p) for p in f)
    assert f == {int(p): e for p, e in sympy.factorint(n).items()}


def test_factorize_semiprime_of_two_large_primes():
    p, q = 1000000007, 998244353
    assert factorize(p * q) == {q: 1, p: 1}


@given(st.integers(min_value=1, max_value=10 ** 12), st.integers(min_value=1, max_value=10 ** 12))
def test_factored_arithmetic(a, b):
    fa, fb = FactoredInteger.from_int(a), FactoredInteger.from_int(b)
    assert (fa * fb).value == a * b
    assert fa.gcd(fb).value == math.gcd(a, b)
    assert fa.lcm(fb).value == math.lcm(a, b)
    assert fa.divides(fa * fb)
    assert (fa * fb / fb) == fa
    assert FactoredInteger.parse(str(fa)) == fa


def test_parse_and_print():
    x = FactoredInteger.parse("2^4*3^2*5*7")
    assert x.value == 5040 and str(x) == "2^4*3^2*5*7"
    assert FactoredInteger.parse("1").value == 1
    assert FactoredInteger.parse("4^2*6") == FactoredInteger.parse("2^5*3")
    with pytest.raises(ValueError):
        FactoredInteger.parse("2^x")


def test_primality_range_is_enforced():
    with pytest.raises(ValueError):
        is_prime(2 ** 89 - 1)


@pytest.mark.parametrize("m,expected", [(1, 0), (2520, 4), (2 ** 6 * 3 ** 2 * 5 * 7 * 13, 5)])
def test_prime_count_examples(m, expected):
    assert prime_count(m) == expected


@given(st.integers(min_value=1, max_value=5 * 10 ** 5))
def test_divisors_match_sympy(n):
    assert sorted(divisors(n)) == sorted(int(d) for d in sympy.divisors(n))


def test_prime_powers_and_sieve():
    assert prime_power_decomposition(2 ** 23) == (2, 23)
    assert prime_power_decomposition(49) == (7, 2)
    assert prime_power_decomposition(12) is None
    assert is_prime_power(125) and not is_prime_power(1)
    assert primes_up_to(10 ** 4) == list(sympy.primerange(2, 10 ** 4 + 1))
