"""Number-theory kernel against brute-force oracles."""

from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, strategies as st

from sievekit.arith import divisors, factorize, mobius, ramanujan_sum, totient


def brute_divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def brute_mobius(n):
    for p in range(2, n + 1):
        if n % (p * p) == 0:
            return 0
    count = len([p for p in range(2, n + 1) if n % p == 0 and brute_is_prime(p)])
    return -1 if count % 2 else 1


def brute_is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(math.isqrt(p)) + 1))


@given(st.integers(1, 400))
def test_divisors_match_brute_force(n):
    assert divisors(n) == brute_divisors(n)


@given(st.integers(1, 300))
def test_factorize_reconstructs(n):
    prod = 1
    for p, e in factorize(n):
        assert brute_is_prime(p)
        prod *= p**e
    assert prod == n


@given(st.integers(1, 200))
def test_mobius_matches_brute_force(n):
    assert mobius(n) == brute_mobius(n)


@given(st.integers(1, 200))
def test_totient_counts_coprime(n):
    assert totient(n) == len([k for k in range(1, n + 1) if math.gcd(k, n) == 1])


@given(st.integers(0, 60), st.integers(1, 48))
def test_ramanujan_sum_is_root_power_sum(j, d):
    # numerically sum the j-th powers of primitive d-th roots; error << 1/2
    total = sum(
        cmath.exp(2 * math.pi * 1j * j * k / d)
        for k in range(1, d + 1)
        if math.gcd(k, d) == 1
    )
    assert ramanujan_sum(j, d) == round(total.real)
    assert abs(total.imag) < 1e-6


def test_ramanujan_specializations():
    for d in range(1, 30):
        assert ramanujan_sum(0, d) == totient(d)
        assert ramanujan_sum(1, d) == mobius(d)


def test_mobius_sum_is_indicator():
    # sum of mu over divisors picks out n = 1
    for n in range(1, 120):
        assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)


def test_totient_sums_to_n():
    for n in range(1, 120):
        assert sum(totient(d) for d in divisors(n)) == n


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        divisors(0)
    with pytest.raises(ValueError):
        factorize(-3)
    with pytest.raises(ValueError):
        ramanujan_sum(1, 0)
