import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phipractical.factorint import (
    FactoredInteger,
    SpfSieve,
    carmichael_lambda,
    divisor_values,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    sigma,
)

N = 10**5


@pytest.fixture(scope="module")
def sieve():
    return SpfSieve(N)


@pytest.fixture(scope="module")
def phi_table():
    # independent totient sieve
    phi = np.arange(N + 1, dtype=np.int64)
    for p in range(2, N + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def brute_lambda(n):
    units = [a for a in range(1, n + 1) if math.gcd(a, n) == 1]
    out = 1
    for a in units:
        k, x = 1, a % n
        while x != 1 % n:
            x = x * a % n
            k += 1
        out = math.lcm(out, k)
    return out


@pytest.mark.parametrize(
    "n, expected",
    [(1, ()), (45, ((3, 2), (5, 1))), (1305, ((3, 2), (5, 1), (29, 1))), (2**31 - 1, ((2**31 - 1, 1),))],
)
def test_factorize_examples(n, expected):
    assert factorize(n).factors == expected


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_rho_cofactors():
    p, q, r = 1000003, 998244353, 2**61 - 1
    assert factorize(p * q * r).factors == ((p, 1), (q, 1), (r, 1))
    assert factorize(65537**2 * 2**7).factors == ((2, 7), (65537, 2))


@given(st.lists(st.sampled_from([2, 3, 5, 7, 11, 13, 101, 65537, 1000003]), max_size=8))
def test_factorize_roundtrip(ps):
    n = math.prod(ps)
    f = factorize(n)
    assert f.value == n
    assert math.prod(p**e for p, e in f.factors) == n
    assert [p for p, _ in f.factors] == sorted(set(ps))


def test_factored_integer_invariants():
    with pytest.raises(ValueError):
        FactoredInteger(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        FactoredInteger(13, ((2, 2), (3, 1)))
    with pytest.raises(ValueError):
        FactoredInteger(0, ())
    assert FactoredInteger(1, ()).tau == 1
    f = FactoredInteger.from_factors([(5, 1), (3, 2), (5, 0)])
    assert f.value == 45 and f.factors == ((3, 2), (5, 1))
    assert f.largest_prime == 5 and f.smallest_prime == 3 and f.big_omega == 3
    assert FactoredInteger(1).largest_prime == 1 and FactoredInteger(1).smallest_prime == math.inf


def test_is_prime_against_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(7)
    for _ in range(3000):
        n = rng.getrandbits(rng.randint(2, 100)) | 1
        assert is_prime(n) == sympy.isprime(n), n
    # strong pseudoprimes to several bases
    for n in (2047, 1373653, 3215031751, 3825123056546413051, 318665857834031151167461):
        assert not is_prime(n)


@pytest.mark.parametrize("n, phi, lam, sig", [(1, 1, 1, 1), (6, 2, 2, 12), (8, 4, 2, 15), (45, 24, 12, 78), (7, 6, 6, 8)])
def test_arithmetic_examples(n, phi, lam, sig):
    f = factorize(n)
    assert (euler_phi(f), carmichael_lambda(f), sigma(f)) == (phi, lam, sig)


def test_lambda_prime_powers_of_two():
    assert [carmichael_lambda(factorize(2**e)) for e in range(1, 8)] == [1, 2, 2, 4, 8, 16, 32]


def test_sigma_power_of_two():
    for k in range(0, 40):
        assert sigma(FactoredInteger.from_factors([(2, k)])) == 2 ** (k + 1) - 1


def test_lambda_and_sigma_brute_force():
    for n in range(1, 400):
        f = factorize(n)
        assert carmichael_lambda(f) == brute_lambda(n), n
        assert sigma(f) == sum(d for d in range(1, n + 1) if n % d == 0)


@pytest.mark.parametrize("n, expected", [(1, [1]), (10, [1, 2, 5, 10]), (45, [1, 3, 5, 9, 15, 45])])
def test_divisors_examples(n, expected):
    ds = divisors(factorize(n))
    assert [d.value for d in ds] == expected
    assert all(d == factorize(d.value) for d in ds)


def test_divisors_strictly_increasing_tau():
    for n in range(1, 3000):
        f = factorize(n)
        ds = divisor_values(f)
        assert len(ds) == f.tau
        assert all(a < b for a, b in zip(ds, ds[1:]))
        assert ds == [d for d in range(1, n + 1) if n % d == 0]


def test_phi_matches_sieve_and_divisor_sum(sieve, phi_table):
    for n in range(1, N + 1):
        assert euler_phi(sieve.factorize(n)) == phi_table[n]
    # sum_{d | n} phi(d) = n for every n <= N
    acc = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        acc[d::d] += phi_table[d]
    assert np.array_equal(acc[1:], np.arange(1, N + 1))


def test_lambda_divides_phi(sieve):
    for n in range(1, N + 1):
        f = sieve.factorize(n)
        assert euler_phi(f) % carmichael_lambda(f) == 0


def test_bulk_matches_point_api(sieve):
    for n in range(1, N + 1):
        assert sieve.factorize(n) == factorize(n)


def test_sieve_bounds(sieve):
    with pytest.raises(ValueError):
        sieve.factor_pairs(N + 1)
    assert sieve.primes(2, 30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
