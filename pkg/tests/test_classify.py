import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from phipractical.classify import (
    ClassificationRecord,
    classify,
    is_2_dense,
    is_lambda_practical,
    is_p_practical,
    is_phi_practical,
    is_practical,
    is_strictly_2_dense,
    is_weakly_phi_practical,
)
from phipractical.degsets import subset_sum_reach
from phipractical.factorint import FactoredInteger, SpfSieve, divisor_values, factorize, is_prime, sigma
from phipractical.orders import ell_star

SIX_FACTOR = [(3, 2), (5, 1), (17, 1), (257, 1), (65537, 1), (2**31 - 1, 1)]


def test_practical_examples():
    assert is_practical(1) and is_practical(66) and not is_practical(10)


def test_phi_examples():
    assert not is_phi_practical(45)
    full = FactoredInteger.from_factors(SIX_FACTOR)
    assert is_phi_practical(full)
    for k in range(1, 6):
        assert not is_phi_practical(FactoredInteger.from_factors(SIX_FACTOR[:k]))


def test_lambda_and_p_examples():
    assert is_lambda_practical(45)
    assert not is_lambda_practical(9)
    assert not is_lambda_practical(26) and is_p_practical(26, 3)
    assert is_p_practical(21, 2) and not is_lambda_practical(21)
    assert not is_p_practical(5, 2)
    for n in (10, 14, 70):
        assert not is_lambda_practical(n)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_prime_powers_are_p_practical(p):
    for k in range(0, 11):
        assert is_p_practical(FactoredInteger.from_factors([(p, k)]), p)


def test_weak_examples():
    assert is_weakly_phi_practical(9)
    assert not is_weakly_phi_practical(5)
    assert not is_weakly_phi_practical(66)
    # 7 > 3 + 2 fails the prefix inequality
    assert not is_weakly_phi_practical(21)


def test_dense_examples():
    assert is_2_dense(66) and is_2_dense(6) and not is_2_dense(9)
    assert is_strictly_2_dense(2) and is_strictly_2_dense(6) and not is_strictly_2_dense(66)
    assert not is_2_dense(15)  # smallest prime must be 2
    assert is_2_dense(1) and is_strictly_2_dense(1)


def test_n5_only_plus_minus_one_primes():
    for p in range(2, 200):
        if is_prime(p):
            expected = p == 5 or p % 5 in (1, 4)
            assert is_p_practical(5, p) == expected, p


def test_classify_examples():
    r = classify(45, [2, 3])
    assert (r.practical, r.phi_practical, r.lambda_practical, r.weakly_phi_practical) == (False, False, True, True)
    assert (r.two_dense, r.strictly_two_dense) == (False, False)
    assert r.p_practical == ((2, True), (3, True))
    one = classify(1, [2])
    assert all(v for k, v in one.to_dict().items() if isinstance(v, bool))
    r21 = classify(21, [2])
    assert not r21.lambda_practical and r21.p_practical == ((2, True),)
    with pytest.raises(ValueError):
        classify(10, [4])
    with pytest.raises(ValueError):
        classify(10, [])


def test_classify_json_schema():
    d = classify(45, [2, 3]).to_dict()
    assert d["n"] == "45" and d["factors"] == [[3, 2], [5, 1]]
    assert d["p_practical"] == {"2": True, "3": True}


@given(st.integers(1, 10**12), st.sets(st.sampled_from([2, 3, 5, 7, 11, 13]), min_size=1))
def test_json_roundtrip(n, primes):
    rec = classify(n, sorted(primes))
    assert ClassificationRecord.from_json(rec.to_json()) == rec


def test_invariant_check_catches_bad_record():
    bad = ClassificationRecord(factorize(9), True, True, False, True, False, False, ((2, True),))
    with pytest.raises(AssertionError):
        bad.check_invariants()


@pytest.fixture(scope="module")
def sieve():
    return SpfSieve(10**4)


def test_practical_matches_divisor_subset_sums(sieve):
    for n in range(1, 10**4 + 1):
        f = sieve.factorize(n)
        s = sigma(f)
        reach = subset_sum_reach([(d, 1) for d in divisor_values(f)], s)
        assert is_practical(f) == (reach == (1 << (s + 1)) - 1), n


def test_2_dense_brute_force(sieve):
    for n in range(1, 10**4 + 1):
        f = sieve.factorize(n)
        ds = [d for d in range(1, n + 1) if n % d == 0] if n < 3000 else divisor_values(f)
        ratios_ok = all(b <= 2 * a for a, b in zip(ds, ds[1:]))
        dense = f.is_squarefree and ratios_ok
        assert is_2_dense(f) == dense
        strict = dense and all(ds[i] < 2 * ds[i - 1] for i in range(2, len(ds) - 1))
        assert is_strictly_2_dense(f) == strict, n


def _appended(m: FactoredInteger, p: int, k: int) -> FactoredInteger:
    return FactoredInteger.from_factors([*m.factors, (p, k)])


def _samples(pred, count, rng, hi=3000):
    pool = [m for m in range(1, hi) if pred(m)]
    return [rng.choice(pool) for _ in range(count)]


def _prime_near(limit, rng):
    while True:
        q = rng.randint(2, limit)
        if is_prime(q):
            return q


def test_appending_a_prime_phi():
    # M phi-practical, p coprime: pM iff p <= M + 2, p^k M (k >= 2) iff p <= M + 1
    rng = random.Random(2024)
    for m in _samples(is_phi_practical, 1000, rng):
        p = _prime_near(2 * m + 6, rng)
        if m % p == 0:
            continue
        k = rng.choice([1, 1, 2, 3])
        n = _appended(factorize(m), p, k)
        bound = m + 2 if k == 1 else m + 1
        assert is_phi_practical(n) == (p <= bound), (m, p, k)


def test_appending_a_prime_lambda():
    rng = random.Random(2025)
    for m in _samples(is_lambda_practical, 1000, rng):
        p = _prime_near(2 * m + 6, rng)
        if m % p == 0:
            continue
        k = rng.choice([1, 1, 2, 3])
        bound = m + 2 if k == 1 else m + 1
        if p <= bound:
            assert is_lambda_practical(_appended(factorize(m), p, k)), (m, p, k)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_appending_a_prime_p(p):
    rng = random.Random(p)
    for m in _samples(lambda m: is_p_practical(m, p), 1000, rng):
        q = _prime_near(4 * m + 10, rng)
        if m % q == 0:
            continue
        k = rng.choice([1, 1, 2])
        ell = ell_star(p, q)
        if (k == 1 and ell <= m + 1) or (k >= 2 and ell <= m):
            assert is_p_practical(_appended(factorize(m), q, k), p), (m, q, k)


def test_appending_a_prime_practical():
    rng = random.Random(99)
    for m in _samples(is_practical, 1000, rng):
        p = _prime_near(2 * m + 6, rng)
        if m % p == 0:
            continue
        k = rng.choice([1, 2])
        n = _appended(factorize(m), p, k)
        assert is_practical(n) == (p <= sigma(factorize(m)) + 1)


def test_doubling_odd_members():
    # an odd lambda-practical n stays weakly phi-practical after any power of 2,
    # and an odd phi-practical n stays phi-practical
    for n in range(1, 3000, 2):
        lam = is_lambda_practical(n)
        phi = is_phi_practical(n)
        for ell in range(1, 6):
            f = factorize(n * 2**ell)
            if lam:
                assert is_weakly_phi_practical(f)
            if phi:
                assert is_phi_practical(f)
