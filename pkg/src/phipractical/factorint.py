"""Integer factorization and the multiplicative functions built on it.

Everything downstream works on :class:`FactoredInteger`, so very large
constructed integers can be classified without ever being factored from
their decimal value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "FactoredInteger",
    "SpfSieve",
    "carmichael_lambda",
    "divisor_values",
    "divisors",
    "euler_phi",
    "factorize",
    "is_prime",
    "prime_power_lambda",
    "sigma",
]

_TRIAL_BOUND = 1000
_SMALL_PRIMES = tuple(
    p for p in range(2, _TRIAL_BOUND) if all(p % q for q in range(2, math.isqrt(p) + 1))
)
# Miller-Rabin with the first 13 prime bases is exact below this bound.
_MR_EXACT_BOUND = 3317044064679887385961981
_MR_BASES = _SMALL_PRIMES[:13]


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer carried together with its prime factorization.

    ``factors`` holds ``(prime, exponent)`` pairs with strictly increasing
    primes. Build instances with :func:`factorize` or :meth:`from_factors`;
    the raw constructor trusts its arguments apart from a product check.
    """

    value: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"FactoredInteger needs a positive value, got {self.value}")
        prev = 1
        prod = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            prev = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors!r} do not multiply to {self.value}")

    @classmethod
    def from_factors(cls, factors: Iterable[tuple[int, int]], check_primes: bool = False) -> FactoredInteger:
        """Build from (prime, exponent) pairs in any order; equal primes merge."""
        merged: dict[int, int] = {}
        for p, e in factors:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                merged[p] = merged.get(p, 0) + e
        if check_primes:
            bad = [p for p in merged if not is_prime(p)]
            if bad:
                raise ValueError(f"{bad[0]} is not prime")
        items = tuple(sorted(merged.items()))
        value = 1
        for p, e in items:
            value *= p**e
        return cls(value, items)

    def __int__(self) -> int:
        return self.value

    def __mul__(self, other: FactoredInteger) -> FactoredInteger:
        if not isinstance(other, FactoredInteger):
            return NotImplemented
        return FactoredInteger.from_factors(self.factors + other.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def largest_prime(self) -> int:
        """P(n), with P(1) = 1."""
        return self.factors[-1][0] if self.factors else 1

    @property
    def smallest_prime(self) -> float:
        """P^-(n), with P^-(1) = +inf."""
        return self.factors[0][0] if self.factors else math.inf

    @property
    def tau(self) -> int:
        return math.prod(e + 1 for _, e in self.factors)

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def coprime_part(self, a: int) -> FactoredInteger:
        """Largest divisor coprime to ``a``."""
        return FactoredInteger.from_factors((p, e) for p, e in self.factors if a % p)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


# ---------------------------------------------------------------------------
# primality and factorization
# ---------------------------------------------------------------------------


def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d = n + 1
    s = (d & -d).bit_length() - 1
    d >>= s
    # Binary ladder for U_d, V_d.
    U, V, Qk = 1, P, Q % n
    inv2 = (n + 1) // 2
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime(n: int) -> bool:
    """Primality test.

    Exact (Miller-Rabin on fixed bases) below 3.3e24; above that a
    Baillie-PSW test, which has no known counterexample.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < _TRIAL_BOUND * _TRIAL_BOUND:
        return True
    if n < _MR_EXACT_BOUND:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    return _strong_probable_prime(n, 2) and _strong_lucas(n)


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> FactoredInteger:
    """Canonical factorization of ``n >= 1``.

    Trial division by primes below 1000, then Brent's rho on whatever
    cofactor remains.

    >>> factorize(1305).factors
    ((3, 2), (5, 1), (29, 1))
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    found: dict[int, int] = {}
    m = n
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    _split(m, found)
    return FactoredInteger(n, tuple(sorted(found.items())))


# ---------------------------------------------------------------------------
# multiplicative functions
# ---------------------------------------------------------------------------


def prime_power_phi(p: int, e: int) -> int:
    return (p - 1) * p ** (e - 1) if e else 1


def prime_power_lambda(p: int, e: int) -> int:
    """Carmichael's function at p^e."""
    if e == 0:
        return 1
    if p == 2:
        if e <= 2:
            return e  # lambda(2) = 1, lambda(4) = 2
        return 1 << (e - 2)
    return (p - 1) * p ** (e - 1)


def euler_phi(f: FactoredInteger) -> int:
    return math.prod(prime_power_phi(p, e) for p, e in f.factors)


def carmichael_lambda(f: FactoredInteger) -> int:
    return reduce(math.lcm, (prime_power_lambda(p, e) for p, e in f.factors), 1)


def sigma(f: FactoredInteger) -> int:
    return math.prod((p ** (e + 1) - 1) // (p - 1) for p, e in f.factors)


def _divisor_exponents(f: FactoredInteger) -> Iterator[tuple[int, ...]]:
    return product(*(range(e + 1) for _, e in f.factors))


def divisor_values(f: FactoredInteger) -> list[int]:
    """All divisors of ``f`` as plain ints, ascending."""
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    divs.sort()
    return divs


def divisors(f: FactoredInteger) -> list[FactoredInteger]:
    """All divisors with their factorizations, ascending by value."""
    out = []
    primes = f.primes
    for exps in _divisor_exponents(f):
        fac = tuple((p, k) for p, k in zip(primes, exps) if k)
        out.append(FactoredInteger(math.prod(p**k for p, k in fac), fac))
    out.sort(key=lambda d: d.value)
    return out


# ---------------------------------------------------------------------------
# bulk path
# ---------------------------------------------------------------------------


class SpfSieve:
    """Smallest-prime-factor table over ``[0, limit]``.

    Built once, read-only afterwards. ``factorize(n)`` must agree exactly
    with the module-level :func:`factorize` on the table's range.
    """

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError("sieve limit must be positive")
        self.limit = int(limit)
        spf = np.zeros(self.limit + 1, dtype=np.int32 if self.limit < 2**31 else np.int64)
        for p in range(2, math.isqrt(self.limit) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
        idx = np.flatnonzero(spf == 0)
        spf[idx] = idx
        spf[0] = 0
        spf[1] = 1
        self._spf = spf
        self._spf_list = spf.tolist()

    def __contains__(self, n: int) -> bool:
        return 1 <= n <= self.limit

    def smallest_prime(self, n: int) -> int:
        return self._spf_list[n]

    def factor_pairs(self, n: int) -> tuple[tuple[int, int], ...]:
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range [1, {self.limit}]")
        spf = self._spf_list
        out = []
        while n > 1:
            p = spf[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return tuple(out)

    def factorize(self, n: int) -> FactoredInteger:
        return FactoredInteger(n, self.factor_pairs(n))

    def primes(self, lo: int = 2, hi: int | None = None) -> list[int]:
        hi = self.limit if hi is None else min(hi, self.limit)
        idx = np.arange(max(lo, 2), hi + 1)
        return idx[self._spf[idx] == idx].tolist()


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo < p <= hi."""
    return [p for p in range(lo + 1, hi + 1) if is_prime(p)]


def product_of(factored: Sequence[FactoredInteger]) -> FactoredInteger:
    return FactoredInteger.from_factors(pe for f in factored for pe in f.factors)
