"""Multiplicative orders, the coprime-part order, and lambda-witness primes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .factorint import (
    FactoredInteger,
    carmichael_lambda,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    prime_power_lambda,
)

__all__ = [
    "CapExceeded",
    "DEFAULT_SEARCH_CAP",
    "WitnessResult",
    "ell_star",
    "lambda_witness",
    "mult_order",
    "one_mod_n_prime",
    "prime_power_order",
    "primitive_root",
]

DEFAULT_SEARCH_CAP = 10**7


class CapExceeded(LookupError):
    """No qualifying prime below the search cap. Says nothing about existence."""


def _as_factored(n) -> FactoredInteger:
    return n if isinstance(n, FactoredInteger) else factorize(n)


def _order_dividing(a: int, modulus: int, exponent: int) -> int:
    """Least k | exponent with a^k = 1 (mod modulus); a^exponent must be 1."""
    k = exponent
    for r, _ in factorize(exponent).factors:
        while k % r == 0 and pow(a, k // r, modulus) == 1:
            k //= r
    return k


@lru_cache(maxsize=1 << 18)
def prime_power_order(a: int, q: int, e: int) -> int:
    """Order of a modulo q^e, for q not dividing a."""
    if e == 0:
        return 1
    return _order_dividing(a % q**e, q**e, prime_power_lambda(q, e))


def mult_order(a: int, n) -> int:
    """Least k >= 1 with a^k = 1 (mod n).

    Works prime power by prime power and takes the lcm, each local order
    found by descending through the divisors of lambda(q^e).
    """
    n = _as_factored(n)
    if a <= 0:
        raise ValueError(f"order of {a} is undefined; need a positive base")
    if math.gcd(a, n.value) != 1:
        raise ValueError(f"gcd({a}, {n.value}) > 1")
    k = 1
    for q, e in n.factors:
        k = math.lcm(k, prime_power_order(a % q**e, q, e))
    return k


def ell_star(a: int, n) -> int:
    """Order of a modulo the largest divisor of n coprime to a."""
    n = _as_factored(n)
    k = 1
    for q, e in n.factors:
        if a % q:
            k = math.lcm(k, prime_power_order(a % q**e, q, e))
    return k


def primitive_root(q: int, e: int) -> int:
    """Smallest generator of the units mod q^e, q an odd prime."""
    if q == 2:
        raise ValueError("units mod 2^e are not cyclic for e >= 3; use 3 instead")
    m = q**e
    phi = (q - 1) * q ** (e - 1)
    rs = [r for r, _ in factorize(phi).factors]
    for a in range(2, m):
        if a % q and all(pow(a, phi // r, m) != 1 for r in rs):
            return a
    return 1  # only reachable for m = 2, excluded above


@dataclass(frozen=True)
class WitnessResult:
    """A prime p with ell*_p(d) = lambda(d) for every divisor d of n, plus the proof table."""

    n: FactoredInteger
    p: int
    residue: int
    table: tuple[tuple[int, int, int], ...]  # (d, ell_star, lambda_d)

    def verify(self) -> bool:
        ds = {d.value for d in divisors(self.n)}
        if {row[0] for row in self.table} != ds or len(self.table) != len(ds):
            return False
        if not is_prime(self.p) or self.n.value % self.p == 0:
            return False
        for d, ls, lam in self.table:
            if not ls == lam == carmichael_lambda(factorize(d)):
                return False
            # p has order exactly lam mod d: p^lam = 1 and no maximal proper divisor works
            if pow(self.p, lam, d) != 1 % d:
                return False
            if any(pow(self.p, lam // r, d) == 1 for r, _ in factorize(lam).factors):
                return False
        return True

    def format_table(self) -> str:
        lines = [f"n = {self.n.value} ({self.n})", f"p = {self.p}  (p = {self.residue} mod {self.n.value})"]
        lines.append(f"{'d':>10} {'ell*_p(d)':>12} {'lambda(d)':>12}")
        for d, ls, lam in self.table:
            lines.append(f"{d:>10} {ls:>12} {lam:>12}")
        return "\n".join(lines)


def _crt(residues: list[tuple[int, int]]) -> tuple[int, int]:
    x, mod = 0, 1
    for r, m in residues:
        # moduli are pairwise coprime prime powers
        t = (r - x) * pow(mod, -1, m) % m
        x += mod * t
        mod *= m
    return x % mod, mod


def lambda_witness(n, search_cap: int = DEFAULT_SEARCH_CAP) -> WitnessResult:
    """Find the smallest prime in the residue class built from local generators.

    For each odd q^e || n take the smallest primitive root mod q^e, for 2^e
    take 3; combine them by CRT into x mod n and scan x, x + n, ... for a
    prime. The 2^1 component is then just "p odd", which also covers d = 2.
    The resulting table is checked before returning.
    """
    n = _as_factored(n)
    local = []
    for q, e in n.factors:
        a = 3 if q == 2 else primitive_root(q, e)
        local.append((a % q**e, q**e))
    x, mod = _crt(local)
    start = x if x >= 2 else x + mod
    if mod == 1:
        start = 2
    for p in range(start, search_cap + 1, mod):
        if is_prime(p):
            break
    else:
        raise CapExceeded(f"no prime = {x} mod {mod} below {search_cap}")
    table = tuple(
        (d.value, ell_star(p, d), carmichael_lambda(d)) for d in divisors(n)
    )
    result = WitnessResult(n, p, x, table)
    if not result.verify():
        raise AssertionError(f"witness table for n={n.value}, p={p} does not verify")
    return result


def one_mod_n_prime(n, search_cap: int = DEFAULT_SEARCH_CAP) -> int:
    """Smallest prime p = 1 (mod n) with p <= search_cap."""
    n = _as_factored(n)
    m = n.value
    for p in range(m + 1, search_cap + 1, m):
        if is_prime(p):
            return p
    raise CapExceeded(f"no prime = 1 mod {m} below {search_cap}")


def order_table(a: int, n) -> list[tuple[int, int, int]]:
    """(d, ell*_a(d), phi(d)) for every divisor d of n."""
    n = _as_factored(n)
    return [(d.value, ell_star(a, d), euler_phi(d)) for d in divisors(n)]
