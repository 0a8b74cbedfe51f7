"""Degree multisets of x^n - 1 and the two coverage deciders.

A degree multiset lists the degrees of the irreducible factors of x^n - 1
(over Z, over F_p, or with lambda(d) in place of the local degree) as
merged ``(degree, multiplicity)`` pairs. ``x^n - 1`` has a divisor of every
degree in [1, n] exactly when these entries cover [1, total] by bounded
subset sums.

The builders never enumerate divisors one by one. They fold prime powers
into a map ``degree -> sum of phi(d)`` over the divisors d landing on that
degree; the multiplicity is that sum divided by the degree.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .factorint import FactoredInteger, factorize, prime_power_lambda, prime_power_phi
from .orders import prime_power_order

__all__ = [
    "DEFAULT_ORACLE_BOUND",
    "DegreeMultiset",
    "OracleBoundExceeded",
    "covers_all",
    "covers_all_bitset",
    "covers_all_fast",
    "fold_degrees",
    "lambda_multiset",
    "p_multiset",
    "phi_multiset",
    "subset_sum_reach",
]

DEFAULT_ORACLE_BOUND = 10**6


class OracleBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class DegreeMultiset:
    entries: tuple[tuple[int, int], ...]
    total: int

    def __post_init__(self):
        prev = 0
        tot = 0
        for g, c in self.entries:
            if g <= prev or c < 1:
                raise ValueError(f"entries must have increasing degrees and positive counts: {self.entries!r}")
            prev = g
            tot += g * c
        if tot != self.total:
            raise ValueError(f"total {self.total} != sum of entries {tot}")

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> DegreeMultiset:
        entries = tuple(sorted((g, c) for g, c in counts.items() if c))
        return cls(entries, sum(g * c for g, c in entries))

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{g}:{c}" for g, c in self.entries) + "}"


def _as_factored(n) -> FactoredInteger:
    return n if isinstance(n, FactoredInteger) else factorize(n)


LocalDegree = Callable[[int, int], int]


def fold_degrees(
    factors: Iterable[tuple[int, int]],
    local: LocalDegree,
    combine: Callable[[int, int], int] = math.lcm,
) -> dict[int, int]:
    """Map degree -> sum of phi(d) over divisors d of n with that degree.

    ``factors`` are the (prime, exponent) pairs of n. ``local(q, f)`` is the
    degree attached to q^f; the degree of a divisor is the ``combine`` of
    its local degrees.
    """
    acc = {1: 1}
    for q, e in factors:
        nxt: dict[int, int] = {}
        for f in range(e + 1):
            g_q = local(q, f)
            w_q = prime_power_phi(q, f)
            for g, w in acc.items():
                key = combine(g, g_q)
                nxt[key] = nxt.get(key, 0) + w * w_q
        acc = nxt
    return acc


def _finish(weights: Mapping[int, int]) -> DegreeMultiset:
    return DegreeMultiset.from_counts({g: w // g for g, w in weights.items()})


def phi_multiset(n) -> DegreeMultiset:
    """Degrees of the cyclotomic factors Phi_d, d | n: one phi(d) per divisor."""
    n = _as_factored(n)
    return _finish(fold_degrees(n.factors, prime_power_phi, combine=operator.mul))


def lambda_multiset(n) -> DegreeMultiset:
    """phi(d)/lambda(d) copies of lambda(d) for each divisor d."""
    n = _as_factored(n)
    return _finish(fold_degrees(n.factors, prime_power_lambda))


def p_multiset(n, p: int) -> DegreeMultiset:
    """Irreducible-factor degrees of x^n - 1 over F_p.

    Each Phi_d contributes phi(d)/l copies of degree l = ell*_p(d); the
    p-part of d contributes nothing to the degree.
    """
    n = _as_factored(n)
    return _finish(fold_degrees(n.factors, p_local_degree(p)))


def p_local_degree(p: int) -> LocalDegree:
    """Local degree ell*_p(q^f): 1 on the p-part, the order of p mod q^f elsewhere."""

    def local(q: int, f: int) -> int:
        if q == p or f == 0:
            return 1
        return prime_power_order(p % q**f, q, f)

    return local


def phi_weights(factors: Iterable[tuple[int, int]]) -> dict[int, int]:
    return fold_degrees(factors, prime_power_phi, combine=operator.mul)


def lambda_weights(factors: Iterable[tuple[int, int]]) -> dict[int, int]:
    return fold_degrees(factors, prime_power_lambda)


def weights_cover(weights: Mapping[int, int]) -> bool:
    """Prefix walk straight on a ``degree -> sum of phi`` map."""
    reach = 0
    for g in sorted(weights):
        if g > reach + 1:
            return False
        reach += weights[g]
    return True


def covers_all_fast(ms: DegreeMultiset) -> bool:
    """Prefix walk: each next degree must be at most one past what is reachable so far."""
    reach = 0
    for g, c in ms.entries:
        if g > reach + 1:
            return False
        reach += g * c
    return True


covers_all = covers_all_fast


def subset_sum_reach(entries: Iterable[tuple[int, int]], bound: int) -> int:
    """Bitmask of sums in [0, bound] reachable with at most c copies of each g.

    Bit k set means k is reachable. Multiplicities are split into chunks
    1, 2, 4, ..., remainder so each copy count 0..c is a sum of chunks.
    """
    mask = (1 << (bound + 1)) - 1
    bits = 1
    for g, c in entries:
        chunk = 1
        while c > 0:
            take = min(chunk, c)
            shift = g * take
            if shift <= bound:
                bits = (bits | (bits << shift)) & mask
            c -= take
            chunk <<= 1
    return bits


def covers_all_bitset(ms: DegreeMultiset, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    """Exact reachability oracle: every m in [1, total] is a bounded subset sum."""
    if ms.total > bound:
        raise OracleBoundExceeded(f"total {ms.total} exceeds oracle bound {bound}")
    full = (1 << (ms.total + 1)) - 1
    return subset_sum_reach(ms.entries, ms.total) == full
