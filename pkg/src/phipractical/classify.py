"""Membership predicates for the seven families and a combined record."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .degsets import covers_all_fast, lambda_multiset, p_multiset, phi_multiset
from .factorint import FactoredInteger, factorize, is_prime

__all__ = [
    "ClassificationRecord",
    "classify",
    "is_2_dense",
    "is_lambda_practical",
    "is_p_practical",
    "is_phi_practical",
    "is_practical",
    "is_strictly_2_dense",
    "is_weakly_phi_practical",
]


def _as_factored(n) -> FactoredInteger:
    return n if isinstance(n, FactoredInteger) else factorize(n)


def stewart_ok(factors: Sequence[tuple[int, int]]) -> bool:
    """Stewart's criterion on ascending (prime, exponent) pairs."""
    if not factors:
        return True
    if factors[0][0] != 2:
        return False
    s = 1  # sigma of the prefix product
    for p, e in factors:
        if p > s + 1:
            return False
        s *= (p ** (e + 1) - 1) // (p - 1)
    return True


def weak_ok(factors: Sequence[tuple[int, int]]) -> bool:
    """Every next prime is at most the prefix product plus 2."""
    m = 1
    for p, e in factors:
        if p > m + 2:
            return False
        m *= p**e
    return True


def dense_ok(factors: Sequence[tuple[int, int]], strict: bool) -> bool:
    if any(e > 1 for _, e in factors):
        return False
    if factors and factors[0][0] != 2:
        return False  # d_2/d_1 is the smallest prime
    divs = [1]
    for p, _ in factors:
        divs += [d * p for d in divs]
    divs.sort()
    # 1-indexed ratio i = d_{i+1}/d_i; strictness applies only for 1 < i < tau - 1
    tau = len(divs)
    for k in range(tau - 1):
        lo, hi = divs[k], divs[k + 1]
        if hi > 2 * lo:
            return False
        if strict and hi == 2 * lo and 1 < k + 1 < tau - 1:
            return False
    return True


def is_practical(n) -> bool:
    return stewart_ok(_as_factored(n).factors)


def is_weakly_phi_practical(n) -> bool:
    return weak_ok(_as_factored(n).factors)


def is_phi_practical(n) -> bool:
    return covers_all_fast(phi_multiset(_as_factored(n)))


def is_lambda_practical(n) -> bool:
    return covers_all_fast(lambda_multiset(_as_factored(n)))


def is_p_practical(n, p: int) -> bool:
    return covers_all_fast(p_multiset(_as_factored(n), p))


def is_2_dense(n) -> bool:
    """Squarefree with no consecutive-divisor ratio above 2."""
    return dense_ok(_as_factored(n).factors, strict=False)


def is_strictly_2_dense(n) -> bool:
    """2-dense, and the ratio is strictly below 2 at interior indices 1 < i < tau - 1."""
    return dense_ok(_as_factored(n).factors, strict=True)


@dataclass(frozen=True)
class ClassificationRecord:
    n: FactoredInteger
    practical: bool
    phi_practical: bool
    lambda_practical: bool
    weakly_phi_practical: bool
    two_dense: bool
    strictly_two_dense: bool
    p_practical: tuple[tuple[int, bool], ...] = field(default=())

    def check_invariants(self) -> None:
        if self.phi_practical:
            assert self.lambda_practical, f"{self.n.value}: phi-practical but not lambda-practical"
        if self.lambda_practical:
            assert all(v for _, v in self.p_practical), f"{self.n.value}: lambda-practical but some p fails"
            assert self.weakly_phi_practical, f"{self.n.value}: lambda-practical but not weakly phi-practical"
        if self.strictly_two_dense:
            assert self.two_dense
        if self.two_dense:
            assert self.practical, f"{self.n.value}: 2-dense but not practical"

    def to_dict(self) -> dict:
        return {
            "n": str(self.n.value),
            "factors": [[p, e] for p, e in self.n.factors],
            "practical": self.practical,
            "phi_practical": self.phi_practical,
            "lambda_practical": self.lambda_practical,
            "weakly_phi_practical": self.weakly_phi_practical,
            "two_dense": self.two_dense,
            "strictly_two_dense": self.strictly_two_dense,
            "p_practical": {str(p): v for p, v in self.p_practical},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> ClassificationRecord:
        n = FactoredInteger(int(d["n"]), tuple((int(p), int(e)) for p, e in d["factors"]))
        return cls(
            n=n,
            practical=bool(d["practical"]),
            phi_practical=bool(d["phi_practical"]),
            lambda_practical=bool(d["lambda_practical"]),
            weakly_phi_practical=bool(d["weakly_phi_practical"]),
            two_dense=bool(d["two_dense"]),
            strictly_two_dense=bool(d["strictly_two_dense"]),
            p_practical=tuple((int(p), bool(v)) for p, v in d["p_practical"].items()),
        )

    @classmethod
    def from_json(cls, text: str) -> ClassificationRecord:
        return cls.from_dict(json.loads(text))


def classify(n, primes: Sequence[int] = (2,)) -> ClassificationRecord:
    """All seven verdicts for ``n``; record invariants are asserted before return."""
    n = _as_factored(n)
    if not primes:
        raise ValueError("need at least one prime for the p-practical columns")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    rec = ClassificationRecord(
        n=n,
        practical=is_practical(n),
        phi_practical=is_phi_practical(n),
        lambda_practical=is_lambda_practical(n),
        weakly_phi_practical=is_weakly_phi_practical(n),
        two_dense=is_2_dense(n),
        strictly_two_dense=is_strictly_2_dense(n),
        p_practical=tuple((p, is_p_practical(n, p)) for p in primes),
    )
    rec.check_invariants()
    return rec
