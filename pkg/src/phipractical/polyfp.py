"""Dense polynomials over F_p and distinct-degree factorization of x^n - 1.

This is the trusted checker for the cyclotomic shortcut in
:func:`phipractical.degsets.p_multiset`: it factors x^n - 1 directly and
knows nothing about multiplicative orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .degsets import DegreeMultiset
from .factorint import is_prime

__all__ = [
    "DEFAULT_POLY_BOUND",
    "PolynomialModP",
    "factor_degrees",
    "poly_gcd",
    "poly_mul_mod",
    "poly_powmod_xq",
]

DEFAULT_POLY_BOUND = 2048


def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def _arr(coeffs: Sequence[int], p: int) -> np.ndarray:
    return _trim(np.asarray([c % p for c in coeffs], dtype=object if p > 2**31 else np.int64))


def _deg(a: np.ndarray) -> int:
    return len(a) - 1


def _mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if not len(a) or not len(b):
        return a[:0]
    if a.dtype == object or min(len(a), len(b)) * (p - 1) ** 2 >= 2**62:
        # exact big-int convolution; reduced values fit back into the input dtype
        out = (np.convolve(a.astype(object), b.astype(object)) % p).astype(a.dtype)
    else:
        out = np.convolve(a, b) % p
    return _trim(out)


def _rem(a: np.ndarray, m: np.ndarray, p: int) -> np.ndarray:
    """a mod m over F_p; m must be nonzero."""
    dm = _deg(m)
    a = a.copy()
    if dm == 0:
        return a[:0]
    inv = pow(int(m[-1]), -1, p)
    mm = m[:-1]
    for k in range(_deg(a), dm - 1, -1):
        c = int(a[k])
        if c:
            c = c * inv % p
            seg = a[k - dm : k]
            seg -= c * mm
            seg %= p
    return _trim(a[:dm])


def _divexact(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Quotient a / b over F_p, assuming b divides a."""
    da, db = _deg(a), _deg(b)
    a = a.copy()
    q = np.zeros(da - db + 1, dtype=a.dtype)
    inv = pow(int(b[-1]), -1, p)
    for k in range(da, db - 1, -1):
        c = int(a[k]) * inv % p
        if c:
            q[k - db] = c
            seg = a[k - db : k + 1]
            seg -= c * b
            seg %= p
    if np.any(a[:db]):
        raise ArithmeticError("division was not exact")
    return q


def _monic(a: np.ndarray, p: int) -> np.ndarray:
    if not len(a):
        return a
    inv = pow(int(a[-1]), -1, p)
    return a * inv % p


def _gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    while len(b):
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


@dataclass(frozen=True)
class PolynomialModP:
    """Coefficients lowest degree first, reduced mod p, no trailing zeros."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise ValueError("coefficients must be reduced mod p")
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing zero coefficient")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], p: int) -> PolynomialModP:
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return cls(p, tuple(c))

    @classmethod
    def x_pow_minus_one(cls, n: int, p: int) -> PolynomialModP:
        c = [0] * (n + 1)
        c[0] = p - 1
        c[n] = 1
        return cls.from_coeffs(c, p)

    @classmethod
    def _wrap(cls, a: np.ndarray, p: int) -> PolynomialModP:
        return cls(p, tuple(int(x) for x in a))

    def _np(self) -> np.ndarray:
        return _arr(self.coeffs, self.p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms) + f" (mod {self.p})"


def _check_pair(a: PolynomialModP, b: PolynomialModP) -> None:
    if a.p != b.p:
        raise ValueError(f"modulus mismatch: {a.p} vs {b.p}")


def poly_mul_mod(a: PolynomialModP, b: PolynomialModP, m: PolynomialModP) -> PolynomialModP:
    _check_pair(a, b)
    _check_pair(a, m)
    if m.is_zero():
        raise ZeroDivisionError("reduction modulo the zero polynomial")
    p = a.p
    return PolynomialModP._wrap(_rem(_mul(a._np(), b._np(), p), m._np(), p), p)


def _powmod(base: np.ndarray, k: int, m: np.ndarray, p: int) -> np.ndarray:
    result = _rem(np.ones(1, dtype=base.dtype), m, p)
    while k:
        if k & 1:
            result = _rem(_mul(result, base, p), m, p)
        k >>= 1
        if k:
            base = _rem(_mul(base, base, p), m, p)
    return result


def poly_powmod_xq(m: PolynomialModP, e: int) -> PolynomialModP:
    """x^(p^e) mod m, by raising to the p-th power e times."""
    if m.is_zero() or m.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    if e < 0:
        raise ValueError("e must be nonnegative")
    p = m.p
    mm = m._np()
    h = _rem(_arr([0, 1], p), mm, p)
    for _ in range(e):
        h = _powmod(h, p, mm, p)
    return PolynomialModP._wrap(h, p)


def poly_gcd(a: PolynomialModP, b: PolynomialModP) -> PolynomialModP:
    _check_pair(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return PolynomialModP._wrap(_gcd(a._np(), b._np(), a.p), a.p)


def _frobenius_matrix(f: np.ndarray, p: int) -> np.ndarray:
    """Row j holds x^(j p) mod f, so h(x)^p mod f = h @ Q for h of degree < deg f."""
    d = _deg(f)
    Q = np.zeros((d, d), dtype=np.int64)
    shift = np.zeros(p, dtype=np.int64)
    row = _rem(np.ones(1, dtype=np.int64), f, p)
    for j in range(d):
        Q[j, : len(row)] = row
        row = _rem(np.concatenate([shift, row]), f, p)
    return Q


def factor_degrees(n: int, p: int, bound: int = DEFAULT_POLY_BOUND) -> DegreeMultiset:
    """Degrees of the irreducible factors of x^n - 1 over F_p, by distinct-degree factorization.

    Writes n = n0 * p^k with p not dividing n0, so that x^n - 1 = (x^n0 - 1)^(p^k)
    and x^n0 - 1 is squarefree. Then for i = 1, 2, ... the gcd of
    x^(p^i) - x with what is left of x^n0 - 1 collects the product of its
    degree-i irreducible factors.
    """
    from .degsets import OracleBoundExceeded

    if n < 1:
        raise ValueError("n must be positive")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n > bound:
        raise OracleBoundExceeded(f"n = {n} exceeds polynomial oracle bound {bound}")
    n0, pk = n, 1
    while n0 % p == 0:
        n0 //= p
        pk *= p
    counts: dict[int, int] = {}
    F = PolynomialModP.x_pow_minus_one(n0, p)._np()
    f = F
    use_matrix = F.dtype != object and n0 * (p - 1) ** 2 < 2**62
    if use_matrix:
        Q = _frobenius_matrix(F, p)
    # h tracks x^(p^i) mod F; F is fixed so one Frobenius matrix serves every step
    h = _rem(_arr([0, 1], p), F, p)
    i = 0
    while _deg(f) >= 2 * (i + 1):
        i += 1
        if use_matrix:
            v = np.zeros(n0, dtype=np.int64)
            v[: len(h)] = h
            h = _trim(v @ Q % p)
        else:
            h = _powmod(h, p, F, p)
        diff = h.copy() if len(h) >= 2 else np.concatenate([h, np.zeros(2 - len(h), dtype=h.dtype)])
        diff[1] = (diff[1] - 1) % p
        g = _gcd(f, _rem(_trim(diff), f, p), p)
        dg = _deg(g)
        if dg > 0:
            counts[i] = counts.get(i, 0) + dg // i
            f = _divexact(f, g, p)
    if _deg(f) > 0:
        counts[_deg(f)] = counts.get(_deg(f), 0) + 1
    ms = DegreeMultiset.from_counts({g: c * pk for g, c in counts.items()})
    if ms.total != n:
        raise AssertionError(f"degree total {ms.total} != {n}")
    return ms
