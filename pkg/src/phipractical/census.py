"""Counting functions over [1, X], set differences, and construction families.

Bulk counting factors every n <= X from one smallest-prime-factor table and
runs the fast prefix criterion only. Work is split into contiguous chunks;
chunk results are merged in order, so counts do not depend on chunk size
or on how many worker processes ran them.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .classify import dense_ok, stewart_ok, weak_ok
from .degsets import (
    covers_all_fast,
    fold_degrees,
    lambda_multiset,
    lambda_weights,
    p_local_degree,
    p_multiset,
    phi_multiset,
    phi_weights,
    weights_cover,
)
from .factorint import FactoredInteger, SpfSieve, factorize, is_prime, primes_between
from .orders import mult_order

__all__ = [
    "CLASS_NAMES",
    "CountTable",
    "DEFAULT_MEMBER_CAP",
    "DEFAULT_RANGE_BOUND",
    "DiffResult",
    "FamilyMember",
    "FamilySpec",
    "RangeBoundExceeded",
    "UnknownClass",
    "construct_family",
    "count_classes",
    "default_checkpoints",
    "diff_count",
    "diff_counts_at",
    "growth_ratio",
    "find_q0",
    "membership",
]

log = logging.getLogger(__name__)

DEFAULT_RANGE_BOUND = 10**7
DEFAULT_MEMBER_CAP = 10**5
DEFAULT_CHUNK = 10**5

# Fixed names first; "p:<prime>" columns are parsed on demand.
CLASS_NAMES = ("phi", "lambda", "practical", "weak", "2dense", "strict2dense")


class RangeBoundExceeded(ValueError):
    pass


class UnknownClass(ValueError):
    pass


def _class_predicate(name: str) -> Callable[[tuple[tuple[int, int], ...]], bool]:
    if name == "phi":
        return lambda fs: weights_cover(phi_weights(fs))
    if name == "lambda":
        return lambda fs: weights_cover(lambda_weights(fs))
    if name == "practical":
        return stewart_ok
    if name == "weak":
        return weak_ok
    if name == "2dense":
        return lambda fs: dense_ok(fs, strict=False)
    if name == "strict2dense":
        return lambda fs: dense_ok(fs, strict=True)
    if name.startswith("p:"):
        try:
            p = int(name[2:])
        except ValueError:
            raise UnknownClass(f"bad prime in class name {name!r}") from None
        if not is_prime(p):
            raise UnknownClass(f"{p} is not prime (class {name!r})")
        local = p_local_degree(p)
        return lambda fs: weights_cover(fold_degrees(fs, local))
    raise UnknownClass(f"unknown class {name!r}; expected one of {', '.join(CLASS_NAMES)} or p:<prime>")


def validate_classes(classes: Iterable[str]) -> list[str]:
    out = []
    for c in classes:
        _class_predicate(c)
        if c not in out:
            out.append(c)
    if not out:
        raise UnknownClass("no classes requested")
    return out


@lru_cache(maxsize=2)
def _sieve(limit: int) -> SpfSieve:
    return SpfSieve(limit)


def _chunk_membership(lo: int, hi: int, classes: tuple[str, ...], limit: int) -> dict[str, np.ndarray]:
    """Boolean membership arrays for lo <= n <= hi."""
    sieve = _sieve(limit)
    preds = [(_class_predicate(c), np.zeros(hi - lo + 1, dtype=bool)) for c in classes]
    for i, n in enumerate(range(lo, hi + 1)):
        fs = sieve.factor_pairs(n)
        for pred, arr in preds:
            if pred(fs):
                arr[i] = True
    return {c: arr for c, (_, arr) in zip(classes, preds)}


def membership(
    X: int,
    classes: Sequence[str],
    chunk_size: int = DEFAULT_CHUNK,
    workers: int = 1,
    range_bound: int = DEFAULT_RANGE_BOUND,
) -> dict[str, np.ndarray]:
    """Membership arrays over [1, X]; index i corresponds to n = i + 1."""
    if X < 1:
        raise ValueError("X must be positive")
    if X > range_bound:
        raise RangeBoundExceeded(f"X = {X} exceeds range bound {range_bound}")
    if chunk_size < 1:
        raise ValueError("chunk size must be positive")
    classes = tuple(validate_classes(classes))
    bounds = [(lo, min(lo + chunk_size - 1, X)) for lo in range(1, X + 1, chunk_size)]
    if workers <= 1:
        parts = [_chunk_membership(lo, hi, classes, X) for lo, hi in bounds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_chunk_membership, lo, hi, classes, X) for lo, hi in bounds]
            parts = [f.result() for f in futs]  # submission order, not completion order
    return {c: np.concatenate([part[c] for part in parts]) for c in classes}


def default_checkpoints(X: int) -> list[int]:
    """Powers of ten up to X, plus X itself."""
    pts = [10**k for k in range(1, len(str(X))) if 10**k <= X]
    if not pts or pts[-1] != X:
        pts.append(X)
    return pts


@dataclass
class CountTable:
    checkpoints: list[int]
    counts: dict[str, list[int]] = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        names = list(self.counts)
        w.writerow(["X", *names])
        for i, x in enumerate(self.checkpoints):
            w.writerow([x, *(self.counts[c][i] for c in names)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> CountTable:
        rows = list(csv.reader(io.StringIO(text)))
        names = rows[0][1:]
        table = cls([int(r[0]) for r in rows[1:]])
        for j, c in enumerate(names, start=1):
            table.counts[c] = [int(r[j]) for r in rows[1:]]
        return table

    def at(self, cls_name: str, X: int) -> int:
        return self.counts[cls_name][self.checkpoints.index(X)]


def count_classes(
    X: int,
    classes: Sequence[str],
    checkpoints: Sequence[int] | None = None,
    chunk_size: int = DEFAULT_CHUNK,
    workers: int = 1,
    range_bound: int = DEFAULT_RANGE_BOUND,
) -> CountTable:
    """Cumulative counts #{n <= x : n in class} at each checkpoint x."""
    pts = sorted(set(checkpoints)) if checkpoints else default_checkpoints(X)
    if pts[0] < 1 or pts[-1] > X:
        raise ValueError(f"checkpoints must lie in [1, {X}]")
    mem = membership(X, classes, chunk_size=chunk_size, workers=workers, range_bound=range_bound)
    idx = np.asarray(pts) - 1
    table = CountTable(list(pts))
    for c, arr in mem.items():
        table.counts[c] = [int(v) for v in np.cumsum(arr, dtype=np.int64)[idx]]
    return table


@dataclass
class DiffResult:
    X: int
    a: str
    b: str
    count: int
    members: list[int] | None = None


def diff_count(
    X: int,
    a: str,
    b: str,
    with_members: bool = False,
    member_cap: int = DEFAULT_MEMBER_CAP,
    chunk_size: int = DEFAULT_CHUNK,
    workers: int = 1,
    range_bound: int = DEFAULT_RANGE_BOUND,
) -> DiffResult:
    """#{n <= X : n in a, n not in b}, optionally with the members (capped)."""
    mem = membership(X, [a, b], chunk_size=chunk_size, workers=workers, range_bound=range_bound)
    hit = mem[a] & ~mem[b]
    res = DiffResult(X, a, b, int(hit.sum()))
    if with_members:
        idx = np.flatnonzero(hit)[:member_cap]
        res.members = (idx + 1).tolist()
    return res


def diff_counts_at(mem: dict[str, np.ndarray], a: str, b: str, checkpoints: Sequence[int]) -> list[int]:
    """Cumulative difference counts from precomputed membership arrays."""
    cum = np.cumsum(mem[a] & ~mem[b], dtype=np.int64)
    return [int(cum[x - 1]) for x in checkpoints]


# ---------------------------------------------------------------------------
# construction families
# ---------------------------------------------------------------------------

FAMILY_KINDS = ("prop46", "prop62_p2", "prop62_p3", "prop62_podd", "lemma63")


def find_q0(p: int) -> int:
    """Smallest prime factor of p^2 + p + 1 other than 3."""
    if p == 2:
        raise ValueError("the p^2 + p + 1 construction needs p >= 3")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for q, _ in factorize(p * p + p + 1).factors:
        if q != 3:
            return q
    raise ArithmeticError(f"p^2 + p + 1 is a power of 3 for p = {p}")


@dataclass(frozen=True)
class FamilySpec:
    """``limit`` bounds the appended primes (or k for lemma63, or p for prop62_podd)."""

    kind: str
    limit: int = 100
    p: int | None = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {', '.join(FAMILY_KINDS)}")
        if self.limit < 0:
            raise ValueError("limit must be nonnegative")
        if self.kind == "lemma63" and (self.p is None or not is_prime(self.p)):
            raise ValueError("lemma63 needs a prime p")
        if self.kind == "prop62_podd" and self.p is not None and (self.p < 3 or not is_prime(self.p)):
            raise ValueError("prop62_podd needs an odd prime p")


@dataclass(frozen=True)
class FamilyMember:
    n: FactoredInteger
    expected: dict[str, bool]
    verified: dict[str, bool]
    note: str = ""

    @property
    def agrees(self) -> bool:
        return all(self.verified.get(k) == v for k, v in self.expected.items())

    def to_dict(self) -> dict:
        return {
            "factors": [[p, e] for p, e in self.n.factors],
            "expected": self.expected,
            "verified": self.verified,
            "agrees": self.agrees,
            **({"note": self.note} if self.note else {}),
        }


def _verify(n: FactoredInteger, keys: Iterable[str]) -> dict[str, bool]:
    out = {}
    for k in keys:
        if k == "phi":
            out[k] = covers_all_fast(phi_multiset(n))
        elif k == "lambda":
            out[k] = covers_all_fast(lambda_multiset(n))
        elif k.startswith("p:"):
            out[k] = covers_all_fast(p_multiset(n, int(k[2:])))
        else:
            out[k] = bool(_class_predicate(k)(n.factors))
    return out


def _member(n: FactoredInteger, expected: dict[str, bool], note: str = "", extra: dict[str, bool] | None = None) -> FamilyMember:
    verified = _verify(n, expected.keys() - (extra or {}).keys())
    verified.update(extra or {})
    return FamilyMember(n, expected, verified, note)


def _prime_chain(base: Sequence[tuple[int, int]], after: int, limit: int, include_base: bool) -> list[FactoredInteger]:
    """base, base*q1, base*q1*q2, ... over the primes after < q <= limit."""
    out = []
    factors = list(base)
    if include_base:
        out.append(FactoredInteger.from_factors(factors))
    for q in primes_between(after, limit):
        factors.append((q, 1))
        out.append(FactoredInteger.from_factors(factors))
    return out


def construct_family(spec: FamilySpec) -> list[FamilyMember]:
    """Members of one construction family with expected and recomputed flags."""
    kind = spec.kind
    if kind == "prop46":
        # 45 times the primes in (23, X]: lambda-practical, never phi-practical
        chain = _prime_chain([(3, 2), (5, 1)], 23, spec.limit, include_base=True)
        return [_member(n, {"lambda": True, "phi": False}) for n in chain]
    if kind == "prop62_p2":
        chain = _prime_chain([(3, 1), (7, 1)], 7, spec.limit, include_base=True)
        return [_member(n, {"p:2": True, "lambda": False}) for n in chain]
    if kind == "prop62_p3":
        # 2 * 13^4 alone is not 3-practical; the chain starts at the first appended prime
        chain = _prime_chain([(2, 1), (13, 4)], 13, spec.limit, include_base=False)
        return [_member(n, {"p:3": True, "lambda": False}) for n in chain]
    if kind == "prop62_podd":
        ps = [spec.p] if spec.p is not None else primes_between(2, spec.limit)
        out = []
        for p in ps:
            q0 = find_q0(p)
            n = FactoredInteger.from_factors([(2, 1), (q0, 1)])
            checks = {"q0_not_3": q0 != 3, "order_le_3": mult_order(p, q0) <= 3}
            exp = {f"p:{p}": True, "lambda": False, "q0_not_3": True, "order_le_3": True}
            out.append(_member(n, exp, note=f"p={p}, q0={q0}", extra=checks))
        return out
    if kind == "lemma63":
        p = spec.p
        out = []
        for k in range(spec.limit + 1):
            exp = {f"p:{p}": True}
            # lambda(p) = p - 1 >= 4 leaves a gap for p >= 5; for p = 3, 4 is unreachable once k >= 2
            if (p >= 5 and k >= 1) or (p == 3 and k >= 2):
                exp["lambda"] = False
            out.append(_member(FactoredInteger.from_factors([(p, k)]), exp, note=f"k={k}"))
        return out
    raise ValueError(f"unknown family {kind!r}")


def growth_ratio(count: int, X: int) -> float:
    """count * log X / X, the normalisation against which X / log X densities are flat."""
    return count * math.log(X) / X
