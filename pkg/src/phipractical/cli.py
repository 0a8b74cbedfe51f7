"""Command-line front end.

Exit codes: 0 success, 1 usage or module error, 2 verification mismatch.
The oracle bound and witness search cap can be overridden through the
PHIPRACTICAL_ORACLE_BOUND and PHIPRACTICAL_SEARCH_CAP environment variables.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Sequence

from .census import (
    FAMILY_KINDS,
    DEFAULT_RANGE_BOUND,
    FamilySpec,
    construct_family,
    count_classes,
    default_checkpoints,
    diff_count,
    validate_classes,
)
from .classify import classify, is_p_practical
from .degsets import covers_all_bitset, p_multiset
from .factorint import FactoredInteger, factorize, is_prime
from .orders import DEFAULT_SEARCH_CAP, CapExceeded, lambda_witness
from .polyfp import DEFAULT_POLY_BOUND, factor_degrees

log = logging.getLogger("phipractical")

SUBCOMMANDS = ("classify", "count", "diff", "witness", "oracle", "construct")
EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: FactoredInteger | None = None
    max: int | None = None
    primes: list[int] = field(default_factory=lambda: [2])
    classes: list[str] = field(default_factory=list)
    checkpoints: list[int] = field(default_factory=list)
    out: str | None = None
    format: str = "text"
    oracle_bound: int = DEFAULT_POLY_BOUND
    search_cap: int = DEFAULT_SEARCH_CAP
    range_bound: int = DEFAULT_RANGE_BOUND
    a: str | None = None
    b: str | None = None
    list_members: bool = False
    kind: str | None = None
    limit: int = 100
    p: int | None = None
    chunk_size: int = 10**5
    workers: int = 1


def parse_int(text: str, flag: str = "value") -> int:
    """Parse an integer, allowing exact scientific notation such as '1e6'."""
    s = text.strip().replace("_", "")
    try:
        return int(s)
    except ValueError:
        pass
    try:
        d = Decimal(s)
    except InvalidOperation:
        raise UsageError(f"{flag}: malformed number {text!r}") from None
    if d != d.to_integral_value():
        raise UsageError(f"{flag}: {text!r} is not an integer")
    return int(d)


def parse_factored(text: str) -> FactoredInteger:
    """Either a plain integer or a product like '3^2*5*17'."""
    if "*" in text or "^" in text:
        pairs = []
        for part in text.split("*"):
            base, _, exp = part.partition("^")
            p = parse_int(base, "n")
            e = parse_int(exp, "n") if exp else 1
            if not is_prime(p):
                raise UsageError(f"n: {p} is not prime")
            pairs.append((p, e))
        return FactoredInteger.from_factors(pairs)
    n = parse_int(text, "n")
    if n < 1:
        raise UsageError(f"n: must be positive, got {n}")
    return factorize(n)


def parse_primes(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        if not tok.strip():
            continue
        p = parse_int(tok, "--primes")
        if not is_prime(p):
            raise UsageError(f"--primes: {p} is not prime")
        out.append(p)
    if not out:
        raise UsageError("--primes: empty list")
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="phipractical", description="Practical-number families of x^n - 1: classify, count, verify.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="classify one integer, print a JSON record")
    c.add_argument("n", help="integer, or a factored product such as 3^2*5*17")
    c.add_argument("--primes", default="2", help="comma-separated primes for the p-practical columns (default 2)")
    c.add_argument("--format", choices=("json", "text"), default="json")

    c = sub.add_parser("count", help="cumulative class counts at checkpoints, as CSV")
    c.add_argument("--max", required=True, help="upper end X of the range [1, X]")
    c.add_argument("--classes", default="phi,lambda", help="phi,lambda,practical,weak,2dense,strict2dense,p:<prime>")
    c.add_argument("--checkpoints", help="comma-separated X values (default: powers of 10 and --max)")
    c.add_argument("--out", help="write CSV here instead of stdout")
    c.add_argument("--chunk", default="1e5", help="chunk size for the sweep")
    c.add_argument("--workers", type=int, default=1, help="worker processes")

    c = sub.add_parser("diff", help="count n <= X in class A but not in class B")
    c.add_argument("--max", required=True)
    c.add_argument("--a", required=True, help="class name, e.g. lambda")
    c.add_argument("--b", required=True, help="class name, e.g. phi")
    c.add_argument("--list", action="store_true", help="also print the members (capped)")
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.add_argument("--workers", type=int, default=1)

    c = sub.add_parser("witness", help="prime p with ell*_p(d) = lambda(d) for all d | n")
    c.add_argument("n")
    c.add_argument("--cap", help="search cap for p (default 1e7)")
    c.add_argument("--format", choices=("json", "text"), default="text")

    c = sub.add_parser("oracle", help="compare DDF factor degrees with the order-based multiset")
    c.add_argument("--max", required=True)
    c.add_argument("--primes", default="2,3,5,7,13")
    c.add_argument("--bound", help="polynomial oracle bound on n (default 2048)")

    c = sub.add_parser("construct", help="generate and verify a construction family")
    c.add_argument("kind", choices=FAMILY_KINDS)
    c.add_argument("--limit", default="100", help="bound on appended primes (or on k for lemma63)")
    c.add_argument("--p", help="prime parameter for lemma63 / prop62_podd")
    return ap


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return parse_int(raw, name) if raw else default


def parse_args(argv: Sequence[str]) -> RunConfig:
    ns = _build_parser().parse_args(list(argv))
    cfg = RunConfig(
        subcommand=ns.subcommand,
        oracle_bound=_env_int("PHIPRACTICAL_ORACLE_BOUND", DEFAULT_POLY_BOUND),
        search_cap=_env_int("PHIPRACTICAL_SEARCH_CAP", DEFAULT_SEARCH_CAP),
    )
    if ns.verbose:
        logging.basicConfig(level=logging.INFO, format="%(message)s")
    sc = ns.subcommand
    if sc in ("classify", "witness"):
        cfg.n = parse_factored(ns.n)
        cfg.format = ns.format
    if sc == "classify":
        cfg.primes = parse_primes(ns.primes)
    if sc == "witness" and ns.cap:
        cfg.search_cap = parse_int(ns.cap, "--cap")
    if sc in ("count", "diff", "oracle"):
        cfg.max = parse_int(ns.max, "--max")
        if cfg.max < 1:
            raise UsageError("--max: must be positive")
    if sc == "count":
        try:
            cfg.classes = validate_classes(c.strip() for c in ns.classes.split(",") if c.strip())
        except ValueError as exc:
            raise UsageError(f"--classes: {exc}") from None
        if ns.checkpoints:
            pts = [parse_int(t, "--checkpoints") for t in ns.checkpoints.split(",") if t.strip()]
            if pts != sorted(pts) or len(set(pts)) != len(pts):
                raise UsageError("--checkpoints: must be strictly ascending")
            if pts[0] < 1 or pts[-1] > cfg.max:
                raise UsageError(f"--checkpoints: must lie in [1, {cfg.max}]")
            cfg.checkpoints = pts
        else:
            cfg.checkpoints = default_checkpoints(cfg.max)
        cfg.out = ns.out
        cfg.format = "csv"
        cfg.chunk_size = parse_int(ns.chunk, "--chunk")
        cfg.workers = ns.workers
    if sc == "diff":
        try:
            validate_classes([ns.a, ns.b])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        cfg.a, cfg.b = ns.a, ns.b
        cfg.list_members = ns.list
        cfg.format = ns.format
        cfg.workers = ns.workers
    if sc == "oracle":
        cfg.primes = parse_primes(ns.primes)
        if ns.bound:
            cfg.oracle_bound = parse_int(ns.bound, "--bound")
    if sc == "construct":
        cfg.kind = ns.kind
        cfg.limit = parse_int(ns.limit, "--limit")
        if ns.p:
            cfg.p = parse_int(ns.p, "--p")
            if not is_prime(cfg.p):
                raise UsageError(f"--p: {cfg.p} is not prime")
        if cfg.kind == "lemma63" and cfg.p is None:
            raise UsageError("lemma63 needs --p")
        cfg.format = "json"
    if cfg.workers < 1:
        raise UsageError("--workers: must be at least 1")
    return cfg


def _emit(text: str, path: str | None = None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_oracle(cfg: RunConfig) -> int:
    mismatches = []
    checked = 0
    for p in cfg.primes:
        for n in range(1, cfg.max + 1):
            ddf = factor_degrees(n, p, bound=cfg.oracle_bound)
            fast = p_multiset(n, p)
            checked += 1
            if ddf != fast:
                mismatches.append({"n": n, "p": p, "kind": "degrees", "ddf": str(ddf), "orders": str(fast)})
            elif covers_all_bitset(ddf) != is_p_practical(n, p):
                mismatches.append({"n": n, "p": p, "kind": "coverage"})
        log.info("p = %d done", p)
    status = "PASS" if not mismatches else "FAIL"
    print(f"oracle {status}: {checked} (n, p) pairs, n <= {cfg.max}, p in {cfg.primes}, {len(mismatches)} mismatches")
    for m in mismatches:
        print(json.dumps(m))
    return EXIT_OK if not mismatches else EXIT_MISMATCH


def run(cfg: RunConfig) -> int:
    sc = cfg.subcommand
    if sc == "classify":
        rec = classify(cfg.n, cfg.primes)
        if cfg.format == "json":
            _emit(rec.to_json() + "\n")
        else:
            for k, v in rec.to_dict().items():
                print(f"{k:>22}: {v}")
        return EXIT_OK
    if sc == "count":
        table = count_classes(
            cfg.max, cfg.classes, cfg.checkpoints, chunk_size=cfg.chunk_size, workers=cfg.workers, range_bound=cfg.range_bound
        )
        _emit(table.to_csv(), cfg.out)
        return EXIT_OK
    if sc == "diff":
        res = diff_count(cfg.max, cfg.a, cfg.b, with_members=cfg.list_members, workers=cfg.workers, range_bound=cfg.range_bound)
        if cfg.format == "json":
            _emit(json.dumps({"X": res.X, "a": res.a, "b": res.b, "count": res.count, "members": res.members}) + "\n")
        else:
            print(f"#{{n <= {res.X} : n in {res.a}, n not in {res.b}}} = {res.count}")
            if res.members is not None:
                print(" ".join(map(str, res.members)))
        return EXIT_OK
    if sc == "witness":
        w = lambda_witness(cfg.n, cfg.search_cap)
        if cfg.format == "json":
            _emit(json.dumps({"n": str(w.n.value), "p": w.p, "table": [list(r) for r in w.table]}) + "\n")
        else:
            print(w.format_table())
        return EXIT_OK
    if sc == "oracle":
        return _run_oracle(cfg)
    if sc == "construct":
        members = construct_family(FamilySpec(cfg.kind, cfg.limit, cfg.p))
        for m in members:
            print(json.dumps(m.to_dict()))
        return EXIT_OK if all(m.agrees for m in members) else EXIT_MISMATCH
    raise UsageError(f"unknown subcommand {sc!r}")


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
        return run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, CapExceeded, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
