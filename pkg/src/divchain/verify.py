"""Invariant suite behind ``divchain verify``.

Each check raises :class:`VerificationFailure` carrying the first counterexample.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import chains
from .reals import Constants
from .sieve import build_sieve, prime_signature
from .tables import (
    CountTable,
    VerificationFailure,
    a_table,
    b_table,
    check_kalmar_window,
    check_sandwich,
    f_table,
    g_table,
    summatory,
    verify_power_bounds,
)


@dataclass
class TableSet:
    g: CountTable
    b: CountTable
    a: CountTable
    f: CountTable

    @classmethod
    def build(cls, limit: int, f_limit: int) -> "TableSet":
        b = b_table(limit)
        return cls(g=g_table(limit), b=b, a=a_table(limit, b=b), f=f_table(f_limit))


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    counterexample: int | None = field(default=None)


def check_oracle_equivalence(tables: TableSet, upto: int = 300) -> str:
    for n in range(1, upto + 1):
        expected = {
            "g": len(chains.enum_ordered_factorizations(n)),
            "a": chains.count_chain_partitions(n, distinct=True),
            "b": chains.count_chain_partitions(n, distinct=True, forbid_last_one=True),
            "f": chains.count_chain_partitions(n, distinct=False),
        }
        for kind, want in expected.items():
            got = int(getattr(tables, kind).values[n])
            if got != want:
                raise VerificationFailure(f"{kind}({n}) table={got} enumeration={want}", n)
    return f"g, b, a, f match enumeration for n <= {upto}"


def check_bijection(upto: int = 200) -> str:
    for m in range(2, upto + 1):
        count = 0
        for p in chains.iter_chains_from(m):
            F = chains.to_factorization(p)
            if chains.to_partition(F) != p:
                raise VerificationFailure(f"round trip fails for partition {p.parts}", m)
            count += 1
        facs = chains.enum_ordered_factorizations(m)
        for F in facs:
            if chains.to_factorization(chains.to_partition(F)) != F:
                raise VerificationFailure(f"round trip fails for factorization {F.factors}", m)
        if count != len(facs):
            raise VerificationFailure(f"{count} chains with largest part {m} but g({m}) = {len(facs)}", m)
    return f"round trips and largest-part law hold for m <= {upto}"


def check_prime_powers(g: CountTable, max_exp: int = 20) -> str:
    for k in range(1, max_exp + 1):
        if 2**k > g.limit:
            break
        if int(g.values[2**k]) != 2 ** (k - 1):
            raise VerificationFailure(f"g(2^{k}) = {g.values[2**k]}, expected {2 ** (k - 1)}", 2**k)
    return f"g(2^k) = 2^(k-1) for 2^k <= {g.limit}"


def check_signature_invariance(g: CountTable, upto: int = 10**4) -> str:
    upto = min(upto, g.limit)
    sieve = build_sieve(max(upto, 2))
    seen: dict[tuple[int, ...], tuple[int, int]] = {}
    groups = defaultdict(int)
    for n in range(2, upto + 1):
        sig = prime_signature(n, sieve)
        value = int(g.values[n])
        groups[sig] += 1
        if sig in seen and seen[sig][1] != value:
            raise VerificationFailure(f"g({n}) = {value} but g({seen[sig][0]}) = {seen[sig][1]} (signature {sig})", n)
        seen.setdefault(sig, (n, value))
    return f"{len(groups)} prime signatures consistent on n <= {upto}"


def check_summatory_identity(a: CountTable, b: CountTable) -> str:
    """A(x) = B(x) + B(x-1) + b(0) for every x."""
    A, B = summatory(a).cumulative, summatory(b).cumulative
    N = min(a.limit, b.limit)
    bad = np.flatnonzero(A[1 : N + 1] != B[1 : N + 1] + B[:N] + 1)
    if bad.size:
        x = int(bad[0]) + 1
        raise VerificationFailure(f"A({x}) = {A[x]} but B(x) + B(x-1) + 1 = {B[x] + B[x - 1] + 1}", x)
    return f"A(x) = B(x) + B(x-1) + 1 for x <= {N}"


def _sandwich(G, B) -> str:
    check_sandwich(G, B)
    return f"G(x/2) <= B(x) <= G(x) for x <= {min(G.limit, B.limit)}"


def run_suite(tables: TableSet, constants: Constants, oracle_upto: int = 300,
              bijection_upto: int = 200) -> list[CheckResult]:
    G, B = summatory(tables.g), summatory(tables.b)
    checks: list[tuple[str, Callable[[], str]]] = [
        ("oracle-equivalence", lambda: check_oracle_equivalence(tables, min(oracle_upto, tables.f.limit, tables.g.limit))),
        ("sandwich", lambda: _sandwich(G, B)),
        ("power-bounds", lambda: str(verify_power_bounds(tables.g, tables.b, tables.a, constants))),
        ("bijection", lambda: check_bijection(bijection_upto)),
        ("prime-powers", lambda: check_prime_powers(tables.g)),
        ("signature", lambda: check_signature_invariance(tables.g)),
        ("summatory-identity", lambda: check_summatory_identity(tables.a, tables.b)),
    ]
    if tables.g.limit >= 10**4:
        checks.append(
            ("kalmar-window", lambda: "G/(K x^rho) in [%.4f, %.4f]" % check_kalmar_window(G, constants))
        )
    results = []
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            detail = fn()
            results.append(CheckResult(name, True, detail, time.perf_counter() - t0))
        except VerificationFailure as exc:
            results.append(CheckResult(name, False, str(exc), time.perf_counter() - t0, exc.n))
    return results
