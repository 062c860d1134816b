"""Exact tables of g, b, a, f and their summatory functions.

    g(n)  ordered factorizations of n into factors >= 2, g(1) = 1
    b(n)  chain partitions of n into distinct parts, each dividing the previous,
          whose last part is not 1; b(0) = 1, b(1) = 0
    a(n)  the same without the last-part restriction, a(n) = b(n) + b(n-1)
    f(n)  chain partitions where equal parts are allowed

Recurrences (q = n/d):

    g(n) = sum_{d | n, d > 1} g(q)
    b(n) = sum_{d | n, d > 1} b(q - 1)
    f(n) = sum_{d | n}        f(q - 1)

All three are evaluated by pushing finished entries forward: for q ascending,
add the (already final) source entry into every multiple q*d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .reals import Constants
from .sieve import SpfSieve, build_sieve

Kind = Literal["g", "b", "a", "f"]

# g(n), b(n) <= n^rho and a(n) <= 2 n^rho, far below 2^63 up to this limit
FAST_PATH_LIMIT = 10**7


class CountOverflowError(OverflowError):
    pass


class VerificationFailure(AssertionError):
    def __init__(self, message: str, n: int | None = None):
        super().__init__(message)
        self.n = n


@dataclass(frozen=True)
class CountTable:
    kind: Kind
    limit: int
    values: np.ndarray  # int64, or object (Python ints) in big-integer mode

    def __getitem__(self, n):
        return self.values[n]

    @property
    def exact(self) -> bool:
        return self.values.dtype == object


@dataclass(frozen=True)
class SummatoryTable:
    kind: Kind
    limit: int
    cumulative: np.ndarray  # cumulative[x] = sum_{1 <= n <= x} values[n]

    def __getitem__(self, x):
        return self.cumulative[x]


def _alloc(limit: int, exact: bool) -> np.ndarray:
    if exact:
        return np.zeros(limit + 1, dtype=object)
    if limit > FAST_PATH_LIMIT:
        raise CountOverflowError(
            f"limit {limit} exceeds the int64 fast path ({FAST_PATH_LIMIT}); rerun in big-integer mode (--exact / exact=True)"
        )
    return np.zeros(limit + 1, dtype=np.int64)


def _check_nonnegative(values: np.ndarray, kind: str) -> None:
    if values.dtype != object and values.size and values.min() < 0:
        raise CountOverflowError(f"{kind}-table wrapped around in int64; rerun in big-integer mode (--exact / exact=True)")


def g_table(limit: int, exact: bool = False) -> CountTable:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    v = _alloc(limit, exact)
    v[1] = 1
    for q in range(1, limit // 2 + 1):
        src = v[q]
        if src:
            v[2 * q :: q] += src
    _check_nonnegative(v, "g")
    return CountTable("g", limit, v)


def b_table(limit: int, exact: bool = False) -> CountTable:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    v = _alloc(limit, exact)
    v[0] = 1
    for q in range(1, limit // 2 + 1):
        src = v[q - 1]
        if src:
            v[2 * q :: q] += src
    _check_nonnegative(v, "b")
    return CountTable("b", limit, v)


def a_table(limit: int, exact: bool = False, b: CountTable | None = None) -> CountTable:
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if b is None or b.limit < limit:
        b = b_table(limit, exact)
    bv = b.values[: limit + 1]
    v = np.empty_like(bv)
    v[0] = 1
    v[1:] = bv[1:] + bv[:-1]
    _check_nonnegative(v, "a")
    return CountTable("a", limit, v)


def f_table(limit: int) -> CountTable:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    v = np.zeros(limit + 1, dtype=object)
    v[0] = 1
    for q in range(1, limit + 1):
        # v[q - 1] is final: its sources are the divisors of q - 1
        v[q::q] += v[q - 1]
    return CountTable("f", limit, v)


def summatory(table: CountTable) -> SummatoryTable:
    cum = table.values.copy()
    cum[0] = 0
    # float total decides overflow before int64 wraps
    if cum.dtype != object and float(np.sum(cum, dtype=np.float64)) >= 2.0**63 * (1 - 1e-12):
        raise CountOverflowError(f"summatory {table.kind.upper()} overflowed int64; use big-integer mode")
    cum = np.cumsum(cum)
    return SummatoryTable(table.kind, table.limit, cum)


def _powers(limit: int, exponent: float) -> np.ndarray:
    n = np.arange(limit + 1, dtype=np.float64)
    return n**exponent


def verify_power_bounds(gT: CountTable, bT: CountTable, aT: CountTable, constants: Constants) -> dict:
    """Check g(n) <= n^rho, b(n) <= n^rho, a(n) <= 2 n^rho on 1..limit.

    Raises VerificationFailure with the first offending n.
    """
    if not gT.limit == bT.limit == aT.limit:
        raise ValueError("tables must share a limit")
    N = gT.limit
    # the smallest rho consistent with the certified radius makes the check strictest
    rho = constants.rho_bounds()[0]
    denom = _powers(N, rho)[1:]
    report = {}
    for name, table, scale in (("g", gT, 1.0), ("b", bT, 1.0), ("a", aT, 2.0)):
        ratio = table.values[1:].astype(np.float64) / (scale * denom)
        bad = np.flatnonzero(ratio > 1.0)
        if bad.size:
            n = int(bad[0]) + 1
            raise VerificationFailure(f"{name}({n}) = {table.values[n]} exceeds {scale:g}*n^rho", n)
        i = int(np.argmax(ratio))
        report[name] = {"max_ratio": float(ratio[i]), "argmax": i + 1}
    return report


def check_sandwich(G: SummatoryTable, B: SummatoryTable) -> None:
    """G(floor(x/2)) <= B(x) <= G(x) for every 1 <= x <= limit."""
    N = min(G.limit, B.limit)
    x = np.arange(1, N + 1)
    Gc, Bc = G.cumulative, B.cumulative
    lower_ok = Gc[x // 2] <= Bc[x]
    upper_ok = Bc[x] <= Gc[x]
    bad = np.flatnonzero(~(lower_ok & upper_ok))
    if bad.size:
        n = int(x[bad[0]])
        raise VerificationFailure(f"sandwich fails at x={n}: G(x/2)={Gc[n // 2]}, B(x)={Bc[n]}, G(x)={Gc[n]}", n)


def kalmar_ratios(G: SummatoryTable, constants: Constants, start: int = 10) -> list[tuple[int, float]]:
    """G(x) / (K x^rho) at x = start, 10*start, ... <= limit."""
    K, rho = float(constants.kalmar_K), float(constants.rho)
    rows = []
    x = start
    while x <= G.limit:
        rows.append((x, float(G.cumulative[x]) / (K * x**rho)))
        x *= 10
    return rows


def check_kalmar_window(G: SummatoryTable, constants: Constants, lo: int = 10**4, band=(0.5, 2.0)) -> tuple[float, float]:
    """Min and max of G(x)/(K x^rho) over lo <= x <= limit; fail outside ``band``."""
    K, rho = float(constants.kalmar_K), float(constants.rho)
    x = np.arange(lo, G.limit + 1, dtype=np.float64)
    ratio = G.cumulative[lo:].astype(np.float64) / (K * x**rho)
    rmin, rmax = float(ratio.min()), float(ratio.max())
    if rmin < band[0] or rmax > band[1]:
        i = int(np.argmin(ratio) if rmin < band[0] else np.argmax(ratio))
        raise VerificationFailure(f"Kalmar ratio {ratio[i]:.6f} at x={lo + i} outside {band}", lo + i)
    return rmin, rmax


def max_order_scan(
    gT: CountTable, bT: CountTable, aT: CountTable, constants: Constants, window: range | None = None,
    sieve: SpfSieve | None = None,
) -> list[dict]:
    """Per-decade extremes of b(n)/n^(rho-1) (composite n), a(n)/n^(rho-1), and g(n)/n^rho champions."""
    N = min(gT.limit, bT.limit, aT.limit)
    window = window or range(2, N + 1)
    if window.stop - 1 > N or window.start < 1:
        raise ValueError("window outside table limits")
    sieve = sieve or build_sieve(max(N, 2))
    rho = float(constants.rho)
    rows = []
    champion = 0.0
    lo = window.start
    decade_hi = 10
    while decade_hi <= lo:
        decade_hi *= 10
    while lo < window.stop:
        hi = min(decade_hi, window.stop)  # [lo, hi)
        n = np.arange(lo, hi)
        nf = n.astype(np.float64)
        composite = (sieve.spf[n] != n) & (n > 1)
        b_ratio = bT.values[lo:hi].astype(np.float64)[composite] / nf[composite] ** (rho - 1)
        a_ratio = aT.values[lo:hi].astype(np.float64) / nf ** (rho - 1)
        g_ratio = gT.values[lo:hi].astype(np.float64) / nf**rho
        running = np.maximum.accumulate(g_ratio)
        prev = np.concatenate(([champion], np.maximum(running[:-1], champion)))
        idx = np.flatnonzero(g_ratio > prev)
        champs = [(int(n[i]), float(g_ratio[i])) for i in idx]
        if champs:
            champion = champs[-1][1]
        rows.append(
            {
                "from": int(lo),
                "to": int(hi - 1),
                "b_min": float(b_ratio.min()) if b_ratio.size else math.nan,
                "b_max": float(b_ratio.max()) if b_ratio.size else math.nan,
                "a_min": float(a_ratio.min()),
                "a_max": float(a_ratio.max()),
                "g_max": float(g_ratio.max()),
                "g_argmax": int(n[int(np.argmax(g_ratio))]),
                "g_champions": champs,
            }
        )
        lo, decade_hi = hi, decade_hi * 10
    return rows


@dataclass(frozen=True)
class Discrepancy:
    rule: str
    n: int
    claimed: int
    actual: int


def audit_paper_recurrences(limit: int, truth: dict[str, list[int]] | None = None) -> list[Discrepancy]:
    """Compare the literal recurrences against enumeration counts for 2 <= n <= limit.

    Rules checked:
      ``b-base``: b(n) = sum_{d|n, d>1} b(n/d - 1) propagated from b(1) = 1 (and b(0) = 1).
      ``a-recurrence``: a(n) = sum_{d|n} a(n/d - 1), a(0) = 1, with true values on the right.
      ``b-corrected`` / ``a-corrected``: the shipped tables (b(1) = 0, a = b(n) + b(n-1)).
    """
    from .chains import count_chain_partitions

    if limit < 10:
        raise ValueError("audit limit must be >= 10")
    if truth is None:
        truth = {
            "a": [1] + [count_chain_partitions(n, distinct=True) for n in range(1, limit + 1)],
            "b": [1] + [count_chain_partitions(n, distinct=True, forbid_last_one=True) for n in range(1, limit + 1)],
        }
    true_a, true_b = truth["a"], truth["b"]
    out: list[Discrepancy] = []

    literal_b = [0] * (limit + 1)
    literal_b[0] = literal_b[1] = 1
    for q in range(1, limit // 2 + 1):
        for m in range(2 * q, limit + 1, q):
            literal_b[m] += literal_b[q - 1]
    for n in range(2, limit + 1):
        if literal_b[n] != true_b[n]:
            out.append(Discrepancy("b-base", n, literal_b[n], true_b[n]))

    for n in range(2, limit + 1):
        claimed = sum(true_a[n // d - 1] for d in range(1, n + 1) if n % d == 0)
        if claimed != true_a[n]:
            out.append(Discrepancy("a-recurrence", n, claimed, true_a[n]))

    bT = b_table(limit)
    aT = a_table(limit, b=bT)
    for n in range(2, limit + 1):
        if int(bT.values[n]) != true_b[n]:
            out.append(Discrepancy("b-corrected", n, int(bT.values[n]), true_b[n]))
        if int(aT.values[n]) != true_a[n]:
            out.append(Discrepancy("a-corrected", n, int(aT.values[n]), true_a[n]))
    return out
