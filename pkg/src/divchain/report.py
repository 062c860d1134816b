"""Asymptotic reports: empirical c, and the residual of log f(n) against its main terms."""

from __future__ import annotations

import math

from .reals import Constants
from .tables import CountTable, SummatoryTable

_LOG2 = math.log(2.0)
_LOGLOG2 = math.log(_LOG2)


def big_log(n: int) -> float:
    """Natural log of a positive integer from its bit length and top 64 bits."""
    if n <= 0:
        raise ValueError("log of non-positive integer")
    shift = max(n.bit_length() - 64, 0)
    return math.log(n >> shift) + shift * _LOG2


def decades(start: int, limit: int) -> list[int]:
    out, x = [], start
    while x <= limit:
        out.append(x)
        x *= 10
    return out


def empirical_c_rows(A: SummatoryTable, B: SummatoryTable, constants: Constants, start: int = 1000) -> list[tuple]:
    """Rows (x, A(x)/x^rho, 2B(x)/x^rho) at each decade up to the table limit."""
    rho = float(constants.rho)
    rows = []
    for x in decades(start, min(A.limit, B.limit)):
        scale = x**rho
        rows.append((x, float(A.cumulative[x]) / scale, 2.0 * float(B.cumulative[x]) / scale))
    return rows


def f_main_terms(n: int) -> tuple[float, float]:
    """(t, main) where main is the explicit part of the log f(n) asymptotic."""
    L = math.log(n)
    LL = math.log(L)
    u = L - LL
    main = (
        u * u / (2 * _LOG2)
        + (0.5 + (1 + _LOGLOG2) / _LOG2) * L
        - (1 + _LOGLOG2 / _LOG2) * LL
    )
    return u / _LOG2, main


def f_residual_rows(fT: CountTable, start: int = 5, stop: int | None = None, step: int = 1) -> list[tuple]:
    """Rows (n, t, R) with R = log f(n) - main terms, for start <= n <= stop.

    n <= 4 is excluded: log log n is close to zero there and t is not yet monotone.
    """
    stop = fT.limit if stop is None else min(stop, fT.limit)
    start = max(start, 5)
    rows = []
    for n in range(start, stop + 1, step):
        t, main = f_main_terms(n)
        rows.append((n, t, big_log(int(fT.values[n])) - main))
    return rows


def scan_rows_flat(scan: list[dict]) -> list[tuple]:
    out = []
    for row in scan:
        champ = row["g_champions"][-1] if row["g_champions"] else (None, None)
        out.append((row["from"], row["to"], row["b_min"], row["b_max"], row["a_min"], row["a_max"],
                    row["g_max"], row["g_argmax"], len(row["g_champions"]), champ[0], champ[1]))
    return out

