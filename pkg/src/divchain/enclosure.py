"""Certified enclosures of the k-fold sums

    S_k(shift) = sum_{d_1..d_k >= 2} (shift + d_1 + d_1 d_2 + ... + d_1...d_k)^-rho

and of the constant c, which lies in [2K S_k(2), 2K S_k(1)] for every k.

Factoring out d_1 gives a one-variable recursion.  With

    F_0(t) = t^-rho,    F_m(t) = sum_{d>=2} d^-rho F_{m-1}(1 + t/d),

we have S_k(shift) = F_k(shift).  For t in [0, 2] every inner argument
1 + t/d lies in [1, 2].  So F_1..F_{k-1} are only ever needed on [1, 2], where
they are tabulated as certified lower/upper values on a uniform grid.

Every F_m is convex and decreasing.  Between grid nodes the upper bound is
the chord through the upper values.  The lower bound is the chord through
the lower values minus M (y-a)(b-y)/2, where M bounds F_m'' on [1, 2]:

    F_m'' <= (sum_{d>=2} d^(-rho-2)) * sup F_{m-1}'',   F_0'' <= rho (rho + 1),
    |F_m'| <= (sum_{d>=2} d^(-rho-1)) * sup |F_{m-1}'|,  |F_0'| <= rho.

Truncating the outer sum at D leaves sum_{d>D} d^-rho F(1 + t/d).  That tail
lies in [F(1) T0 - t |F'| T1, F(1) T0], where T0 and T1 are power tails
bracketed by Euler-Maclaurin.  Every term decreases in rho, so lower
bounds use the top of the rho interval and upper bounds the bottom.
Float rounding is covered by explicit relative and absolute slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .reals import Constants

_U = 2.0**-52
_ABS_SLACK = 64 * _U
MAX_K = 8
MAX_WORK = 4 * 10**8  # grid points x outer terms per level


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


@dataclass(frozen=True)
class CertifiedInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def as_json(self) -> dict:
        return {"lo": repr(self.lo), "hi": repr(self.hi)}


@dataclass(frozen=True)
class NestedSumQuery:
    k: int
    shift: int
    eps: float = 1e-4
    max_k: int = MAX_K

    def __post_init__(self):
        if not 1 <= self.k <= self.max_k:
            raise ValueError(f"k must be in [1, {self.max_k}]")
        if self.shift not in (0, 1, 2):
            raise ValueError("shift must be 0, 1 or 2")
        if not self.eps >= 1e-12:
            raise ValueError("eps must be >= 1e-12")


@dataclass(frozen=True)
class CBoundsResult:
    k: int
    eps: float
    S_lower: CertifiedInterval  # shift 2
    S_upper: CertifiedInterval  # shift 1
    c_lo: float
    c_hi: float

    def as_json(self) -> dict:
        return {
            "k": self.k,
            "eps": repr(self.eps),
            "S_lower": self.S_lower.as_json(),
            "S_upper": self.S_upper.as_json(),
            "c_lo": repr(self.c_lo),
            "c_hi": repr(self.c_hi),
        }


def _down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _up(x: float) -> float:
    return math.nextafter(x, math.inf)


def _tail_bracket(s: float, D: int) -> tuple[float, float]:
    """Float bracket of sum_{d>D} d^-s (see reals.power_tail_bracket)."""
    N = float(D + 1)
    base = N ** (1 - s) / (s - 1) + N**-s / 2 + s * N ** (-s - 1) / 12
    corr = s * (s + 1) * (s + 2) * N ** (-s - 3) / 720
    return (base - corr) * (1 - 16 * _U), base * (1 + 16 * _U)


def _zeta_minus_one_upper(s: float) -> float:
    # 2^-s + 3^-s + int_3^oo x^-s dx
    return (2.0**-s + 3.0**-s + 3.0 ** (1 - s) / (s - 1)) * (1 + 16 * _U)


class _Level:
    """Certified bounds for F_m on [1, 2]."""

    def __init__(self, m: int, second_deriv: float, first_deriv: float):
        self.m = m
        self.M = second_deriv
        self.B1 = first_deriv

    def bounds(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def at_one(self) -> tuple[float, float]:
        lo, hi = self.bounds(np.array([1.0]))
        return float(lo[0]), float(hi[0])


class _PowerLevel(_Level):
    def __init__(self, rho_lo: float, rho_hi: float):
        super().__init__(0, rho_hi * (rho_hi + 1), rho_hi)
        self.rho_lo, self.rho_hi = rho_lo, rho_hi

    def bounds(self, y):
        return y ** (-self.rho_hi) * (1 - 4 * _U), y ** (-self.rho_lo) * (1 + 4 * _U)


class _GridLevel(_Level):
    def __init__(self, m, second_deriv, first_deriv, cells: int, lo: np.ndarray, hi: np.ndarray):
        super().__init__(m, second_deriv, first_deriv)
        self.cells = cells
        self.lo, self.hi = lo, hi

    def bounds(self, y):
        G = self.cells
        i = np.clip(np.floor((y - 1.0) * G).astype(np.int64), 0, G - 1)
        a = 1.0 + i / G
        lam = np.clip((y - a) * G, 0.0, 1.0)
        L0, L1 = self.lo[i], self.lo[i + 1]
        H0, H1 = self.hi[i], self.hi[i + 1]
        hi = np.minimum((1 - lam) * H0 + lam * H1, H0)
        gap = (lam / G) * ((1 - lam) / G)  # (y - a)(b - y)
        lo = np.maximum((1 - lam) * L0 + lam * L1 - 0.5 * self.M * gap, L1)
        return np.maximum(lo - _ABS_SLACK, 0.0), hi + _ABS_SLACK


class NestedSumEngine:
    """Shared F_1..F_{k_max-1} tables; evaluates S_k(shift) for any k <= k_max."""

    def __init__(self, constants: Constants, eps: float = 1e-4, k_max: int = 5, cells: int | None = None,
                 terms: int | None = None):
        if not 1 <= k_max <= MAX_K:
            raise ValueError(f"k_max must be in [1, {MAX_K}]")
        self.eps = eps
        self.k_max = k_max
        self.rho_lo, self.rho_hi = constants.rho_bounds()
        rho = self.rho_lo
        self._z1 = _zeta_minus_one_upper(rho + 1)
        self._z2 = _zeta_minus_one_upper(rho + 2)

        # truncation gets 90% of eps, split evenly between grid error and outer tails per level
        share = 0.45 * eps / k_max
        m_grid = self._z2 * self.rho_hi * (self.rho_hi + 1)
        if cells is None:
            cells = 1 << max(4, math.ceil(math.log2(math.sqrt(m_grid / (8 * share)))))
        if terms is None:
            # tail width ~ |F'| t T1 <= rho * 2 * D^-rho / rho
            terms = max(64, math.ceil((2 / share) ** (1 / rho)))
        self.cells, self.terms = cells, terms
        if k_max > 1 and (cells + 1) * terms > MAX_WORK:
            raise BudgetExceeded(
                f"eps={eps:g} needs a {cells}-cell grid with {terms} terms per level (work cap {MAX_WORK})",
                achieved=math.nan,
            )
        d = np.arange(2, terms + 1, dtype=np.float64)
        self._w_lo = d ** (-self.rho_hi) * (1 - 4 * _U)
        self._w_hi = d ** (-self.rho_lo) * (1 + 4 * _U)
        self._d = d
        self._T0 = (_tail_bracket(self.rho_hi, terms)[0], _tail_bracket(self.rho_lo, terms)[1])
        self._T1 = _tail_bracket(self.rho_lo + 1, terms)[1]
        self._sum_rel = (terms + 8) * _U

        self.levels: list[_Level] = [_PowerLevel(self.rho_lo, self.rho_hi)]
        grid = 1.0 + np.arange(cells + 1, dtype=np.float64) / cells
        for m in range(1, k_max):
            prev = self.levels[-1]
            lo, hi = self._step(prev, grid)
            self.levels.append(_GridLevel(m, self._z2 * prev.M, self._z1 * prev.B1, cells, lo, hi))

    def _step(self, prev: _Level, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Bounds for sum_{d>=2} d^-rho prev(1 + t/d) at each t in [0, 2]."""
        out_lo = np.empty_like(t)
        out_hi = np.empty_like(t)
        rows = max(1, 2_000_000 // len(self._d))
        for start in range(0, len(t), rows):
            tt = t[start : start + rows]
            y = np.clip(1.0 + tt[:, None] / self._d[None, :], 1.0, 2.0)
            L, H = prev.bounds(y)
            out_lo[start : start + rows] = (L @ self._w_lo) * (1 - self._sum_rel)
            out_hi[start : start + rows] = (H @ self._w_hi) * (1 + self._sum_rel)
        F1_lo, F1_hi = prev.at_one()
        tail_lo = F1_lo * self._T0[0] - prev.B1 * t * self._T1
        tail_hi = F1_hi * self._T0[1]
        # argument rounding (relative 2u on y) moves F by at most B1 * 4u per term
        slack = _ABS_SLACK + 8 * prev.B1 * _U
        lo = np.maximum((out_lo + tail_lo) * (1 - 4 * _U) - slack, 0.0)
        hi = (out_hi + tail_hi) * (1 + 4 * _U) + slack
        return lo, hi

    def sum(self, k: int, shift: int) -> CertifiedInterval:
        if not 1 <= k <= self.k_max:
            raise ValueError(f"k must be in [1, {self.k_max}]")
        lo, hi = self._step(self.levels[k - 1], np.array([float(shift)]))
        return CertifiedInterval(float(lo[0]), float(hi[0]))


def rounding_slack(k: int) -> float:
    """Upper bound on the float-rounding share of an interval width."""
    return 64 * k * _ABS_SLACK


def nested_sum(q: NestedSumQuery, constants: Constants, engine: NestedSumEngine | None = None) -> CertifiedInterval:
    engine = engine or NestedSumEngine(constants, q.eps, q.k)
    res = engine.sum(q.k, q.shift)
    if res.width > q.eps + rounding_slack(q.k):
        raise BudgetExceeded(f"achieved width {res.width:.3e} exceeds eps={q.eps:g}", achieved=res.width)
    return res


def c_enclosure(k: int, eps: float, constants: Constants, engine: NestedSumEngine | None = None) -> CBoundsResult:
    engine = engine or NestedSumEngine(constants, eps, k)
    S_lower = nested_sum(NestedSumQuery(k, 2, eps), constants, engine)
    S_upper = nested_sum(NestedSumQuery(k, 1, eps), constants, engine)
    two_k_lo, two_k_hi = constants.two_K_bounds()
    c_lo = _down(two_k_lo * S_lower.lo)
    c_hi = _up(two_k_hi * S_upper.hi)
    return CBoundsResult(k=k, eps=eps, S_lower=S_lower, S_upper=S_upper, c_lo=c_lo, c_hi=c_hi)


def c_estimate(k: int, eps: float, constants: Constants, engine: NestedSumEngine | None = None) -> CertifiedInterval:
    """2K times the shift-0 sum; approaches c from above as k grows, not an enclosure of c."""
    engine = engine or NestedSumEngine(constants, eps, k)
    S0 = nested_sum(NestedSumQuery(k, 0, eps), constants, engine)
    two_k_lo, two_k_hi = constants.two_K_bounds()
    return CertifiedInterval(_down(two_k_lo * S0.lo), _up(two_k_hi * S0.hi))
