"""High-precision zeta on the real axis and the constants rho, zeta'(rho), K.

zeta and zeta' are evaluated by Euler-Maclaurin summation.  With f(x) = x^-s,

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_{j=1..M} B_2j/(2j)! * (s)_(2j-1) * N^(-s-2j+1) + R,

where (s)_m is the rising factorial.  Using |B~_(2M+1)(x)| <= 2 zeta(2M+1) (2M+1)!/(2 pi)^(2M+1)
the remainder obeys

    |R| <= 2.5 (s)_(2M+1) N^(-s-2M) / ((2 pi)^(2M+1) (s+2M)),

and differentiating the remainder integral in s multiplies that bound by
(H + log N + 1/(s+2M)) with H = sum_{i<=2M} 1/(s+i).  Both bounds are reported
alongside the values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

_GUARD_DIGITS = 15


@dataclass(frozen=True)
class PrecisionContext:
    working_digits: int = 40

    def __post_init__(self):
        if self.working_digits < 20:
            raise ValueError("working_digits must be >= 20")


@dataclass(frozen=True)
class Constants:
    rho: mpf
    zeta_prime_at_rho: mpf
    kalmar_K: mpf
    certified_digits: int
    working_digits: int
    rho_radius: mpf  # |rho - true root| <= rho_radius
    K_radius: mpf  # |kalmar_K - true K| <= K_radius

    def rho_bounds(self) -> tuple[float, float]:
        """Float interval guaranteed to contain the true rho."""
        with mp.workdps(self.working_digits + _GUARD_DIGITS):
            return _float_down(self.rho - self.rho_radius), _float_up(self.rho + self.rho_radius)

    def two_K_bounds(self) -> tuple[float, float]:
        """Float interval containing -2/(rho zeta'(rho))."""
        with mp.workdps(self.working_digits + _GUARD_DIGITS):
            return _float_down(2 * (self.kalmar_K - self.K_radius)), _float_up(2 * (self.kalmar_K + self.K_radius))

    def as_json(self) -> dict:
        digits = self.working_digits
        return {
            "rho": mpmath.nstr(self.rho, digits, strip_zeros=False),
            "zeta_prime_at_rho": mpmath.nstr(self.zeta_prime_at_rho, digits, strip_zeros=False),
            "kalmar_K": mpmath.nstr(self.kalmar_K, digits, strip_zeros=False),
            "certified_digits": self.certified_digits,
            "working_digits": digits,
            "rho_radius": mpmath.nstr(self.rho_radius, 5),
            "K_radius": mpmath.nstr(self.K_radius, 5),
        }


def _float_down(x) -> float:
    f = float(x)
    return f if mpf(f) <= x else math.nextafter(f, -math.inf)


def _float_up(x) -> float:
    f = float(x)
    return f if mpf(f) >= x else math.nextafter(f, math.inf)


def _check_domain(s) -> mpf:
    s = mpf(s)
    if s <= 1 + mpf("1e-6"):
        raise ValueError(f"zeta evaluated at s={mpmath.nstr(s, 10)}; need s > 1 + 1e-6")
    return s


def _plan(s: mpf, digits: int) -> tuple[int, int]:
    """Pick (N, M) so the derivative remainder bound is below 10^-(digits+5)."""
    target = mpf(10) ** (-(digits + 5))
    N = max(16, digits)
    while True:
        for M in range(1, 4 * N):
            if _remainder_bounds(s, N, M)[1] < target:
                return N, M
            # asymptotic terms stop shrinking once 2M + s ~ 2 pi N
            if 2 * M + s > 5 * N:
                break
        N *= 2


def _remainder_bounds(s: mpf, N: int, M: int) -> tuple[mpf, mpf]:
    m = 2 * M + 1
    rising = mpmath.rf(s, m)
    base = mpf("2.5") * rising * mpf(N) ** (-s - 2 * M) / ((2 * mpmath.pi) ** m * (s + 2 * M))
    harmonic = mpmath.fsum(1 / (s + i) for i in range(m))
    return base, base * (harmonic + mpmath.log(N) + 1 / (s + 2 * M))


def _em(s: mpf, digits: int, derivative: bool) -> tuple[mpf, mpf]:
    N, M = _plan(s, digits)
    logN = mpmath.log(N)
    if derivative:
        head = -mpmath.fsum(mpmath.log(n) * mpf(n) ** (-s) for n in range(2, N))
        NS = mpf(N) ** (1 - s)
        total = head - logN * NS / (s - 1) - NS / (s - 1) ** 2 - logN * mpf(N) ** (-s) / 2
    else:
        total = mpmath.fsum(mpf(n) ** (-s) for n in range(1, N))
        total += mpf(N) ** (1 - s) / (s - 1) + mpf(N) ** (-s) / 2
    rising = s  # (s)_(2j-1)
    harm = 1 / s  # d/ds log (s)_(2j-1)
    for j in range(1, M + 1):
        if j > 1:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
            harm += 1 / (s + 2 * j - 3) + 1 / (s + 2 * j - 2)
        coeff = mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j)
        term = coeff * rising * mpf(N) ** (-s - 2 * j + 1)
        total += term * (harm - logN) if derivative else term
    r0, r1 = _remainder_bounds(s, N, M)
    return total, (r1 if derivative else r0)


def zeta_with_error(s, ctx: PrecisionContext = PrecisionContext()) -> tuple[mpf, mpf]:
    with mp.workdps(ctx.working_digits + _GUARD_DIGITS):
        s = _check_domain(s)
        val, err = _em(s, ctx.working_digits, derivative=False)
        return +val, err + mpf(10) ** (-(ctx.working_digits + 10))


def zeta_prime_with_error(s, ctx: PrecisionContext = PrecisionContext()) -> tuple[mpf, mpf]:
    with mp.workdps(ctx.working_digits + _GUARD_DIGITS):
        s = _check_domain(s)
        val, err = _em(s, ctx.working_digits, derivative=True)
        return +val, err + mpf(10) ** (-(ctx.working_digits + 10))


def zeta(s, ctx: PrecisionContext = PrecisionContext()) -> mpf:
    return zeta_with_error(s, ctx)[0]


def zeta_prime(s, ctx: PrecisionContext = PrecisionContext()) -> mpf:
    return zeta_prime_with_error(s, ctx)[0]


@lru_cache(maxsize=8)
def solve_rho(ctx: PrecisionContext = PrecisionContext()) -> Constants:
    """Root of zeta(s) = 2 on (1.5, 2): bisection to width 1e-3, then Newton."""
    D = ctx.working_digits
    with mp.workdps(D + _GUARD_DIGITS):
        lo, hi = mpf("1.5"), mpf("2.0")
        if not (zeta(lo, ctx) > 2 > zeta(hi, ctx)):
            raise RuntimeError("zeta(s) - 2 shows no sign change on [1.5, 2]")
        while hi - lo > mpf("1e-3"):
            mid = (lo + hi) / 2
            if zeta(mid, ctx) > 2:
                lo = mid
            else:
                hi = mid
        s = (lo + hi) / 2
        tol = mpf(10) ** (-(D + 3))
        for _ in range(200):
            step = (zeta(s, ctx) - 2) / zeta_prime(s, ctx)
            s -= step
            if abs(step) < tol:
                break
        else:
            raise RuntimeError("Newton iteration for rho did not converge")

        z, z_err = zeta_with_error(s, ctx)
        zp, zp_err = zeta_prime_with_error(s, ctx)
        residual = abs(z - 2) + z_err
        certified = min(D, int(mpmath.floor(-mpmath.log10(residual))))

        # zeta' is increasing on (1, oo), so |zeta'| >= |zeta'(1.74)| on [rho, 1.74]
        zp_right, zp_right_err = zeta_prime_with_error(mpf("1.74"), ctx)
        min_slope = abs(zp_right) - zp_right_err
        rho_radius = residual / min_slope
        # zeta'' is decreasing, so the secant slope on [1.71, 1.72] bounds it above on [1.72, 1.74]
        z2_bound = (zeta_prime(mpf("1.72"), ctx) - zeta_prime(mpf("1.71"), ctx)) / mpf("0.01") + 1
        dK_bound = (abs(zeta_prime(mpf("1.72"), ctx)) + mpf("1.74") * z2_bound) / (mpf("1.72") * min_slope) ** 2
        K = -1 / (s * zp)
        K_radius = dK_bound * rho_radius + 2 * K**2 * s * zp_err + mpf(10) ** (-D)
        consts = Constants(
            rho=+s,
            zeta_prime_at_rho=+zp,
            kalmar_K=+K,
            certified_digits=certified,
            working_digits=D,
            rho_radius=+rho_radius,
            K_radius=+K_radius,
        )
    if not (mpf("1.72") < consts.rho < mpf("1.74")) or consts.zeta_prime_at_rho >= 0:
        raise RuntimeError("rho solve produced an out-of-range constant")
    return consts


def power_tail_bracket(s, D: int) -> tuple[mpf, mpf]:
    """Bracket sum_{d>D} d^-s via the integral plus endpoint corrections.

    All even derivatives of x^-s are positive, so successive Euler-Maclaurin
    truncations alternate around the true tail; the truncations after the B2
    and B4 corrections give the bracket.
    """
    s = mpf(s)
    N = mpf(D + 1)
    base = N ** (1 - s) / (s - 1) + N ** (-s) / 2 + s * N ** (-s - 1) / 12
    corr = s * (s + 1) * (s + 2) * N ** (-s - 3) / 720
    return base - corr, base


def integral_tail_bracket(s, D: int) -> tuple[mpf, mpf]:
    """Crude bracket [int_{D+1}^oo, int_D^oo] of x^-s for sum_{d>D} d^-s."""
    s = mpf(s)
    return mpf(D + 1) ** (1 - s) / (s - 1), mpf(D) ** (1 - s) / (s - 1)


def bracket_zeta_minus_one(consts: Constants, D: int = 10_000, crude: bool = False) -> tuple[mpf, mpf]:
    """Certified bracket of sum_{d>=2} d^-rho from a partial sum plus tail bounds.

    Independent of ``zeta``; the bracket should contain 1.
    """
    with mp.workdps(consts.working_digits + _GUARD_DIGITS):
        rho = consts.rho
        partial = mpmath.fsum(mpf(d) ** (-rho) for d in range(2, D + 1))
        tail_lo, tail_hi = (integral_tail_bracket if crude else power_tail_bracket)(rho, D)
        # d/drho of the full sum is -sum log d / d^rho, of size |zeta'(rho)| < 2
        slack = 2 * consts.rho_radius + mpf(10) ** (-(consts.working_digits + 5))
        return +(partial + tail_lo - slack), +(partial + tail_hi + slack)
