"""Smallest-prime-factor sieve and divisor enumeration.

Memory: ``spf`` is an int32 array, 4 bytes per entry (40 MB at 10**7).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np


@dataclass(frozen=True)
class SpfSieve:
    limit: int
    spf: np.ndarray  # spf[n] for 2 <= n <= limit; entries 0, 1 unused

    def is_prime(self, n: int) -> bool:
        return n >= 2 and int(self.spf[n]) == n

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside sieve range [1, {self.limit}]")


def build_sieve(limit: int) -> SpfSieve:
    if limit < 2:
        raise ValueError("sieve limit must be >= 2")
    try:
        spf = np.zeros(limit + 1, dtype=np.int32)
    except MemoryError as exc:
        raise MemoryError(f"cannot allocate sieve of {limit + 1} int32 entries") from exc
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    spf.flags.writeable = False
    return SpfSieve(limit=limit, spf=spf)


def factorize(n: int, sieve: SpfSieve) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as ``[(p, e), ...]`` with increasing p."""
    sieve._check(n)
    out: list[tuple[int, int]] = []
    spf = sieve.spf
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def divisors(n: int, sieve: SpfSieve) -> list[int]:
    sieve._check(n)
    divs = [1]
    for p, e in factorize(n, sieve):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    divs.sort()
    return divs


def prime_signature(n: int, sieve: SpfSieve) -> tuple[int, ...]:
    return tuple(sorted((e for _, e in factorize(n, sieve)), reverse=True))
