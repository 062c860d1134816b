"""Brute-force references that share no code with the package."""

from __future__ import annotations

from functools import lru_cache


def integer_partitions(n: int, largest: int | None = None):
    """All partitions of n as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def _is_chain(parts, distinct: bool) -> bool:
    for big, small in zip(parts, parts[1:]):
        if big % small or (distinct and big == small):
            return False
    return True


def brute_a(n: int) -> int:
    return sum(1 for p in integer_partitions(n) if _is_chain(p, True))


def brute_b(n: int) -> int:
    return sum(1 for p in integer_partitions(n) if _is_chain(p, True) and p[-1] != 1)


def brute_f(n: int) -> int:
    return sum(1 for p in integer_partitions(n) if _is_chain(p, False))


@lru_cache(maxsize=None)
def brute_g(n: int) -> int:
    if n == 1:
        return 1
    return sum(brute_g(n // d) for d in range(2, n + 1) if n % d == 0)


def trial_divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]
