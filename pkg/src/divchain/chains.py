"""Exhaustive enumeration of chain partitions and ordered factorizations.

A chain partition of n is n = a_1 + ... + a_k with a_{i+1} | a_i.  In
distinct mode every step is a proper divisor.  The map

    a_1 + ... + a_k  ->  (a_1/a_2)(a_2/a_3)...(a_{k-1}/a_k)(a_k)

sends distinct-mode partitions with last part > 1 bijectively onto ordered
factorizations of a_1; its inverse sends d_1...d_l to the partition with
parts d_1...d_l, d_2...d_l, ..., d_l.

These routines are test oracles and use plain trial division.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod
from typing import Callable, Iterator, NamedTuple


class ChainPartition(NamedTuple):
    parts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.parts)


class OrderedFactorization(NamedTuple):
    factors: tuple[int, ...]


@lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def _extend(prefix: list[int], remaining: int, distinct: bool, forbid_last_one: bool) -> Iterator[tuple[int, ...]]:
    if remaining == 0:
        if not (forbid_last_one and prefix[-1] == 1):
            yield tuple(prefix)
        return
    prev = prefix[-1]
    for d in _divisors(prev):
        if d > remaining:
            break
        if distinct and d == prev:
            continue
        prefix.append(d)
        yield from _extend(prefix, remaining - d, distinct, forbid_last_one)
        prefix.pop()


def iter_chain_partitions(n: int, distinct: bool = True, forbid_last_one: bool = False) -> Iterator[ChainPartition]:
    """Stream chain partitions of ``n`` in lexicographic order of their parts."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for first in range(1, n + 1):
        yield from (ChainPartition(p) for p in _extend([first], n - first, distinct, forbid_last_one))


def enum_chain_partitions(n: int, distinct: bool = True, forbid_last_one: bool = False) -> list[ChainPartition]:
    return list(iter_chain_partitions(n, distinct, forbid_last_one))


def visit_chain_partitions(
    n: int, visit: Callable[[tuple[int, ...]], None], distinct: bool = True, forbid_last_one: bool = False
) -> None:
    for first in range(1, n + 1):
        for parts in _extend([first], n - first, distinct, forbid_last_one):
            visit(parts)


def count_chain_partitions(n: int, distinct: bool = True, forbid_last_one: bool = False) -> int:
    """Count by walking the enumeration tree, memoised on (previous part, remaining sum).

    Walks the same tree as :func:`iter_chain_partitions` without materialising
    leaves, which keeps repeats mode tractable (f(300) is about 6 million).
    """
    if n < 1:
        raise ValueError("n must be >= 1")

    @lru_cache(maxsize=None)
    def completions(prev: int, remaining: int) -> int:
        if remaining == 0:
            return 0 if (forbid_last_one and prev == 1) else 1
        total = 0
        for d in _divisors(prev):
            if d > remaining:
                break
            if distinct and d == prev:
                continue
            total += completions(d, remaining - d)
        return total

    return sum(completions(first, n - first) for first in range(1, n + 1))


def iter_chains_from(top: int) -> Iterator[ChainPartition]:
    """All distinct-mode chains with largest part ``top`` and last part > 1, any total."""

    def rec(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        prev = prefix[-1]
        if prev > 1:
            yield tuple(prefix)
        for d in _divisors(prev)[1:-1]:
            prefix.append(d)
            yield from rec(prefix)
            prefix.pop()

    if top < 2:
        return
    yield from (ChainPartition(p) for p in rec([top]))


def iter_ordered_factorizations(n: int) -> Iterator[OrderedFactorization]:
    if n < 1:
        raise ValueError("n must be >= 1")

    def rec(m: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if m == 1:
            yield tuple(prefix)
            return
        for d in _divisors(m)[1:]:
            prefix.append(d)
            yield from rec(m // d, prefix)
            prefix.pop()

    yield from (OrderedFactorization(f) for f in rec(n, []))


def enum_ordered_factorizations(n: int) -> list[OrderedFactorization]:
    return list(iter_ordered_factorizations(n))


def to_factorization(p: ChainPartition) -> OrderedFactorization:
    parts = tuple(p.parts) if isinstance(p, ChainPartition) else tuple(p)
    if not parts:
        raise ValueError("empty partition")
    if parts[-1] == 1:
        raise ValueError("last part must exceed 1")
    factors = []
    for big, small in zip(parts, parts[1:]):
        if big % small or big == small:
            raise ValueError(f"{small} is not a proper divisor of {big}")
        factors.append(big // small)
    factors.append(parts[-1])
    return OrderedFactorization(tuple(factors))


def to_partition(F: OrderedFactorization) -> ChainPartition:
    factors = tuple(F.factors) if isinstance(F, OrderedFactorization) else tuple(F)
    if not factors:
        raise ValueError("the empty factorization has no partition image")
    if any(d < 2 for d in factors):
        raise ValueError("factors must be >= 2")
    return ChainPartition(tuple(prod(factors[i:]) for i in range(len(factors))))
