from math import prod

import pytest
from hypothesis import given, strategies as st

from divchain.sieve import build_sieve, divisors, factorize, prime_signature
from oracles import trial_divisors


@pytest.fixture(scope="module")
def sieve():
    return build_sieve(10_000)


def test_spf_small():
    s = build_sieve(10)
    assert {n: int(s.spf[n]) for n in range(2, 11)} == {2: 2, 3: 3, 4: 2, 5: 5, 6: 2, 7: 7, 8: 2, 9: 3, 10: 2}
    assert int(build_sieve(2).spf[2]) == 2
    assert int(build_sieve(100).spf[97]) == 97


def test_limit_below_two_rejected():
    with pytest.raises(ValueError):
        build_sieve(1)


def test_spf_invariants(sieve):
    for n in range(2, sieve.limit + 1):
        p = int(sieve.spf[n])
        assert n % p == 0
        assert all(p % q for q in range(2, int(p**0.5) + 1))
        assert all(n % q for q in range(2, p))


def test_factorize_examples(sieve):
    assert factorize(12, sieve) == [(2, 2), (3, 1)]
    assert factorize(1, sieve) == []
    assert factorize(97, sieve) == [(97, 1)]


def test_divisors_examples(sieve):
    assert divisors(12, sieve) == [1, 2, 3, 4, 6, 12]
    assert divisors(1, sieve) == [1]
    assert divisors(97, sieve) == [1, 97]


@pytest.mark.parametrize("fn", [factorize, divisors])
@pytest.mark.parametrize("n", [0, 10_001])
def test_out_of_range(sieve, fn, n):
    with pytest.raises(ValueError):
        fn(n, sieve)


def test_divisors_match_trial_division(sieve):
    for n in range(1, sieve.limit + 1):
        assert divisors(n, sieve) == trial_divisors(n)


@given(st.integers(1, 10_000))
def test_factorization_properties(sieve, n):
    s = sieve
    fac = factorize(n, s)
    assert prod(p**e for p, e in fac) == n
    assert [p for p, _ in fac] == sorted({p for p, _ in fac})
    assert len(divisors(n, s)) == prod(e + 1 for _, e in fac)


def test_signature(sieve):
    assert prime_signature(12, sieve) == (2, 1)
    assert prime_signature(18, sieve) == prime_signature(50, sieve)
    assert prime_signature(1, sieve) == ()

