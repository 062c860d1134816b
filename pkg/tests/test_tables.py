import math

import numpy as np
import pytest

from divchain.sieve import build_sieve, divisors, prime_signature
from divchain.tables import (
    CountOverflowError,
    CountTable,
    FAST_PATH_LIMIT,
    VerificationFailure,
    a_table,
    audit_paper_recurrences,
    b_table,
    check_kalmar_window,
    check_sandwich,
    f_table,
    g_table,
    kalmar_ratios,
    max_order_scan,
    summatory,
    verify_power_bounds,
)
from oracles import brute_a, brute_b, brute_f, brute_g

PRIMES = [2, 3, 5, 7, 11, 13, 97, 101, 1999]


def test_g_examples(small_tables):
    g = small_tables["g"]
    assert (g[1], g[4], g[8], g[12]) == (1, 2, 4, 8)
    assert (brute_g(4), brute_g(8), brute_g(12)) == (2, 4, 8)
    assert all(g[p] == 1 for p in PRIMES)


def test_b_examples(small_tables):
    b = small_tables["b"]
    assert b[0] == 1 and b[1] == 0
    assert b[10] == 2 == brute_b(10)
    assert all(b[p] == 1 for p in PRIMES)


def test_a_examples(small_tables):
    a = small_tables["a"]
    assert a[10] == 4
    assert (a[1], a[2], a[6]) == (1, 1, 3)
    assert (brute_a(1), brute_a(2), brute_a(6)) == (1, 1, 3)


def test_f_examples(small_tables):
    f = small_tables["f"]
    assert (f[0], f[1], f[2], f[4]) == (1, 1, 2, 5)
    assert (brute_f(2), brute_f(4)) == (2, 5)


def test_against_partition_filter_oracle(small_tables):
    for n in range(1, 41):
        assert small_tables["a"][n] == brute_a(n), n
        assert small_tables["b"][n] == brute_b(n), n
        assert small_tables["f"][n] == brute_f(n), n


def test_g_against_brute(small_tables):
    g = small_tables["g"]
    assert all(g[n] == brute_g(n) for n in range(1, 2001))


def test_f_matches_divisor_form(small_tables):
    """Per-n divisor enumeration of f(n) = sum_{d|n} f(n/d - 1)."""
    N = 2000
    sieve = build_sieve(N)
    f = [1] + [0] * N
    for n in range(1, N + 1):
        f[n] = sum(f[n // d - 1] for d in divisors(n, sieve))
    assert f == list(small_tables["f"].values)


def test_a_is_b_plus_shift(small_tables):
    a, b = small_tables["a"].values, small_tables["b"].values
    assert np.array_equal(a[1:], b[1:] + b[:-1])


def test_exact_mode_matches_fast_path():
    for build in (g_table, b_table):
        fast, exact = build(3000), build(3000, exact=True)
        assert exact.exact and not fast.exact
        assert [int(x) for x in fast.values] == list(exact.values)


def test_fast_path_refuses_large_limit():
    with pytest.raises(CountOverflowError, match="big-integer"):
        g_table(FAST_PATH_LIMIT + 1)


def test_summatory_overflow_detected():
    huge = np.full(5, 2**62, dtype=np.int64)
    with pytest.raises(CountOverflowError):
        summatory(CountTable("g", 4, huge))


def test_summatory_basics(small_tables):
    G = summatory(small_tables["g"])
    assert G[4] == 5
    assert G[1] == small_tables["g"][1]
    assert np.all(np.diff(G.cumulative[1:]) >= 0)
    assert np.array_equal(np.diff(G.cumulative), small_tables["g"].values[1:])


def test_summatory_a_b_identity(small_tables):
    A = summatory(small_tables["a"]).cumulative
    B = summatory(small_tables["b"]).cumulative
    x = np.arange(1, 2001)
    # b(0) = 1 (the lone part 1 of n = 1) adds exactly one to the two-term form
    assert np.array_equal(A[x], B[x] + B[x - 1] + 1)
    assert np.all(A[x] - (B[x] + B[x - 1]) == 1)


def test_prime_powers_and_signatures(small_tables):
    g = g_table(2**20)
    assert all(g[2**k] == 2 ** (k - 1) for k in range(1, 21))
    sieve = build_sieve(2000)
    by_sig = {}
    for n in range(2, 2001):
        by_sig.setdefault(prime_signature(n, sieve), set()).add(int(small_tables["g"][n]))
    assert all(len(v) == 1 for v in by_sig.values())


def test_power_bounds(small_tables, consts):
    rho = float(consts.rho)
    assert 4 / 8**rho == pytest.approx(0.10988, abs=1e-5)
    assert 4 / (2 * 10**rho) == pytest.approx(0.0374, abs=5e-4)
    rep = verify_power_bounds(small_tables["g"], small_tables["b"], small_tables["a"], consts)
    assert rep["g"] == {"max_ratio": 1.0, "argmax": 1}
    assert all(r["max_ratio"] <= 1 for r in rep.values())


def test_power_bound_violation_reports_n(small_tables, consts):
    bad = small_tables["g"].values.copy()
    bad[360] = 10**6
    with pytest.raises(VerificationFailure) as exc:
        verify_power_bounds(CountTable("g", 2000, bad), small_tables["b"], small_tables["a"], consts)
    assert exc.value.n == 360


def test_sandwich(small_tables):
    check_sandwich(summatory(small_tables["g"]), summatory(small_tables["b"]))
    bad = small_tables["b"].values.copy()
    bad[100] += 10**5
    with pytest.raises(VerificationFailure):
        check_sandwich(summatory(small_tables["g"]), summatory(CountTable("b", 2000, bad)))


def test_kalmar_ratio_window(consts):
    G = summatory(g_table(10**5))
    rmin, rmax = check_kalmar_window(G, consts)
    assert 0.5 <= rmin <= rmax <= 2.0
    rows = kalmar_ratios(G, consts)
    assert [x for x, _ in rows] == [10, 100, 1000, 10**4, 10**5]


def test_max_order_scan(small_tables, consts):
    g, b, a = small_tables["g"], small_tables["b"], small_tables["a"]
    rows = max_order_scan(g, b, a, consts)
    assert [(r["from"], r["to"]) for r in rows] == [(2, 9), (10, 99), (100, 999), (1000, 2000)]
    rho = float(consts.rho)
    assert 4 / 10 ** (rho - 1) == pytest.approx(0.747, abs=1e-3)
    assert rows[1]["a_min"] <= 4 / 10 ** (rho - 1) <= rows[1]["a_max"]
    # primes are excluded, so b(n)/n^(rho-1) never sees the 1/p^(rho-1) decay
    sieve = build_sieve(2000)
    comp = [n for n in range(100, 1000) if sieve.spf[n] != n]
    expected = [int(b[n]) / n ** (rho - 1) for n in comp]
    assert rows[2]["b_min"] == pytest.approx(min(expected))
    assert rows[2]["b_max"] == pytest.approx(max(expected))
    with pytest.raises(ValueError):
        max_order_scan(g, b, a, consts, window=range(2, 5000))


def test_audit_first_discrepancies():
    recs = audit_paper_recurrences(60)
    first = {}
    for r in recs:
        first.setdefault(r.rule, r)
    assert (first["a-recurrence"].n, first["a-recurrence"].claimed, first["a-recurrence"].actual) == (2, 2, 1)
    assert (first["b-base"].n, first["b-base"].claimed, first["b-base"].actual) == (4, 2, 1)
    assert "b-corrected" not in first and "a-corrected" not in first


def test_audit_limit_guard():
    with pytest.raises(ValueError):
        audit_paper_recurrences(5)


@pytest.mark.parametrize("build", [g_table, b_table, f_table])
def test_limit_guard(build):
    with pytest.raises(ValueError):
        build(0)


def test_f_growth_is_superpolynomial():
    f = f_table(10**4)
    assert math.log(int(f[10**4])) > 3 * math.log(10**4)
